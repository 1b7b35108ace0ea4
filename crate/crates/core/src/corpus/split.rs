use chrono::Duration;
use serde::{Deserialize, Serialize};

use super::{CorpusError, DialogTuple};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitConfig {
    pub train_window_days: u32,
    pub test_window_days: u32,
    pub brand: String,
}

impl SplitConfig {
    pub fn new(brand: impl Into<String>, train_window_days: u32, test_window_days: u32) -> Result<Self, CorpusError> {
        let cfg = Self {
            train_window_days,
            test_window_days,
            brand: brand.into(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CorpusError> {
        if self.test_window_days == 0 || self.train_window_days <= self.test_window_days {
            return Err(CorpusError::InvalidSplitConfig {
                train: self.train_window_days,
                test: self.test_window_days,
            });
        }
        Ok(())
    }
}

impl Default for SplitConfig {
    fn default() -> Self {
        Self {
            train_window_days: 60,
            test_window_days: 5,
            brand: "AppleSupport".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub train: Vec<DialogTuple>,
    pub test: Vec<DialogTuple>,
}

/// Splits by answer time, anchored at the newest answer `t_max`.
///
/// Test is `(t_max - test_days, t_max]`, train is `(t_max - train_days, t_max - test_days]`.
/// Anything older is dropped. Input order is preserved inside each side.
pub fn temporal_split(tuples: Vec<DialogTuple>, cfg: &SplitConfig) -> Result<Split, CorpusError> {
    cfg.validate()?;
    let t_max = tuples.iter().map(|t| t.answer_time).max().ok_or(CorpusError::NoTuples)?;
    let test_start = t_max - Duration::days(cfg.test_window_days.into());
    let train_start = t_max - Duration::days(cfg.train_window_days.into());

    let mut train = Vec::new();
    let mut test = Vec::new();
    for tuple in tuples {
        if tuple.answer_time > test_start {
            test.push(tuple);
        } else if tuple.answer_time > train_start {
            train.push(tuple);
        }
    }
    if train.is_empty() {
        return Err(CorpusError::EmptySplit("train"));
    }
    Ok(Split { train, test })
}
