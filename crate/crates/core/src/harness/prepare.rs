use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::{Read, Write};
use std::path::Path;

use chrono::{DateTime, Duration, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};

use super::io::{create, io_err, open};
use super::{write_json, write_jsonl, HarnessError};
use crate::corpus::{
    extract_dialog_tuples, temporal_split, thread_conversations, CorpusError, DialogTuple, RedirectFilter, Split,
    SplitConfig, TweetReader, DEFAULT_REDIRECT_PATTERNS,
};
use crate::normalize::{build_vocabulary, normalize_text, Vocabulary};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrepareConfig {
    pub split: SplitConfig,
    pub redirect_patterns: Vec<String>,
    /// Word budget of the emitted vocabulary (specials excluded).
    pub vocab_size: usize,
    /// Abort on the first malformed row instead of skipping it.
    pub strict: bool,
}

impl Default for PrepareConfig {
    fn default() -> Self {
        Self {
            split: SplitConfig::default(),
            redirect_patterns: DEFAULT_REDIRECT_PATTERNS.iter().map(|p| p.to_string()).collect(),
            vocab_size: 8192,
            strict: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TurnStats {
    pub min: usize,
    pub max: usize,
    pub mean: f64,
}

/// Token-count summary; quartiles interpolate linearly between order statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LengthStats {
    pub mean: f64,
    pub min: usize,
    pub q1: f64,
    pub mode: usize,
    pub q3: f64,
    pub max: usize,
}

impl LengthStats {
    fn of(mut values: Vec<usize>) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        values.sort_unstable();
        let n = values.len();
        let quantile = |p: f64| {
            let h = (n - 1) as f64 * p;
            let lo = h.floor() as usize;
            let hi = (lo + 1).min(n - 1);
            values[lo] as f64 + (h - lo as f64) * (values[hi] as f64 - values[lo] as f64)
        };
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &v in &values {
            *counts.entry(v).or_default() += 1;
        }
        // smallest value among the most frequent
        let mode = counts
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map(|(v, _)| *v)
            .expect("non-empty");
        Some(Self {
            mean: values.iter().sum::<usize>() as f64 / n as f64,
            min: values[0],
            q1: quantile(0.25),
            mode,
            q3: quantile(0.75),
            max: values[n - 1],
        })
    }
}

/// Dataset summary written next to the splits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetStats {
    pub brand: String,
    pub rows_read: u64,
    pub row_errors: u64,
    pub tweets: usize,
    pub dialogs_threaded: usize,
    pub tuples_extracted: usize,
    pub redirects_removed: usize,
    pub outside_train_window: usize,
    /// Train plus test.
    pub tuples: usize,
    pub train_tuples: usize,
    pub test_tuples: usize,
    /// Dialogs with at least one tuple in either split.
    pub dialogs: usize,
    pub turns_per_dialog: TurnStats,
    pub distinct_words: usize,
    pub question_words: Option<LengthStats>,
    pub answer_words: Option<LengthStats>,
    pub vocabulary_size: usize,
    pub train_window_days: u32,
    pub test_window_days: u32,
    pub newest_answer: String,
    pub test_starts_after: String,
    pub train_starts_after: String,
}

#[derive(Debug, Clone)]
pub struct Prepared {
    pub split: Split,
    pub vocabulary: Vocabulary,
    pub stats: DatasetStats,
}

fn iso(t: DateTime<Utc>) -> String {
    t.to_rfc3339_opts(SecondsFormat::Secs, true)
}

/// Runs parse, thread, extract, redirect filtering and the temporal split on a CSV dump.
pub fn prepare<R: Read>(csv: R, cfg: &PrepareConfig) -> Result<Prepared, HarnessError> {
    cfg.split.validate()?;
    let filter = RedirectFilter::new(&cfg.redirect_patterns)?;

    let mut rows_read = 0u64;
    let mut row_errors = 0u64;
    let mut tweets = Vec::new();
    for row in TweetReader::new(csv)? {
        rows_read += 1;
        match row {
            Ok(t) => tweets.push(t),
            Err(e) if cfg.strict => return Err(CorpusError::Row(e).into()),
            Err(e) => {
                if row_errors < 10 {
                    log::warn!("skipping {e}");
                }
                row_errors += 1;
            }
        }
    }
    if row_errors > 0 {
        log::warn!("skipped {row_errors} malformed rows of {rows_read}");
    }
    let tweet_count = tweets.len();

    let dialogs = thread_conversations(tweets, &cfg.split.brand);
    let turn_counts: HashMap<u64, usize> = dialogs.iter().map(|d| (d.dialog_id, d.turns.len())).collect();
    let tuples: Vec<DialogTuple> = dialogs.iter().flat_map(extract_dialog_tuples).collect();
    let tuples_extracted = tuples.len();
    let (tuples, redirects_removed) = filter.filter(tuples);
    let kept = tuples.len();

    let split = temporal_split(tuples, &cfg.split)?;
    let t_max = split
        .test
        .iter()
        .map(|t| t.answer_time)
        .max()
        .expect("test split is never empty");

    let all = || split.train.iter().chain(&split.test);
    let used_dialogs: HashSet<u64> = all().map(|t| t.dialog_id).collect();
    let mut turns: Vec<usize> = used_dialogs.iter().map(|id| turn_counts[id]).collect();
    turns.sort_unstable();
    let turns_per_dialog = TurnStats {
        min: turns[0],
        max: turns[turns.len() - 1],
        mean: turns.iter().sum::<usize>() as f64 / turns.len() as f64,
    };

    let mut words = HashSet::new();
    let mut question_lens = Vec::new();
    let mut answer_lens = Vec::new();
    for t in all() {
        let q = normalize_text(&t.question);
        let a = normalize_text(&t.answer);
        question_lens.push(q.len());
        answer_lens.push(a.len());
        words.extend(q.into_inner());
        words.extend(a.into_inner());
    }

    let train_tokens: Vec<_> = split
        .train
        .iter()
        .flat_map(|t| [normalize_text(&t.query_text()), normalize_text(&t.answer)])
        .collect();
    let vocabulary = build_vocabulary(&train_tokens, cfg.vocab_size)?;

    let stats = DatasetStats {
        brand: cfg.split.brand.clone(),
        rows_read,
        row_errors,
        tweets: tweet_count,
        dialogs_threaded: dialogs.len(),
        tuples_extracted,
        redirects_removed,
        outside_train_window: kept - split.train.len() - split.test.len(),
        tuples: split.train.len() + split.test.len(),
        train_tuples: split.train.len(),
        test_tuples: split.test.len(),
        dialogs: used_dialogs.len(),
        turns_per_dialog,
        distinct_words: words.len(),
        question_words: LengthStats::of(question_lens),
        answer_words: LengthStats::of(answer_lens),
        vocabulary_size: vocabulary.words().len(),
        train_window_days: cfg.split.train_window_days,
        test_window_days: cfg.split.test_window_days,
        newest_answer: iso(t_max),
        test_starts_after: iso(t_max - Duration::days(cfg.split.test_window_days.into())),
        train_starts_after: iso(t_max - Duration::days(cfg.split.train_window_days.into())),
    };
    Ok(Prepared {
        split,
        vocabulary,
        stats,
    })
}

/// Writes `train.jsonl`, `test.jsonl`, `vocab.txt` and `stats.json` into `out_dir`.
pub fn cmd_prepare(csv_path: &Path, cfg: &PrepareConfig, out_dir: &Path) -> Result<DatasetStats, HarnessError> {
    let prepared = prepare(open(csv_path)?, cfg)?;
    std::fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    write_jsonl(&out_dir.join("train.jsonl"), &prepared.split.train)?;
    write_jsonl(&out_dir.join("test.jsonl"), &prepared.split.test)?;
    let vocab_path = out_dir.join("vocab.txt");
    let mut vocab_out = create(&vocab_path)?;
    prepared
        .vocabulary
        .write_to(&mut vocab_out)
        .and_then(|_| vocab_out.flush())
        .map_err(io_err(&vocab_path))?;
    write_json(&out_dir.join("stats.json"), &prepared.stats)?;
    Ok(prepared.stats)
}
