//! BM25 responder: index training questions (with their dialog context) and answer a new
//! question with the stored answer of the best-scoring training question.

mod analysis;
mod index;
mod persist;

use serde::{Deserialize, Serialize};

pub use analysis::{Analyzer, ENGLISH_STOP_WORDS};
pub use index::{build_index, Bm25Index, Field, IndexedDocument, Posting, RankedAnswer};

pub type DocId = u32;

#[derive(Debug, thiserror::Error)]
pub enum RetrievalError {
    #[error("cannot build an index from an empty training set")]
    EmptyTrainingSet,
    #[error("unknown document id {0}")]
    UnknownDocument(DocId),
    #[error("k must be at least 1")]
    ZeroK,
    #[error("invalid BM25 parameters: k1={k1}, b={b}")]
    InvalidParams { k1: f64, b: f64 },
    #[error("index file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bm25Params {
    /// Term-frequency saturation.
    pub k1: f64,
    /// Document-length normalization strength, in `[0, 1]`.
    pub b: f64,
    /// Lucene-style English stop words plus Snowball stemming on both fields.
    #[serde(default)]
    pub english_analysis: bool,
}

impl Bm25Params {
    pub fn new(k1: f64, b: f64) -> Result<Self, RetrievalError> {
        let params = Self {
            k1,
            b,
            english_analysis: false,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), RetrievalError> {
        if !(self.k1.is_finite() && self.k1 >= 0.0 && (0.0..=1.0).contains(&self.b)) {
            return Err(RetrievalError::InvalidParams { k1: self.k1, b: self.b });
        }
        Ok(())
    }
}

impl Default for Bm25Params {
    fn default() -> Self {
        Self {
            k1: 1.2,
            b: 0.75,
            english_analysis: false,
        }
    }
}

/// `ln(1 + (N - df + 0.5) / (df + 0.5))`, never negative.
pub fn idf(doc_count: usize, df: usize) -> f64 {
    let (n, df) = (doc_count as f64, df as f64);
    (1.0 + (n - df + 0.5) / (df + 0.5)).ln()
}

/// Saturated, length-normalized term weight `tf (k1 + 1) / (tf + k1 (1 - b + b dl / avgdl))`.
pub fn tf_weight(tf: f64, doc_len: f64, avg_doc_len: f64, params: &Bm25Params) -> f64 {
    if tf <= 0.0 {
        return 0.0;
    }
    let norm = if avg_doc_len > 0.0 {
        1.0 - params.b + params.b * doc_len / avg_doc_len
    } else {
        1.0
    };
    tf * (params.k1 + 1.0) / (tf + params.k1 * norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_doc_single_term() {
        let p = Bm25Params::default();
        let w = idf(1, 1);
        assert!((w - (4.0f64 / 3.0).ln()).abs() < 1e-15);
        assert!((w - 0.28768).abs() < 1e-5);
        assert!((tf_weight(1.0, 1.0, 1.0, &p) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tf_weight_monotone_and_saturating() {
        let p = Bm25Params::default();
        let mut prev = 0.0;
        for tf in 1..50 {
            let w = tf_weight(tf as f64, 10.0, 8.0, &p);
            assert!(w > prev);
            assert!(w < p.k1 + 1.0);
            prev = w;
        }
    }

    #[test]
    fn params_validation() {
        assert!(Bm25Params::new(1.2, 0.75).is_ok());
        assert!(Bm25Params::new(-1.0, 0.75).is_err());
        assert!(Bm25Params::new(1.2, 1.5).is_err());
        assert!(Bm25Params::new(f64::NAN, 0.5).is_err());
    }
}
