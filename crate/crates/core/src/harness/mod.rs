//! End-to-end benchmark commands: dataset preparation, the BM25 responder, evaluation of any
//! responder's output, and tabular reports.
//!
//! Every command exchanges data through JSONL/JSON files so that external responders plug in
//! without linking against this crate.

mod evaluate;
mod io;
mod prepare;
mod records;
mod report;
mod respond;

use std::path::PathBuf;

pub use evaluate::{cmd_evaluate, evaluate, EvaluateOptions, Evaluation, EMBEDDING_OOV_POLICY, PAIRS_FILE, REPORT_FILE};
pub use io::{read_json, read_jsonl, write_json, write_jsonl};
pub use prepare::{cmd_prepare, prepare, DatasetStats, LengthStats, PrepareConfig, Prepared, TurnStats};
pub use records::{EvaluationReport, EvaluationSettings, MetricValues, PairRecord, ResponseRecord, TupleKey};
pub use report::{cmd_report, format_score, render_csv, render_text, RenderedReport};
pub use respond::{cmd_respond_ir, respond_ir, IR_SYSTEM_NAME};

use crate::corpus::CorpusError;
use crate::metrics::MetricsError;
use crate::normalize::NormalizeError;
use crate::retrieval::RetrievalError;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {source}")]
    Json {
        path: PathBuf,
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
    #[error(transparent)]
    Retrieval(#[from] RetrievalError),
    #[error("{path}: {source}")]
    Metrics {
        path: PathBuf,
        #[source]
        source: MetricsError,
    },
    #[error("{0}")]
    Coverage(CoverageError),
    #[error("{0} is empty")]
    EmptyInput(String),
    #[error("responses mix systems {0:?} and {1:?}")]
    MixedSystems(String, String),
}

/// Keys that break the one-response-per-test-tuple rule.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoverageError {
    pub missing: Vec<TupleKey>,
    pub duplicate: Vec<TupleKey>,
    pub unexpected: Vec<TupleKey>,
}

impl std::fmt::Display for CoverageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fn list(keys: &[TupleKey]) -> String {
            const SHOWN: usize = 10;
            let mut parts: Vec<String> = keys.iter().take(SHOWN).map(ToString::to_string).collect();
            if keys.len() > SHOWN {
                parts.push(format!("... ({} more)", keys.len() - SHOWN));
            }
            parts.join(", ")
        }
        write!(f, "responses do not cover the test split")?;
        for (label, keys) in [("missing", &self.missing), ("duplicate", &self.duplicate), ("unexpected", &self.unexpected)] {
            if !keys.is_empty() {
                write!(f, "; {} {label}: {}", keys.len(), list(keys))?;
            }
        }
        Ok(())
    }
}
