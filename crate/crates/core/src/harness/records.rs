use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::{DialogTuple, TweetId};
use crate::metrics::{BleuMode, PairScores};

/// Identifies a tuple inside a split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TupleKey {
    pub dialog_id: TweetId,
    pub turn_index: usize,
}

impl fmt::Display for TupleKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.dialog_id, self.turn_index)
    }
}

impl From<&DialogTuple> for TupleKey {
    fn from(t: &DialogTuple) -> Self {
        Self {
            dialog_id: t.dialog_id,
            turn_index: t.turn_index,
        }
    }
}

/// One responder answer to one test tuple; the evaluator's only input format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResponseRecord {
    pub dialog_id: TweetId,
    pub turn_index: usize,
    pub context: String,
    pub question: String,
    pub gold_answer: String,
    pub response: String,
    pub system: String,
}

impl ResponseRecord {
    pub fn key(&self) -> TupleKey {
        TupleKey {
            dialog_id: self.dialog_id,
            turn_index: self.turn_index,
        }
    }

    pub fn for_tuple(tuple: &DialogTuple, response: String, system: &str) -> Self {
        Self {
            dialog_id: tuple.dialog_id,
            turn_index: tuple.turn_index,
            context: tuple.context.clone(),
            question: tuple.question.clone(),
            gold_answer: tuple.answer.clone(),
            response,
            system: system.to_owned(),
        }
    }
}

/// Per-pair scores as written to `pairs.jsonl`, on the raw `[0, 1]` / `[-1, 1]` scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub dialog_id: TweetId,
    pub turn_index: usize,
    #[serde(flatten)]
    pub scores: PairScores,
}

/// One value per reported metric.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricValues {
    pub bleu2: f64,
    pub rouge_l: f64,
    pub embedding_average: f64,
    pub greedy_matching: f64,
    pub vector_extrema: f64,
}

impl MetricValues {
    pub const LABELS: [&'static str; 5] = ["BLEU@2", "ROUGE-L", "Embedding Average", "Greedy Matching", "Vector Extrema"];

    pub fn as_array(&self) -> [f64; 5] {
        [
            self.bleu2,
            self.rouge_l,
            self.embedding_average,
            self.greedy_matching,
            self.vector_extrema,
        ]
    }

    pub(super) fn scaled(&self, factor: f64) -> Self {
        Self {
            bleu2: self.bleu2 * factor,
            rouge_l: self.rouge_l * factor,
            embedding_average: self.embedding_average * factor,
            greedy_matching: self.greedy_matching * factor,
            vector_extrema: self.vector_extrema * factor,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluationSettings {
    pub bleu_mode: BleuMode,
    pub oov_policy: String,
    pub embedding_dim: usize,
    pub embedding_file_bytes: u64,
}

/// Corpus-level results for one system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub system: String,
    pub pairs: usize,
    pub covered: usize,
    pub uncovered: usize,
    /// Corpus means multiplied by 100.
    pub scores: MetricValues,
    /// Per-pair population standard deviations multiplied by 100 (BLEU uses the per-pair
    /// smoothed variant).
    pub stddev: MetricValues,
    pub per_pair_file: String,
    pub settings: EvaluationSettings,
    /// SHA-256 over the evaluated test keys, gold answers and metric settings.
    pub fingerprint: String,
}
