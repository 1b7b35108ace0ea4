//! Word-overlap (BLEU@2, ROUGE-L) and embedding-based (Embedding Average, Greedy Matching,
//! Vector Extrema) response metrics.
//!
//! Everything here works on normalized token sequences and returns raw scores in `[0, 1]`
//! or `[-1, 1]`; scaling to percentages is a rendering concern.

mod embeddings;
mod overlap;
pub mod semantic;

use serde::{Deserialize, Serialize};

pub use embeddings::{load_embeddings, load_embeddings_filtered, EmbeddingFormat, EmbeddingTable};
pub use overlap::{bleu2, lcs_len, rouge_l, sentence_bleu2, BleuMode};
pub use semantic::{cosine, embedding_average, extrema_vector, greedy_directional, greedy_matching, vector_extrema};

#[derive(Debug, thiserror::Error)]
pub enum MetricsError {
    #[error("{candidates} candidates but {references} references")]
    LengthMismatch { candidates: usize, references: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("vector of dimension {found}, expected {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("embedding file line {line}: {reason}")]
    EmbeddingFormat { line: usize, reason: String },
    #[error("embedding file contains no vectors")]
    EmptyEmbeddings,
    #[error("unknown embedding format {0:?} (expected `text` or `binary`)")]
    UnknownFormat(String),
    #[error("unknown BLEU mode {0:?} (expected `corpus` or `sentence`)")]
    UnknownBleuMode(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// All five scores for one response/reference pair.
///
/// Semantic scores are `0.0` when the pair is uncovered.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairScores {
    pub bleu2: f64,
    pub rouge_l: f64,
    pub embedding_average: f64,
    pub greedy_matching: f64,
    pub vector_extrema: f64,
    pub uncovered: bool,
}

impl PairScores {
    /// Per-pair BLEU is the smoothed sentence variant.
    pub fn compute(candidate: &[String], reference: &[String], table: &EmbeddingTable) -> Self {
        let semantic = (
            embedding_average(candidate, reference, table),
            greedy_matching(candidate, reference, table),
            vector_extrema(candidate, reference, table),
        );
        let (embedding_average, greedy_matching, vector_extrema, uncovered) = match semantic {
            (Some(a), Some(g), Some(e)) => (a, g, e, false),
            _ => (0.0, 0.0, 0.0, true),
        };
        Self {
            bleu2: sentence_bleu2(candidate, reference),
            rouge_l: rouge_l(candidate, reference),
            embedding_average,
            greedy_matching,
            vector_extrema,
            uncovered,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_scores_flag_uncovered() {
        let mut t = EmbeddingTable::new(2);
        t.insert("ok", vec![1.0, 1.0]).unwrap();
        let c: Vec<String> = vec!["<url>".into()];
        let r: Vec<String> = vec!["ok".into()];
        let s = PairScores::compute(&c, &r, &t);
        assert!(s.uncovered);
        assert_eq!((s.embedding_average, s.greedy_matching, s.vector_extrema), (0.0, 0.0, 0.0));
        let s = PairScores::compute(&r, &r, &t);
        assert!(!s.uncovered);
        assert_eq!(s.bleu2, 1.0);
        assert_eq!(s.rouge_l, 1.0);
    }
}
