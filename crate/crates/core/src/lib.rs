//! Customer-support dialog benchmark toolkit.
//!
//! Builds (context, question, answer) datasets from raw support-tweet dumps, answers test
//! questions with a BM25 retrieval baseline, and scores any responder's output with BLEU@2,
//! ROUGE-L, Embedding Average, Greedy Matching and Vector Extrema.

pub mod corpus;
pub mod harness;
pub mod metrics;
pub mod normalize;
pub mod retrieval;

pub use corpus::{Dialog, DialogTuple, SplitConfig, Tweet};
pub use harness::{EvaluationReport, HarnessError, ResponseRecord};
pub use metrics::{EmbeddingTable, PairScores};
pub use normalize::{TokenSequence, Vocabulary};
pub use retrieval::{Bm25Index, Bm25Params, RankedAnswer};
