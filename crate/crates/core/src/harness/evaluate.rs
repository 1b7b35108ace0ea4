use std::collections::{BTreeSet, HashSet};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::io::{io_err, open};
use super::records::EvaluationSettings;
use super::{
    read_jsonl, write_json, write_jsonl, CoverageError, EvaluationReport, HarnessError, MetricValues, PairRecord,
    ResponseRecord, TupleKey,
};
use crate::corpus::DialogTuple;
use crate::metrics::{bleu2, load_embeddings_filtered, BleuMode, EmbeddingFormat, EmbeddingTable, PairScores};
use crate::normalize::{normalize_text, TokenSequence};

/// How embedding metrics treat out-of-table words, recorded in every report.
pub const EMBEDDING_OOV_POLICY: &str = "skip-oov-tokens; uncovered pairs excluded from means";

pub const PAIRS_FILE: &str = "pairs.jsonl";
pub const REPORT_FILE: &str = "report.json";

#[derive(Debug, Clone, Default)]
pub struct EvaluateOptions {
    pub bleu_mode: BleuMode,
    /// Inferred from the file extension when absent.
    pub embedding_format: Option<EmbeddingFormat>,
    /// When given, responses must cover exactly the tuples of this split.
    pub test_path: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub pairs: Vec<PairRecord>,
    pub report: EvaluationReport,
}

fn check_coverage(responses: &[ResponseRecord], expected: Option<&[TupleKey]>) -> Result<(), CoverageError> {
    let mut seen = HashSet::new();
    let mut duplicate = BTreeSet::new();
    for r in responses {
        if !seen.insert(r.key()) {
            duplicate.insert(r.key());
        }
    }
    let mut err = CoverageError {
        duplicate: duplicate.into_iter().collect(),
        ..CoverageError::default()
    };
    if let Some(expected) = expected {
        let expected: HashSet<TupleKey> = expected.iter().copied().collect();
        let mut missing: Vec<_> = expected.difference(&seen).copied().collect();
        let mut unexpected: Vec<_> = seen.difference(&expected).copied().collect();
        missing.sort_unstable();
        unexpected.sort_unstable();
        err.missing = missing;
        err.unexpected = unexpected;
    }
    if err == CoverageError::default() {
        Ok(())
    } else {
        Err(err)
    }
}

fn fingerprint(responses: &[ResponseRecord], settings: &EvaluationSettings) -> String {
    let mut keyed: Vec<(TupleKey, &str)> = responses.iter().map(|r| (r.key(), r.gold_answer.as_str())).collect();
    keyed.sort_unstable();
    let mut hasher = Sha256::new();
    hasher.update(b"supportbench-evaluation/1\n");
    hasher.update(serde_json::to_vec(settings).expect("settings serialize"));
    hasher.update(b"\n");
    for (key, gold) in keyed {
        hasher.update(format!("{}\t{}\t", key.dialog_id, key.turn_index));
        hasher.update(serde_json::to_vec(gold).expect("string serializes"));
        hasher.update(b"\n");
    }
    hex::encode(hasher.finalize())
}

fn mean_and_std(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = values.clone().sum::<f64>() / n as f64;
    let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / n as f64;
    (mean, var.sqrt())
}

/// Scores every response against its gold answer and aggregates corpus means.
///
/// Coverage is checked first: duplicate keys always fail, and when `expected` is given the
/// responses must match it one-to-one.
pub fn evaluate(
    responses: &[ResponseRecord],
    expected: Option<&[TupleKey]>,
    table: &EmbeddingTable,
    settings: EvaluationSettings,
    per_pair_file: &str,
) -> Result<Evaluation, HarnessError> {
    let first = responses
        .first()
        .ok_or_else(|| HarnessError::EmptyInput("responses".into()))?;
    if let Some(other) = responses.iter().find(|r| r.system != first.system) {
        return Err(HarnessError::MixedSystems(first.system.clone(), other.system.clone()));
    }
    check_coverage(responses, expected).map_err(HarnessError::Coverage)?;

    let tokenized: Vec<(TokenSequence, TokenSequence)> = responses
        .par_iter()
        .map(|r| (normalize_text(&r.response), normalize_text(&r.gold_answer)))
        .collect();
    let scores: Vec<PairScores> = tokenized
        .par_iter()
        .map(|(cand, gold)| PairScores::compute(cand, gold, table))
        .collect();

    let (candidates, references): (Vec<_>, Vec<_>) = tokenized.into_iter().unzip();
    let corpus_bleu = bleu2(&candidates, &references, settings.bleu_mode).expect("equal, non-empty inputs");

    let covered = || scores.iter().filter(|s| !s.uncovered);
    let (_, bleu_std) = mean_and_std(scores.iter().map(|s| s.bleu2));
    let (rouge, rouge_std) = mean_and_std(scores.iter().map(|s| s.rouge_l));
    let (avg, avg_std) = mean_and_std(covered().map(|s| s.embedding_average));
    let (greedy, greedy_std) = mean_and_std(covered().map(|s| s.greedy_matching));
    let (extrema, extrema_std) = mean_and_std(covered().map(|s| s.vector_extrema));
    let covered_count = covered().count();

    let report = EvaluationReport {
        system: first.system.clone(),
        pairs: responses.len(),
        covered: covered_count,
        uncovered: responses.len() - covered_count,
        scores: MetricValues {
            bleu2: corpus_bleu,
            rouge_l: rouge,
            embedding_average: avg,
            greedy_matching: greedy,
            vector_extrema: extrema,
        }
        .scaled(100.0),
        stddev: MetricValues {
            bleu2: bleu_std,
            rouge_l: rouge_std,
            embedding_average: avg_std,
            greedy_matching: greedy_std,
            vector_extrema: extrema_std,
        }
        .scaled(100.0),
        per_pair_file: per_pair_file.to_owned(),
        fingerprint: fingerprint(responses, &settings),
        settings,
    };
    let pairs = responses
        .iter()
        .zip(scores)
        .map(|(r, scores)| PairRecord {
            dialog_id: r.dialog_id,
            turn_index: r.turn_index,
            scores,
        })
        .collect();
    Ok(Evaluation { pairs, report })
}

/// Evaluates `responses_path` and writes `pairs.jsonl` and `report.json` into `out_dir`.
pub fn cmd_evaluate(
    responses_path: &Path,
    embeddings_path: &Path,
    out_dir: &Path,
    opts: &EvaluateOptions,
) -> Result<EvaluationReport, HarnessError> {
    let responses: Vec<ResponseRecord> = read_jsonl(responses_path)?;
    if responses.is_empty() {
        return Err(HarnessError::EmptyInput(responses_path.display().to_string()));
    }
    let expected: Option<Vec<TupleKey>> = match &opts.test_path {
        Some(path) => Some(read_jsonl::<DialogTuple>(path)?.iter().map(TupleKey::from).collect()),
        None => None,
    };
    check_coverage(&responses, expected.as_deref()).map_err(HarnessError::Coverage)?;

    let needed: HashSet<String> = responses
        .iter()
        .flat_map(|r| [normalize_text(&r.response), normalize_text(&r.gold_answer)])
        .flat_map(TokenSequence::into_inner)
        .collect();
    let format = opts
        .embedding_format
        .unwrap_or_else(|| EmbeddingFormat::from_path(embeddings_path));
    let file_bytes = std::fs::metadata(embeddings_path)
        .map_err(io_err(embeddings_path))?
        .len();
    let table = load_embeddings_filtered(open(embeddings_path)?, format, |w| needed.contains(w)).map_err(|source| {
        HarnessError::Metrics {
            path: embeddings_path.to_owned(),
            source,
        }
    })?;
    let settings = EvaluationSettings {
        bleu_mode: opts.bleu_mode,
        oov_policy: EMBEDDING_OOV_POLICY.to_owned(),
        embedding_dim: table.dim(),
        embedding_file_bytes: file_bytes,
    };

    let evaluation = evaluate(&responses, expected.as_deref(), &table, settings, PAIRS_FILE)?;
    std::fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    write_jsonl(&out_dir.join(PAIRS_FILE), &evaluation.pairs)?;
    write_json(&out_dir.join(REPORT_FILE), &evaluation.report)?;
    Ok(evaluation.report)
}
