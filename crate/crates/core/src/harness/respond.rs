use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use super::io::{create, io_err};
use super::{read_jsonl, write_jsonl, HarnessError, ResponseRecord};
use crate::corpus::DialogTuple;
use crate::retrieval::{build_index, Bm25Index, Bm25Params};

pub const IR_SYSTEM_NAME: &str = "ir-bm25";

/// Answers every test tuple with the rank-1 training answer, or `fallback` when nothing matches.
/// Output order follows `test`.
pub fn respond_ir(index: &Bm25Index, test: &[DialogTuple], fallback: &str) -> Result<Vec<ResponseRecord>, HarnessError> {
    test.par_iter()
        .map(|t| {
            let ranked = index.respond(&t.context, &t.question, 1)?;
            let response = ranked.into_iter().next().map_or_else(|| fallback.to_owned(), |r| r.answer);
            Ok(ResponseRecord::for_tuple(t, response, IR_SYSTEM_NAME))
        })
        .collect()
}

/// Builds the index from `train_path`, answers `test_path` and writes `responses.jsonl` to `out_path`.
/// When `index_out` is given the index is saved there too.
pub fn cmd_respond_ir(
    train_path: &Path,
    test_path: &Path,
    params: Bm25Params,
    fallback: &str,
    out_path: &Path,
    index_out: Option<&Path>,
) -> Result<usize, HarnessError> {
    let train: Vec<DialogTuple> = read_jsonl(train_path)?;
    if train.is_empty() {
        return Err(HarnessError::EmptyInput(train_path.display().to_string()));
    }
    let test: Vec<DialogTuple> = read_jsonl(test_path)?;
    let index = build_index(&train, params)?;
    if let Some(path) = index_out {
        let mut out = create(path)?;
        index.save(&mut out)?;
        out.flush().map_err(io_err(path))?;
    }
    let records = respond_ir(&index, &test, fallback)?;
    write_jsonl(out_path, &records)?;
    Ok(records.len())
}
