use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use super::HarnessError;

pub(super) fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io {
        path: path.to_owned(),
        source,
    }
}

pub(super) fn open(path: &Path) -> Result<BufReader<File>, HarnessError> {
    File::open(path).map(BufReader::new).map_err(io_err(path))
}

pub(super) fn create(path: &Path) -> Result<BufWriter<File>, HarnessError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    File::create(path).map(BufWriter::new).map_err(io_err(path))
}

/// One JSON value per non-blank line.
pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, HarnessError> {
    let mut out = Vec::new();
    for (i, line) in open(path)?.lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        let value = serde_json::from_str(&line).map_err(|source| HarnessError::Json {
            path: path.to_owned(),
            line: i + 1,
            source,
        })?;
        out.push(value);
    }
    Ok(out)
}

pub fn write_jsonl<'a, T, I>(path: &Path, items: I) -> Result<(), HarnessError>
where
    T: Serialize + 'a,
    I: IntoIterator<Item = &'a T>,
{
    let mut out = create(path)?;
    for item in items {
        serde_json::to_writer(&mut out, item).map_err(|source| HarnessError::Json {
            path: path.to_owned(),
            line: 0,
            source,
        })?;
        out.write_all(b"\n").map_err(io_err(path))?;
    }
    out.flush().map_err(io_err(path))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, HarnessError> {
    serde_json::from_reader(open(path)?).map_err(|source| HarnessError::Json {
        path: path.to_owned(),
        line: 0,
        source,
    })
}

/// Pretty-printed, newline-terminated.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), HarnessError> {
    let mut out = create(path)?;
    serde_json::to_writer_pretty(&mut out, value).map_err(|source| HarnessError::Json {
        path: path.to_owned(),
        line: 0,
        source,
    })?;
    out.write_all(b"\n").map_err(io_err(path))?;
    out.flush().map_err(io_err(path))
}
