use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read, Write};
use std::str::FromStr;

use super::MetricsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingFormat {
    /// `word v1 ... vd` per line, with an optional `count dim` header line.
    Text,
    /// word2vec packed layout: `count dim\n`, then per entry `word<space>` and `dim` little-endian f32.
    Binary,
}

impl FromStr for EmbeddingFormat {
    type Err = MetricsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" | "txt" => Ok(Self::Text),
            "binary" | "bin" => Ok(Self::Binary),
            other => Err(MetricsError::UnknownFormat(other.to_owned())),
        }
    }
}

impl EmbeddingFormat {
    /// `.bin` means binary, anything else text.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("bin") => Self::Binary,
            _ => Self::Text,
        }
    }
}

/// Word vectors of a single dimension, keyed by lowercase word.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    dim: usize,
    vectors: HashMap<String, Vec<f32>>,
}

impl EmbeddingTable {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            vectors: HashMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<&[f32]> {
        self.vectors.get(word).map(Vec::as_slice)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.vectors.contains_key(word)
    }

    /// Adds a vector under the lowercased word. Returns `false` when the word was already present,
    /// in which case the earlier vector is kept.
    pub fn insert(&mut self, word: &str, vector: Vec<f32>) -> Result<bool, MetricsError> {
        if vector.len() != self.dim {
            return Err(MetricsError::Dimension {
                expected: self.dim,
                found: vector.len(),
            });
        }
        let key = word.to_lowercase();
        if self.vectors.contains_key(&key) {
            return Ok(false);
        }
        self.vectors.insert(key, vector);
        Ok(true)
    }

    /// Words in sorted order.
    pub fn words(&self) -> Vec<&str> {
        let mut words: Vec<&str> = self.vectors.keys().map(String::as_str).collect();
        words.sort_unstable();
        words
    }

    pub fn write_text<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{} {}", self.len(), self.dim)?;
        for word in self.words() {
            write!(out, "{word}")?;
            for v in &self.vectors[word] {
                write!(out, " {v}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    pub fn write_binary<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{} {}", self.len(), self.dim)?;
        for word in self.words() {
            out.write_all(word.as_bytes())?;
            out.write_all(b" ")?;
            for v in &self.vectors[word] {
                out.write_all(&v.to_le_bytes())?;
            }
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Loads every vector in `source`.
pub fn load_embeddings<R: Read>(source: R, format: EmbeddingFormat) -> Result<EmbeddingTable, MetricsError> {
    load_embeddings_filtered(source, format, |_| true)
}

/// Loads only the words accepted by `keep` (tested on the lowercased word); the file is still
/// validated in full.
pub fn load_embeddings_filtered<R, F>(source: R, format: EmbeddingFormat, keep: F) -> Result<EmbeddingTable, MetricsError>
where
    R: Read,
    F: Fn(&str) -> bool,
{
    match format {
        EmbeddingFormat::Text => load_text(BufReader::new(source), keep),
        EmbeddingFormat::Binary => load_binary(BufReader::new(source), keep),
    }
}

fn format_err(line: usize, reason: impl Into<String>) -> MetricsError {
    MetricsError::EmbeddingFormat {
        line,
        reason: reason.into(),
    }
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let mut parts = line.split_whitespace();
    let count = parts.next()?.parse().ok()?;
    let dim = parts.next()?.parse().ok()?;
    parts.next().is_none().then_some((count, dim))
}

fn load_text<R: BufRead, F: Fn(&str) -> bool>(input: R, keep: F) -> Result<EmbeddingTable, MetricsError> {
    let mut table: Option<EmbeddingTable> = None;
    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        if i == 0 {
            if let Some((_, dim)) = parse_header(&line) {
                if dim == 0 {
                    return Err(format_err(line_no, "dimension must be positive"));
                }
                table = Some(EmbeddingTable::new(dim));
                continue;
            }
        }
        let mut parts = line.split_whitespace();
        let word = parts.next().expect("non-empty line");
        let values = parts
            .map(|v| v.parse::<f32>().map_err(|_| format_err(line_no, format!("bad number {v:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if values.is_empty() {
            return Err(format_err(line_no, format!("no vector for {word:?}")));
        }
        let table = table.get_or_insert_with(|| EmbeddingTable::new(values.len()));
        if values.len() != table.dim {
            return Err(format_err(
                line_no,
                format!("expected {} values, found {}", table.dim, values.len()),
            ));
        }
        if keep(&word.to_lowercase()) {
            table.insert(word, values)?;
        }
    }
    table.ok_or(MetricsError::EmptyEmbeddings)
}

fn load_binary<R: BufRead, F: Fn(&str) -> bool>(mut input: R, keep: F) -> Result<EmbeddingTable, MetricsError> {
    let mut header = String::new();
    input.read_line(&mut header)?;
    let (count, dim) = parse_header(&header).ok_or_else(|| format_err(1, "expected `count dim` header"))?;
    if dim == 0 {
        return Err(format_err(1, "dimension must be positive"));
    }
    let mut table = EmbeddingTable::new(dim);
    let mut word = Vec::new();
    let mut raw = vec![0u8; dim * 4];
    for entry in 0..count {
        // report positions as 1-based entries after the header line
        let line_no = entry + 2;
        word.clear();
        loop {
            let mut byte = [0u8];
            if input.read(&mut byte)? == 0 {
                return Err(format_err(line_no, format!("unexpected end of file after {entry} of {count} entries")));
            }
            match byte[0] {
                b' ' if !word.is_empty() => break,
                b'\n' | b'\r' | b' ' if word.is_empty() => continue,
                b => word.push(b),
            }
        }
        input
            .read_exact(&mut raw)
            .map_err(|_| format_err(line_no, "truncated vector"))?;
        let word = String::from_utf8_lossy(&word);
        if keep(&word.to_lowercase()) {
            let values = raw
                .chunks_exact(4)
                .map(|b| f32::from_le_bytes([b[0], b[1], b[2], b[3]]))
                .collect();
            table.insert(&word, values)?;
        }
    }
    Ok(table)
}
