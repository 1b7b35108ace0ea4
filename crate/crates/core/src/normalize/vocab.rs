use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};

use super::{NormalizeError, TokenSequence, BOS, EOS, HASHTAG, PAD, UNK, URL, USER};

/// Special symbols, in the order they head a vocabulary file.
pub const SPECIALS: [&str; 7] = [PAD, BOS, EOS, UNK, URL, USER, HASHTAG];

/// The top-N word table. Specials are always members and do not count against N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    words: Vec<String>,
    members: HashSet<String>,
    size_limit: usize,
}

impl Vocabulary {
    fn from_words(words: Vec<String>, size_limit: usize) -> Self {
        let members = words.iter().cloned().chain(SPECIALS.iter().map(|s| s.to_string())).collect();
        Self {
            words,
            members,
            size_limit,
        }
    }

    /// Words ordered by descending frequency, specials excluded.
    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn size_limit(&self) -> usize {
        self.size_limit
    }

    pub fn contains(&self, token: &str) -> bool {
        self.members.contains(token)
    }

    /// Specials block followed by the words, one per line.
    pub fn write_to<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for token in SPECIALS.iter().copied().chain(self.words.iter().map(String::as_str)) {
            writeln!(out, "{token}")?;
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(input: R) -> Result<Self, NormalizeError> {
        let mut words = Vec::new();
        let mut seen = HashSet::new();
        let mut line_count = 0;
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            line_count = i + 1;
            let err = |reason: String| NormalizeError::VocabularyFile { line: i + 1, reason };
            if let Some(expected) = SPECIALS.get(i) {
                if line != *expected {
                    return Err(err(format!("expected special {expected:?}, found {line:?}")));
                }
                continue;
            }
            if line.is_empty() || line.chars().any(char::is_whitespace) {
                return Err(err(format!("invalid token {line:?}")));
            }
            if SPECIALS.contains(&line.as_str()) || !seen.insert(line.clone()) {
                return Err(err(format!("duplicate token {line:?}")));
            }
            words.push(line);
        }
        if line_count < SPECIALS.len() {
            return Err(NormalizeError::VocabularyFile {
                line: line_count + 1,
                reason: "truncated specials header".into(),
            });
        }
        let size_limit = words.len().max(1);
        Ok(Self::from_words(words, size_limit))
    }
}

/// Keeps the `n` most frequent non-special tokens. Ties go to the token seen first.
pub fn build_vocabulary<'a, I>(corpus: I, n: usize) -> Result<Vocabulary, NormalizeError>
where
    I: IntoIterator<Item = &'a TokenSequence>,
{
    if n == 0 {
        return Err(NormalizeError::ZeroVocabularySize);
    }
    let mut counts: HashMap<&str, (usize, usize)> = HashMap::new();
    for token in corpus.into_iter().flat_map(|seq| seq.iter()) {
        if SPECIALS.contains(&token.as_str()) {
            continue;
        }
        let next_rank = counts.len();
        counts.entry(token.as_str()).or_insert((0, next_rank)).0 += 1;
    }
    if counts.is_empty() {
        return Err(NormalizeError::EmptyCorpus);
    }
    let mut ranked: Vec<(&str, usize, usize)> = counts.into_iter().map(|(t, (c, first))| (t, c, first)).collect();
    ranked.sort_unstable_by(|a, b| b.1.cmp(&a.1).then(a.2.cmp(&b.2)));
    let words = ranked.into_iter().take(n).map(|(t, _, _)| t.to_owned()).collect();
    Ok(Vocabulary::from_words(words, n))
}

/// Replaces every out-of-vocabulary token with `<unk>`.
pub fn apply_vocabulary(tokens: &TokenSequence, vocab: &Vocabulary) -> TokenSequence {
    tokens
        .iter()
        .map(|t| if vocab.contains(t) { t.as_str() } else { UNK })
        .collect()
}
