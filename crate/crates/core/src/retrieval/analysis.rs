use std::fmt;

use rust_stemmers::{Algorithm, Stemmer};

use crate::normalize::{normalize_text, TokenSequence};

/// Lucene's default English stop set.
pub const ENGLISH_STOP_WORDS: [&str; 33] = [
    "a", "an", "and", "are", "as", "at", "be", "but", "by", "for", "if", "in", "into", "is", "it", "no", "not", "of",
    "on", "or", "such", "that", "the", "their", "then", "there", "these", "they", "this", "to", "was", "will", "with",
];

/// Text analysis shared by indexing and querying.
pub struct Analyzer {
    stemmer: Option<Stemmer>,
}

impl Analyzer {
    pub fn new(english: bool) -> Self {
        Self {
            stemmer: english.then(|| Stemmer::create(Algorithm::English)),
        }
    }

    pub fn is_english(&self) -> bool {
        self.stemmer.is_some()
    }

    pub fn analyze(&self, text: &str) -> TokenSequence {
        let tokens = normalize_text(text);
        match &self.stemmer {
            None => tokens,
            Some(stemmer) => tokens
                .iter()
                .filter(|t| !ENGLISH_STOP_WORDS.contains(&t.as_str()))
                .map(|t| {
                    if t.starts_with('<') {
                        t.clone()
                    } else {
                        stemmer.stem(t).into_owned()
                    }
                })
                .collect(),
        }
    }
}

impl fmt::Debug for Analyzer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Analyzer").field("english", &self.is_english()).finish()
    }
}
