//! Tweet-aware tokenization, placeholder substitution and vocabulary capping.

mod rewrite;
mod tokenize;
mod vocab;

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

pub use rewrite::{is_hashtag, is_mention, is_url, RewriteTable};
pub use tokenize::tokenize;
pub use vocab::{apply_vocabulary, build_vocabulary, Vocabulary, SPECIALS};

pub const UNK: &str = "<unk>";
pub const URL: &str = "<url>";
pub const USER: &str = "<user>";
pub const HASHTAG: &str = "<hashtag>";
pub const PAD: &str = "<pad>";
pub const BOS: &str = "<s>";
pub const EOS: &str = "</s>";

#[derive(Debug, thiserror::Error)]
pub enum NormalizeError {
    #[error("vocabulary size must be at least 1")]
    ZeroVocabularySize,
    #[error("cannot build a vocabulary from an empty corpus")]
    EmptyCorpus,
    #[error("rewrite table line {line}: {reason}")]
    RewriteTable { line: usize, reason: String },
    #[error("vocabulary file line {line}: {reason}")]
    VocabularyFile { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Lowercase tokens with no embedded whitespace.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TokenSequence(Vec<String>);

impl TokenSequence {
    pub fn new(tokens: Vec<String>) -> Self {
        Self(tokens)
    }

    pub fn into_inner(self) -> Vec<String> {
        self.0
    }
}

impl Deref for TokenSequence {
    type Target = [String];

    fn deref(&self) -> &[String] {
        &self.0
    }
}

impl AsRef<[String]> for TokenSequence {
    fn as_ref(&self) -> &[String] {
        &self.0
    }
}

impl<S: Into<String>> FromIterator<S> for TokenSequence {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Self(iter.into_iter().map(Into::into).collect())
    }
}

impl From<Vec<String>> for TokenSequence {
    fn from(tokens: Vec<String>) -> Self {
        Self(tokens)
    }
}

impl fmt::Display for TokenSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(" "))
    }
}

/// Rewrites contractions and slang, then replaces URLs, mentions and hashtags by placeholders.
/// Uses the bundled rewrite table.
pub fn normalize_tokens(tokens: &TokenSequence) -> TokenSequence {
    RewriteTable::bundled().apply(tokens)
}

/// `tokenize` followed by `normalize_tokens`.
pub fn normalize_text(raw: &str) -> TokenSequence {
    normalize_tokens(&tokenize(raw))
}
