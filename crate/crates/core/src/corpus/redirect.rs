use regex::{RegexSet, RegexSetBuilder};

use super::{CorpusError, DialogTuple};

/// Phrases that mark an answer as a hand-off to another channel.
pub const DEFAULT_REDIRECT_PATTERNS: [&str; 4] = ["dm us", "direct message", "send us a dm", "dm your"];

/// Case-insensitive regex patterns matched against answers.
#[derive(Debug, Clone)]
pub struct RedirectFilter {
    patterns: RegexSet,
}

impl RedirectFilter {
    pub fn new<I, S>(patterns: I) -> Result<Self, CorpusError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let patterns: Vec<String> = patterns.into_iter().map(|p| p.as_ref().to_owned()).collect();
        if patterns.is_empty() {
            return Err(CorpusError::NoPatterns);
        }
        let patterns = RegexSetBuilder::new(&patterns).case_insensitive(true).build()?;
        Ok(Self { patterns })
    }

    pub fn is_redirect(&self, answer: &str) -> bool {
        self.patterns.is_match(answer)
    }

    /// Returns the kept tuples and the number removed.
    pub fn filter(&self, tuples: Vec<DialogTuple>) -> (Vec<DialogTuple>, usize) {
        let before = tuples.len();
        let kept: Vec<_> = tuples.into_iter().filter(|t| !self.is_redirect(&t.answer)).collect();
        let removed = before - kept.len();
        (kept, removed)
    }
}

impl Default for RedirectFilter {
    fn default() -> Self {
        Self::new(DEFAULT_REDIRECT_PATTERNS).expect("default patterns compile")
    }
}
