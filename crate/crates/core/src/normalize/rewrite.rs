use std::collections::HashMap;
use std::sync::OnceLock;

use regex::Regex;

use super::{NormalizeError, TokenSequence, HASHTAG, URL, USER};

const BUNDLED: &str = include_str!("../../data/rewrites.tsv");

fn mention_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^@\w+$").unwrap())
}

fn hashtag_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^#\w+$").unwrap())
}

pub fn is_url(token: &str) -> bool {
    let lower = token.to_ascii_lowercase();
    lower.starts_with("http://") || lower.starts_with("https://") || lower.starts_with("www.")
}

pub fn is_mention(token: &str) -> bool {
    mention_re().is_match(token)
}

pub fn is_hashtag(token: &str) -> bool {
    hashtag_re().is_match(token)
}

/// Surface-form rewrites for shorthand and slang.
///
/// A replacement may never itself be a rewrite key or look like a URL, mention or hashtag,
/// which keeps [`RewriteTable::apply`] idempotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteTable {
    entries: HashMap<String, String>,
}

impl RewriteTable {
    /// The table shipped in `data/rewrites.tsv`.
    pub fn bundled() -> &'static RewriteTable {
        static TABLE: OnceLock<RewriteTable> = OnceLock::new();
        TABLE.get_or_init(|| RewriteTable::from_tsv(BUNDLED).expect("bundled rewrite table is valid"))
    }

    /// Parses `surface<TAB>replacement` lines. Blank lines and `#` comments are skipped.
    pub fn from_tsv(text: &str) -> Result<Self, NormalizeError> {
        let mut entries = HashMap::new();
        let mut lines = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |reason: String| NormalizeError::RewriteTable { line: line_no, reason };
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (surface, replacement) = line
                .split_once('\t')
                .ok_or_else(|| err("expected two tab-separated columns".into()))?;
            let surface = surface.trim().to_lowercase();
            let replacement = replacement.trim().to_lowercase();
            if surface.is_empty() || replacement.is_empty() {
                return Err(err("empty column".into()));
            }
            if replacement.chars().any(char::is_whitespace) {
                return Err(err(format!("replacement {replacement:?} contains whitespace")));
            }
            if is_url(&replacement) || is_mention(&replacement) || is_hashtag(&replacement) {
                return Err(err(format!("replacement {replacement:?} looks like a url, mention or hashtag")));
            }
            if entries.insert(surface.clone(), replacement).is_some() {
                return Err(err(format!("duplicate surface form {surface:?}")));
            }
            lines.push((line_no, surface));
        }
        for (line, surface) in &lines {
            let replacement = &entries[surface];
            if entries.contains_key(replacement) {
                return Err(NormalizeError::RewriteTable {
                    line: *line,
                    reason: format!("replacement {replacement:?} is itself rewritten"),
                });
            }
        }
        Ok(Self { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, surface: &str) -> Option<&str> {
        self.entries.get(surface).map(String::as_str)
    }

    pub fn apply(&self, tokens: &TokenSequence) -> TokenSequence {
        tokens.iter().map(|t| self.rewrite_token(t)).collect()
    }

    fn rewrite_token(&self, token: &str) -> String {
        if is_url(token) {
            URL.to_owned()
        } else if is_mention(token) {
            USER.to_owned()
        } else if is_hashtag(token) {
            HASHTAG.to_owned()
        } else if let Some(rep) = self.entries.get(token) {
            rep.clone()
        } else {
            token.to_owned()
        }
    }
}
