//! Dialog dataset construction from raw customer-support tweet dumps.
//!
//! The pipeline is `parse -> thread -> extract -> filter -> split`:
//!
//! * [`TweetReader`] streams [`Tweet`]s out of the CSV dump,
//! * [`thread_conversations`] links replies into per-brand [`Dialog`]s,
//! * [`extract_dialog_tuples`] turns each dialog into (context, question, answer) units,
//! * [`RedirectFilter`] drops answers that only point the customer elsewhere,
//! * [`temporal_split`] keeps the newest tuples for testing and a bounded window before them for training.

mod parse;
mod redirect;
mod split;
mod thread;
mod tuples;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

pub use parse::{parse_tweet_stream, RowError, RowErrorKind, TweetReader, CSV_COLUMNS};
pub use redirect::{RedirectFilter, DEFAULT_REDIRECT_PATTERNS};
pub use split::{temporal_split, Split, SplitConfig};
pub use thread::thread_conversations;
pub use tuples::extract_dialog_tuples;

pub type TweetId = u64;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("csv input: {0}")]
    Csv(#[from] csv::Error),
    #[error("csv header is missing required column `{0}`")]
    MissingColumn(&'static str),
    #[error(transparent)]
    Row(#[from] RowError),
    #[error("invalid redirect pattern: {0}")]
    Pattern(#[from] regex::Error),
    #[error("at least one redirect pattern is required")]
    NoPatterns,
    #[error("invalid split configuration: train window {train} days must exceed test window {test} days > 0")]
    InvalidSplitConfig { train: u32, test: u32 },
    #[error("no tuples to split")]
    NoTuples,
    #[error("{0} split is empty")]
    EmptySplit(&'static str),
}

/// A single post from the dump.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tweet {
    pub tweet_id: TweetId,
    pub author_id: String,
    /// `true` when written by a customer rather than a support account.
    pub inbound: bool,
    pub created_at: DateTime<Utc>,
    pub text: String,
    pub in_response_to: Option<TweetId>,
}

/// A threaded conversation rooted at a customer tweet.
///
/// Turns are ordered chronologically, and a reply never precedes the tweet it answers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dialog {
    pub dialog_id: TweetId,
    pub turns: Vec<Tweet>,
    pub brand: String,
}

/// A (context, question, answer) training unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DialogTuple {
    pub dialog_id: TweetId,
    /// Position of the answer within its dialog.
    pub turn_index: usize,
    /// Every turn before the question, oldest first, separated by a single space.
    pub context: String,
    pub question: String,
    pub answer: String,
    #[serde(with = "iso_seconds")]
    pub answer_time: DateTime<Utc>,
}

impl DialogTuple {
    /// The retrieval/normalization input: context followed by the question.
    pub fn query_text(&self) -> String {
        join_context(&self.context, &self.question)
    }
}

pub(crate) fn join_context(context: &str, question: &str) -> String {
    if context.is_empty() {
        question.to_owned()
    } else {
        format!("{context} {question}")
    }
}

/// `2017-10-31T22:10:47Z` on the wire.
pub(crate) mod iso_seconds {
    use chrono::{DateTime, SecondsFormat, Utc};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(t: &DateTime<Utc>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&t.to_rfc3339_opts(SecondsFormat::Secs, true))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<DateTime<Utc>, D::Error> {
        let raw = String::deserialize(d)?;
        DateTime::parse_from_rfc3339(&raw)
            .map(|t| t.with_timezone(&Utc))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use chrono::TimeZone;

    pub fn at(minutes: i64) -> DateTime<Utc> {
        Utc.with_ymd_and_hms(2017, 10, 1, 0, 0, 0).unwrap() + chrono::Duration::minutes(minutes)
    }

    pub fn tweet(id: TweetId, author: &str, inbound: bool, minute: i64, text: &str, parent: Option<TweetId>) -> Tweet {
        Tweet {
            tweet_id: id,
            author_id: author.to_owned(),
            inbound,
            created_at: at(minute),
            text: text.to_owned(),
            in_response_to: parent,
        }
    }
}
