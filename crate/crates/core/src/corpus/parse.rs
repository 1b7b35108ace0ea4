use std::io::Read;

use chrono::{DateTime, Utc};

use super::{CorpusError, Tweet, TweetId};

/// Header columns of the customer-support dump, in file order.
pub const CSV_COLUMNS: [&str; 7] = [
    "tweet_id",
    "author_id",
    "inbound",
    "created_at",
    "text",
    "response_tweet_id",
    "in_response_to_tweet_id",
];

/// `Tue Oct 31 22:10:47 +0000 2017` minus the weekday, which is redundant and not checked.
const TIMESTAMP_FORMAT: &str = "%b %d %H:%M:%S %z %Y";

/// A recoverable failure on one data row. The caller decides whether to skip or abort.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("row {row}: {kind}")]
pub struct RowError {
    /// 1-based data row (the header is row 0).
    pub row: u64,
    pub kind: RowErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RowErrorKind {
    #[error("missing column `{0}`")]
    MissingColumn(&'static str),
    #[error("invalid value {value:?} in column `{column}`")]
    InvalidValue { column: &'static str, value: String },
    #[error("unparseable timestamp {0:?}")]
    Timestamp(String),
    #[error("tweet replies to itself")]
    SelfReply,
    #[error("malformed csv record: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy)]
struct ColumnIndex {
    tweet_id: usize,
    author_id: usize,
    inbound: usize,
    created_at: usize,
    text: usize,
    in_response_to: usize,
}

/// Streams tweets out of a CSV dump one record at a time.
pub struct TweetReader<R: Read> {
    records: csv::StringRecordsIntoIter<R>,
    columns: ColumnIndex,
    row: u64,
}

impl<R: Read> TweetReader<R> {
    /// Reads and validates the header. Column order is free, but all seven columns must be present.
    pub fn new(source: R) -> Result<Self, CorpusError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(true)
            .from_reader(source);
        let headers = reader.headers()?.clone();
        let find = |name: &'static str| {
            headers
                .iter()
                .position(|h| h.trim() == name)
                .ok_or(CorpusError::MissingColumn(name))
        };
        // response_tweet_id must exist but is never read: threading follows in_response_to only.
        find("response_tweet_id")?;
        let columns = ColumnIndex {
            tweet_id: find("tweet_id")?,
            author_id: find("author_id")?,
            inbound: find("inbound")?,
            created_at: find("created_at")?,
            text: find("text")?,
            in_response_to: find("in_response_to_tweet_id")?,
        };
        Ok(Self {
            records: reader.into_records(),
            columns,
            row: 0,
        })
    }

    fn parse_record(&self, record: &csv::StringRecord) -> Result<Tweet, RowErrorKind> {
        let field = |idx: usize, name: &'static str| record.get(idx).ok_or(RowErrorKind::MissingColumn(name));
        let c = self.columns;

        let tweet_id = parse_id(field(c.tweet_id, "tweet_id")?).ok_or_else(|| RowErrorKind::InvalidValue {
            column: "tweet_id",
            value: record[c.tweet_id].to_owned(),
        })?;
        let author_id = field(c.author_id, "author_id")?.to_owned();
        let inbound_raw = field(c.inbound, "inbound")?;
        let inbound = match inbound_raw.trim().to_ascii_lowercase().as_str() {
            "true" => true,
            "false" => false,
            _ => {
                return Err(RowErrorKind::InvalidValue {
                    column: "inbound",
                    value: inbound_raw.to_owned(),
                })
            }
        };
        let created_raw = field(c.created_at, "created_at")?;
        let created_at = parse_timestamp(created_raw).ok_or_else(|| RowErrorKind::Timestamp(created_raw.to_owned()))?;
        let text = field(c.text, "text")?.to_owned();
        let parent_raw = field(c.in_response_to, "in_response_to_tweet_id")?;
        let in_response_to = if parent_raw.trim().is_empty() {
            None
        } else {
            Some(parse_id(parent_raw).ok_or_else(|| RowErrorKind::InvalidValue {
                column: "in_response_to_tweet_id",
                value: parent_raw.to_owned(),
            })?)
        };
        if in_response_to == Some(tweet_id) {
            return Err(RowErrorKind::SelfReply);
        }
        Ok(Tweet {
            tweet_id,
            author_id,
            inbound,
            created_at,
            text,
            in_response_to,
        })
    }
}

impl<R: Read> Iterator for TweetReader<R> {
    type Item = Result<Tweet, RowError>;

    fn next(&mut self) -> Option<Self::Item> {
        let record = self.records.next()?;
        self.row += 1;
        let row = self.row;
        Some(match record {
            Ok(record) => self.parse_record(&record).map_err(|kind| RowError { row, kind }),
            Err(e) => Err(RowError {
                row,
                kind: RowErrorKind::Malformed(e.to_string()),
            }),
        })
    }
}

fn parse_timestamp(raw: &str) -> Option<DateTime<Utc>> {
    let (weekday, rest) = raw.trim().split_once(' ')?;
    if weekday.len() != 3 || !weekday.chars().all(|c| c.is_ascii_alphabetic()) {
        return None;
    }
    DateTime::parse_from_str(rest.trim_start(), TIMESTAMP_FORMAT)
        .ok()
        .map(|t| t.with_timezone(&Utc))
}

/// Convenience wrapper over [`TweetReader::new`].
pub fn parse_tweet_stream<R: Read>(source: R) -> Result<TweetReader<R>, CorpusError> {
    TweetReader::new(source)
}

/// Ids are integers; float-looking exports such as `119237.0` are accepted too.
fn parse_id(raw: &str) -> Option<TweetId> {
    let raw = raw.trim();
    raw.parse()
        .ok()
        .or_else(|| raw.strip_suffix(".0").and_then(|s| s.parse().ok()))
}
