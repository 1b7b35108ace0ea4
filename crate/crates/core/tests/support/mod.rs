#![allow(dead_code)]

pub mod oracle;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use chrono::{DateTime, Duration, TimeZone, Utc};
use rand::rngs::StdRng;
use rand::Rng;

use supportbench::metrics::EmbeddingTable;

pub const BRAND: &str = "AppleSupport";

pub fn toks(text: &str) -> Vec<String> {
    text.split_whitespace().map(String::from).collect()
}

/// A random metric instance over a small vocabulary. Vector entries are multiples of 1/4 so
/// they survive the f32 round trip exactly.
pub struct Instance {
    pub cand: Vec<String>,
    pub reference: Vec<String>,
    pub table: oracle::Table,
}

impl Instance {
    pub fn random(rng: &mut StdRng) -> Self {
        let vocab = rng.gen_range(1..=8);
        let dim = rng.gen_range(1..=4);
        let sentence = |rng: &mut StdRng| -> Vec<String> {
            let len = rng.gen_range(0..=6);
            (0..len).map(|_| format!("w{}", rng.gen_range(0..vocab))).collect()
        };
        let cand = sentence(rng);
        let reference = sentence(rng);
        let mut table = HashMap::new();
        for w in 0..vocab {
            if rng.gen_bool(0.8) {
                let v = (0..dim).map(|_| f64::from(rng.gen_range(-4i32..=4)) / 4.0).collect();
                table.insert(format!("w{w}"), v);
            }
        }
        Self { cand, reference, table }
    }

    pub fn embedding_table(&self) -> EmbeddingTable {
        to_embedding_table(&self.table)
    }
}

pub fn to_embedding_table(table: &oracle::Table) -> EmbeddingTable {
    let dim = table.values().next().map_or(1, Vec::len);
    let mut out = EmbeddingTable::new(dim);
    let mut words: Vec<_> = table.keys().collect();
    words.sort();
    for w in words {
        out.insert(w, table[w].iter().map(|&x| x as f32).collect()).unwrap();
    }
    out
}

/// Writes a text-format embedding file with a `count dim` header.
pub fn write_embeddings(path: &Path, table: &oracle::Table) {
    let dim = table.values().next().map_or(0, Vec::len);
    let mut words: Vec<_> = table.keys().collect();
    words.sort();
    let mut text = format!("{} {dim}\n", words.len());
    for w in words {
        text.push_str(w);
        for x in &table[w] {
            write!(text, " {x}").unwrap();
        }
        text.push('\n');
    }
    std::fs::write(path, text).unwrap();
}

pub fn epoch() -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2017, 10, 1, 12, 0, 0).unwrap()
}

pub fn timestamp(t: DateTime<Utc>) -> String {
    t.format("%a %b %d %H:%M:%S %z %Y").to_string()
}

/// Builder for tweet CSV dumps in the customer-support layout.
#[derive(Default)]
pub struct Dump {
    rows: Vec<[String; 7]>,
}

impl Dump {
    pub fn tweet(&mut self, id: u64, author: &str, inbound: bool, at: DateTime<Utc>, text: &str, parent: Option<u64>) -> &mut Self {
        self.rows.push([
            id.to_string(),
            author.to_owned(),
            if inbound { "True" } else { "False" }.to_owned(),
            timestamp(at),
            text.to_owned(),
            String::new(),
            parent.map(|p| p.to_string()).unwrap_or_default(),
        ]);
        self
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "tweet_id",
            "author_id",
            "inbound",
            "created_at",
            "text",
            "response_tweet_id",
            "in_response_to_tweet_id",
        ])
        .unwrap();
        for r in &self.rows {
            w.write_record(r).unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }

    pub fn write(&self, path: &Path) {
        std::fs::write(path, self.to_csv()).unwrap();
    }
}

const TOPICS: [(&str, &str); 10] = [
    ("my battery drains fast since the update", "Let's check your battery health in Settings > Battery."),
    ("icloud photos will not sync on my mac", "Make sure you're signed in with the same Apple ID on both devices."),
    ("the screen flickers after dropping my phone", "Please visit an Apple Store so a technician can inspect the display."),
    ("cannot download apps from the app store", "Try signing out of the App Store and back in."),
    ("music app crashes when i open a playlist", "Does this happen with every playlist or only one?"),
    ("my airpods disconnect every few minutes", "Try resetting your AirPods by holding the setup button."),
    ("keyboard typing i turns into a symbol", "A software update fixes this autocorrect issue."),
    ("wifi keeps dropping on my ipad", "Let's reset network settings and rejoin your network."),
    ("storage is full but i deleted photos", "Recently deleted photos still use storage for 30 days."),
    ("face id stopped working this morning", "Restart your iPhone and try setting up Face ID again."),
];

/// One single-exchange dialog per slot: slot `i` answers `days_between * i` after the epoch.
/// Question ids are `1000 + 2i`, answer ids `1001 + 2i`.
pub fn daily_dump(slots: usize, per_day: usize) -> Dump {
    let mut dump = Dump::default();
    for i in 0..slots {
        let at = epoch() + Duration::minutes((i / per_day) as i64 * 24 * 60 + (i % per_day) as i64 * 7);
        let (q, a) = TOPICS[i % TOPICS.len()];
        let qid = 1000 + 2 * i as u64;
        dump.tweet(qid, &format!("cust{i}"), true, at, &format!("@AppleSupport {q} #{}", i % 3), None);
        dump.tweet(qid + 1, BRAND, false, at + Duration::minutes(3), &format!("@cust{i} {a}"), Some(qid));
    }
    dump
}

/// Two interleaved conversations plus an unanswered tweet. The bob dialog is three weeks older
/// than the alice dialog so the temporal split has both a train and a test side.
pub fn seven_tweet_dump() -> Dump {
    let old = epoch();
    let new = epoch() + Duration::days(21);
    let m = |t: DateTime<Utc>, k: i64| t + Duration::minutes(k);
    let mut dump = Dump::default();
    dump.tweet(10, "alice", true, m(new, 0), "@AppleSupport battery drains fast", None)
        .tweet(20, "bob", true, m(old, 1), "@AppleSupport icloud will not sync", None)
        .tweet(11, BRAND, false, m(new, 2), "@alice which iOS version?", Some(10))
        .tweet(21, BRAND, false, m(old, 3), "@bob try signing out", Some(20))
        .tweet(12, "alice", true, m(new, 4), "@AppleSupport iOS 11.1", Some(11))
        .tweet(13, BRAND, false, m(new, 5), "@alice update to 11.1.1", Some(12))
        .tweet(30, "carol", true, m(new, 6), "@AppleSupport nobody answers me", None);
    dump
}
