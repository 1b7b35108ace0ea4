//! Synthetic workloads shared by the benchmarks.

use supportbench::metrics::EmbeddingTable;

const TOPICS: [&str; 12] = [
    "battery", "screen", "icloud", "update", "charger", "password", "music", "photos", "wifi", "bluetooth", "keyboard", "storage",
];
const VERBS: [&str; 8] = ["drains", "froze", "crashed", "stopped", "flickers", "disappeared", "reset", "broke"];
const FILLER: [&str; 10] = ["my", "the", "after", "since", "again", "today", "iphone", "ipad", "please", "help"];

/// Deterministic pseudo-tweet built from a small lexicon; `seed` selects the variant.
pub fn synthetic_text(seed: usize, words: usize) -> String {
    let mut state = seed as u64 ^ 0x9E37_79B9_7F4A_7C15;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state as usize
    };
    (0..words)
        .map(|i| match i % 3 {
            0 => TOPICS[next() % TOPICS.len()],
            1 => VERBS[next() % VERBS.len()],
            _ => FILLER[next() % FILLER.len()],
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Question/answer pairs for index benchmarks.
pub fn synthetic_pairs(n: usize) -> Vec<(String, String)> {
    (0..n)
        .map(|i| (synthetic_text(i, 12 + i % 20), synthetic_text(i + 1_000_003, 15 + i % 15)))
        .collect()
}

/// Embeddings covering the synthetic lexicon.
pub fn synthetic_embeddings(dim: usize) -> EmbeddingTable {
    let mut table = EmbeddingTable::new(dim);
    for (w, word) in TOPICS.iter().chain(&VERBS).chain(&FILLER).enumerate() {
        let v = (0..dim).map(|d| (((w * 31 + d * 17) % 23) as f32 - 11.0) / 11.0).collect();
        table.insert(word, v).expect("uniform dimension");
    }
    table
}
