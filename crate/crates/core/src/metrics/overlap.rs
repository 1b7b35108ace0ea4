use std::collections::HashMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::MetricsError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BleuMode {
    /// Pooled modified precisions and a single brevity penalty over the whole corpus.
    #[default]
    Corpus,
    /// Mean of per-sentence scores with add-one smoothing on the bigram precision.
    Sentence,
}

impl FromStr for BleuMode {
    type Err = MetricsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "corpus" => Ok(Self::Corpus),
            "sentence" => Ok(Self::Sentence),
            other => Err(MetricsError::UnknownBleuMode(other.to_owned())),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct BleuStats {
    matches: [u64; 2],
    totals: [u64; 2],
    cand_len: u64,
    ref_len: u64,
}

impl BleuStats {
    fn of(candidate: &[String], reference: &[String]) -> Self {
        let mut stats = Self {
            cand_len: candidate.len() as u64,
            ref_len: reference.len() as u64,
            ..Self::default()
        };
        for n in 1..=2 {
            let ref_counts = ngram_counts(reference, n);
            for (gram, count) in ngram_counts(candidate, n) {
                let clip = ref_counts.get(&gram).copied().unwrap_or(0);
                stats.matches[n - 1] += count.min(clip);
                stats.totals[n - 1] += count;
            }
        }
        stats
    }

    fn add(&mut self, other: &Self) {
        for i in 0..2 {
            self.matches[i] += other.matches[i];
            self.totals[i] += other.totals[i];
        }
        self.cand_len += other.cand_len;
        self.ref_len += other.ref_len;
    }

    fn brevity_penalty(&self) -> f64 {
        if self.cand_len == 0 {
            0.0
        } else if self.cand_len > self.ref_len {
            1.0
        } else {
            (1.0 - self.ref_len as f64 / self.cand_len as f64).exp()
        }
    }

    fn score(&self, smooth_bigrams: bool) -> f64 {
        let ratio = |m: u64, t: u64| if t == 0 { 0.0 } else { m as f64 / t as f64 };
        let p1 = ratio(self.matches[0], self.totals[0]);
        let p2 = if smooth_bigrams {
            (self.matches[1] + 1) as f64 / (self.totals[1] + 1) as f64
        } else {
            ratio(self.matches[1], self.totals[1])
        };
        if p1 == 0.0 || p2 == 0.0 {
            return 0.0;
        }
        self.brevity_penalty() * (p1 * p2).sqrt()
    }
}

fn ngram_counts(tokens: &[String], n: usize) -> HashMap<&[String], u64> {
    let mut counts = HashMap::new();
    for gram in tokens.windows(n) {
        *counts.entry(gram).or_insert(0) += 1;
    }
    counts
}

/// BLEU with uniform weights over unigrams and bigrams.
pub fn bleu2<C, R>(candidates: &[C], references: &[R], mode: BleuMode) -> Result<f64, MetricsError>
where
    C: AsRef<[String]>,
    R: AsRef<[String]>,
{
    if candidates.len() != references.len() {
        return Err(MetricsError::LengthMismatch {
            candidates: candidates.len(),
            references: references.len(),
        });
    }
    if candidates.is_empty() {
        return Err(MetricsError::EmptyInput);
    }
    let pairs = candidates.iter().zip(references).map(|(c, r)| BleuStats::of(c.as_ref(), r.as_ref()));
    Ok(match mode {
        BleuMode::Corpus => {
            let mut total = BleuStats::default();
            for s in pairs {
                total.add(&s);
            }
            total.score(false)
        }
        BleuMode::Sentence => pairs.map(|s| s.score(true)).sum::<f64>() / candidates.len() as f64,
    })
}

/// Smoothed single-pair BLEU@2, used for per-pair diagnostics.
pub fn sentence_bleu2(candidate: &[String], reference: &[String]) -> f64 {
    BleuStats::of(candidate, reference).score(true)
}

/// Length of the longest common subsequence.
pub fn lcs_len(a: &[String], b: &[String]) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            cur[j + 1] = if x == y { prev[j] + 1 } else { prev[j + 1].max(cur[j]) };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// ROUGE-L F1 over the longest common subsequence. Zero when either side is empty.
pub fn rouge_l(candidate: &[String], reference: &[String]) -> f64 {
    let lcs = lcs_len(candidate, reference);
    if lcs == 0 {
        return 0.0;
    }
    let p = lcs as f64 / candidate.len() as f64;
    let r = lcs as f64 / reference.len() as f64;
    2.0 * p * r / (p + r)
}
