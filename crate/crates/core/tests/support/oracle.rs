//! Brute-force reference implementations, written from the metric definitions and sharing no
//! code with the library. Slow on purpose: clarity over speed.

use std::collections::HashMap;

pub type Table = HashMap<String, Vec<f64>>;

fn is_subsequence(needle: &[&String], hay: &[String]) -> bool {
    let mut it = hay.iter();
    needle.iter().all(|n| it.any(|h| h == *n))
}

/// Longest common subsequence by enumerating every subset of `a`.
pub fn lcs(a: &[String], b: &[String]) -> usize {
    assert!(a.len() <= 20, "exponential oracle");
    let mut best = 0;
    for mask in 0u32..(1 << a.len()) {
        let picked: Vec<&String> = (0..a.len()).filter(|i| mask & (1 << i) != 0).map(|i| &a[i]).collect();
        if picked.len() > best && is_subsequence(&picked, b) {
            best = picked.len();
        }
    }
    best
}

pub fn rouge_l(cand: &[String], reference: &[String]) -> f64 {
    let l = lcs(cand, reference) as f64;
    if l == 0.0 {
        return 0.0;
    }
    let p = l / cand.len() as f64;
    let r = l / reference.len() as f64;
    2.0 * p * r / (p + r)
}

fn count(seq: &[String], gram: &[String]) -> usize {
    if seq.len() < gram.len() {
        return 0;
    }
    (0..=seq.len() - gram.len()).filter(|&i| &seq[i..i + gram.len()] == gram).count()
}

/// (clipped matches, candidate n-gram total) by nested loops over distinct candidate n-grams.
pub fn clipped(cand: &[String], reference: &[String], n: usize) -> (usize, usize) {
    if cand.len() < n {
        return (0, 0);
    }
    let mut matched = 0;
    for i in 0..=cand.len() - n {
        let gram = &cand[i..i + n];
        let first = (0..i).all(|j| &cand[j..j + n] != gram);
        if first {
            matched += count(cand, gram).min(count(reference, gram));
        }
    }
    (matched, cand.len() + 1 - n)
}

fn bleu_from(m1: usize, t1: usize, m2: f64, t2: f64, c: usize, r: usize) -> f64 {
    if c == 0 || t1 == 0 || m1 == 0 || t2 == 0.0 || m2 == 0.0 {
        return 0.0;
    }
    let bp = if c > r { 1.0 } else { (1.0 - r as f64 / c as f64).exp() };
    let p1 = m1 as f64 / t1 as f64;
    let p2 = m2 / t2;
    bp * (p1.ln() / 2.0 + p2.ln() / 2.0).exp()
}

pub fn corpus_bleu2(pairs: &[(Vec<String>, Vec<String>)]) -> f64 {
    let (mut m1, mut t1, mut m2, mut t2, mut c, mut r) = (0, 0, 0, 0, 0, 0);
    for (cand, reference) in pairs {
        let (a, b) = clipped(cand, reference, 1);
        let (x, y) = clipped(cand, reference, 2);
        m1 += a;
        t1 += b;
        m2 += x;
        t2 += y;
        c += cand.len();
        r += reference.len();
    }
    bleu_from(m1, t1, m2 as f64, t2 as f64, c, r)
}

/// Add-one smoothing on the bigram precision only.
pub fn sentence_bleu2(cand: &[String], reference: &[String]) -> f64 {
    let (m1, t1) = clipped(cand, reference, 1);
    let (m2, t2) = clipped(cand, reference, 2);
    bleu_from(m1, t1, m2 as f64 + 1.0, t2 as f64 + 1.0, cand.len(), reference.len())
}

fn vectors(tokens: &[String], table: &Table) -> Vec<Vec<f64>> {
    tokens.iter().filter_map(|t| table.get(t).cloned()).collect()
}

pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let mut dot = 0.0;
    let mut aa = 0.0;
    let mut bb = 0.0;
    for i in 0..a.len() {
        dot += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    if aa == 0.0 || bb == 0.0 {
        0.0
    } else {
        dot / (aa.sqrt() * bb.sqrt())
    }
}

pub fn embedding_average(cand: &[String], reference: &[String], table: &Table) -> Option<f64> {
    let (c, r) = (vectors(cand, table), vectors(reference, table));
    if c.is_empty() || r.is_empty() {
        return None;
    }
    let centroid = |vs: &Vec<Vec<f64>>| {
        let dim = vs[0].len();
        (0..dim)
            .map(|d| vs.iter().map(|v| v[d]).sum::<f64>() / vs.len() as f64)
            .collect::<Vec<_>>()
    };
    Some(cosine(&centroid(&c), &centroid(&r)))
}

pub fn greedy(u1: &[String], u2: &[String], table: &Table) -> Option<f64> {
    let (a, b) = (vectors(u1, table), vectors(u2, table));
    if a.is_empty() || b.is_empty() {
        return None;
    }
    let mut sum = 0.0;
    for x in &a {
        let mut best = f64::NEG_INFINITY;
        for y in &b {
            let c = cosine(x, y);
            if c > best {
                best = c;
            }
        }
        sum += best;
    }
    Some(sum / a.len() as f64)
}

pub fn greedy_matching(u1: &[String], u2: &[String], table: &Table) -> Option<f64> {
    Some((greedy(u1, u2, table)? + greedy(u2, u1, table)?) / 2.0)
}

pub fn extrema(vs: &[Vec<f64>]) -> Vec<f64> {
    let dim = vs[0].len();
    let mut out = Vec::with_capacity(dim);
    for d in 0..dim {
        let mut column: Vec<f64> = vs.iter().map(|v| v[d]).collect();
        column.sort_by(f64::total_cmp);
        let (lo, hi) = (column[0], column[column.len() - 1]);
        out.push(if lo < 0.0 && -lo > hi { lo } else { hi });
    }
    out
}

pub fn vector_extrema(cand: &[String], reference: &[String], table: &Table) -> Option<f64> {
    let (c, r) = (vectors(cand, table), vectors(reference, table));
    if c.is_empty() || r.is_empty() {
        return None;
    }
    Some(cosine(&extrema(&c), &extrema(&r)))
}

/// BM25 over whitespace tokens with unigram and word-trigram fields, straight from the formula.
pub struct Bm25Oracle {
    docs: Vec<Vec<String>>,
    k1: f64,
    b: f64,
}

impl Bm25Oracle {
    pub fn new(docs: &[&str], k1: f64, b: f64) -> Self {
        Self {
            docs: docs.iter().map(|d| d.split_whitespace().map(String::from).collect()).collect(),
            k1,
            b,
        }
    }

    fn field(tokens: &[String], n: usize) -> Vec<Vec<String>> {
        if tokens.len() < n {
            return Vec::new();
        }
        (0..=tokens.len() - n).map(|i| tokens[i..i + n].to_vec()).collect()
    }

    /// Document frequency and average length for a field of `n`-grams.
    pub fn stats(&self, n: usize, term: &[String]) -> (usize, f64) {
        let fields: Vec<Vec<Vec<String>>> = self.docs.iter().map(|d| Self::field(d, n)).collect();
        let df = fields.iter().filter(|f| f.iter().any(|g| g == term)).count();
        let avg = fields.iter().map(Vec::len).sum::<usize>() as f64 / fields.len() as f64;
        (df, avg)
    }

    pub fn score(&self, query: &str, doc: usize) -> f64 {
        let query: Vec<String> = query.split_whitespace().map(String::from).collect();
        let big_n = self.docs.len() as f64;
        let mut total = 0.0;
        for n in [1, 3] {
            let doc_field = Self::field(&self.docs[doc], n);
            for term in Self::field(&query, n) {
                let tf = doc_field.iter().filter(|g| **g == term).count() as f64;
                if tf == 0.0 {
                    continue;
                }
                let (df, avg) = self.stats(n, &term);
                let idf = (1.0 + (big_n - df as f64 + 0.5) / (df as f64 + 0.5)).ln();
                let dl = doc_field.len() as f64;
                total += idf * tf * (self.k1 + 1.0) / (tf + self.k1 * (1.0 - self.b + self.b * dl / avg));
            }
        }
        total
    }
}
