//! Embedding-based similarity between a response and its reference.
//!
//! Out-of-table tokens are skipped. When one side has no in-table token at all, the pair is
//! *uncovered* and these functions return `None`; reports count such pairs separately and
//! exclude them from corpus means.

use super::{EmbeddingTable, MetricsError};

fn lookup(tokens: &[String], table: &EmbeddingTable) -> Vec<Vec<f64>> {
    tokens
        .iter()
        .filter_map(|t| table.get(t))
        .map(|v| v.iter().map(|&x| f64::from(x)).collect())
        .collect()
}

type Vectors = Vec<Vec<f64>>;

fn covered(candidate: &[String], reference: &[String], table: &EmbeddingTable) -> Option<(Vectors, Vectors)> {
    let c = lookup(candidate, table);
    let r = lookup(reference, table);
    (!c.is_empty() && !r.is_empty()).then_some((c, r))
}

/// Cosine similarity; zero when either vector has zero norm.
pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}

fn mean(vectors: &[Vec<f64>]) -> Vec<f64> {
    let mut out = vec![0.0; vectors[0].len()];
    for v in vectors {
        for (o, x) in out.iter_mut().zip(v) {
            *o += x;
        }
    }
    let n = vectors.len() as f64;
    out.iter_mut().for_each(|o| *o /= n);
    out
}

/// Cosine between the mean word vectors of each side.
pub fn embedding_average(candidate: &[String], reference: &[String], table: &EmbeddingTable) -> Option<f64> {
    let (c, r) = covered(candidate, reference, table)?;
    Some(cosine(&mean(&c), &mean(&r)))
}

fn greedy_vectors(u1: &[Vec<f64>], u2: &[Vec<f64>]) -> f64 {
    // every word weighs 1
    let total: f64 = u1
        .iter()
        .map(|v| u2.iter().map(|w| cosine(v, w)).fold(f64::NEG_INFINITY, f64::max))
        .sum();
    total / u1.len() as f64
}

/// Mean over `u1` words of the best cosine against any `u2` word. Asymmetric.
pub fn greedy_directional(u1: &[String], u2: &[String], table: &EmbeddingTable) -> Option<f64> {
    let (a, b) = covered(u1, u2, table)?;
    Some(greedy_vectors(&a, &b))
}

/// Average of both greedy directions.
pub fn greedy_matching(u1: &[String], u2: &[String], table: &EmbeddingTable) -> Option<f64> {
    let (a, b) = covered(u1, u2, table)?;
    Some((greedy_vectors(&a, &b) + greedy_vectors(&b, &a)) / 2.0)
}

/// Per coordinate, the maximum when it is at least as large as the magnitude of the minimum,
/// otherwise the minimum.
pub fn extrema_vector(vectors: &[Vec<f64>]) -> Result<Vec<f64>, MetricsError> {
    let first = vectors.first().ok_or(MetricsError::EmptyInput)?;
    let dim = first.len();
    if let Some(bad) = vectors.iter().find(|v| v.len() != dim) {
        return Err(MetricsError::Dimension {
            expected: dim,
            found: bad.len(),
        });
    }
    Ok((0..dim)
        .map(|i| {
            let (lo, hi) = vectors
                .iter()
                .map(|v| v[i])
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
            if hi >= lo.abs() {
                hi
            } else {
                lo
            }
        })
        .collect())
}

/// Cosine between the extrema vectors of each side.
pub fn vector_extrema(candidate: &[String], reference: &[String], table: &EmbeddingTable) -> Option<f64> {
    let (c, r) = covered(candidate, reference, table)?;
    let ec = extrema_vector(&c).expect("non-empty, uniform dimension");
    let er = extrema_vector(&r).expect("non-empty, uniform dimension");
    Some(cosine(&ec, &er))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> EmbeddingTable {
        let mut t = EmbeddingTable::new(2);
        t.insert("a", vec![1.0, 0.0]).unwrap();
        t.insert("b", vec![0.0, 1.0]).unwrap();
        t
    }

    fn s(tokens: &[&str]) -> Vec<String> {
        tokens.iter().map(|t| t.to_string()).collect()
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn average_hand_value() {
        let got = embedding_average(&s(&["a"]), &s(&["a", "b"]), &table()).unwrap();
        assert!((got - 0.5 / 0.5f64.sqrt()).abs() < 1e-12);
        assert!((got - 0.707107).abs() < 1e-6);
    }

    #[test]
    fn greedy_hand_values() {
        let t = table();
        assert_eq!(greedy_directional(&s(&["a", "b"]), &s(&["a"]), &t), Some(0.5));
        assert_eq!(greedy_directional(&s(&["a"]), &s(&["a", "b"]), &t), Some(1.0));
        assert_eq!(greedy_matching(&s(&["a", "b"]), &s(&["a"]), &t), Some(0.75));
        assert_eq!(greedy_matching(&s(&["a"]), &s(&["a"]), &t), Some(1.0));
    }

    #[test]
    fn extrema_cases() {
        assert_eq!(extrema_vector(&[vec![0.3, -2.0]]).unwrap(), [0.3, -2.0]);
        assert_eq!(extrema_vector(&[vec![1.0, -3.0], vec![2.0, 1.0]]).unwrap(), [2.0, -3.0]);
        assert_eq!(extrema_vector(&[vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap(), [0.0, 0.0]);
        // |min| == max ties go to max
        assert_eq!(extrema_vector(&[vec![-2.0], vec![2.0]]).unwrap(), [2.0]);
        assert!(matches!(extrema_vector(&[]), Err(MetricsError::EmptyInput)));
        assert!(matches!(extrema_vector(&[vec![1.0], vec![1.0, 2.0]]), Err(MetricsError::Dimension { .. })));
    }

    #[test]
    fn extrema_hand_value() {
        let got = vector_extrema(&s(&["a", "b"]), &s(&["a"]), &table()).unwrap();
        assert!((got - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn zero_extrema_vector_scores_zero() {
        let mut t = EmbeddingTable::new(1);
        t.insert("z", vec![0.0]).unwrap();
        t.insert("a", vec![1.0]).unwrap();
        assert_eq!(vector_extrema(&s(&["z"]), &s(&["a"]), &t), Some(0.0));
    }

    #[test]
    fn oov_is_skipped_and_all_oov_is_uncovered() {
        let t = table();
        assert_eq!(embedding_average(&s(&["a", "zzz"]), &s(&["a"]), &t), Some(1.0));
        assert_eq!(embedding_average(&s(&["zzz"]), &s(&["a"]), &t), None);
        assert_eq!(greedy_matching(&s(&["a"]), &s(&["<url>"]), &t), None);
        assert_eq!(vector_extrema(&[], &s(&["a"]), &t), None);
    }

    #[test]
    fn identity_is_one() {
        let t = table();
        let x = s(&["a", "b", "a"]);
        assert!((embedding_average(&x, &x, &t).unwrap() - 1.0).abs() < 1e-12);
        assert!((greedy_matching(&x, &x, &t).unwrap() - 1.0).abs() < 1e-12);
        assert!((vector_extrema(&x, &x, &t).unwrap() - 1.0).abs() < 1e-12);
    }
}
