use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bits::{BitSet, VertexBits};
use crate::graph::DenseGraph;

/// Default number of samples before giving up.
pub const DEFAULT_ROBUST_RETRIES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RobustMode {
    /// Refuse instances outside the counting condition.
    Strict,
    /// Sample regardless; the output is still checked.
    BestEffort,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RobustError {
    #[error("subset size {m} exceeds the order {order}")]
    TooLarge { m: usize, order: usize },
    #[error("counting condition fails: m m' = {lhs}, r = {r:.4}, exponent {exponent}")]
    Condition { lhs: usize, r: f64, exponent: i64 },
    #[error("no sample within {attempts} attempts; vertex {vertex} failed {failures} times")]
    RetryCap { attempts: usize, vertex: usize, failures: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RobustSubset {
    pub vertices: Vec<usize>,
    /// Samples drawn, including the accepted one.
    pub samples: usize,
    /// Whether `m m' < r^floor((r-1)d)` held (with `d` floored and
    /// `2d >= m - 1`).
    pub condition_holds: bool,
}

/// `m m' < r^floor((r-1)d)` with `r = m delta / (m' d)`, plus `r >= 1` and
/// `2d >= m - 1`.
fn condition(m: usize, order: usize, delta: usize, d: i64) -> (bool, f64, i64) {
    if d <= 0 || 2 * d + 1 < m as i64 {
        return (false, 0.0, 0);
    }
    let r = (m as f64 * delta as f64) / (order as f64 * d as f64);
    let exponent = ((r - 1.0) * d as f64).floor() as i64;
    let holds = r >= 1.0 && exponent >= 1 && ((m * order) as f64).ln() < exponent as f64 * r.ln();
    (holds, r, exponent)
}

/// A uniformly random `m`-subset in which every vertex has more than
/// `floor(d)` neighbours, resampled until one is found.
pub fn robust_subset(g: &DenseGraph, m: usize, d: f64, seed: u64) -> Result<RobustSubset, RobustError> {
    robust_subset_with(g, m, d, seed, RobustMode::Strict, DEFAULT_ROBUST_RETRIES)
}

pub fn robust_subset_with(
    g: &DenseGraph,
    m: usize,
    d: f64,
    seed: u64,
    mode: RobustMode,
    retries: usize,
) -> Result<RobustSubset, RobustError> {
    let n = g.order();
    if m > n {
        return Err(RobustError::TooLarge { m, order: n });
    }
    let d = d.floor() as i64;
    let (holds, r, exponent) = condition(m, n, g.min_degree(), d);
    if !holds && mode == RobustMode::Strict {
        return Err(RobustError::Condition { lhs: m * n, r, exponent });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = vec![0usize; n];
    for attempt in 1..=retries.max(1) {
        let s = BitSet::from_vertices(n, sample(&mut rng, n, m));
        let mut ok = true;
        for (v, f) in failures.iter_mut().enumerate() {
            if g.degree_in(v, &s) as i64 <= d {
                *f += 1;
                ok = false;
            }
        }
        if ok {
            return Ok(RobustSubset { vertices: s.to_vec(), samples: attempt, condition_holds: holds });
        }
    }
    let (vertex, &worst) =
        failures.iter().enumerate().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0))).expect("nonempty host");
    Err(RobustError::RetryCap { attempts: retries.max(1), vertex, failures: worst })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gnp;

    #[test]
    fn complete_host_first_sample() {
        let g = DenseGraph::complete(40);
        let s = robust_subset_with(&g, 20, 9.0, 1, RobustMode::BestEffort, 10).unwrap();
        assert_eq!((s.vertices.len(), s.samples), (20, 1));
    }

    #[test]
    fn random_dense_host() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = gnp(60, 0.95, &mut rng);
        let s = robust_subset_with(&g, 20, 11.0, 3, RobustMode::BestEffort, 1000).unwrap();
        let set = BitSet::from_vertices(60, s.vertices.iter().copied());
        assert!((0..60).all(|v| g.degree_in(v, &set) > 11));
    }

    #[test]
    fn isolated_vertex_named() {
        let mut g = DenseGraph::complete(12);
        for v in 0..11 {
            g.remove_edge(v, 11);
        }
        let err = robust_subset_with(&g, 6, 1.0, 0, RobustMode::BestEffort, 50).unwrap_err();
        assert!(matches!(err, RobustError::RetryCap { vertex: 11, failures: 50, .. }));
        assert!(matches!(robust_subset(&g, 6, 1.0, 0), Err(RobustError::Condition { .. })));
    }

    #[test]
    fn condition_on_large_dense_host() {
        // K_n: delta = n - 1, r = m (n-1) / (n d).
        let (holds, r, _) = condition(200, 2000, 1999, 120);
        assert!(r > 1.6 && holds);
        assert!(!condition(20, 60, 57, 11).0);
    }
}
