use thiserror::Error;

use crate::bits::{BitSet, VertexBits};
use crate::graph::DenseGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DenseError {
    #[error("need k >= 1 and d >= 2 (got k = {k}, d = {d})")]
    BadParameters { k: usize, d: usize },
    #[error("{order} vertices is fewer than 3 * d^(k-1) = {needed}")]
    TooSmall { order: usize, needed: usize },
    #[error("independent set of size k found: {0:?}")]
    Independent(Vec<usize>),
    #[error("deletion ran out of vertices after selecting {0:?}")]
    Exhausted(Vec<usize>),
}

fn pow_sat(d: usize, e: usize) -> usize {
    (0..e).fold(1usize, |acc, _| acc.saturating_mul(d))
}

/// Repeatedly picks a vertex whose non-degree is at least `m/d - 1` in the
/// current vertex set of size `m` (lowest index among those of largest
/// non-degree) and keeps only its non-neighbours. The surviving set has
/// order at least `n / d^(k-1)` and minimum degree above `(1 - 1/d) m`.
///
/// The `k - 1` selected vertices are pairwise non-adjacent, so reaching that
/// many selections exposes an independent `k`-set.
pub fn extract_dense_subgraph(g: &DenseGraph, k: usize, d: usize) -> Result<Vec<usize>, DenseError> {
    if k == 0 || d < 2 {
        return Err(DenseError::BadParameters { k, d });
    }
    let n = g.order();
    let needed = pow_sat(d, k - 1).saturating_mul(3);
    if n < needed {
        return Err(DenseError::TooSmall { order: n, needed });
    }
    let mut cur = BitSet::full(n);
    let mut selected = Vec::new();
    loop {
        let m = cur.count();
        if selected.len() == k - 1 {
            return match cur.first() {
                Some(v) => {
                    selected.push(v);
                    selected.sort_unstable();
                    Err(DenseError::Independent(selected))
                }
                None => Err(DenseError::Exhausted(selected)),
            };
        }
        // non-degree >= m/d - 1, i.e. d * non + d >= m
        let pick = cur.iter().map(|v| (v, m - 1 - g.degree_in(v, &cur))).filter(|&(_, non)| d * non + d >= m).fold(
            None,
            |best: Option<(usize, usize)>, (v, non)| match best {
                Some((_, b)) if b >= non => best,
                _ => Some((v, non)),
            },
        );
        let Some((v, _)) = pick else { break };
        selected.push(v);
        cur.difference_with(g.row(v));
        cur.remove(v);
    }
    Ok(cur.to_vec())
}
