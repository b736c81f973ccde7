//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use copyramsey::canon::canonical_form;
use copyramsey::{Colour, DenseGraph, SmallGraph, TwoColouring};
use rand::seq::SliceRandom;
use rand::Rng;

/// Complement of a random triangle-free graph whose maximum degree is at
/// most `max_deg`, built by adding shuffled pairs greedily.
pub fn co_triangle_free<R: Rng>(n: usize, max_deg: usize, keep: f64, rng: &mut R) -> DenseGraph {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let mut sparse = DenseGraph::new(n);
    for (u, v) in pairs {
        if sparse.degree(u) >= max_deg || sparse.degree(v) >= max_deg || !rng.gen_bool(keep) {
            continue;
        }
        if sparse.row(u).words().iter().zip(sparse.row(v).words()).any(|(a, b)| a & b != 0) {
            continue;
        }
        sparse.add_edge(u, v);
    }
    sparse.complement()
}

/// A host with independence number below `k` (`k` in 2..=3) and minimum
/// degree at least `7n/8`.
pub fn tiling_host<R: Rng>(n: usize, k: usize, rng: &mut R) -> DenseGraph {
    match k {
        2 => DenseGraph::complete(n),
        3 => {
            let max_deg = n - 1 - (7 * n).div_ceil(8);
            co_triangle_free(n, max_deg, 1.0, rng)
        }
        _ => panic!("no generator for k = {k}"),
    }
}

/// Vertex masks of all copies of `h` in one colour (order at most 64).
pub fn naive_copies(c: &TwoColouring, colour: Colour, h: &SmallGraph) -> Vec<u64> {
    fn rec(c: &TwoColouring, colour: Colour, h: &SmallGraph, map: &mut Vec<usize>, out: &mut Vec<u64>) {
        let i = map.len();
        if i == h.order() {
            out.push(map.iter().fold(0u64, |m, &v| m | 1 << v));
            return;
        }
        for v in 0..c.order() {
            if map.contains(&v) {
                continue;
            }
            if (0..i).all(|j| !h.has_edge(i, j) || c.colour(map[j], v) == colour) {
                map.push(v);
                rec(c, colour, h, map, out);
                map.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(c, colour, h, &mut Vec::new(), &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

/// Largest number of disjoint copies: branch on the lowest free vertex
/// (left uncovered, or covered by some copy through it), memoised on the
/// free set.
pub fn naive_max_packing(c: &TwoColouring, colour: Colour, h: &SmallGraph) -> usize {
    fn best(copies: &[u64], free: u64, memo: &mut HashMap<u64, usize>) -> usize {
        if free == 0 {
            return 0;
        }
        if let Some(&b) = memo.get(&free) {
            return b;
        }
        let low = free & free.wrapping_neg();
        let mut b = best(copies, free & !low, memo);
        for &m in copies {
            if m & low != 0 && m & !free == 0 {
                b = b.max(1 + best(copies, free & !m, memo));
            }
        }
        memo.insert(free, b);
        b
    }
    if h.order() == 0 {
        return usize::MAX;
    }
    let full = if c.order() == 64 { u64::MAX } else { (1u64 << c.order()) - 1 };
    best(&naive_copies(c, colour, h), full, &mut HashMap::new())
}

pub fn naive_has_tie(c: &TwoColouring, h: &SmallGraph) -> bool {
    let size = 2 * h.order() - h.independence_number();
    if c.order() < size {
        return false;
    }
    let red = naive_copies(c, Colour::Red, h);
    let blue = naive_copies(c, Colour::Blue, h);
    red.iter().any(|r| blue.iter().any(|b| (r | b).count_ones() as usize <= size))
}

/// Every colouring of `K_n`, red edges given by the bits of a counter.
pub fn all_colourings(n: usize) -> impl Iterator<Item = TwoColouring> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        TwoColouring::from_red_edges(n, &edges).unwrap()
    })
}

/// Brute force: does every colouring of `K_n` have `rc` red copies of `rh`
/// or `bc` blue copies of `bh`?
pub fn naive_arrows(n: usize, rh: &SmallGraph, rc: usize, bh: &SmallGraph, bc: usize) -> bool {
    all_colourings(n)
        .all(|c| naive_max_packing(&c, Colour::Red, rh) >= rc || naive_max_packing(&c, Colour::Blue, bh) >= bc)
}

/// One graph per isomorphism class on `order` vertices.
pub fn graphs_on(order: usize) -> Vec<SmallGraph> {
    let pairs: Vec<(usize, usize)> = (0..order).flat_map(|u| (u + 1..order).map(move |v| (u, v))).collect();
    let mut seen = std::collections::BTreeMap::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = SmallGraph::from_edges(order, &edges).unwrap();
        seen.entry(canonical_form(&g)).or_insert(g);
    }
    seen.into_values().collect()
}
