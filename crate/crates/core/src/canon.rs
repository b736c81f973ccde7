//! Canonical labelling by equitable refinement plus individualisation, in
//! the style of nauty, with automorphism pruning.
//!
//! The certificate of a leaf is the upper triangle of the relabelled
//! adjacency matrix; the canonical form is the largest certificate over all
//! leaves of the search tree. Refinement and target-cell selection depend
//! only on cell order and neighbour counts, so the leaf set is invariant
//! under relabelling and the maximum is an isomorphism invariant.

use crate::bits::VertexSet;
use crate::graph::SmallGraph;

/// Canonical byte string: equal iff the graphs are isomorphic.
pub fn canonical_form(g: &SmallGraph) -> Vec<u8> {
    canonical_labelling(g).1
}

/// Canonically relabelled copy of `g`.
pub fn canonical_graph(g: &SmallGraph) -> SmallGraph {
    let (lab, _) = canonical_labelling(g);
    g.relabel(&lab)
}

pub fn is_isomorphic(a: &SmallGraph, b: &SmallGraph) -> bool {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    if a.degree_sequence() != b.degree_sequence() {
        return false;
    }
    canonical_form(a) == canonical_form(b)
}

/// Returns `(lab, certificate)` where `lab[i]` is the original vertex placed
/// at canonical position `i`.
pub fn canonical_labelling(g: &SmallGraph) -> (Vec<usize>, Vec<u8>) {
    let n = g.order();
    if n == 0 {
        return (Vec::new(), certificate(g, &[]));
    }
    let mut search = Search { g, best: None, first: None, autos: Vec::new() };
    let root = vec![(0..n).collect::<Vec<_>>()];
    search.descend(root, &mut Vec::new());
    let (cert, lab) = search.best.expect("at least one leaf");
    (lab, cert)
}

fn certificate(g: &SmallGraph, lab: &[usize]) -> Vec<u8> {
    let n = lab.len();
    let mut out = Vec::with_capacity(1 + n * n.saturating_sub(1) / 16 + 1);
    out.push(n as u8);
    let mut byte = 0u8;
    let mut nbits = 0;
    for i in 0..n {
        for j in i + 1..n {
            byte = byte << 1 | g.has_edge(lab[i], lab[j]) as u8;
            nbits += 1;
            if nbits == 8 {
                out.push(byte);
                byte = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push(byte << (8 - nbits));
    }
    out
}

type Partition = Vec<Vec<usize>>;

struct Search<'a> {
    g: &'a SmallGraph,
    best: Option<(Vec<u8>, Vec<usize>)>,
    first: Option<(Vec<u8>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, partition: Partition, prefix: &mut Vec<usize>) {
        let p = refine(self.g, partition);
        let target =
            p.iter().enumerate().filter(|(_, c)| c.len() > 1).min_by_key(|(i, c)| (c.len(), *i)).map(|(i, _)| i);
        let Some(ti) = target else {
            self.leaf(p.iter().map(|c| c[0]).collect());
            return;
        };
        let cell = p[ti].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&u| twins(self.g, u, v)) {
                continue;
            }
            if !tried.is_empty() && self.equivalent_under_stabiliser(prefix, &tried, v) {
                continue;
            }
            let mut next = Vec::with_capacity(p.len() + 1);
            next.extend_from_slice(&p[..ti]);
            next.push(vec![v]);
            next.push(cell.iter().copied().filter(|&u| u != v).collect());
            next.extend_from_slice(&p[ti + 1..]);
            prefix.push(v);
            self.descend(next, prefix);
            prefix.pop();
            tried.push(v);
        }
    }

    fn leaf(&mut self, lab: Vec<usize>) {
        let cert = certificate(self.g, &lab);
        for known in [&self.first, &self.best].into_iter().flatten() {
            if known.0 == cert {
                // lab ∘ known⁻¹ is an automorphism
                let mut gamma = vec![0; lab.len()];
                for (i, &x) in known.1.iter().enumerate() {
                    gamma[x] = lab[i];
                }
                if gamma.iter().enumerate().any(|(i, &x)| i != x) && !self.autos.contains(&gamma) {
                    self.autos.push(gamma);
                }
                break;
            }
        }
        if self.first.is_none() {
            self.first = Some((cert.clone(), lab.clone()));
        }
        if self.best.as_ref().is_none_or(|b| cert > b.0) {
            self.best = Some((cert, lab));
        }
    }

    /// Is `v` in the orbit of some tried vertex under the group generated by
    /// the known automorphisms that fix `prefix` pointwise?
    fn equivalent_under_stabiliser(&self, prefix: &[usize], tried: &[usize], v: usize) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut x = x;
            while parent[x] != r {
                let nx = parent[x];
                parent[x] = r;
                x = nx;
            }
            r
        }
        let mut any = false;
        for gamma in &self.autos {
            if prefix.iter().any(|&x| gamma[x] != x) {
                continue;
            }
            any = true;
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&u| find(&mut parent, u) == rv)
    }
}

/// `u` and `v` have the same neighbours apart from each other, so swapping
/// them is an automorphism.
fn twins(g: &SmallGraph, u: usize, v: usize) -> bool {
    g.neighbours(u).without(v) == g.neighbours(v).without(u)
}

/// Equitable refinement: split cells by neighbour counts into each splitter
/// cell until stable. New fragments are ordered by ascending count.
fn refine(g: &SmallGraph, mut cells: Partition) -> Partition {
    'outer: loop {
        for w in 0..cells.len() {
            let wset = VertexSet::from_vertices(cells[w].iter().copied());
            let mut split_any = false;
            let mut next: Partition = Vec::with_capacity(cells.len() + 1);
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(usize, usize)> =
                    cell.iter().map(|&v| (g.neighbours(v).and(wset).len(), v)).collect();
                keyed.sort_unstable();
                let mut start = 0;
                let mut pieces = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                        pieces += 1;
                    }
                }
                if pieces > 1 {
                    split_any = true;
                }
            }
            if split_any {
                cells = next;
                continue 'outer;
            }
        }
        return cells;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> SmallGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        SmallGraph::from_edges(10, &edges).unwrap()
    }

    #[test]
    fn relabelled_petersen_has_same_form() {
        let p = petersen();
        let perm = [3, 7, 1, 9, 0, 4, 8, 2, 6, 5];
        let q = p.relabel(&perm);
        assert_ne!(p, q);
        assert_eq!(canonical_form(&p), canonical_form(&q));
        assert_eq!(canonical_graph(&p), canonical_graph(&q));
    }

    #[test]
    fn distinguishes_simple_cases() {
        let k3 = SmallGraph::complete(3);
        let p3 = SmallGraph::path(3);
        assert_ne!(canonical_form(&k3), canonical_form(&p3));
        assert!(!is_isomorphic(&k3, &p3));
        let p3b = SmallGraph::from_edges(3, &[(1, 0), (0, 2)]).unwrap();
        assert!(is_isomorphic(&p3, &p3b));
        let c6 = SmallGraph::cycle(6);
        let two_k3 = k3.disjoint_copies(2).unwrap();
        assert_eq!(c6.degree_sequence(), two_k3.degree_sequence());
        assert!(!is_isomorphic(&c6, &two_k3));
    }

    #[test]
    fn large_symmetric_graphs_finish() {
        for g in [
            SmallGraph::empty(64),
            SmallGraph::complete(64),
            SmallGraph::complete(3).disjoint_copies(20).unwrap(),
            SmallGraph::cycle(40),
        ] {
            let (lab, _) = canonical_labelling(&g);
            let mut sorted = lab.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..g.order()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn empty_graph_certificate() {
        assert_eq!(canonical_form(&SmallGraph::empty(0)), vec![0]);
        assert_ne!(canonical_form(&SmallGraph::empty(0)), canonical_form(&SmallGraph::empty(1)));
    }
}
