//! Small labelled graphs (adjacency rows as single words) and wide dense
//! graphs for hosts beyond 64 vertices.

use rand::Rng;
use thiserror::Error;

use crate::bits::{BitSet, VertexBits, VertexSet};

/// Largest order a [`SmallGraph`] can hold.
pub const MAX_SMALL_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {order} exceeds the limit of {limit} vertices")]
    TooManyVertices { order: usize, limit: usize },
    #[error("vertex {vertex} is out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex set {set:?} is not a subset of 0..{order}")]
    NotASubset { set: Vec<usize>, order: usize },
}

/// Read-only adjacency access used by the generic search kernels.
pub trait Host: Sync {
    type Set: VertexBits;

    fn order(&self) -> usize;
    fn neighbours(&self, v: usize) -> &Self::Set;

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbours(u).contains(v)
    }

    fn all_vertices(&self) -> Self::Set {
        Self::Set::full(self.order())
    }
}

/// Undirected simple graph on at most 64 vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    order: usize,
    adj: Vec<VertexSet>,
}

impl std::fmt::Debug for SmallGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SmallGraph({}; {:?})", self.order, self.edges().collect::<Vec<_>>())
    }
}

impl SmallGraph {
    /// Edgeless graph on `order` vertices.
    pub fn new(order: usize) -> Result<Self, GraphError> {
        if order > MAX_SMALL_ORDER {
            return Err(GraphError::TooManyVertices { order, limit: MAX_SMALL_ORDER });
        }
        Ok(SmallGraph { order, adj: vec![VertexSet::EMPTY; order] })
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = SmallGraph::new(order)?;
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(order: usize) -> Self {
        SmallGraph::new(order).expect("order within limit")
    }

    pub fn complete(order: usize) -> Self {
        let mut g = SmallGraph::empty(order);
        for v in 0..order {
            g.adj[v] = VertexSet::range(order).without(v);
        }
        g
    }

    pub fn cycle(order: usize) -> Self {
        let mut g = SmallGraph::empty(order);
        if order >= 3 {
            for v in 0..order {
                g.add_edge(v, (v + 1) % order);
            }
        }
        g
    }

    pub fn path(order: usize) -> Self {
        let mut g = SmallGraph::empty(order);
        for v in 1..order {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// `copies` disjoint copies of `self`, copy `i` on vertices `i*|G|..`.
    pub fn disjoint_copies(&self, copies: usize) -> Result<Self, GraphError> {
        let mut g = SmallGraph::new(self.order * copies)?;
        for c in 0..copies {
            let off = c * self.order;
            for (u, v) in self.edges() {
                g.add_edge(u + off, v + off);
            }
        }
        Ok(g)
    }

    pub fn disjoint_union(&self, other: &SmallGraph) -> Result<Self, GraphError> {
        let mut g = SmallGraph::new(self.order + other.order)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.order, v + self.order);
        }
        Ok(g)
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.order {
                return Err(GraphError::VertexOutOfRange { vertex: w, order: self.order });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.add_edge(u, v);
        Ok(())
    }

    /// Panics on out-of-range endpoints or loops.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.order && v < self.order && u != v, "invalid edge ({u},{v})");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::range(self.order)
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.order).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> SmallGraph {
        let all = self.vertices();
        SmallGraph { order: self.order, adj: (0..self.order).map(|v| all.minus(self.adj[v]).without(v)).collect() }
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(|s| s.is_empty())
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].and(s).is_empty())
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.without(v).is_subset_of(self.adj[v]))
    }

    /// Relabel so that vertex `perm[i]` of `self` becomes vertex `i`.
    pub fn relabel(&self, perm: &[usize]) -> SmallGraph {
        assert_eq!(perm.len(), self.order);
        let mut inv = vec![0; self.order];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let mut g = SmallGraph::empty(self.order);
        for (u, v) in self.edges() {
            g.add_edge(inv[u], inv[v]);
        }
        g
    }

    /// Adds vertex `order` adjacent to `nbrs`.
    pub fn extended(&self, nbrs: VertexSet) -> Result<SmallGraph, GraphError> {
        let n = self.order;
        if n >= MAX_SMALL_ORDER {
            return Err(GraphError::TooManyVertices { order: n + 1, limit: MAX_SMALL_ORDER });
        }
        if !nbrs.is_subset_of(self.vertices()) {
            return Err(GraphError::NotASubset { set: nbrs.iter().collect(), order: n });
        }
        let mut adj = self.adj.clone();
        for v in nbrs {
            adj[v].insert(n);
        }
        adj.push(nbrs);
        Ok(SmallGraph { order: n + 1, adj })
    }

    /// Subgraph induced by `s`, relabelled `0..|s|` in ascending original order.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<SmallGraph, GraphError> {
        if !s.is_subset_of(self.vertices()) {
            return Err(GraphError::NotASubset { set: s.iter().collect(), order: self.order });
        }
        let verts: Vec<usize> = s.iter().collect();
        let mut g = SmallGraph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Maximal connected pieces, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier {
                    next = next.or(self.adj[v]);
                }
                frontier = next.minus(comp);
                comp = comp.or(frontier);
            }
            left = left.minus(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// α(G) by branch and bound over the complement's cliques.
    pub fn independence_number(&self) -> usize {
        self.complement().clique_number()
    }

    pub fn clique_number(&self) -> usize {
        fn grow(g: &SmallGraph, size: usize, cands: VertexSet, best: &mut usize) {
            if cands.is_empty() {
                *best = (*best).max(size);
                return;
            }
            if size + greedy_colour_bound(g, cands) <= *best {
                return;
            }
            let mut cands = cands;
            while let Some(v) = cands.first() {
                if size + cands.len() <= *best {
                    return;
                }
                cands.remove(v);
                grow(g, size + 1, cands.and(g.adj[v]), best);
            }
        }
        let mut best = 0;
        grow(self, 0, self.vertices(), &mut best);
        best
    }

    /// Every inclusion-maximal independent set exactly once, sorted as
    /// ascending vertex lists.
    pub fn maximal_independent_sets(&self) -> Vec<VertexSet> {
        let comp = self.complement();
        let mut out = Vec::new();
        bron_kerbosch(&comp, VertexSet::EMPTY, self.vertices(), VertexSet::EMPTY, &mut out);
        out.sort_by_key(|s| s.iter().collect::<Vec<_>>());
        out
    }

    /// Lowest-lexicographic k-clique, if any.
    pub fn find_clique(&self, k: usize) -> Option<VertexSet> {
        find_clique_in(self, k, &self.vertices()).map(VertexSet::from_vertices)
    }

    pub fn to_dense(&self) -> DenseGraph {
        let mut g = DenseGraph::new(self.order);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        g
    }
}

impl Host for SmallGraph {
    type Set = VertexSet;

    fn order(&self) -> usize {
        self.order
    }

    fn neighbours(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }
}

fn greedy_colour_bound(g: &SmallGraph, cands: VertexSet) -> usize {
    let mut left = cands;
    let mut colours = 0;
    while !left.is_empty() {
        colours += 1;
        let mut avail = left;
        while let Some(v) = avail.first() {
            left.remove(v);
            avail = avail.minus(g.adj[v]).without(v);
        }
    }
    colours
}

fn bron_kerbosch(g: &SmallGraph, r: VertexSet, p: VertexSet, x: VertexSet, out: &mut Vec<VertexSet>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    // Tomita pivot: maximise |P ∩ N(u)|.
    let pivot = p.or(x).iter().max_by_key(|&u| (p.and(g.adj[u]).len(), std::cmp::Reverse(u))).expect("P ∪ X non-empty");
    let mut p = p;
    let mut x = x;
    for v in p.minus(g.adj[pivot]) {
        bron_kerbosch(g, r.with(v), p.and(g.adj[v]), x.and(g.adj[v]), out);
        p.remove(v);
        x.insert(v);
    }
}

/// Lowest-lexicographic k-clique inside `within`, as an ascending vertex list.
pub fn find_clique_in<H: Host>(g: &H, k: usize, within: &H::Set) -> Option<Vec<usize>> {
    fn rec<H: Host>(g: &H, need: usize, cands: &H::Set, cur: &mut Vec<usize>) -> bool {
        if need == 0 {
            return true;
        }
        if cands.count() < need {
            return false;
        }
        for v in cands.to_vec() {
            let mut next = cands.intersection(g.neighbours(v));
            // only larger labels, so the first hit is lexicographically least
            for u in next.to_vec() {
                if u <= v {
                    next.remove(u);
                } else {
                    break;
                }
            }
            if next.count() + 1 < need {
                continue;
            }
            cur.push(v);
            if rec(g, need - 1, &next, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::with_capacity(k);
    rec(g, k, within, &mut cur).then_some(cur)
}

/// Simple graph with wide adjacency rows; used for hosts up to thousands of
/// vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseGraph {
    order: usize,
    rows: Vec<BitSet>,
}

impl std::fmt::Debug for DenseGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DenseGraph(order {}, {} edges)", self.order, self.edge_count())
    }
}

impl DenseGraph {
    pub fn new(order: usize) -> Self {
        DenseGraph { order, rows: vec![BitSet::new(order); order] }
    }

    pub fn complete(order: usize) -> Self {
        let mut g = DenseGraph::new(order);
        for v in 0..order {
            let mut row = BitSet::full(order);
            row.remove(v);
            g.rows[v] = row;
        }
        g
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = DenseGraph::new(order);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(GraphError::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at {u}");
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u].remove(v);
        self.rows[v].remove(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn row(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count()).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| self.rows[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> DenseGraph {
        let mut rows: Vec<BitSet> = self.rows.iter().map(|r| r.complement()).collect();
        for (v, row) in rows.iter_mut().enumerate() {
            row.remove(v);
        }
        DenseGraph { order: self.order, rows }
    }

    /// Degree of `v` inside `s`.
    pub fn degree_in(&self, v: usize, s: &BitSet) -> usize {
        self.rows[v].intersection_count(s)
    }

    /// Subgraph induced by `s`, relabelled in ascending order.
    pub fn induced(&self, s: &BitSet) -> DenseGraph {
        let verts = s.to_vec();
        let mut g = DenseGraph::new(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Narrow to a [`SmallGraph`] when the order allows it.
    pub fn to_small(&self) -> Result<SmallGraph, GraphError> {
        let mut g = SmallGraph::new(self.order)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Some independent set of size `k`, if one exists.
    pub fn find_independent_set(&self, k: usize) -> Option<Vec<usize>> {
        let comp = self.complement();
        find_clique_in(&comp, k, &BitSet::full(self.order))
    }
}

impl Host for DenseGraph {
    type Set = BitSet;

    fn order(&self) -> usize {
        self.order
    }

    fn neighbours(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }
}

/// Erdős–Rényi G(n, p).
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> DenseGraph {
    let mut g = DenseGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}
