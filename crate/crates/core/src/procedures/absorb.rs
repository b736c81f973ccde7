//! `K_k` tiling by absorption.
//!
//! An absorber `A = X ∪ Y ∪ Z ∪ (local absorbers)` is set aside first. The
//! rest is packed with disjoint cliques; the few uncovered vertices `R` are
//! each completed to a clique with `k - 1` vertices of `X`, the unused part
//! of `X` is trimmed to exactly `ℓ` vertices, and the resilient gadget
//! matches that part together with `Y` onto the blocks of `Z`. Every gadget
//! edge owns a local absorber that is tiled with or without its edge's
//! vertices depending on whether the edge is in the matching.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::gadget::{resilient_bipartite_with, GadgetError, ResilientGadget};
use super::robust::{robust_subset_with, RobustError, RobustMode};
use crate::bits::{BitSet, VertexBits};
use crate::detect::packing::pack;
use crate::graph::{find_clique_in, DenseGraph, SmallGraph};

/// Disjoint `k`-cliques plus fewer than `k` uncovered vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingCertificate {
    #[serde(rename = "pattern", serialize_with = "ser_pattern", deserialize_with = "de_pattern")]
    pub k: usize,
    pub tiles: Vec<Vec<usize>>,
    pub leftover: Vec<usize>,
}

fn ser_pattern<S: Serializer>(k: &usize, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("K_{k}"))
}

fn de_pattern<'de, D: Deserializer<'de>>(d: D) -> Result<usize, D::Error> {
    let s = String::deserialize(d)?;
    s.strip_prefix("K_")
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| serde::de::Error::custom(format!("pattern must look like K_3, got {s:?}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("vertex {vertex} is outside the host (order {order})")]
    OutOfRange { vertex: usize, order: usize },
    #[error("vertex {0} appears twice")]
    Repeated(usize),
    #[error("tile {index} has {size} vertices, not {k}")]
    TileSize { index: usize, size: usize, k: usize },
    #[error("tile {index} misses the edge {u}-{v}")]
    NotAClique { index: usize, u: usize, v: usize },
    #[error("{size} leftover vertices, should be fewer than {k}")]
    LeftoverTooLarge { size: usize, k: usize },
    #[error("vertex {0} is neither tiled nor left over")]
    Uncovered(usize),
    #[error("vertex {0} is not in the region being tiled")]
    Foreign(usize),
    #[error("expected {expected} tiles, found {found}")]
    TileCount { expected: usize, found: usize },
}

impl TilingCertificate {
    /// Checks the certificate against all of `g`.
    pub fn verify(&self, g: &DenseGraph) -> Result<(), CertificateError> {
        let all: Vec<usize> = (0..g.order()).collect();
        self.verify_on(g, &all)
    }

    /// Checks the certificate as a tiling of `g[region]`.
    pub fn verify_on(&self, g: &DenseGraph, region: &[usize]) -> Result<(), CertificateError> {
        let n = g.order();
        let mut inside = vec![false; n];
        for &v in region {
            if v >= n {
                return Err(CertificateError::OutOfRange { vertex: v, order: n });
            }
            inside[v] = true;
        }
        let mut seen = vec![false; n];
        let all = self.tiles.iter().flatten().chain(&self.leftover);
        for &v in all {
            if v >= n {
                return Err(CertificateError::OutOfRange { vertex: v, order: n });
            }
            if !inside[v] {
                return Err(CertificateError::Foreign(v));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(CertificateError::Repeated(v));
            }
        }
        for (index, t) in self.tiles.iter().enumerate() {
            if t.len() != self.k {
                return Err(CertificateError::TileSize { index, size: t.len(), k: self.k });
            }
            for (i, &u) in t.iter().enumerate() {
                for &v in &t[i + 1..] {
                    if !g.has_edge(u, v) {
                        return Err(CertificateError::NotAClique { index, u, v });
                    }
                }
            }
        }
        if self.leftover.len() >= self.k {
            return Err(CertificateError::LeftoverTooLarge { size: self.leftover.len(), k: self.k });
        }
        if let Some(&v) = region.iter().find(|&&v| !seen[v]) {
            return Err(CertificateError::Uncovered(v));
        }
        Ok(())
    }

    fn normalised(mut self) -> Self {
        for t in &mut self.tiles {
            t.sort_unstable();
        }
        self.tiles.sort_unstable();
        self.leftover.sort_unstable();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalAbsorberError {
    #[error("S must have k >= 1 distinct vertices")]
    BadSet,
    #[error("no k-clique among the {available} available vertices")]
    NoClique { available: usize },
    #[error("no (k-1)-clique in the common neighbourhood of {s} and {w} ({available} available vertices there)")]
    NoCommonClique { s: usize, w: usize, available: usize },
    #[error("emitted tiling failed verification: {0}")]
    Certificate(CertificateError),
}

/// `L_S`: a clique `{w_1..w_k}` and, for each `i`, a `(k-1)`-clique `C_i`
/// in the common neighbourhood of `s_i` and `w_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalAbsorber {
    pub set: Vec<usize>,
    pub s: Vec<usize>,
    pub w: Vec<usize>,
    pub cliques: Vec<Vec<usize>>,
    /// `{w_i} ∪ C_i` for each `i`.
    pub alone: TilingCertificate,
    /// `{w_1..w_k}` and `{s_i} ∪ C_i` for each `i`.
    pub with_s: TilingCertificate,
}

/// Builds `L_S` avoiding `S` and `forbidden`, then verifies both tilings.
pub fn local_absorber(g: &DenseGraph, s: &[usize], forbidden: &BitSet) -> Result<LocalAbsorber, LocalAbsorberError> {
    let k = s.len();
    let n = g.order();
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if k == 0 || sorted.len() != k || sorted.iter().any(|&v| v >= n) {
        return Err(LocalAbsorberError::BadSet);
    }
    let mut avail = BitSet::full(n);
    avail.difference_with(forbidden);
    for &v in s {
        avail.remove(v);
    }
    let w = find_clique_in(g, k, &avail).ok_or(LocalAbsorberError::NoClique { available: avail.count() })?;
    for &v in &w {
        avail.remove(v);
    }
    let mut cliques = Vec::with_capacity(k);
    for (&si, &wi) in s.iter().zip(&w) {
        let mut common = g.row(si).intersection(g.row(wi));
        common.intersect_with(&avail);
        let c = find_clique_in(g, k - 1, &common).ok_or(LocalAbsorberError::NoCommonClique {
            s: si,
            w: wi,
            available: common.count(),
        })?;
        for &v in &c {
            avail.remove(v);
        }
        cliques.push(c);
    }
    let mut set: Vec<usize> = w.iter().chain(cliques.iter().flatten()).copied().collect();
    set.sort_unstable();
    let alone = TilingCertificate {
        k,
        tiles: w.iter().zip(&cliques).map(|(&wi, c)| with_vertex(wi, c)).collect(),
        leftover: Vec::new(),
    }
    .normalised();
    let mut tiles = vec![w.clone()];
    tiles.extend(s.iter().zip(&cliques).map(|(&si, c)| with_vertex(si, c)));
    let with_s = TilingCertificate { k, tiles, leftover: Vec::new() }.normalised();
    alone.verify_on(g, &set).map_err(LocalAbsorberError::Certificate)?;
    let mut region = set.clone();
    region.extend_from_slice(s);
    with_s.verify_on(g, &region).map_err(LocalAbsorberError::Certificate)?;
    Ok(LocalAbsorber { set, s: s.to_vec(), w, cliques, alone, with_s })
}

fn with_vertex(v: usize, c: &[usize]) -> Vec<usize> {
    let mut t = c.to_vec();
    t.push(v);
    t.sort_unstable();
    t
}

/// Knobs for [`absorption_tiling`]. Unset fields get scaled defaults.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TilingParams {
    /// Absorber size parameter; `Some(0)` skips the absorber.
    pub ell: Option<usize>,
    /// Minimum number of `X`-neighbours demanded of every vertex.
    pub x_degree: Option<usize>,
    pub gadget_matchings: usize,
    /// Exhaustive resilience check up to this many subsets.
    pub resilience_cap: usize,
    /// Attempts for each randomised step.
    pub retries: usize,
    pub seed: u64,
}

impl Default for TilingParams {
    fn default() -> Self {
        TilingParams { ell: None, x_degree: None, gadget_matchings: 2, resilience_cap: 4096, retries: 1000, seed: 0 }
    }
}

impl TilingParams {
    pub fn seeded(seed: u64) -> Self {
        TilingParams { seed, ..TilingParams::default() }
    }

    /// The unscaled choices: `ℓ = floor(n / (4^4 k^2))`, `20` matchings and
    /// `X`-degree `3ℓ/2`.
    pub fn unscaled(n: usize, k: usize, seed: u64) -> Self {
        let ell = n / (256 * k * k).max(1);
        TilingParams {
            ell: Some(ell),
            x_degree: Some(3 * ell / 2),
            gadget_matchings: 20,
            resilience_cap: 4096,
            retries: 1000,
            seed,
        }
    }
}

/// Smallest `ℓ >= 1` leaving room for a remainder of the unavoidable size:
/// the absorber has `ℓ` vertices modulo `k`, so at best `(n - ℓ) mod k`
/// vertices outside it stay uncovered, each needing `k - 1` vertices of `X`.
fn scaled_ell(n: usize, k: usize) -> usize {
    (1..).find(|&l| l > n || (k - 1) * (n.saturating_sub(l) % k) <= l).unwrap_or(1)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TilingError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("minimum degree {min_degree} is below 7n/8 for n = {order}")]
    MinDegree { min_degree: usize, order: usize },
    #[error("independent set of size k: {0:?}")]
    Independent(Vec<usize>),
    #[error("absorber needs {needed} vertices, more than half of {order}")]
    AbsorberTooLarge { needed: usize, order: usize },
    #[error("gadget: {0}")]
    Gadget(GadgetError),
    #[error("choosing X: {0}")]
    RobustX(RobustError),
    #[error("local absorber for gadget edge ({left}, {block}): {source}")]
    LocalAbsorber { left: usize, block: usize, source: LocalAbsorberError },
    #[error("{} vertices stay uncovered outside the absorber ({remainder:?}); at most {budget} can be absorbed", remainder.len())]
    OutsideRemainder { remainder: Vec<usize>, budget: usize },
    #[error("no (k-1)-clique in X for remainder vertex {vertex} ({free} X-vertices free)")]
    AbsorbRemainder { vertex: usize, free: usize },
    #[error("cannot trim X: no k-clique among the free X-vertices {free:?}")]
    TrimX { free: Vec<usize> },
    #[error("gadget has no perfect matching for X' = {x_prime:?}")]
    GadgetMatching { x_prime: Vec<usize> },
    #[error("assembled tiling failed verification: {0}")]
    Certificate(CertificateError),
}

/// How a tiling was reached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TilingTrace {
    /// `0` when no absorber was built.
    pub ell: usize,
    pub absorber_size: usize,
    /// Vertices left by the packing outside the absorber.
    pub remainder: usize,
}

/// Tiles `g` with disjoint `K_k` leaving fewer than `k` vertices, or
/// explains which step failed. A returned certificate has been verified.
///
/// Without an explicit `ell`, an absorber that would take more than half the
/// host is dropped and the packing alone must leave fewer than `k` vertices.
pub fn absorption_tiling(g: &DenseGraph, k: usize, params: &TilingParams) -> Result<TilingCertificate, TilingError> {
    absorption_tiling_traced(g, k, params).map(|(c, _)| c)
}

pub fn absorption_tiling_traced(
    g: &DenseGraph,
    k: usize,
    params: &TilingParams,
) -> Result<(TilingCertificate, TilingTrace), TilingError> {
    let n = g.order();
    if k == 0 {
        return Err(TilingError::ZeroK);
    }
    if 8 * g.min_degree() < 7 * n {
        return Err(TilingError::MinDegree { min_degree: g.min_degree(), order: n });
    }
    if let Some(w) = g.find_independent_set(k) {
        return Err(TilingError::Independent(w));
    }
    let ell = params.ell.unwrap_or_else(|| scaled_ell(n, k));
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let absorber = if ell == 0 || k == 1 {
        None
    } else {
        match build_absorber(g, k, ell, params, &mut rng) {
            Ok(a) => Some(a),
            Err(TilingError::AbsorberTooLarge { .. }) if params.ell.is_none() => None,
            Err(e) => return Err(e),
        }
    };
    let (cert, trace) = match absorber {
        None => {
            let (tiles, rem) = pack_cliques(g, k, BitSet::full(n), k - 1);
            if rem.count() >= k {
                return Err(TilingError::OutsideRemainder { remainder: rem.to_vec(), budget: k - 1 });
            }
            let trace = TilingTrace { ell: 0, absorber_size: 0, remainder: rem.count() };
            (TilingCertificate { k, tiles, leftover: rem.to_vec() }, trace)
        }
        Some(a) => a.finish(g, k)?,
    };
    let cert = cert.normalised();
    cert.verify(g).map_err(TilingError::Certificate)?;
    Ok((cert, trace))
}

struct Absorber {
    ell: usize,
    gadget: ResilientGadget,
    x: Vec<usize>,
    y: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    /// Local absorber per gadget edge, keyed `(left index, block index)`.
    locals: Vec<((usize, usize), LocalAbsorber)>,
    used: BitSet,
}

fn build_absorber(
    g: &DenseGraph,
    k: usize,
    ell: usize,
    params: &TilingParams,
    rng: &mut ChaCha8Rng,
) -> Result<Absorber, TilingError> {
    let n = g.order();
    let (gadget, _) = resilient_bipartite_with(
        ell,
        params.gadget_matchings,
        params.retries,
        params.resilience_cap,
        rand::Rng::gen(rng),
    )
    .map_err(TilingError::Gadget)?;
    let needed = ell * (3 * k + 1) + gadget.edge_count() * k * k;
    if 2 * needed > n {
        return Err(TilingError::AbsorberTooLarge { needed, order: n });
    }
    let x_degree = params.x_degree.unwrap_or((3 * ell / 2).min(2 * ell - 2));
    let x = robust_subset_with(
        g,
        2 * ell,
        x_degree as f64 - 1.0,
        rand::Rng::gen(rng),
        RobustMode::BestEffort,
        params.retries,
    )
    .map_err(TilingError::RobustX)?
    .vertices;
    let mut used = BitSet::from_vertices(n, x.iter().copied());
    let mut rest: Vec<usize> = (0..n).filter(|&v| !used.contains(v)).collect();
    rest.shuffle(rng);
    let y: Vec<usize> = rest[..2 * ell].to_vec();
    let z = &rest[2 * ell..2 * ell + 3 * ell * (k - 1)];
    let blocks: Vec<Vec<usize>> = z.chunks(k - 1).map(<[usize]>::to_vec).collect();
    for &v in y.iter().chain(z) {
        used.insert(v);
    }
    let mut locals = Vec::with_capacity(gadget.edge_count());
    for (left, block) in gadget.edges() {
        let v = if left < 2 * ell { x[left] } else { y[left - 2 * ell] };
        let mut s = vec![v];
        s.extend_from_slice(&blocks[block]);
        let la = local_absorber(g, &s, &used).map_err(|source| TilingError::LocalAbsorber { left, block, source })?;
        for &u in &la.set {
            used.insert(u);
        }
        locals.push(((left, block), la));
    }
    Ok(Absorber { ell, gadget, x, y, blocks, locals, used })
}

impl Absorber {
    fn finish(self, g: &DenseGraph, k: usize) -> Result<(TilingCertificate, TilingTrace), TilingError> {
        let n = g.order();
        let ell = self.ell;
        let budget = ell / (k - 1);
        let mut outside = BitSet::full(n);
        outside.difference_with(&self.used);
        let (mut tiles, rem) = pack_cliques(g, k, outside, budget);
        if rem.count() > budget {
            return Err(TilingError::OutsideRemainder { remainder: rem.to_vec(), budget });
        }
        let mut free_x = BitSet::from_vertices(n, self.x.iter().copied());
        for v in rem.iter() {
            let nb = g.row(v).intersection(&free_x);
            let c = find_clique_in(g, k - 1, &nb)
                .ok_or(TilingError::AbsorbRemainder { vertex: v, free: free_x.count() })?;
            for &u in &c {
                free_x.remove(u);
            }
            tiles.push(with_vertex(v, &c));
        }
        while free_x.count() >= ell + k {
            let c = find_clique_in(g, k, &free_x).ok_or_else(|| TilingError::TrimX { free: free_x.to_vec() })?;
            for &u in &c {
                free_x.remove(u);
            }
            tiles.push(c);
        }
        let free = free_x.to_vec();
        let (x_keep, leftover) = free.split_at(ell);
        let x_prime: Vec<usize> =
            x_keep.iter().map(|v| self.x.iter().position(|u| u == v).expect("vertex of X")).collect();
        let matching = self.gadget.matching(&x_prime).ok_or(TilingError::GadgetMatching { x_prime })?;
        for ((left, block), la) in &self.locals {
            if matching.binary_search(&(*left, *block)).is_ok() {
                tiles.extend(la.with_s.tiles.iter().cloned());
            } else {
                tiles.extend(la.alone.tiles.iter().cloned());
            }
        }
        debug_assert_eq!((self.blocks.len(), self.y.len()), (3 * ell, 2 * ell));
        let trace = TilingTrace { ell, absorber_size: self.used.count(), remainder: rem.count() };
        Ok((TilingCertificate { k, tiles, leftover: leftover.to_vec() }, trace))
    }
}

/// Greedy maximal packing of `K_k` inside `avail`, followed by local repair
/// (trade one tile for two, or two for three) while more than `target`
/// vertices are uncovered.
fn pack_cliques(g: &DenseGraph, k: usize, avail: BitSet, target: usize) -> (Vec<Vec<usize>>, BitSet) {
    let mut rem = avail;
    let mut tiles = Vec::new();
    while let Some(c) = find_clique_in(g, k, &rem) {
        for &v in &c {
            rem.remove(v);
        }
        tiles.push(c);
    }
    let pattern = [SmallGraph::complete(k)];
    let grow = |tiles: &mut Vec<Vec<usize>>, rem: &mut BitSet, picked: &[usize]| -> bool {
        let mut region = rem.clone();
        for &i in picked {
            for &v in &tiles[i] {
                region.insert(v);
            }
        }
        let Some(found) = pack(g, &pattern, picked.len() + 1, &region) else { return false };
        for &i in picked.iter().rev() {
            tiles.swap_remove(i);
        }
        for (_, map) in found {
            for &v in &map {
                rem.remove(v);
            }
            tiles.push(map);
        }
        true
    };
    'repair: while rem.count() > target {
        for i in 0..tiles.len() {
            if grow(&mut tiles, &mut rem, &[i]) {
                continue 'repair;
            }
        }
        for i in 0..tiles.len() {
            for j in i + 1..tiles.len() {
                if grow(&mut tiles, &mut rem, &[i, j]) {
                    continue 'repair;
                }
            }
        }
        break;
    }
    (tiles, rem)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_hosts() {
        let c = absorption_tiling(&DenseGraph::complete(9), 3, &TilingParams::seeded(1)).unwrap();
        assert_eq!((c.tiles.len(), c.leftover.len()), (3, 0));
        let c = absorption_tiling(&DenseGraph::complete(10), 3, &TilingParams::seeded(1)).unwrap();
        assert_eq!((c.tiles.len(), c.leftover.len()), (3, 1));
    }

    #[test]
    fn absorber_path_on_complete_host() {
        for (n, k) in [(121, 2), (250, 3), (301, 3)] {
            let g = DenseGraph::complete(n);
            let (c, trace) = absorption_tiling_traced(&g, k, &TilingParams::seeded(4)).unwrap();
            assert_eq!(c.tiles.len(), n / k);
            assert!(trace.ell > 0 && trace.absorber_size > 0);
            let forced = TilingParams { ell: Some(scaled_ell(n, k)), ..TilingParams::seeded(4) };
            assert!(absorption_tiling(&g, k, &forced).is_ok());
        }
    }

    #[test]
    fn larger_gadget() {
        let g = DenseGraph::complete(400);
        let params = TilingParams { ell: Some(3), ..TilingParams::seeded(9) };
        let (c, trace) = absorption_tiling_traced(&g, 2, &params).unwrap();
        assert_eq!((c.tiles.len(), trace.ell), (200, 3));
    }

    #[test]
    fn local_absorber_tilings() {
        let k = 3;
        let g = DenseGraph::complete(5 * k * k);
        let la = local_absorber(&g, &[0, 1, 2], &BitSet::new(g.order())).unwrap();
        assert_eq!(la.set.len(), k * k);
        assert_eq!((la.alone.tiles.len(), la.with_s.tiles.len()), (k, k + 1));
    }

    #[test]
    fn certificate_checks() {
        let g = DenseGraph::complete(7);
        let good = TilingCertificate { k: 3, tiles: vec![vec![0, 1, 2], vec![3, 4, 5]], leftover: vec![6] };
        assert!(good.verify(&g).is_ok());
        let short = TilingCertificate { leftover: vec![], ..good.clone() };
        assert_eq!(short.verify(&g), Err(CertificateError::Uncovered(6)));
        let mut h = g.clone();
        h.remove_edge(3, 5);
        assert!(matches!(good.verify(&h), Err(CertificateError::NotAClique { index: 1, .. })));
        let json = serde_json::to_string(&good).unwrap();
        assert!(json.starts_with(r#"{"pattern":"K_3","#));
        assert_eq!(serde_json::from_str::<TilingCertificate>(&json).unwrap(), good);
    }

    #[test]
    fn rejects_sparse_host() {
        let g = DenseGraph::new(20);
        assert!(matches!(absorption_tiling(&g, 2, &TilingParams::seeded(0)), Err(TilingError::MinDegree { .. })));
    }
}
