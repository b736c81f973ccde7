//! Finders and verifiers for monochromatic copies, packings, ties and joins.
//!
//! Every finder is exact and deterministic. Colourings on at most 64
//! vertices are searched through single-word adjacency rows, larger ones
//! through wide rows; both paths run the same kernels.

pub(crate) mod embed;
pub(crate) mod packing;
pub(crate) mod tie;

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{BitSet, VertexBits};
use crate::colouring::{Colour, TwoColouring};
use crate::family::GraphFamily;
use crate::graph::{find_clique_in, Host, SmallGraph, MAX_SMALL_ORDER};
use crate::graph6::as_graph6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetectError {
    #[error("candidate sets overlap at vertex {0}")]
    CandidatesOverlap(usize),
    #[error("vertex set has universe {found}, colouring has {expected} vertices")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("need {needed} vertices but only {available} are available")]
    TooFewVertices { needed: usize, available: usize },
}

/// Pattern vertex `i` sits at host vertex `vertices[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    #[serde(with = "as_graph6")]
    pub pattern: SmallGraph,
    pub colour: Colour,
    pub vertices: Vec<usize>,
}

impl Embedding {
    pub fn sorted_vertices(&self) -> Vec<usize> {
        let mut v = self.vertices.clone();
        v.sort_unstable();
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Packing {
    pub colour: Colour,
    pub copies: Vec<Embedding>,
}

impl Packing {
    /// Adds the tie's copy in this packing's colour, provided the tie's
    /// vertex set misses every copy.
    pub fn extended_by_tie(&self, t: &Tie) -> Option<Packing> {
        let clash = self.copies.iter().flat_map(|e| &e.vertices).any(|v| t.vertices.contains(v));
        if clash {
            return None;
        }
        let mut copies = self.copies.clone();
        copies.push(t.embedding(self.colour));
        Some(Packing { colour: self.colour, copies })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tie {
    #[serde(with = "as_graph6")]
    pub pattern: SmallGraph,
    pub vertices: Vec<usize>,
    pub red: Vec<usize>,
    pub blue: Vec<usize>,
}

impl Tie {
    pub fn embedding(&self, colour: Colour) -> Embedding {
        let vertices = match colour {
            Colour::Red => self.red.clone(),
            Colour::Blue => self.blue.clone(),
        };
        Embedding { pattern: self.pattern.clone(), colour, vertices }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Join {
    pub red_part: Vec<usize>,
    pub blue_part: Vec<usize>,
    pub colour: Colour,
}

/// Runs `$body` with `$g` bound to the requested colour class and `$av` to
/// the available set, in the narrow representation when it fits.
macro_rules! with_class {
    ($c:expr, $colour:expr, $avail:expr, |$g:ident, $av:ident| $body:expr) => {{
        let c: &TwoColouring = $c;
        let avail: &BitSet = $avail;
        if c.order() <= MAX_SMALL_ORDER {
            let small = c.graph($colour).to_small().expect("order checked");
            let narrow = avail.to_vertex_set().expect("universe checked");
            let ($g, $av) = (&small, &narrow);
            $body
        } else {
            let ($g, $av) = (c.graph($colour), avail);
            $body
        }
    }};
}

fn check_universe(c: &TwoColouring, s: &BitSet) -> Result<(), DetectError> {
    if s.universe() != c.order() {
        return Err(DetectError::UniverseMismatch { expected: c.order(), found: s.universe() });
    }
    Ok(())
}

fn everything(c: &TwoColouring) -> BitSet {
    BitSet::full(c.order())
}

/// A copy of `h` in one colour.
pub fn find_mono_copy(c: &TwoColouring, h: &SmallGraph, colour: Colour) -> Option<Embedding> {
    find_mono_copy_in(c, h, colour, &everything(c)).expect("full universe")
}

/// A copy of `h` in one colour using only vertices of `avail`.
pub fn find_mono_copy_in(
    c: &TwoColouring,
    h: &SmallGraph,
    colour: Colour,
    avail: &BitSet,
) -> Result<Option<Embedding>, DetectError> {
    check_universe(c, avail)?;
    let map = with_class!(c, colour, avail, |g, av| embed::Embedder::new(g, av).first(h, None));
    Ok(map.map(|vertices| Embedding { pattern: h.clone(), colour, vertices }))
}

/// A copy of some member of `f` in one colour; members are tried smallest
/// first.
pub fn find_family_copy(c: &TwoColouring, f: &GraphFamily, colour: Colour) -> Option<Embedding> {
    f.members().iter().find_map(|m| find_mono_copy(c, m, colour))
}

/// `n` vertex-disjoint copies of `h` in one colour.
pub fn find_disjoint_copies(c: &TwoColouring, h: &SmallGraph, colour: Colour, n: usize) -> Option<Packing> {
    find_family_packing_in(c, std::slice::from_ref(h), colour, n, &everything(c)).expect("full universe")
}

pub fn find_disjoint_copies_in(
    c: &TwoColouring,
    h: &SmallGraph,
    colour: Colour,
    n: usize,
    avail: &BitSet,
) -> Result<Option<Packing>, DetectError> {
    find_family_packing_in(c, std::slice::from_ref(h), colour, n, avail)
}

/// `n` vertex-disjoint copies, each of some member of `f`.
pub fn find_family_packing(c: &TwoColouring, f: &GraphFamily, colour: Colour, n: usize) -> Option<Packing> {
    find_family_packing_in(c, f.members(), colour, n, &everything(c)).expect("full universe")
}

pub fn find_family_packing_in(
    c: &TwoColouring,
    members: &[SmallGraph],
    colour: Colour,
    n: usize,
    avail: &BitSet,
) -> Result<Option<Packing>, DetectError> {
    check_universe(c, avail)?;
    let found = with_class!(c, colour, avail, |g, av| packing::pack(g, members, n, av));
    Ok(found.map(|copies| Packing {
        colour,
        copies: copies
            .into_iter()
            .map(|(i, vertices)| Embedding { pattern: members[i].clone(), colour, vertices })
            .collect(),
    }))
}

/// An H-tie anywhere in `c`.
pub fn find_h_tie(c: &TwoColouring, h: &SmallGraph) -> Option<Tie> {
    find_h_tie_in(c, h, &everything(c), None).expect("full universe")
}

/// An H-tie inside `avail`; with `touch`, the tie must contain a vertex of
/// that set.
pub fn find_h_tie_in(
    c: &TwoColouring,
    h: &SmallGraph,
    avail: &BitSet,
    touch: Option<&BitSet>,
) -> Result<Option<Tie>, DetectError> {
    check_universe(c, avail)?;
    if let Some(t) = touch {
        check_universe(c, t)?;
    }
    let found = if c.order() <= MAX_SMALL_ORDER {
        let r = c.red().to_small().expect("order checked");
        let b = c.blue().to_small().expect("order checked");
        let av = avail.to_vertex_set().expect("universe checked");
        let t = touch.map(|t| t.to_vertex_set().expect("universe checked"));
        tie::find_tie(&r, &b, h, &av, t.as_ref())
    } else {
        tie::find_tie(c.red(), c.blue(), h, avail, touch)
    };
    Ok(found.map(|t| Tie { pattern: h.clone(), vertices: t.vertices, red: t.red, blue: t.blue }))
}

/// A `(k, l)`-join: red `k`-clique in `r_cand`, blue `l`-clique in `b_cand`,
/// all cross edges one colour. Red joins are preferred, then the
/// lexicographically first red part.
pub fn find_join(
    c: &TwoColouring,
    r_cand: &BitSet,
    b_cand: &BitSet,
    k: usize,
    l: usize,
) -> Result<Option<Join>, DetectError> {
    check_universe(c, r_cand)?;
    check_universe(c, b_cand)?;
    if let Some(v) = r_cand.intersection(b_cand).first() {
        return Err(DetectError::CandidatesOverlap(v));
    }
    let found = if c.order() <= MAX_SMALL_ORDER {
        let r = c.red().to_small().expect("order checked");
        let b = c.blue().to_small().expect("order checked");
        let rc = r_cand.to_vertex_set().expect("universe checked");
        let bc = b_cand.to_vertex_set().expect("universe checked");
        join_kernel(&r, &b, &rc, &bc, k, l)
    } else {
        join_kernel(c.red(), c.blue(), r_cand, b_cand, k, l)
    };
    Ok(found)
}

fn join_kernel<H: Host>(red: &H, blue: &H, rc: &H::Set, bc: &H::Set, k: usize, l: usize) -> Option<Join> {
    for colour in [Colour::Red, Colour::Blue] {
        let cross = match colour {
            Colour::Red => red,
            Colour::Blue => blue,
        };
        let mut found = None;
        let _ = embed::for_each_clique(red, k, rc, &mut |rp| {
            let mut common = bc.clone();
            for &v in rp {
                common.intersect_with(cross.neighbours(v));
            }
            if common.count() < l {
                return ControlFlow::Continue(());
            }
            match find_clique_in(blue, l, &common) {
                Some(bp) => {
                    found = Some(Join { red_part: rp.to_vec(), blue_part: bp, colour });
                    ControlFlow::Break(())
                }
                None => ControlFlow::Continue(()),
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn injective_in_range(vs: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    vs.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

pub fn verify_embedding(c: &TwoColouring, e: &Embedding) -> bool {
    e.vertices.len() == e.pattern.order()
        && injective_in_range(&e.vertices, c.order())
        && e.pattern.edges().all(|(u, v)| c.colour(e.vertices[u], e.vertices[v]) == e.colour)
}

/// Every copy valid, all in the packing's colour, pairwise disjoint.
pub fn verify_packing(c: &TwoColouring, p: &Packing) -> bool {
    let all: Vec<usize> = p.copies.iter().flat_map(|e| e.vertices.iter().copied()).collect();
    p.copies.iter().all(|e| e.colour == p.colour && verify_embedding(c, e)) && injective_in_range(&all, c.order())
}

/// [`verify_packing`] plus: `n` copies, each isomorphic to `h`.
pub fn verify_packing_of(c: &TwoColouring, p: &Packing, h: &SmallGraph, n: usize) -> bool {
    p.copies.len() == n && p.copies.iter().all(|e| crate::canon::is_isomorphic(&e.pattern, h)) && verify_packing(c, p)
}

pub fn verify_tie(c: &TwoColouring, t: &Tie) -> bool {
    let k = t.pattern.order();
    let alpha = if k == 0 { 0 } else { t.pattern.independence_number() };
    let inside = |m: &[usize]| m.iter().all(|v| t.vertices.contains(v));
    t.vertices.len() == 2 * k - alpha
        && injective_in_range(&t.vertices, c.order())
        && verify_embedding(c, &t.embedding(Colour::Red))
        && verify_embedding(c, &t.embedding(Colour::Blue))
        && inside(&t.red)
        && inside(&t.blue)
}

pub fn verify_join(c: &TwoColouring, j: &Join) -> bool {
    let all: Vec<usize> = j.red_part.iter().chain(&j.blue_part).copied().collect();
    if !injective_in_range(&all, c.order()) {
        return false;
    }
    let mono = |part: &[usize], colour: Colour| {
        part.iter().enumerate().all(|(i, &u)| part[i + 1..].iter().all(|&v| c.colour(u, v) == colour))
    };
    mono(&j.red_part, Colour::Red)
        && mono(&j.blue_part, Colour::Blue)
        && j.red_part.iter().all(|&u| j.blue_part.iter().all(|&v| c.colour(u, v) == j.colour))
}
