use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;

use super::{Exhaustion, RamseyOutcome, RamseyResult, SolverError, Target};
use crate::bits::VertexSet;
use crate::canon::canonical_labelling;
use crate::colouring::{Colour, TwoColouring};
use crate::detect::embed::Embedder;
use crate::detect::{self, packing::pack};
use crate::graph::SmallGraph;

/// A canonical certificate with the colouring (red graph) it came from.
type Keyed = (Vec<u8>, SmallGraph);

/// Representatives of avoiding colourings (as red graphs) for orders
/// `0..levels.len()`. Level 0 is the empty colouring; scans start at 1.
#[derive(Debug, Clone)]
pub struct Levels {
    pub levels: Vec<Vec<SmallGraph>>,
    pub nodes: u64,
    pub colour_swap: bool,
}

impl Levels {
    /// Smallest order `>= 1` with no avoiding colouring, if reached.
    pub fn threshold(&self) -> Option<usize> {
        (1..self.levels.len()).find(|&m| self.levels[m].is_empty())
    }

    pub fn scheme(&self) -> String {
        let mut s = String::from("vertex-extension/canonical-dedupe");
        if self.colour_swap {
            s.push_str("/colour-swap");
        }
        s
    }

    fn record(&self, started: Instant) -> Exhaustion {
        Exhaustion {
            nodes: self.nodes,
            scheme: self.scheme(),
            level_sizes: self.levels[1..].iter().map(Vec::len).collect(),
            elapsed_ms: Some(started.elapsed().as_millis() as u64),
        }
    }
}

struct Side<'a> {
    members: &'a [SmallGraph],
    copies: usize,
    free: bool,
}

impl<'a> Side<'a> {
    fn new(t: &'a Target) -> Self {
        Side { members: t.family().members(), copies: t.copies(), free: t.family().has_empty_member() }
    }

    /// The graph avoids the target, given that it did before vertex `v` was
    /// added.
    fn avoids_after_adding(&self, g: &SmallGraph, v: usize) -> bool {
        if self.free {
            return false;
        }
        let all = g.vertices();
        let emb = Embedder::new(g, &all);
        if !self.members.iter().any(|m| emb.first(m, Some(v)).is_some()) {
            return true;
        }
        self.copies > 1 && pack(g, self.members, self.copies, &all).is_none()
    }
}

fn canonical_pair(g: &SmallGraph, swap: bool) -> (Vec<u8>, SmallGraph) {
    let (lab, cert) = canonical_labelling(g);
    if swap {
        let comp = g.complement();
        let (clab, ccert) = canonical_labelling(&comp);
        if ccert < cert {
            return (ccert, comp.relabel(&clab));
        }
    }
    (cert, g.relabel(&lab))
}

/// Builds levels until one is empty or `max_order` is reached.
pub fn enumerate_levels(red: &Target, blue: &Target, max_order: usize) -> Levels {
    let swap = red == blue;
    let (rs, bs) = (Side::new(red), Side::new(blue));
    let mut levels = vec![vec![SmallGraph::empty(0)]];
    let mut nodes = 0u64;
    for m in 0..max_order {
        let parents = &levels[m];
        if parents.is_empty() {
            break;
        }
        let batches: Vec<(u64, Vec<Keyed>)> = parents
            .par_iter()
            .map(|p| {
                let mut local: HashMap<Vec<u8>, SmallGraph> = HashMap::new();
                let mut count = 0u64;
                for mask in 0u64..1 << m {
                    count += 1;
                    let child = p.extended(VertexSet(mask)).expect("below the small-graph limit");
                    if !rs.avoids_after_adding(&child, m) {
                        continue;
                    }
                    let blue_child = child.complement();
                    if !bs.avoids_after_adding(&blue_child, m) {
                        continue;
                    }
                    let (cert, rep) = canonical_pair(&child, swap);
                    local.entry(cert).or_insert(rep);
                }
                (count, local.into_iter().collect())
            })
            .collect();
        let mut next: Vec<(Vec<u8>, SmallGraph)> = Vec::new();
        for (count, batch) in batches {
            nodes += count;
            next.extend(batch);
        }
        next.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        next.dedup_by(|a, b| a.0 == b.0);
        levels.push(next.into_iter().map(|(_, g)| g).collect());
    }
    Levels { levels, nodes, colour_swap: swap }
}

fn cap_for(red: &Target, blue: &Target, n: usize, cap: usize) -> Result<(), SolverError> {
    if n > cap && !red.is_trivial() && !blue.is_trivial() {
        return Err(SolverError::OutOfRange { requested: n, cap });
    }
    Ok(())
}

fn verified_witness(g: &SmallGraph, red: &Target, blue: &Target) -> Result<TwoColouring, SolverError> {
    let c = TwoColouring::from_red_small(g);
    if c.order() == 0 {
        return Ok(c);
    }
    for (t, colour) in [(red, Colour::Red), (blue, Colour::Blue)] {
        if let Some(p) = detect::find_family_packing(&c, t.family(), colour, t.copies()) {
            return Err(SolverError::Internal(format!("{colour} packing {p:?} in witness")));
        }
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowOutcome {
    pub arrows: bool,
    /// Avoiding colouring of `K_N` when `arrows` is false.
    pub witness: Option<TwoColouring>,
    pub record: Exhaustion,
}

/// Does every colouring of `K_n` contain the red target in red or the blue
/// target in blue?
pub fn arrows(n: usize, red: &Target, blue: &Target, cap: usize) -> Result<ArrowOutcome, SolverError> {
    cap_for(red, blue, n, cap)?;
    let started = Instant::now();
    let levels = enumerate_levels(red, blue, n);
    let record = levels.record(started);
    if n == 0 {
        return Ok(ArrowOutcome { arrows: false, witness: Some(TwoColouring::all_blue(0)), record });
    }
    match levels.levels.get(n).and_then(|l| l.first()) {
        Some(g) => Ok(ArrowOutcome { arrows: false, witness: Some(verified_witness(g, red, blue)?), record }),
        None => Ok(ArrowOutcome { arrows: true, witness: None, record }),
    }
}

/// Smallest `N >= 1` with `K_N` arrowing the targets, searched up to `cap`.
pub fn ramsey_number(red: &Target, blue: &Target, cap: usize) -> Result<RamseyOutcome, SolverError> {
    let started = Instant::now();
    let limit = if red.is_trivial() || blue.is_trivial() { cap.max(1) } else { cap };
    let levels = enumerate_levels(red, blue, limit);
    let record = levels.record(started);
    match levels.threshold() {
        Some(value) => {
            let witness = verified_witness(&levels.levels[value - 1][0], red, blue)?;
            Ok(RamseyOutcome::Exact(RamseyResult { value, witness, record }))
        }
        None => {
            let top = levels.levels.len() - 1;
            let witness = verified_witness(&levels.levels[top][0], red, blue)?;
            Ok(RamseyOutcome::Bracketed { lower: top + 1, witness, record })
        }
    }
}
