//! Exact arrowing and Ramsey numbers for small targets, plus the closed-form
//! values they are compared against.
//!
//! The engine grows colourings one vertex at a time: level `m` holds one
//! representative of every isomorphism class of colourings of `K_m` that
//! avoid both targets. Avoidance is inherited by induced subcolourings, so
//! level `m + 1` is exactly the set of avoiding one-vertex extensions of
//! level `m`, deduplicated by canonical form. `K_N` arrows the targets iff
//! level `N` is empty.

mod engine;
mod formula;

use serde::Serialize;
use thiserror::Error;

use crate::colouring::TwoColouring;
use crate::family::GraphFamily;
use crate::graph::SmallGraph;

pub use engine::{arrows, enumerate_levels, ramsey_number, ArrowOutcome, Levels};
pub use formula::{c_bracket, formula_asym, formula_clique, CBracket, FormulaValue};

/// Default largest order searched when neither target is trivial.
pub const DEFAULT_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("order {requested} is out of search range (cap {cap})")]
    OutOfRange { requested: usize, cap: usize },
    #[error("target needs at least one copy")]
    ZeroCopies,
    #[error("target family is empty")]
    EmptyFamily,
    #[error("base value {what} is not available: {reason}")]
    Dependency { what: String, reason: String },
    #[error("witness failed re-verification: {0}")]
    Internal(String),
}

/// `copies` vertex-disjoint copies, each of some member of `family`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Target {
    family: GraphFamily,
    copies: usize,
}

impl Target {
    pub fn new(family: GraphFamily, copies: usize) -> Result<Self, SolverError> {
        if copies == 0 {
            return Err(SolverError::ZeroCopies);
        }
        if family.is_empty() {
            return Err(SolverError::EmptyFamily);
        }
        Ok(Target { family, copies })
    }

    /// `copies` disjoint copies of `h`.
    pub fn graph(h: &SmallGraph, copies: usize) -> Result<Self, SolverError> {
        Target::new(GraphFamily::singleton(h.clone()), copies)
    }

    pub fn family(&self) -> &GraphFamily {
        &self.family
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    /// Met by every colouring on at least one vertex.
    pub fn is_trivial(&self) -> bool {
        self.family.has_empty_member() || (self.copies == 1 && self.family.min_order() == Some(1))
    }

    /// Human-readable form such as `2x[Bw]`.
    pub fn describe(&self) -> String {
        format!("{}x[{}]", self.copies, self.family.to_graph6_lines().join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exhaustion {
    /// Candidate extensions examined.
    pub nodes: u64,
    pub scheme: String,
    /// Representatives per level, from order 1 upward.
    pub level_sizes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamseyResult {
    pub value: usize,
    /// Avoiding colouring on `value - 1` vertices.
    pub witness: TwoColouring,
    pub record: Exhaustion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RamseyOutcome {
    Exact(RamseyResult),
    /// The scan hit the cap: the value is at least `lower`, shown by `witness`
    /// on `lower - 1` vertices.
    Bracketed {
        lower: usize,
        witness: TwoColouring,
        record: Exhaustion,
    },
}

impl RamseyOutcome {
    pub fn exact(&self) -> Option<usize> {
        match self {
            RamseyOutcome::Exact(r) => Some(r.value),
            RamseyOutcome::Bracketed { .. } => None,
        }
    }

    pub fn witness(&self) -> &TwoColouring {
        match self {
            RamseyOutcome::Exact(r) => &r.witness,
            RamseyOutcome::Bracketed { witness, .. } => witness,
        }
    }

    pub fn record(&self) -> &Exhaustion {
        match self {
            RamseyOutcome::Exact(r) => &r.record,
            RamseyOutcome::Bracketed { record, .. } => record,
        }
    }
}

/// A largest colouring with no red member of `avoid_red` and no blue member
/// of `avoid_blue`.
pub fn extremal_e_colouring(
    avoid_red: &GraphFamily,
    avoid_blue: &GraphFamily,
    cap: usize,
) -> Result<TwoColouring, SolverError> {
    let red = Target::new(avoid_red.clone(), 1)?;
    let blue = Target::new(avoid_blue.clone(), 1)?;
    match ramsey_number(&red, &blue, cap)? {
        RamseyOutcome::Exact(r) => Ok(r.witness),
        RamseyOutcome::Bracketed { lower, .. } => Err(SolverError::OutOfRange { requested: lower, cap }),
    }
}
