//! Explicit extremal colourings and the structured "critical" template.
//!
//! Blocks are laid out in a fixed order: `R`, then `B`, then `E` (or `A`,
//! then `C` for the asymmetric construction).

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bits::BitSet;
use crate::colouring::{Colour, PartitionSpec, TwoColouring, MAX_COLOURING_ORDER};
use crate::detect::{self, Embedding, Packing, Tie};
use crate::family::{components_family, d_c_family, d_family, GraphFamily};
use crate::graph::SmallGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("pattern has an isolated vertex")]
    IsolatedVertex,
    #[error("pattern has no vertices")]
    EmptyPattern,
    #[error("pattern is disconnected; use the component-family variant")]
    Disconnected,
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("construction needs {0} vertices, more than the colouring limit")]
    TooLarge(usize),
    #[error("E-colouring contains a {} copy of a forbidden graph at {:?}", .0.colour, .0.vertices)]
    InvalidEColouring(Embedding),
    #[error("no E-colouring available: {0}")]
    Solver(#[from] crate::solver::SolverError),
}

/// An absence the construction promises: no `copies` disjoint copies (each
/// of some member of `family`) in `colour`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub family: GraphFamily,
    pub copies: usize,
    pub colour: Colour,
}

impl Serialize for Claim {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Claim", 3)?;
        st.serialize_field("patterns", &self.family.to_graph6_lines())?;
        st.serialize_field("copies", &self.copies)?;
        st.serialize_field("colour", &self.colour)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionReport {
    pub colouring: TwoColouring,
    pub partition: PartitionSpec,
    pub claims: Vec<Claim>,
}

impl ConstructionReport {
    /// Runs the exact packing detector on every claim; returns the first
    /// packing that refutes one.
    pub fn check_claims(&self) -> Result<(), Packing> {
        for claim in &self.claims {
            if let Some(p) = detect::find_family_packing(&self.colouring, &claim.family, claim.colour, claim.copies) {
                return Err(p);
            }
        }
        Ok(())
    }

    pub fn block(&self, name: &str) -> &[usize] {
        self.partition.block_or_empty(name)
    }
}

fn require_pattern(h: &SmallGraph, n: usize) -> Result<(), ConstructError> {
    if h.order() == 0 {
        return Err(ConstructError::EmptyPattern);
    }
    if h.has_isolated_vertex() {
        return Err(ConstructError::IsolatedVertex);
    }
    if n == 0 {
        return Err(ConstructError::ZeroMultiplicity);
    }
    Ok(())
}

fn check_size(total: usize) -> Result<(), ConstructError> {
    if total > MAX_COLOURING_ORDER {
        return Err(ConstructError::TooLarge(total));
    }
    Ok(())
}

/// `e_col` must avoid every member of `red` in red and of `blue` in blue.
pub fn validate_e_colouring(e_col: &TwoColouring, red: &GraphFamily, blue: &GraphFamily) -> Result<(), ConstructError> {
    for (family, colour) in [(red, Colour::Red), (blue, Colour::Blue)] {
        if let Some(e) = detect::find_family_copy(e_col, family, colour) {
            return Err(ConstructError::InvalidEColouring(e));
        }
    }
    Ok(())
}

/// Consecutive vertex blocks of the given sizes.
struct Layout {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
}

impl Layout {
    fn new(sizes: &[usize]) -> Layout {
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut at = 0;
        for &s in sizes {
            offsets.push(at);
            at += s;
        }
        Layout { sizes: sizes.to_vec(), offsets }
    }

    fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    fn range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.sizes[i]
    }

    fn fill(&self, c: &mut TwoColouring, a: usize, b: usize, colour: Colour) {
        for u in self.range(a) {
            for v in self.range(b) {
                if u != v && (a != b || u < v) {
                    c.set(u, v, colour);
                }
            }
        }
    }

    fn paste(&self, c: &mut TwoColouring, i: usize, inner: &TwoColouring) {
        let off = self.offsets[i];
        for (u, v) in inner.red_edges() {
            c.set(off + u, off + v, Colour::Red);
        }
    }
}

/// `R` red inside (size `(k-α)n-1`), `B` blue inside (size `kn-1`), all
/// `R`-`B` edges red. No monochromatic `nH` in either colour.
pub fn bes_lower(h: &SmallGraph, n: usize) -> Result<ConstructionReport, ConstructError> {
    require_pattern(h, n)?;
    let k = h.order();
    let alpha = h.independence_number();
    let layout = Layout::new(&[(k - alpha) * n - 1, k * n - 1]);
    check_size(layout.total())?;
    let mut c = TwoColouring::all_blue(layout.total());
    layout.fill(&mut c, 0, 0, Colour::Red);
    layout.fill(&mut c, 0, 1, Colour::Red);
    let partition = PartitionSpec::new().with_block("R", layout.range(0)).with_block("B", layout.range(1));
    Ok(ConstructionReport { colouring: c, partition, claims: both_colours(h, n) })
}

fn both_colours(h: &SmallGraph, n: usize) -> Vec<Claim> {
    [Colour::Red, Colour::Blue]
        .into_iter()
        .map(|colour| Claim { family: GraphFamily::singleton(h.clone()), copies: n, colour })
        .collect()
}

/// `A` of size `n|H|-1` all blue, `C` coloured by `e_col`, `A`-`C` edges red.
/// `e_col` must avoid red members of `D(G)` and blue `H`; then there is no
/// red `G` and no blue `nH`. `H` must be connected.
pub fn asym_lower(
    g: &SmallGraph,
    h: &SmallGraph,
    n: usize,
    e_col: &TwoColouring,
) -> Result<ConstructionReport, ConstructError> {
    if h.order() > 0 && !h.is_connected() {
        return Err(ConstructError::Disconnected);
    }
    asym_with(g, h, n, e_col, &GraphFamily::singleton(h.clone()))
}

/// Variant for disconnected `H`: `e_col` avoids every blue component of `H`.
pub fn asym_lower_components(
    g: &SmallGraph,
    h: &SmallGraph,
    n: usize,
    e_col: &TwoColouring,
) -> Result<ConstructionReport, ConstructError> {
    asym_with(g, h, n, e_col, &components_family(h))
}

fn asym_with(
    g: &SmallGraph,
    h: &SmallGraph,
    n: usize,
    e_col: &TwoColouring,
    blue_avoid: &GraphFamily,
) -> Result<ConstructionReport, ConstructError> {
    if g.order() == 0 || h.order() == 0 {
        return Err(ConstructError::EmptyPattern);
    }
    if n == 0 {
        return Err(ConstructError::ZeroMultiplicity);
    }
    validate_e_colouring(e_col, &d_family(g), blue_avoid)?;
    let layout = Layout::new(&[n * h.order() - 1, e_col.order()]);
    check_size(layout.total())?;
    let mut c = TwoColouring::all_blue(layout.total());
    layout.fill(&mut c, 0, 1, Colour::Red);
    layout.paste(&mut c, 1, e_col);
    let partition = PartitionSpec::new().with_block("A", layout.range(0)).with_block("C", layout.range(1));
    let claims = vec![
        Claim { family: GraphFamily::singleton(g.clone()), copies: 1, colour: Colour::Red },
        Claim { family: GraphFamily::singleton(h.clone()), copies: n, colour: Colour::Blue },
    ];
    Ok(ConstructionReport { colouring: c, partition, claims })
}

/// The `R`, `B` construction extended by a block `E` coloured by `e_col`,
/// with `E`-`R` blue and `E`-`B` red. `e_col` must avoid red members of
/// `D_c(H)` and blue members of `D(H)`.
pub fn estimate_lower(h: &SmallGraph, n: usize, e_col: &TwoColouring) -> Result<ConstructionReport, ConstructError> {
    require_pattern(h, n)?;
    if !h.is_connected() {
        return Err(ConstructError::Disconnected);
    }
    validate_e_colouring(e_col, &d_c_family(h), &d_family(h))?;
    let k = h.order();
    let alpha = h.independence_number();
    let mut report = critical_template((k - alpha) * n - 1, k * n - 1, Colour::Red, e_col)?;
    report.claims = both_colours(h, n);
    Ok(report)
}

/// [`estimate_lower`] with a largest valid `E`, found by the solver
/// searching up to `cap` vertices.
pub fn estimate_lower_auto(h: &SmallGraph, n: usize, cap: usize) -> Result<ConstructionReport, ConstructError> {
    require_pattern(h, n)?;
    if !h.is_connected() {
        return Err(ConstructError::Disconnected);
    }
    let e_col = crate::solver::extremal_e_colouring(&d_c_family(h), &d_family(h), cap)?;
    estimate_lower(h, n, &e_col)
}

/// `R` red inside, `B` blue inside, `R`-`B` in `join_colour`, `E`-`R` blue,
/// `E`-`B` red, `E` coloured by `e_col`. Any block may be empty.
pub fn critical_template(
    r_size: usize,
    b_size: usize,
    join_colour: Colour,
    e_col: &TwoColouring,
) -> Result<ConstructionReport, ConstructError> {
    let layout = Layout::new(&[r_size, b_size, e_col.order()]);
    check_size(layout.total())?;
    let mut c = TwoColouring::all_blue(layout.total());
    layout.fill(&mut c, 0, 0, Colour::Red);
    layout.fill(&mut c, 0, 1, join_colour);
    layout.fill(&mut c, 2, 1, Colour::Red);
    layout.paste(&mut c, 2, e_col);
    let partition = PartitionSpec::new()
        .with_block("R", layout.range(0))
        .with_block("B", layout.range(1))
        .with_block("E", layout.range(2));
    Ok(ConstructionReport { colouring: c, partition, claims: Vec::new() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Edge { u: usize, v: usize, colour: Colour },
    Tie(Tie),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// 1: block interiors, 2: cross edges, 3: tie through `E`.
    pub property: u8,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error(transparent)]
    Partition(#[from] crate::colouring::PartitionError),
}

/// Checks the three structural properties and returns every violation found
/// (at most one witness per property). Empty means the structure holds.
pub fn check_critical_structure(
    c: &TwoColouring,
    p: &PartitionSpec,
    h: &SmallGraph,
) -> Result<Vec<Violation>, StructureError> {
    p.require(&["R", "B", "E"])?;
    p.validate(c.order())?;
    let (r, b, e) = (p.block_or_empty("R"), p.block_or_empty("B"), p.block_or_empty("E"));
    let mut out = Vec::new();

    let inner = |block: &[usize], want: Colour| -> Option<Witness> {
        block.iter().enumerate().find_map(|(i, &u)| {
            block[i + 1..].iter().find(|&&v| c.colour(u, v) != want).map(|&v| Witness::Edge {
                u,
                v,
                colour: c.colour(u, v),
            })
        })
    };
    if let Some(w) = inner(r, Colour::Red).or_else(|| inner(b, Colour::Blue)) {
        out.push(Violation { property: 1, witness: w });
    }

    let cross = |x: &[usize], y: &[usize], want: Colour| -> Option<Witness> {
        x.iter().find_map(|&u| {
            y.iter().find(|&&v| c.colour(u, v) != want).map(|&v| Witness::Edge { u, v, colour: c.colour(u, v) })
        })
    };
    let join = match (r.first(), b.first()) {
        (Some(&u), Some(&v)) => c.colour(u, v),
        _ => Colour::Red,
    };
    if let Some(w) = cross(r, b, join).or_else(|| cross(e, r, Colour::Blue)).or_else(|| cross(e, b, Colour::Red)) {
        out.push(Violation { property: 2, witness: w });
    }

    let touch = BitSet::from_vertices(c.order(), e.iter().copied());
    if !touch.is_empty() {
        let all = BitSet::full(c.order());
        if let Some(t) = detect::find_h_tie_in(c, h, &all, Some(&touch)).expect("universes match") {
            out.push(Violation { property: 3, witness: Witness::Tie(t) });
        }
    }
    Ok(out)
}
