use std::sync::OnceLock;

use serde::Serialize;

use super::{ramsey_number, RamseyOutcome, SolverError, Target, DEFAULT_CAP};
use crate::family::{components_family, d_c_family, d_c_prime_family, d_family, GraphFamily};
use crate::graph::SmallGraph;

/// A closed-form value. The identities behind these hold for `n` beyond an
/// unspecified exponential threshold, so `asymptotic` is always set and
/// `engine` records an exact value only when one was computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaValue {
    pub value: usize,
    /// The base Ramsey number the formula was instantiated with.
    pub base: usize,
    pub asymptotic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine: Option<usize>,
}

impl FormulaValue {
    fn new(value: usize, base: usize) -> Self {
        FormulaValue { value, base, asymptotic: true, engine: None }
    }

    /// Attaches the engine's exact value for the same targets, if it finishes
    /// within `cap`.
    pub fn with_engine(mut self, red: &Target, blue: &Target, cap: usize) -> Result<Self, SolverError> {
        self.engine = ramsey_number(red, blue, cap)?.exact();
        Ok(self)
    }

    /// `None` when no engine value is attached.
    pub fn holds(&self) -> Option<bool> {
        self.engine.map(|e| e == self.value)
    }
}

fn base_exact(red: &Target, blue: &Target, what: impl Fn() -> String) -> Result<usize, SolverError> {
    match ramsey_number(red, blue, DEFAULT_CAP)? {
        RamseyOutcome::Exact(r) => Ok(r.value),
        RamseyOutcome::Bracketed { lower, .. } => Err(SolverError::Dependency {
            what: what(),
            reason: format!("at least {lower}, beyond the search cap {DEFAULT_CAP}"),
        }),
    }
}

/// `r(K_m)` for `m <= 3`, each reproduced by the engine on first use.
fn clique_base(m: usize) -> Result<usize, SolverError> {
    static TABLE: OnceLock<Result<[usize; 4], SolverError>> = OnceLock::new();
    if m > 3 {
        return Err(SolverError::Dependency {
            what: format!("r(K_{m})"),
            reason: "not reproducible by the engine within the search cap".into(),
        });
    }
    let table = TABLE.get_or_init(|| {
        let mut t = [1, 1, 0, 0];
        for (j, slot) in t.iter_mut().enumerate().skip(2) {
            let k = Target::graph(&SmallGraph::complete(j), 1)?;
            *slot = base_exact(&k, &k, || format!("r(K_{j})"))?;
        }
        Ok(t)
    });
    table.as_ref().map(|t| t[m]).map_err(Clone::clone)
}

/// `(2k - 1)n + r(K_{k-1}) - 2` for `r(nK_k)`.
pub fn formula_clique(k: usize, n: usize) -> Result<FormulaValue, SolverError> {
    if n == 0 {
        return Err(SolverError::ZeroCopies);
    }
    if k < 2 {
        return Err(SolverError::Dependency {
            what: format!("r(K_{})", k.saturating_sub(1)),
            reason: "needs k >= 2".into(),
        });
    }
    let base = clique_base(k - 1)?;
    Ok(FormulaValue::new((2 * k - 1) * n + base - 2, base))
}

/// `n|H| + r(D(G), H) - 1` for `r(G, nH)`. For disconnected `H` the base
/// uses the components of `H` in place of `H`.
pub fn formula_asym(g: &SmallGraph, h: &SmallGraph, n: usize) -> Result<FormulaValue, SolverError> {
    if n == 0 {
        return Err(SolverError::ZeroCopies);
    }
    let blue_family = if h.is_connected() { GraphFamily::singleton(h.clone()) } else { components_family(h) };
    let red = Target::new(d_family(g), 1)?;
    let blue = Target::new(blue_family, 1)?;
    let base = base_exact(&red, &blue, || format!("r(D({}), {})", g.to_graph6(), h.to_graph6()))?;
    Ok(FormulaValue::new(n * h.order() + base - 1, base))
}

/// Interval known to contain the additive constant `c(H)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CBracket {
    pub lower: i64,
    pub upper: i64,
    pub exact: bool,
}

/// `[r(D_c(H), D(H)) - 2, r(D_c'(H), D(H)) - 2]`.
pub fn c_bracket(h: &SmallGraph) -> Result<CBracket, SolverError> {
    let d = Target::new(d_family(h), 1)?;
    let name = h.to_graph6();
    let lo = base_exact(&Target::new(d_c_family(h), 1)?, &d, || format!("r(D_c({name}), D({name}))"))?;
    let hi = base_exact(&Target::new(d_c_prime_family(h), 1)?, &d, || format!("r(D_c'({name}), D({name}))"))?;
    let (lower, upper) = (lo as i64 - 2, hi as i64 - 2);
    Ok(CBracket { lower, upper, exact: lower == upper })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_instances() {
        for n in 1..6 {
            assert_eq!(formula_clique(2, n).unwrap().value, 3 * n - 1);
            assert_eq!(formula_clique(3, n).unwrap().value, 5 * n);
            assert_eq!(formula_clique(4, n).unwrap().value, 7 * n + 4);
        }
        assert!(matches!(formula_clique(5, 1), Err(SolverError::Dependency { .. })));
        assert!(formula_clique(1, 1).is_err());
    }

    #[test]
    fn asym_instances() {
        let k3 = SmallGraph::complete(3);
        let k2 = SmallGraph::complete(2);
        for n in 1..5 {
            assert_eq!(formula_asym(&k3, &k2, n).unwrap().value, 2 * n + 1);
            assert_eq!(formula_asym(&k2, &k2, n).unwrap().value, 2 * n);
        }
    }

    #[test]
    fn engine_comparison() {
        let k2 = SmallGraph::complete(2);
        let f = formula_clique(2, 2).unwrap();
        let t = Target::graph(&k2, 2).unwrap();
        assert_eq!(f.with_engine(&t, &t, 8).unwrap().holds(), Some(true));
    }

    #[test]
    fn bracket_for_triangle() {
        // Bounds are ordered, and c(K_3) = r(K_2) - 2 = 0.
        let b = c_bracket(&SmallGraph::complete(3)).unwrap();
        assert!(b.lower <= b.upper);
        assert_eq!(b.lower, 0);
    }
}
