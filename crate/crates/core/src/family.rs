//! Derived families: delete a maximal (or maximum) independent set, optionally
//! keep one connected component of what is left.

use std::collections::BTreeMap;

use crate::canon::{canonical_form, canonical_graph};
use crate::graph::SmallGraph;

/// Isomorphism-free set of graphs, each stored in canonical labelling and
/// sorted by `(order, canonical form)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GraphFamily {
    members: Vec<SmallGraph>,
}

impl std::fmt::Debug for GraphFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.members.iter().map(|g| g.to_graph6())).finish()
    }
}

impl GraphFamily {
    pub fn new<I: IntoIterator<Item = SmallGraph>>(graphs: I) -> Self {
        let mut by_key: BTreeMap<(usize, Vec<u8>), SmallGraph> = BTreeMap::new();
        for g in graphs {
            by_key.entry((g.order(), canonical_form(&g))).or_insert_with(|| canonical_graph(&g));
        }
        GraphFamily { members: by_key.into_values().collect() }
    }

    pub fn singleton(g: SmallGraph) -> Self {
        GraphFamily::new([g])
    }

    pub fn members(&self) -> &[SmallGraph] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: &SmallGraph) -> bool {
        let key = canonical_form(g);
        self.members.iter().any(|m| m.order() == g.order() && canonical_form(m) == key)
    }

    /// Some member has no vertices, so every colouring contains it.
    pub fn has_empty_member(&self) -> bool {
        self.members.iter().any(|m| m.order() == 0)
    }

    pub fn min_order(&self) -> Option<usize> {
        self.members.iter().map(SmallGraph::order).min()
    }

    /// Equal as sets of isomorphism classes.
    pub fn same_classes(&self, other: &GraphFamily) -> bool {
        self.members.len() == other.members.len()
            && self.members.iter().zip(&other.members).all(|(a, b)| canonical_form(a) == canonical_form(b))
    }

    pub fn is_subfamily_of(&self, other: &GraphFamily) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }

    pub fn to_graph6_lines(&self) -> Vec<String> {
        self.members.iter().map(SmallGraph::to_graph6).collect()
    }
}

impl FromIterator<SmallGraph> for GraphFamily {
    fn from_iter<I: IntoIterator<Item = SmallGraph>>(iter: I) -> Self {
        GraphFamily::new(iter)
    }
}

fn remainders(g: &SmallGraph, maximum_only: bool) -> Vec<SmallGraph> {
    let sets = g.maximal_independent_sets();
    let alpha = sets.iter().map(|s| s.len()).max().unwrap_or(0);
    sets.into_iter()
        .filter(|s| !maximum_only || s.len() == alpha)
        .map(|s| {
            g.induced_subgraph(g.vertices().minus(s)).expect("complement of an independent set is a vertex subset")
        })
        .collect()
}

fn components_of(g: &SmallGraph) -> impl Iterator<Item = SmallGraph> + '_ {
    g.connected_components().into_iter().map(|c| g.induced_subgraph(c).expect("component is a vertex subset"))
}

/// `G − I` over all maximal independent sets `I`.
pub fn d_family(g: &SmallGraph) -> GraphFamily {
    GraphFamily::new(remainders(g, false))
}

/// `H − I` over independent sets of size `α(H)`.
pub fn d_prime_family(h: &SmallGraph) -> GraphFamily {
    GraphFamily::new(remainders(h, true))
}

/// Components of members of [`d_family`].
pub fn d_c_family(h: &SmallGraph) -> GraphFamily {
    components_family_of(&d_family(h))
}

/// Components of members of [`d_prime_family`].
pub fn d_c_prime_family(h: &SmallGraph) -> GraphFamily {
    components_family_of(&d_prime_family(h))
}

/// Connected components of `h`.
pub fn components_family(h: &SmallGraph) -> GraphFamily {
    GraphFamily::new(components_of(h))
}

/// Components of every member, pooled. The empty graph has no components and
/// contributes nothing, unless every member is empty, in which case the
/// empty graph itself is kept so the family stays non-empty.
pub fn components_family_of(f: &GraphFamily) -> GraphFamily {
    let pooled: Vec<SmallGraph> = f.members().iter().flat_map(components_of).collect();
    if pooled.is_empty() && !f.is_empty() {
        return GraphFamily::singleton(SmallGraph::empty(0));
    }
    GraphFamily::new(pooled)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    D,
    DPrime,
    DC,
    DCPrime,
    Components,
}

impl FamilyKind {
    pub fn compute(self, h: &SmallGraph) -> GraphFamily {
        match self {
            FamilyKind::D => d_family(h),
            FamilyKind::DPrime => d_prime_family(h),
            FamilyKind::DC => d_c_family(h),
            FamilyKind::DCPrime => d_c_prime_family(h),
            FamilyKind::Components => components_family(h),
        }
    }
}
