//! Backtracking subgraph embedding over bitset hosts.

use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::bits::VertexBits;
use crate::graph::{Host, SmallGraph};

/// Twin classes of a host restricted to an available set: vertices with the
/// same neighbourhood inside the set (apart from each other). Swapping two
/// members is an automorphism of the induced host, so searches only need
/// copies that use a prefix of each class.
pub(crate) struct TwinClasses {
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl TwinClasses {
    /// `split` further separates vertices by membership, so the symmetry
    /// also preserves that set.
    pub fn new<H: Host>(g: &H, avail: &H::Set, split: Option<&H::Set>) -> Self {
        let n = g.order();
        let verts = avail.to_vec();
        let tag = |v: usize| split.is_some_and(|s| s.contains(v));
        let mut open: HashMap<(H::Set, bool), Vec<usize>> = HashMap::new();
        for &v in &verts {
            open.entry((g.neighbours(v).intersection(avail), tag(v))).or_default().push(v);
        }
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut closed: HashMap<(H::Set, bool), Vec<usize>> = HashMap::new();
        for &v in &verts {
            let key = (g.neighbours(v).intersection(avail), tag(v));
            if open[&key].len() > 1 {
                continue;
            }
            let mut row = key.0;
            row.insert(v);
            closed.entry((row, key.1)).or_default().push(v);
        }
        members.extend(open.into_values().filter(|c| c.len() > 1));
        members.extend(closed.into_values());
        for c in &mut members {
            c.sort_unstable();
        }
        members.sort_unstable();
        let mut class_of = vec![usize::MAX; n];
        for (i, c) in members.iter().enumerate() {
            for &v in c {
                class_of[v] = i;
            }
        }
        TwinClasses { class_of, members }
    }

    pub fn class(&self, v: usize) -> &[usize] {
        match self.class_of.get(v) {
            Some(&c) if c != usize::MAX => &self.members[c],
            _ => &[],
        }
    }

    /// All still-available class members below `v` are already used.
    pub fn prefix_ok<S: VertexBits>(&self, v: usize, avail: &S, used: &S) -> bool {
        self.class(v).iter().take_while(|&&u| u < v).all(|&u| !avail.contains(u) || used.contains(u))
    }
}

/// Matching order for a pattern: each vertex after the first is preceded by
/// as many of its neighbours as possible.
struct Plan {
    verts: Vec<usize>,
    back: Vec<Vec<usize>>,
    twin_prev: Vec<Option<usize>>,
}

fn pattern_twins(p: &SmallGraph, u: usize, v: usize) -> bool {
    p.neighbours(u).without(v) == p.neighbours(v).without(u)
}

impl Plan {
    fn new(p: &SmallGraph, forced: Option<usize>) -> Plan {
        let k = p.order();
        let mut verts: Vec<usize> = Vec::with_capacity(k);
        let mut placed = crate::bits::VertexSet::EMPTY;
        if let Some(f) = forced {
            verts.push(f);
            placed.insert(f);
        }
        while verts.len() < k {
            let next = (0..k)
                .filter(|&v| !placed.contains(v))
                .max_by_key(|&v| (p.neighbours(v).and(placed).len(), p.degree(v), std::cmp::Reverse(v)))
                .expect("unplaced vertex");
            verts.push(next);
            placed.insert(next);
        }
        let pos_of = |v: usize| verts.iter().position(|&x| x == v).expect("placed");
        let back = verts
            .iter()
            .enumerate()
            .map(|(i, &v)| p.neighbours(v).iter().map(pos_of).filter(|&j| j < i).collect())
            .collect();
        let twin_prev = verts
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                if Some(v) == forced {
                    return None;
                }
                (0..i).rev().find(|&j| Some(verts[j]) != forced && pattern_twins(p, verts[j], v))
            })
            .collect();
        Plan { verts, back, twin_prev }
    }
}

/// Embedding search inside `avail`. Optional constraints: a host twin
/// partition (only prefix-closed copies are produced) and a budget of at most
/// `max` vertices outside a given set.
pub(crate) struct Embedder<'a, H: Host> {
    pub host: &'a H,
    pub avail: &'a H::Set,
    pub classes: Option<&'a TwinClasses>,
    pub budget: Option<(&'a H::Set, usize)>,
}

impl<'a, H: Host> Embedder<'a, H> {
    pub fn new(host: &'a H, avail: &'a H::Set) -> Self {
        Embedder { host, avail, classes: None, budget: None }
    }

    /// Calls `f` with `map[i]` = host image of pattern vertex `i`. With a
    /// root, only embeddings using that host vertex are produced; when twin
    /// classes are in force the root must be the lowest available member of
    /// its class.
    pub fn for_each(
        &self,
        pattern: &SmallGraph,
        root: Option<usize>,
        f: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let k = pattern.order();
        if k == 0 {
            return f(&[]);
        }
        if self.avail.count() < k {
            return ControlFlow::Continue(());
        }
        let mut map = vec![0; k];
        let mut used = H::Set::empty(self.host.order());
        match root {
            None => {
                let plan = Plan::new(pattern, None);
                self.rec(&plan, 0, None, &mut map, &mut used, 0, f)
            }
            Some(r) => {
                if !self.avail.contains(r) {
                    return ControlFlow::Continue(());
                }
                let mut tried: Vec<usize> = Vec::new();
                for p in 0..k {
                    if tried.iter().any(|&q| pattern_twins(pattern, q, p)) {
                        continue;
                    }
                    tried.push(p);
                    let plan = Plan::new(pattern, Some(p));
                    self.rec(&plan, 0, Some(r), &mut map, &mut used, 0, f)?;
                }
                ControlFlow::Continue(())
            }
        }
    }

    pub fn first(&self, pattern: &SmallGraph, root: Option<usize>) -> Option<Vec<usize>> {
        let mut found = None;
        let _ = self.for_each(pattern, root, &mut |m| {
            found = Some(m.to_vec());
            ControlFlow::Break(())
        });
        found
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        &self,
        plan: &Plan,
        pos: usize,
        root: Option<usize>,
        map: &mut Vec<usize>,
        used: &mut H::Set,
        outside: usize,
        f: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let k = plan.verts.len();
        if pos == k {
            let mut out = vec![0; k];
            for (i, &v) in plan.verts.iter().enumerate() {
                out[v] = map[i];
            }
            return f(&out);
        }
        let mut cand = match (pos, root) {
            (0, Some(r)) => {
                let mut s = H::Set::empty(self.host.order());
                s.insert(r);
                s
            }
            _ => self.avail.difference(used),
        };
        for &b in &plan.back[pos] {
            cand.intersect_with(self.host.neighbours(map[b]));
        }
        if let Some((inside, max)) = self.budget {
            if outside >= max {
                cand.intersect_with(inside);
            }
        }
        let floor = plan.twin_prev[pos].map(|j| map[j]);
        for x in cand.to_vec() {
            if floor.is_some_and(|fl| x <= fl) {
                continue;
            }
            if let (Some(cl), false) = (self.classes, pos == 0 && root.is_some()) {
                if !cl.prefix_ok(x, self.avail, used) {
                    continue;
                }
            }
            let out_step = match self.budget {
                Some((inside, _)) if !inside.contains(x) => 1,
                _ => 0,
            };
            map[pos] = x;
            used.insert(x);
            let flow = self.rec(plan, pos + 1, root, map, used, outside + out_step, f);
            used.remove(x);
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Calls `f` with every `k`-clique inside `within`, in lexicographic order.
pub(crate) fn for_each_clique<H: Host>(
    g: &H,
    k: usize,
    within: &H::Set,
    f: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    fn rec<H: Host>(
        g: &H,
        need: usize,
        cands: &H::Set,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if need == 0 {
            return f(cur);
        }
        let verts = cands.to_vec();
        for (i, &v) in verts.iter().enumerate() {
            if verts.len() - i < need {
                break;
            }
            let mut next = cands.intersection(g.neighbours(v));
            for &u in &verts[..=i] {
                next.remove(u);
            }
            if next.count() + 1 < need {
                continue;
            }
            cur.push(v);
            let flow = rec(g, need - 1, &next, cur, f);
            cur.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
    rec(g, k, within, &mut Vec::with_capacity(k), f)
}
