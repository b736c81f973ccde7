//! Exact search for vertex-disjoint copies of family members.

use std::collections::HashSet;
use std::ops::ControlFlow;

use super::embed::{Embedder, TwinClasses};
use crate::bits::VertexBits;
use crate::graph::{Host, SmallGraph};

/// One copy: index of the family member and its vertex map.
pub(crate) type Copy = (usize, Vec<usize>);

/// `need` disjoint copies of members inside `avail`, or `None` when none
/// exist. Greedy first; if that falls short, branch on the lowest available
/// vertex (a copy through it, or drop it with its twins) with failed states
/// memoised.
pub(crate) fn pack<H: Host>(host: &H, members: &[SmallGraph], need: usize, avail: &H::Set) -> Option<Vec<Copy>> {
    if need == 0 {
        return Some(Vec::new());
    }
    if let Some(i) = members.iter().position(|m| m.order() == 0) {
        return Some(vec![(i, Vec::new()); need]);
    }
    let min_order = members.iter().map(SmallGraph::order).min()?;
    if avail.count() < need * min_order {
        return None;
    }
    if let Some(found) = greedy(host, members, need, avail) {
        return Some(found);
    }
    let classes = TwinClasses::new(host, avail, None);
    let mut search = Search { host, members, classes, min_order, failed: HashSet::new() };
    search.solve(avail.clone(), need)
}

fn greedy<H: Host>(host: &H, members: &[SmallGraph], need: usize, avail: &H::Set) -> Option<Vec<Copy>> {
    let mut left = avail.clone();
    let mut out = Vec::new();
    'outer: while out.len() < need {
        for (i, m) in members.iter().enumerate() {
            if let Some(map) = Embedder::new(host, &left).first(m, None) {
                for &v in &map {
                    left.remove(v);
                }
                out.push((i, map));
                continue 'outer;
            }
        }
        return None;
    }
    Some(out)
}

struct Search<'a, H: Host> {
    host: &'a H,
    members: &'a [SmallGraph],
    classes: TwinClasses,
    min_order: usize,
    failed: HashSet<(H::Set, usize)>,
}

impl<H: Host> Search<'_, H> {
    fn solve(&mut self, avail: H::Set, need: usize) -> Option<Vec<Copy>> {
        if need == 0 {
            return Some(Vec::new());
        }
        if avail.count() < need * self.min_order {
            return None;
        }
        let key = (avail, need);
        if self.failed.contains(&key) {
            return None;
        }
        let (avail, _) = key;
        let v = avail.first().expect("non-empty");

        let mut copies: Vec<(H::Set, Copy)> = Vec::new();
        let mut seen: HashSet<H::Set> = HashSet::new();
        {
            let emb = Embedder { classes: Some(&self.classes), ..Embedder::new(self.host, &avail) };
            for (i, m) in self.members.iter().enumerate() {
                let _ = emb.for_each(m, Some(v), &mut |map| {
                    let mut set = H::Set::empty(self.host.order());
                    for &x in map {
                        set.insert(x);
                    }
                    if seen.insert(set.clone()) {
                        copies.push((set, (i, map.to_vec())));
                    }
                    ControlFlow::Continue(())
                });
            }
        }
        for (set, copy) in copies {
            if let Some(mut rest) = self.solve(avail.difference(&set), need - 1) {
                rest.insert(0, copy);
                return Some(rest);
            }
        }

        let mut without = avail.clone();
        for &u in self.classes.class(v) {
            without.remove(u);
        }
        if let Some(found) = self.solve(without, need) {
            return Some(found);
        }
        self.failed.insert((avail, need));
        None
    }
}
