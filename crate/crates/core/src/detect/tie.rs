//! Search for H-ties: `2|H| - α(H)` vertices holding a red and a blue copy.

use std::collections::HashSet;
use std::ops::ControlFlow;

use super::embed::{Embedder, TwinClasses};
use crate::bits::VertexBits;
use crate::graph::{Host, SmallGraph};

pub(crate) struct TieFound {
    pub vertices: Vec<usize>,
    pub red: Vec<usize>,
    pub blue: Vec<usize>,
}

/// Red copies are enumerated up to twin symmetry (twins also split by
/// membership of `touch`); each is completed by a blue copy with at most
/// `k - α` vertices outside it, and the union is padded to full size with
/// the lowest free vertices. With `touch`, the set must meet that set.
pub(crate) fn find_tie<H: Host>(
    red: &H,
    blue: &H,
    h: &SmallGraph,
    avail: &H::Set,
    touch: Option<&H::Set>,
) -> Option<TieFound> {
    let k = h.order();
    let alpha = if k == 0 { 0 } else { h.independence_number() };
    let size = 2 * k - alpha;
    if avail.count() < size {
        return None;
    }
    let touch_avail = touch.map(|t| t.intersection(avail));
    if touch_avail.as_ref().is_some_and(|t| t.is_empty()) {
        return None;
    }
    let classes = TwinClasses::new(red, avail, touch_avail.as_ref());
    let red_emb = Embedder { classes: Some(&classes), ..Embedder::new(red, avail) };
    let mut seen: HashSet<H::Set> = HashSet::new();
    let mut found = None;
    let _ = red_emb.for_each(h, None, &mut |rmap| {
        let rset = to_set::<H>(red.order(), rmap);
        if !seen.insert(rset.clone()) {
            return ControlFlow::Continue(());
        }
        let blue_emb = Embedder { budget: Some((&rset, k - alpha)), ..Embedder::new(blue, avail) };
        let _ = blue_emb.for_each(h, None, &mut |bmap| {
            let mut union = rset.clone();
            union.union_with(&to_set::<H>(red.order(), bmap));
            if let Some(vertices) = pad(&union, avail, size, touch_avail.as_ref()) {
                found = Some(TieFound { vertices, red: rmap.to_vec(), blue: bmap.to_vec() });
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if found.is_some() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

fn to_set<H: Host>(n: usize, map: &[usize]) -> H::Set {
    let mut s = H::Set::empty(n);
    for &v in map {
        s.insert(v);
    }
    s
}

fn pad<S: VertexBits>(union: &S, avail: &S, size: usize, touch: Option<&S>) -> Option<Vec<usize>> {
    let mut set = union.clone();
    if set.count() > size {
        return None;
    }
    if let Some(t) = touch {
        if !set.intersects(t) {
            if set.count() == size {
                return None;
            }
            set.insert(t.difference(&set).first()?);
        }
    }
    let spare = avail.difference(&set).to_vec();
    let missing = size - set.count();
    if spare.len() < missing {
        return None;
    }
    for &v in &spare[..missing] {
        set.insert(v);
    }
    Some(set.to_vec())
}
