use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

/// Largest number of `k`-subsets checked exhaustively by default.
pub const DEFAULT_RESILIENCE_CAP: usize = 1 << 16;

const DEFAULT_MATCHINGS: usize = 20;
const DEFAULT_RETRIES: usize = 10_000;

/// Bipartite graph between `X ∪ Y` (left, `X = 0..2k`, `Y = 2k..4k`) and
/// `Z` (right, `0..3k`; `Z1 = 0..2k`, `Z2 = 2k..3k`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResilientGadget {
    pub k: usize,
    /// Sorted `Z`-neighbours of each left vertex.
    pub left: Vec<Vec<usize>>,
}

impl ResilientGadget {
    /// `20` random perfect matchings between `Y` and `Z1` (here
    /// `matchings`), `X` a copy of `Y`, `Z2` a copy of the first `k`
    /// vertices of `Z1`.
    pub fn sample(k: usize, matchings: usize, rng: &mut ChaCha8Rng) -> Self {
        let mut y: Vec<Vec<usize>> = vec![Vec::new(); 2 * k];
        let mut perm: Vec<usize> = (0..2 * k).collect();
        for _ in 0..matchings {
            perm.shuffle(rng);
            for (j, &z) in perm.iter().enumerate() {
                y[j].push(z);
            }
        }
        for nb in &mut y {
            nb.sort_unstable();
            nb.dedup();
            let dup: Vec<usize> = nb.iter().filter(|&&z| z < k).map(|&z| 2 * k + z).collect();
            nb.extend(dup);
        }
        let mut left = y.clone();
        left.extend(y);
        ResilientGadget { k, left }
    }

    pub fn right(&self) -> Vec<Vec<usize>> {
        let mut right = vec![Vec::new(); 3 * self.k];
        for (u, nb) in self.left.iter().enumerate() {
            for &z in nb {
                right[z].push(u);
            }
        }
        right
    }

    pub fn max_degree(&self) -> usize {
        let l = self.left.iter().map(Vec::len).max().unwrap_or(0);
        let r = self.right().iter().map(Vec::len).max().unwrap_or(0);
        l.max(r)
    }

    pub fn edge_count(&self) -> usize {
        self.left.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left.iter().enumerate().flat_map(|(u, nb)| nb.iter().map(move |&z| (u, z)))
    }

    /// Perfect matching of `X' ∪ Y` into `Z` as `(left, z)` pairs, if one
    /// exists. `x_prime` holds indices into `X`.
    pub fn matching(&self, x_prime: &[usize]) -> Option<Vec<(usize, usize)>> {
        let lefts: Vec<usize> = x_prime.iter().copied().chain(2 * self.k..4 * self.k).collect();
        let mut owner: Vec<Option<usize>> = vec![None; 3 * self.k];
        for &u in &lefts {
            let mut seen = vec![false; 3 * self.k];
            if !self.augment(u, &mut seen, &mut owner) {
                return None;
            }
        }
        let mut out: Vec<(usize, usize)> = owner.iter().enumerate().filter_map(|(z, o)| o.map(|u| (u, z))).collect();
        out.sort_unstable();
        (out.len() == lefts.len()).then_some(out)
    }

    fn augment(&self, u: usize, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &z in &self.left[u] {
            if seen[z] {
                continue;
            }
            seen[z] = true;
            if owner[z].is_none_or(|w| self.augment(w, seen, owner)) {
                owner[z] = Some(u);
                return true;
            }
        }
        false
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ResilienceMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResilienceReport {
    pub holds: bool,
    pub mode: ResilienceMode,
    pub checked: usize,
    /// An `X'` (indices into `X`) with no perfect matching.
    pub failing: Option<Vec<usize>>,
}

fn binomial_capped(n: usize, r: usize, cap: usize) -> Option<usize> {
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > cap as u128 {
            return None;
        }
    }
    Some(acc as usize)
}

/// Checks that every `k`-subset `X'` of `X` leaves `X' ∪ Y` perfectly
/// matchable into `Z`: all of them when there are at most `cap`, otherwise
/// `cap` uniformly sampled ones.
pub fn verify_resilience(g: &ResilientGadget, cap: usize) -> ResilienceReport {
    let k = g.k;
    let right = g.right();
    if right.iter().any(Vec::is_empty) {
        // Hall's condition fails on the isolated vertex for every X'.
        return ResilienceReport {
            holds: false,
            mode: ResilienceMode::Exhaustive,
            checked: 0,
            failing: Some((0..k).collect()),
        };
    }
    match binomial_capped(2 * k, k, cap) {
        Some(_) => {
            let mut comb: Vec<usize> = (0..k).collect();
            let mut checked = 0;
            loop {
                checked += 1;
                if g.matching(&comb).is_none() {
                    return ResilienceReport {
                        holds: false,
                        mode: ResilienceMode::Exhaustive,
                        checked,
                        failing: Some(comb),
                    };
                }
                if !next_combination(&mut comb, 2 * k) {
                    break;
                }
            }
            ResilienceReport { holds: true, mode: ResilienceMode::Exhaustive, checked, failing: None }
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
            for checked in 1..=cap {
                let mut comb: Vec<usize> = rand::seq::index::sample(&mut rng, 2 * k, k).into_vec();
                comb.sort_unstable();
                if g.matching(&comb).is_none() {
                    return ResilienceReport {
                        holds: false,
                        mode: ResilienceMode::Sampled,
                        checked,
                        failing: Some(comb),
                    };
                }
            }
            ResilienceReport { holds: true, mode: ResilienceMode::Sampled, checked: cap, failing: None }
        }
    }
}

fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    for i in (0..k).rev() {
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("gadget needs k >= 1")]
    ZeroK,
    #[error("no gadget after {attempts} attempts ({degree} over the degree bound, {resilience} not resilient)")]
    RetryCap { attempts: usize, degree: usize, resilience: usize },
}

/// The gadget with `20` matchings, resampled until it has maximum degree
/// at most `40` and passes [`verify_resilience`].
pub fn resilient_bipartite(k: usize, seed: u64) -> Result<(ResilientGadget, ResilienceReport), GadgetError> {
    resilient_bipartite_with(k, DEFAULT_MATCHINGS, DEFAULT_RETRIES, DEFAULT_RESILIENCE_CAP, seed)
}

pub fn resilient_bipartite_with(
    k: usize,
    matchings: usize,
    retries: usize,
    cap: usize,
    seed: u64,
) -> Result<(ResilientGadget, ResilienceReport), GadgetError> {
    if k == 0 {
        return Err(GadgetError::ZeroK);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut degree, mut resilience) = (0, 0);
    for _ in 0..retries.max(1) {
        let g = ResilientGadget::sample(k, matchings, &mut rng);
        if g.max_degree() > 2 * matchings {
            degree += 1;
            continue;
        }
        let report = verify_resilience(&g, cap);
        if report.holds {
            return Ok((g, report));
        }
        resilience += 1;
    }
    Err(GadgetError::RetryCap { attempts: retries.max(1), degree, resilience })
}
