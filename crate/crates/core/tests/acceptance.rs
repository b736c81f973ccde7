//! Acceptance suite. Runs as a plain binary so the per-criterion lines are
//! always printed; exits non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use copyramsey::canon::is_isomorphic;
use copyramsey::construct::{bes_lower, estimate_lower};
use copyramsey::detect::{self, Packing};
use copyramsey::family::{d_c_family, d_c_prime_family, d_family, d_prime_family};
use copyramsey::procedures::*;
use copyramsey::solver::{self, formula_asym, formula_clique, Target, DEFAULT_CAP};
use copyramsey::{BitSet, Colour, DenseGraph, GraphFamily, SmallGraph, TwoColouring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn k(order: usize) -> SmallGraph {
    SmallGraph::complete(order)
}

fn two_k2() -> SmallGraph {
    k(2).disjoint_copies(2).unwrap()
}

fn family(gs: &[SmallGraph]) -> GraphFamily {
    GraphFamily::new(gs.iter().cloned())
}

fn exact(red: &Target, blue: &Target, cap: usize) -> Result<(usize, TwoColouring), String> {
    let out = solver::ramsey_number(red, blue, cap).map_err(|e| e.to_string())?;
    let v = out.exact().ok_or_else(|| format!("no exact value within cap {cap}"))?;
    Ok((v, out.witness().clone()))
}

fn families() -> Outcome {
    let c6 = SmallGraph::cycle(6);
    let (k1, k2) = (k(1), k(2));
    let three_k1 = SmallGraph::empty(3);
    let want = [
        ("d", d_family(&c6), family(&[two_k2(), three_k1.clone()])),
        ("d'", d_prime_family(&c6), family(&[three_k1])),
        ("d_c", d_c_family(&c6), family(&[k2, k1.clone()])),
        ("d_c'", d_c_prime_family(&c6), family(&[k1])),
    ];
    for (name, got, exp) in want {
        ensure!(got.same_classes(&exp), "{name}(C6) = {:?}", got.to_graph6_lines());
    }
    for order in 2..=5 {
        let h = k(order);
        let exp = family(&[k(order - 1)]);
        for f in [d_family(&h), d_prime_family(&h), d_c_family(&h), d_c_prime_family(&h)] {
            ensure!(f.same_classes(&exp), "K{order}: {:?}", f.to_graph6_lines());
        }
    }
    Ok("C6 and K2..K5 match".into())
}

fn classical_anchor() -> Outcome {
    let k3 = Target::graph(&k(3), 1).unwrap();
    let (v, w) = exact(&k3, &k3, DEFAULT_CAP)?;
    ensure!(v == 6, "r(K3,K3) = {v}");
    let red = w.red().to_small().unwrap();
    ensure!(w.order() == 5 && is_isomorphic(&red, &SmallGraph::cycle(5)), "witness is not the pentagon");
    ensure!(!common::naive_arrows(5, &k(3), 1, &k(3), 1), "oracle: N=5 arrows");
    ensure!(common::naive_arrows(6, &k(3), 1, &k(3), 1), "oracle: N=6 does not arrow");
    Ok("r = 6, pentagon witness, oracle agrees at N = 5, 6".into())
}

fn matching_formula() -> Outcome {
    let mut vals = Vec::new();
    for n in 1..=3 {
        let t = Target::graph(&k(2), n).unwrap();
        let (v, _) = exact(&t, &t, DEFAULT_CAP)?;
        let f = formula_clique(2, n).map_err(|e| e.to_string())?;
        ensure!(v == 3 * n - 1 && f.value == v, "n = {n}: solver {v}, formula {}", f.value);
        vals.push(v);
    }
    Ok(format!("r(nK2) = {vals:?}"))
}

fn asymmetric_formula() -> Outcome {
    let mut vals = Vec::new();
    for n in 2..=3 {
        let (red, blue) = (Target::graph(&k(3), 1).unwrap(), Target::graph(&k(2), n).unwrap());
        let (v, _) = exact(&red, &blue, DEFAULT_CAP)?;
        let f = formula_asym(&k(3), &k(2), n).map_err(|e| e.to_string())?;
        ensure!(v == 2 * n + 1 && f.value == v, "n = {n}: solver {v}, formula {}", f.value);
        vals.push(v);
    }
    Ok(format!("r(K3, nK2) = {vals:?}"))
}

fn five_n_lower() -> Outcome {
    let rep = estimate_lower(&k(3), 3, &TwoColouring::all_blue(1)).map_err(|e| e.to_string())?;
    let c = &rep.colouring;
    ensure!(c.order() == 14, "order {}", c.order());
    for colour in [Colour::Red, Colour::Blue] {
        if let Some(p) = detect::find_disjoint_copies(c, &k(3), colour, 3) {
            return Err(format!("{colour} 3K3 at {:?}", p.copies));
        }
    }
    Ok("14 vertices, no monochromatic 3K3: r(3K3) >= 15".into())
}

fn bes_sweep() -> Outcome {
    let mut checked = 0;
    for order in 2..=5 {
        for h in common::graphs_on(order).into_iter().filter(|h| !h.has_isolated_vertex()) {
            for n in 1..=3 {
                let rep = bes_lower(&h, n).map_err(|e| format!("{h:?}: {e}"))?;
                if let Err(p) = rep.check_claims() {
                    return Err(format!("{h:?}, n = {n}: {} packing {:?}", p.colour, p.copies));
                }
                let want = (2 * order - h.independence_number()) * n - 2;
                ensure!(rep.colouring.order() == want, "{h:?}, n = {n}: order {}", rep.colouring.order());
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (H, n) pairs"))
}

fn gadgets() -> Outcome {
    for kk in 1..=5 {
        let (g, _) = resilient_bipartite(kk, kk as u64).map_err(|e| e.to_string())?;
        ensure!(g.max_degree() <= 40, "k = {kk}: degree {}", g.max_degree());
        let r = verify_resilience(&g, usize::MAX);
        ensure!(r.holds && r.mode == ResilienceMode::Exhaustive, "k = {kk}: {r:?}");
    }
    Ok("k = 1..5 exhaustive".into())
}

fn tiling() -> Outcome {
    let mut absorbed = 0;
    for kk in 2..=3 {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + kk as u64);
        for i in 0..50 {
            let n = rng.gen_range(60..=400);
            let g = common::tiling_host(n, kk, &mut rng);
            ensure!(8 * g.min_degree() >= 7 * n && g.find_independent_set(kk).is_none(), "bad host");
            match absorption_tiling_traced(&g, kk, &TilingParams::seeded(i)) {
                Ok((cert, trace)) => {
                    cert.verify(&g).map_err(|e| format!("k = {kk}, n = {n}: {e}"))?;
                    absorbed += usize::from(trace.ell > 0);
                }
                Err(e) => return Err(format!("k = {kk}, n = {n}, seed {i}: {e}")),
            }
        }
        for n in [61, 97, 128, 250, 333, 400] {
            let cert = absorption_tiling(&DenseGraph::complete(n), kk, &TilingParams::seeded(n as u64))
                .map_err(|e| e.to_string())?;
            ensure!(cert.tiles.len() == n / kk, "K{n}: {} tiles", cert.tiles.len());
        }
    }
    Ok(format!("100 hosts certified, {absorbed} through the absorber"))
}

fn bound_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut dense = 0;
    while dense < 100 {
        let (kk, d) = (rng.gen_range(2..=3usize), rng.gen_range(2..=4usize));
        let n = rng.gen_range(3 * d.pow(kk as u32 - 1)..=200);
        let g = if kk == 2 { DenseGraph::complete(n) } else { common::co_triangle_free(n, n, rng.gen(), &mut rng) };
        if g.find_independent_set(kk).is_some() {
            continue;
        }
        let s = extract_dense_subgraph(&g, kk, d).map_err(|e| e.to_string())?;
        let set = BitSet::from_vertices(n, s.iter().copied());
        ensure!(s.len() * d.pow(kk as u32 - 1) >= n, "size {} for n = {n}, k = {kk}, d = {d}", s.len());
        for &v in &s {
            ensure!(d * g.degree_in(v, &set) >= (d - 1) * s.len(), "degree at {v}");
        }
        dense += 1;
    }
    let mut robust = 0;
    let mut seed = 0;
    while robust < 100 {
        seed += 1;
        let n = rng.gen_range(100..=300);
        let g = common::co_triangle_free(n, n / 20, 1.0, &mut rng);
        let (m, d) = (40, 20);
        match robust_subset(&g, m, d as f64, seed) {
            Ok(s) => {
                let set = BitSet::from_vertices(n, s.vertices.iter().copied());
                ensure!(s.vertices.len() == m && set.count() == m, "size {}", s.vertices.len());
                ensure!((0..n).all(|v| g.degree_in(v, &set) > d), "degree bound, n = {n}");
                robust += 1;
            }
            Err(RobustError::Condition { .. }) => continue,
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok("100 dense extractions, 100 robust subsets".into())
}

fn tie_extension() -> Outcome {
    let patterns = [k(3), SmallGraph::path(3), k(2)];
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let (mut done, mut tried) = (0, 0);
    while done < 100 {
        tried += 1;
        ensure!(tried < 100_000, "only {done} instances found");
        let h = &patterns[done % patterns.len()];
        let n = rng.gen_range(2..=3);
        let c = TwoColouring::random(rng.gen_range(8..=14), rng.gen_range(0.3..0.7), &mut rng);
        let Some(tie) = detect::find_h_tie(&c, h) else { continue };
        let rest = BitSet::from_vertices(c.order(), (0..c.order()).filter(|v| !tie.vertices.contains(v)));
        let colour = if rng.gen() { Colour::Red } else { Colour::Blue };
        let Some(p): Option<Packing> = detect::find_disjoint_copies_in(&c, h, colour, n - 1, &rest).unwrap() else {
            continue;
        };
        let ext = p.extended_by_tie(&tie).ok_or("tie meets the packing")?;
        ensure!(detect::verify_packing_of(&c, &ext, h, n), "composition is not an {n}-packing");
        done += 1;
    }
    Ok(format!("100 compositions verified ({tried} colourings drawn)"))
}

fn detector_oracles() -> Outcome {
    let patterns = [("K2", k(2)), ("K3", k(3)), ("P3", SmallGraph::path(3)), ("2K2", two_k2())];
    let mut cells = 0;
    for order in 1..=8 {
        for (name, h) in &patterns {
            let mut rng = ChaCha8Rng::seed_from_u64((order * 10) as u64 + h.edge_count() as u64);
            for trial in 0..200 {
                let c = TwoColouring::random(order, rng.gen(), &mut rng);
                let at = || format!("N = {order}, {name}, trial {trial}");
                for colour in [Colour::Red, Colour::Blue] {
                    let copies = common::naive_copies(&c, colour, h);
                    match detect::find_mono_copy(&c, h, colour) {
                        Some(e) => ensure!(detect::verify_embedding(&c, &e), "{}: bad copy", at()),
                        None => ensure!(copies.is_empty(), "{}: copy missed", at()),
                    }
                    let max = common::naive_max_packing(&c, colour, h);
                    for n in 1..=3 {
                        match detect::find_disjoint_copies(&c, h, colour, n) {
                            Some(p) => {
                                ensure!(detect::verify_packing_of(&c, &p, h, n), "{}: bad {n}-packing", at())
                            }
                            None => ensure!(max < n, "{}: {n}-packing missed (max {max})", at()),
                        }
                    }
                }
                let naive = common::naive_has_tie(&c, h);
                match detect::find_h_tie(&c, h) {
                    Some(t) => ensure!(naive && detect::verify_tie(&c, &t), "{}: tie disagrees", at()),
                    None => ensure!(!naive, "{}: tie missed", at()),
                }
            }
            cells += 1;
        }
    }
    Ok(format!("{cells} cells x 200 colourings"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("family exactness", 1, families),
        ("classical anchor r(K3,K3)", 10, classical_anchor),
        ("matching formula r(nK2)", 300, matching_formula),
        ("asymmetric formula r(K3,nK2)", 120, asymmetric_formula),
        ("5n lower bound for 3K3", 60, five_n_lower),
        ("two-block lower bound sweep", 600, bes_sweep),
        ("resilient gadgets", 60, gadgets),
        ("absorption tiling soundness", 600, tiling),
        ("dense and robust bound suites", 120, bound_suites),
        ("tie extension", 120, tie_extension),
        ("detector oracle equivalence", 600, detector_oracles),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let res = match res {
            Ok(_) if took > Duration::from_secs(budget) => Err(format!("over budget ({budget} s)")),
            r => r,
        };
        let secs = took.as_secs_f64();
        match res {
            Ok(detail) => println!("PASS {:>2} {name} [{secs:.2} s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{secs:.2} s]: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
