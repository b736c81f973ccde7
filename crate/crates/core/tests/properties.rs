mod common;

use copyramsey::canon::{canonical_form, is_isomorphic};
use copyramsey::construct::{asym_lower, bes_lower};
use copyramsey::detect;
use copyramsey::family::d_family;
use copyramsey::solver::{self, arrows, Target, DEFAULT_CAP};
use copyramsey::{Colour, GraphFamily, SmallGraph, TwoColouring};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn colouring(max: usize) -> impl Strategy<Value = TwoColouring> {
    (1..=max, any::<u64>(), 0.2f64..0.8)
        .prop_map(|(n, seed, p)| TwoColouring::random(n, p, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn graph(max: usize) -> impl Strategy<Value = SmallGraph> {
    (1..=max, any::<u64>(), 0.2f64..0.9).prop_map(|(n, seed, p)| {
        TwoColouring::random(n, p, &mut ChaCha8Rng::seed_from_u64(seed)).red().to_small().unwrap()
    })
}

fn pattern() -> impl Strategy<Value = SmallGraph> {
    prop_oneof![
        Just(SmallGraph::complete(2)),
        Just(SmallGraph::complete(3)),
        Just(SmallGraph::path(3)),
        Just(SmallGraph::complete(2).disjoint_copies(2).unwrap()),
        Just(SmallGraph::cycle(4)),
    ]
}

fn colour() -> impl Strategy<Value = Colour> {
    prop_oneof![Just(Colour::Red), Just(Colour::Blue)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph6_round_trip(g in graph(20)) {
        prop_assert_eq!(SmallGraph::from_graph6(&g.to_graph6()).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph(9), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let h = g.relabel(&perm);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(is_isomorphic(&g, &h));
    }

    #[test]
    fn colouring_text_round_trip(c in colouring(30)) {
        prop_assert_eq!(TwoColouring::read_any(&c.write_text()).unwrap(), c.clone());
        prop_assert_eq!(TwoColouring::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn colour_duality(c in colouring(9), h in pattern(), colour in colour(), n in 1usize..=3) {
        let s = c.swapped();
        prop_assert_eq!(
            detect::find_mono_copy(&c, &h, colour).is_some(),
            detect::find_mono_copy(&s, &h, colour.other()).is_some()
        );
        prop_assert_eq!(
            detect::find_disjoint_copies(&c, &h, colour, n).is_some(),
            detect::find_disjoint_copies(&s, &h, colour.other(), n).is_some()
        );
        prop_assert_eq!(detect::find_h_tie(&c, &h).is_some(), detect::find_h_tie(&s, &h).is_some());
    }

    #[test]
    fn packing_matches_oracle(c in colouring(10), h in pattern(), colour in colour()) {
        let max = common::naive_max_packing(&c, colour, &h);
        for n in 1..=4 {
            match detect::find_disjoint_copies(&c, &h, colour, n) {
                Some(p) => prop_assert!(detect::verify_packing_of(&c, &p, &h, n)),
                None => prop_assert!(max < n),
            }
        }
    }

    #[test]
    fn tie_matches_oracle(c in colouring(9), h in pattern()) {
        match detect::find_h_tie(&c, &h) {
            Some(t) => prop_assert!(detect::verify_tie(&c, &t)),
            None => prop_assert!(!common::naive_has_tie(&c, &h)),
        }
    }

    #[test]
    fn copies_survive_induced_supersets(c in colouring(10), h in pattern(), colour in colour()) {
        if let Some(e) = detect::find_mono_copy(&c, &h, colour) {
            let sub = c.induced(&e.sorted_vertices());
            prop_assert!(detect::find_mono_copy(&sub, &h, colour).is_some());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bes_lower_claims(h in graph(5), n in 1usize..=3) {
        prop_assume!(!h.has_isolated_vertex());
        let rep = bes_lower(&h, n).unwrap();
        prop_assert!(rep.check_claims().is_ok());
    }

    #[test]
    fn asym_lower_claims(n in 1usize..=3) {
        let (g, h) = (SmallGraph::complete(3), SmallGraph::path(3));
        let e = solver::extremal_e_colouring(&d_family(&g), &GraphFamily::singleton(h.clone()), DEFAULT_CAP).unwrap();
        let rep = asym_lower(&g, &h, n, &e).unwrap();
        prop_assert!(rep.check_claims().is_ok());
        prop_assert_eq!(rep.colouring.order(), 3 * n - 1 + e.order());
    }
}

fn small_targets() -> Vec<Target> {
    let pats = [SmallGraph::complete(2), SmallGraph::path(3), SmallGraph::complete(3)];
    let mut out = Vec::new();
    for h in &pats {
        for copies in 1..=2 {
            out.push(Target::graph(h, copies).unwrap());
        }
    }
    out
}

#[test]
fn solver_is_symmetric() {
    let ts = small_targets();
    for a in &ts {
        for b in &ts {
            let ab = solver::ramsey_number(a, b, DEFAULT_CAP).unwrap().exact();
            let ba = solver::ramsey_number(b, a, DEFAULT_CAP).unwrap().exact();
            assert_eq!(ab, ba, "{} vs {}", a.describe(), b.describe());
        }
    }
}

#[test]
fn solver_is_monotone_in_copies() {
    // Counts chosen so every value is within the default cap.
    for (h, most) in [(SmallGraph::complete(2), 3), (SmallGraph::path(3), 2)] {
        let mut last = 0;
        for n in 1..=most {
            let t = Target::graph(&h, n).unwrap();
            let v = solver::ramsey_number(&t, &t, DEFAULT_CAP).unwrap().exact().unwrap();
            assert!(v > last, "{} not increasing", t.describe());
            last = v;
        }
    }
}

#[test]
fn arrowing_is_upward_closed() {
    let ts = small_targets();
    for a in &ts {
        for b in &ts {
            let answers: Vec<bool> = (1..=8).map(|n| arrows(n, a, b, DEFAULT_CAP).unwrap().arrows).collect();
            assert!(answers.windows(2).all(|w| w[0] <= w[1]), "{} {}: {answers:?}", a.describe(), b.describe());
        }
    }
}

#[test]
fn solver_agrees_with_brute_force() {
    let pats = [SmallGraph::complete(2), SmallGraph::path(3), SmallGraph::complete(3)];
    for rh in &pats {
        for bh in &pats {
            for (rc, bc) in [(1, 1), (1, 2), (2, 1)] {
                let (r, b) = (Target::graph(rh, rc).unwrap(), Target::graph(bh, bc).unwrap());
                for n in 1..=5 {
                    let out = arrows(n, &r, &b, DEFAULT_CAP).unwrap();
                    assert_eq!(
                        out.arrows,
                        common::naive_arrows(n, rh, rc, bh, bc),
                        "{} {} at {n}",
                        r.describe(),
                        b.describe()
                    );
                    if let Some(w) = out.witness {
                        assert_eq!(w.order(), n);
                        assert!(common::naive_max_packing(&w, Colour::Red, rh) < rc);
                        assert!(common::naive_max_packing(&w, Colour::Blue, bh) < bc);
                    }
                }
            }
        }
    }
}
