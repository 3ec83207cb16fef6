mod support;

use incomp_core::oracle::{fold, fold_in_order, reduce_word, Letter};
use incomp_core::oracle::check_surface;
use incomp_core::solver::{search, PolygonSystem, SearchOutcome};
use incomp_core::{decide, parse, reduce_to_standard, write_json, write_text, Verdict};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![Just(1), Just(-1), Just(2), Just(-2)]
}

fn mutated(seed: u64) -> Option<incomp_core::SurfaceComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let surfaces = support::corpus_surfaces();
    let (_, base) = surfaces.choose(&mut rng).expect("corpus nonempty");
    support::mutate_chain(base, &mut rng, 1 + (seed % 3) as usize)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fold_result_is_independent_of_order(
        words in prop::collection::vec(prop::collection::vec(letter(), 1..7), 1..5),
        picks in prop::collection::vec(0usize..16, 64),
    ) {
        let a = fold(&words);
        let mut it = picks.into_iter().cycle();
        let b = fold_in_order(&words, |_| it.next().unwrap_or(0));
        prop_assert!(a.is_folded() && b.is_folded());
        prop_assert_eq!(a.rank(), b.rank());
        prop_assert_eq!(a.vertices, b.vertices);
        prop_assert_eq!(a.edges.len(), b.edges.len());
    }

    #[test]
    fn folding_never_raises_rank(words in prop::collection::vec(prop::collection::vec(letter(), 1..7), 1..5)) {
        let nontrivial = words.iter().filter(|w| !reduce_word(w).is_empty()).count();
        prop_assert!(fold(&words).rank() <= nontrivial);
    }

    #[test]
    fn mutated_surfaces_round_trip(seed in any::<u64>()) {
        if let Some(s) = mutated(seed) {
            prop_assert_eq!(&parse(&write_text(&s)).unwrap(), &s);
            prop_assert_eq!(&parse(&write_json(&s)).unwrap(), &s);
        }
    }

    #[test]
    fn reduction_strictly_decreases(seed in any::<u64>()) {
        if let Some(s) = mutated(seed) {
            let red = reduce_to_standard(&s);
            for m in &red.log {
                prop_assert!(m.after < m.before, "{:?}", m);
                prop_assert_eq!(m.euler.0, m.euler.1);
            }
            prop_assert!(incomp_core::mutate::is_embedded(&red.surface));
        }
    }

    #[test]
    fn verdict_agrees_with_oracle_after_mutation(seed in any::<u64>()) {
        if let Some(s) = mutated(seed) {
            let v = decide(&s).verdict;
            let inj = check_surface(&s).unwrap().injective;
            match v {
                Verdict::Incompressible => prop_assert!(inj),
                Verdict::Compressible { .. } => prop_assert!(!inj),
                Verdict::Indeterminate { .. } => {}
            }
        }
    }

    #[test]
    fn solver_ignores_class_order(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = support::random_system(&mut rng);
        let mut order: Vec<usize> = (0..sys.classes.len()).collect();
        order.shuffle(&mut rng);
        let mut pos = vec![0; order.len()];
        for (i, &c) in order.iter().enumerate() {
            pos[c] = i;
        }
        let perm = PolygonSystem {
            classes: order.iter().map(|&c| sys.classes[c].clone()).collect(),
            caps: order.iter().map(|&c| sys.caps[c]).collect(),
            conflicts: sys
                .conflicts
                .iter()
                .map(|&(a, b)| (pos[a].min(pos[b]), pos[a].max(pos[b])))
                .collect(),
        };
        let (x, _) = search(&sys, &mut |_| true, u64::MAX);
        let (y, _) = search(&perm, &mut |_| true, u64::MAX);
        prop_assert_eq!(matches!(x, SearchOutcome::Found(_)), matches!(y, SearchOutcome::Found(_)));
    }

    #[test]
    fn solver_matches_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = support::random_system(&mut rng);
        let (out, _) = search(&sys, &mut |_| true, u64::MAX);
        prop_assert_eq!(matches!(out, SearchOutcome::Found(_)), support::brute_force_feasible(&sys));
    }
}
