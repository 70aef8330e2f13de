use proptest::prelude::*;

use sojourn::lattice::{
    energy, evolve_raw, mass, reduce_from_raw, step_reduced, RawLatticeState, ReducedState,
};

fn row() -> impl Strategy<Value = ReducedState> {
    (-20i64..10, prop::collection::vec(0.0f64..1.0, 1..20), 1u32..5)
        .prop_map(|(start, w, k)| ReducedState::new(1.0 / (4.0 * k as f64), 0, start, w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn raw_route_matches_reduced_chain(initial in row(), steps in 1usize..40) {
        let raw = evolve_raw(&RawLatticeState::from_reduced(&initial).unwrap(), 2 * steps);
        let sampled = reduce_from_raw(&raw, steps).unwrap();
        let mut direct = initial.clone();
        for via_raw in sampled.iter().skip(1) {
            direct = step_reduced(&direct);
            let lo = direct.start.min(via_raw.start);
            let hi = direct.end().max(via_raw.end());
            for j in lo..hi {
                prop_assert!((direct.get(j) - via_raw.get(j)).abs() <= 1e-14);
            }
        }
    }

    #[test]
    fn mass_and_sign_preserved_energy_dissipated(initial in row(), steps in 1usize..200) {
        let m0 = mass(&initial);
        let mut state = initial;
        let mut e = energy(&state);
        for _ in 0..steps {
            state = step_reduced(&state);
            prop_assert!(state.w.iter().all(|&w| w >= 0.0));
            let e_next = energy(&state);
            prop_assert!(e_next <= e + 1e-12 * e.max(1.0));
            e = e_next;
        }
        prop_assert!((mass(&state) - m0).abs() <= 1e-12 * m0.max(1.0));
    }

    #[test]
    fn raw_conserved_mass_is_invariant(initial in row(), steps in 1usize..100) {
        let start = RawLatticeState::from_reduced(&initial).unwrap();
        let m0 = start.conserved_mass();
        let last = evolve_raw(&start, steps).pop().unwrap();
        prop_assert!((last.conserved_mass() - m0).abs() <= 1e-12 * m0.max(1.0));
    }
}
