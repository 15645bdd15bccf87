use num_traits::{One, Zero};
use proptest::prelude::*;
use rtmp_core::polyalg::{rat_from_f64, rat_to_f64};
use rtmp_core::rational::solve_rtmp;
use rtmp_core::solver::SolverConfig;
use rtmp_core::special::*;
use rtmp_core::*;

fn circle_measure(k: usize, with_one: bool, max_atoms: usize) -> impl Strategy<Value = BivariateSequence> {
    (
        prop::collection::btree_set(-24i64..=24, 1..=max_atoms),
        prop::collection::vec(1i64..=9, 2 * k + 2),
    )
        .prop_map(move |(ts, w)| {
            let mut atoms: Vec<(Rat, Rat)> = ts.iter().map(|&t| circle_point(&rat(t, 4))).collect();
            if with_one {
                atoms.push((Rat::one(), Rat::zero()));
            }
            let dens: Vec<Rat> = w.iter().take(atoms.len()).map(|&v| rat(v, 4)).collect();
            BivariateSequence::from_atoms(k, &atoms, &dens).unwrap()
        })
}

proptest! {
    #[test]
    fn parametrization_identities(t in -50.0f64..50.0) {
        let (x, y) = circle_point(&rat_from_f64(t));
        let (x, y) = (rat_to_f64(&x), rat_to_f64(&y));
        let d = t * t + 1.0;
        prop_assert!((1.0 / d - (1.0 - x) / 2.0).abs() <= 1e-12);
        prop_assert!((t / d - y / 2.0).abs() <= 1e-12);
        prop_assert!((t * t / d - (1.0 + x) / 2.0).abs() <= 1e-12);
    }

    #[test]
    fn circle_round_trip_without_one(beta in (2usize..=3).prop_flat_map(|k| circle_measure(k, false, 2 * k))) {
        let sol = circle_solve(&beta, &SolverConfig::default()).unwrap().solved().unwrap();
        prop_assert!(circle_verify(&sol.measure, &beta, 1e-8).passed());
        prop_assert!(sol.deficit.abs() <= 1e-8, "deficit {}", sol.deficit);
    }

    #[test]
    fn circle_deficit_is_nonnegative(beta in (2usize..=3).prop_flat_map(|k| circle_measure(k, false, 2 * k + 1))) {
        let sol = circle_solve(&beta, &SolverConfig::default()).unwrap().solved().unwrap();
        prop_assert!(circle_verify(&sol.measure, &beta, 1e-8).passed());
        prop_assert!(sol.deficit >= 0.0);
    }

    #[test]
    fn circle_round_trip_with_one(beta in circle_measure(2, true, 4)) {
        let sol = circle_solve(&beta, &SolverConfig::default()).unwrap().solved().unwrap();
        prop_assert!(circle_verify(&sol.measure, &beta, 1e-8).passed());
        prop_assert!(sol.deficit > 0.0);
    }

    #[test]
    fn strong_hamburger_agrees_with_general_solver(
        k1 in 1usize..=2,
        extra in 0usize..=1,
        atoms in prop::collection::btree_set(1i64..=24, 1..=4),
        signs in prop::collection::vec(any::<bool>(), 4),
        w in prop::collection::vec(1i64..=9, 4),
    ) {
        let xs: Vec<Rat> = atoms.iter().zip(&signs).map(|(&a, &s)| rat(if s { a } else { -a }, 4)).collect();
        let mut xs = xs;
        xs.sort();
        xs.dedup();
        let rho: Vec<Rat> = w.iter().take(xs.len()).map(|&v| rat(v, 4)).collect();
        let spec = strong_hamburger_spec(k1 + extra, k1).unwrap();
        let data = rtmp_core::rational::RationalMoments::of_measure(&spec, &xs, &rho);
        let cfg = SolverConfig::default();
        let a = strong_hamburger_solve(&data, &spec, &cfg).unwrap().solved().unwrap();
        let b = solve_rtmp(&data, &spec, &ClosedSet::real_line(), &cfg).unwrap().solved().unwrap();
        prop_assert_eq!(a.measure.len(), b.measure.len());
        for (x, y) in a.measure.atoms.iter().zip(&b.measure.atoms) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
    }
}
