use proptest::prelude::*;
use rtmp_core::rational::*;
use rtmp_core::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn spec() -> impl Strategy<Value = PoleSpec> {
    (
        0usize..=2,
        prop::collection::btree_map(-3i64..=3, 1usize..=2, 0..=2),
        prop::option::of((prop::sample::select(vec![(1i64, 1i64), (2, 1), (1, 3)]), 1usize..=2)),
    )
        .prop_filter("nonzero degree", |(k0, r, c)| k0 + r.len() + c.iter().count() > 0)
        .prop_map(|(k0, real, complex)| {
            let real = real.into_iter().map(|(l, k)| (rat(l, 2), k)).collect();
            let complex = complex.into_iter().map(|((a, b), l)| (rat(a, b), l)).collect();
            PoleSpec::new(k0, real, complex).unwrap()
        })
}

fn data(spec: &PoleSpec) -> impl Strategy<Value = RationalMoments> {
    let spec = spec.clone();
    prop::collection::vec(small_rat(), spec.basis().len()).prop_map(move |v| RationalMoments::from_flat(&spec, &v))
}

proptest! {
    #[test]
    fn partial_fractions_recombine(s in spec(), c in prop::collection::vec(small_rat(), 13)) {
        let f = Poly::new(c.into_iter().take(2 * s.k() + 1).collect());
        let coeffs = partial_fractions(&f, &s).unwrap();
        prop_assert_eq!(coeffs.recombine(&s), f);
    }

    #[test]
    fn conversion_is_linear(
        (s, a, b) in spec().prop_flat_map(|s| { let (a, b) = (data(&s), data(&s)); (Just(s), a, b) }),
        c in small_rat(),
    ) {
        let fa = a.flatten();
        let fb = b.flatten();
        let sum = RationalMoments::from_flat(&s, &fa.iter().zip(&fb).map(|(x, y)| x + y).collect::<Vec<_>>());
        let scaled = RationalMoments::from_flat(&s, &fa.iter().map(|x| x * &c).collect::<Vec<_>>());
        let (pa, pb) = (rational_to_power(&a, &s).unwrap(), rational_to_power(&b, &s).unwrap());
        let ps = rational_to_power(&sum, &s).unwrap();
        let pc = rational_to_power(&scaled, &s).unwrap();
        for i in 0..=pa.degree() {
            prop_assert_eq!(ps.get(i), &(pa.get(i) + pb.get(i)));
            prop_assert_eq!(pc.get(i), &(pa.get(i) * &c));
        }
        prop_assert_eq!(power_to_rational(&pa, &s).unwrap(), a);
    }

    #[test]
    fn pushforward_matches_functional_correspondence(
        s in spec(),
        atoms in prop::collection::btree_set(-20i64..=20, 1..=5),
        w in prop::collection::vec(1i64..=9, 5),
    ) {
        let poles: Vec<Rat> = s.real_poles.iter().map(|(l, _)| l.clone()).collect();
        let xs: Vec<Rat> = atoms.iter().map(|&a| rat(a, 3)).filter(|x| !poles.contains(x)).collect();
        prop_assume!(!xs.is_empty());
        let rho: Vec<Rat> = w.iter().take(xs.len()).map(|&v| rat(v, 4)).collect();
        let q = build_q(&s);
        let pushed: Vec<Rat> = xs.iter().zip(&rho).map(|(x, r)| r * q.eval(x)).collect();
        let direct = RationalMoments::of_measure(&s, &xs, &pushed);
        let gamma = MomentSequence::from_atoms(&xs, &rho, 2 * s.k());
        prop_assert_eq!(power_to_rational(&gamma, &s).unwrap(), direct);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn atomic_rational_data_is_solved(
        s in spec(),
        atoms in prop::collection::btree_set(-24i64..=24, 1..=5),
        w in prop::collection::vec(1i64..=9, 5),
        bounded in any::<bool>(),
    ) {
        let poles: Vec<Rat> = s.real_poles.iter().map(|(l, _)| l.clone()).collect();
        let xs: Vec<Rat> = atoms.iter().map(|&a| rat(a, 8)).filter(|x| !poles.contains(x)).collect();
        prop_assume!(!xs.is_empty());
        let rho: Vec<Rat> = w.iter().take(xs.len()).map(|&v| rat(v, 4)).collect();
        let k = if bounded {
            ClosedSet::interval(rat_int(-3), rat_int(3)).unwrap()
        } else {
            ClosedSet::real_line()
        };
        let d = RationalMoments::of_measure(&s, &xs, &rho);
        let sol = solve_rtmp(&d, &s, &k, &rtmp_core::solver::SolverConfig::default()).unwrap();
        let sol = sol.solved();
        prop_assert!(sol.is_some(), "reported infeasible");
        let rep = verify_rtmp(&sol.unwrap().measure, &d, &s, 1e-8);
        prop_assert!(rep.passed(), "max residual {:e}", rep.max_residual());
    }
}
