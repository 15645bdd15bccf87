use num_traits::Signed;
use proptest::prelude::*;
use rtmp_core::*;

/// Closed set built from sorted breakpoints; each piece is a point or an
/// interval, and the outer pieces may be unbounded.
fn closed_set() -> impl Strategy<Value = ClosedSet> {
    (
        prop::collection::btree_set(-30i64..=30, 1..=8),
        prop::collection::vec(any::<bool>(), 8),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(|(pts, kinds, left, right)| {
            let pts: Vec<Rat> = pts.into_iter().map(rat_int).collect();
            let mut out = Vec::new();
            let mut i = 0;
            if left {
                out.push(Interval::new(None, Some(pts[0].clone())));
                i = 1;
            }
            let mut kind = kinds.iter().cycle();
            while i < pts.len() {
                let last = i + 1 == pts.len();
                if last && right {
                    out.push(Interval::new(Some(pts[i].clone()), None));
                    i += 1;
                } else if !last && *kind.next().unwrap() {
                    out.push(Interval::bounded(pts[i].clone(), pts[i + 1].clone()));
                    i += 2;
                } else {
                    out.push(Interval::bounded(pts[i].clone(), pts[i].clone()));
                    i += 1;
                }
            }
            ClosedSet::new(out).unwrap()
        })
}

fn samples(k: &ClosedSet) -> Vec<Rat> {
    let mut out = Vec::new();
    for iv in k.intervals() {
        match (&iv.lo, &iv.hi) {
            (Some(a), Some(b)) => {
                for t in 0..=4 {
                    out.push(a + (b - a) * rat(t, 4));
                }
            }
            (Some(a), None) => out.extend([a.clone(), a + rat_int(1), a + rat_int(100)]),
            (None, Some(b)) => out.extend([b.clone(), b - rat_int(1), b - rat_int(100)]),
            (None, None) => out.extend([rat_int(-50), rat_int(0), rat_int(50)]),
        }
    }
    out
}

proptest! {
    #[test]
    fn generators_nonnegative_on_k_negative_on_gaps(k in closed_set()) {
        let s = natural_description(&k);
        for x in samples(&k) {
            for g in &s.generators {
                prop_assert!(!g.poly.eval(&x).is_negative(), "{} < 0 at {x} in {k}", g.poly);
            }
        }
        let ivs = k.intervals();
        let mut outside: Vec<Rat> = ivs
            .windows(2)
            .map(|w| (w[0].hi.clone().unwrap() + w[1].lo.clone().unwrap()) / rat_int(2))
            .collect();
        if let Some(a) = k.min() {
            outside.push(a - rat_int(1));
        }
        if let Some(b) = k.max() {
            outside.push(b + rat_int(1));
        }
        for x in outside {
            prop_assert!(s.generators.iter().any(|g| g.poly.eval(&x).is_negative()), "no generator negative at {x} outside {k}");
        }
    }

    #[test]
    fn pi_products_are_the_bounded_subsets(k in closed_set(), budget in 0usize..=8) {
        let s = natural_description(&k);
        let m = s.generators.len();
        let prods = pi_products(&s, budget);
        let expected = (0u32..1 << m)
            .filter(|mask| {
                (0..m).filter(|i| mask >> i & 1 == 1).map(|i| s.generators[i].poly.deg()).sum::<usize>() <= budget
            })
            .count();
        prop_assert_eq!(prods.len(), expected);
        for p in &prods {
            prop_assert!(p.exponents.iter().all(|&e| e <= 1));
            let deg: usize = p.exponents.iter().zip(&s.generators).map(|(&e, g)| e as usize * g.poly.deg()).sum();
            prop_assert_eq!(p.degree(), deg);
            prop_assert_eq!(p.f.deg(), deg);
        }
        for w in prods.windows(2) {
            prop_assert!(w[0].degree() <= w[1].degree());
        }
    }

    #[test]
    fn atom_bound_is_monotone(k in closed_set()) {
        let c = classify(&k);
        for n in 0..10 {
            prop_assert!(c.atom_bound(n) <= c.atom_bound(n + 1));
        }
    }
}
