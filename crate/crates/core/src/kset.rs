//! Closed subsets of the real line as finite unions of closed intervals,
//! their natural descriptions and the products of generators used as
//! localizers.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::polyalg::{rat_to_f64, Poly, Rat};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KSetError {
    #[error("closed set must contain at least one interval")]
    Empty,
    #[error("interval {index} has lower end above upper end")]
    Reversed { index: usize },
    #[error("intervals {index} and {next} overlap or touch; a strict gap is required")]
    NotDisjoint { index: usize, next: usize },
    #[error("interval {index} is unbounded on an inner side")]
    InnerInfinity { index: usize },
}

/// Closed interval `[lo, hi]`; `None` stands for `-∞` or `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Option<Rat>,
    pub hi: Option<Rat>,
}

impl Interval {
    pub fn new(lo: Option<Rat>, hi: Option<Rat>) -> Self {
        Self { lo, hi }
    }

    pub fn bounded(lo: Rat, hi: Rat) -> Self {
        Self::new(Some(lo), Some(hi))
    }

    pub fn is_point(&self) -> bool {
        matches!((&self.lo, &self.hi), (Some(a), Some(b)) if a == b)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lo.as_ref().is_none_or(|a| a <= x) && self.hi.as_ref().is_none_or(|b| x <= b)
    }

    pub fn contains_interior(&self, x: &Rat) -> bool {
        self.lo.as_ref().is_none_or(|a| a < x) && self.hi.as_ref().is_none_or(|b| x < b)
    }

    pub fn contains_f64(&self, x: f64, tol: f64) -> bool {
        self.lo.as_ref().is_none_or(|a| x >= rat_to_f64(a) - tol)
            && self.hi.as_ref().is_none_or(|b| x <= rat_to_f64(b) + tol)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lo {
            Some(a) => write!(f, "[{a}, ")?,
            None => write!(f, "(-inf, ")?,
        }
        match &self.hi {
            Some(b) => write!(f, "{b}]"),
            None => write!(f, "inf)"),
        }
    }
}

/// Sorted union of pairwise disjoint closed intervals with strict gaps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedSet {
    intervals: Vec<Interval>,
}

impl ClosedSet {
    pub fn new(intervals: Vec<Interval>) -> Result<Self, KSetError> {
        if intervals.is_empty() {
            return Err(KSetError::Empty);
        }
        let last = intervals.len() - 1;
        for (i, iv) in intervals.iter().enumerate() {
            if (iv.lo.is_none() && i > 0) || (iv.hi.is_none() && i < last) {
                return Err(KSetError::InnerInfinity { index: i });
            }
        }
        for (i, iv) in intervals.iter().enumerate() {
            if let (Some(a), Some(b)) = (&iv.lo, &iv.hi) {
                if a > b {
                    return Err(KSetError::Reversed { index: i });
                }
            }
            if i < last {
                let next_lo = intervals[i + 1].lo.as_ref();
                match (iv.hi.as_ref(), next_lo) {
                    (Some(b), Some(c)) if b < c => {}
                    _ => return Err(KSetError::NotDisjoint { index: i, next: i + 1 }),
                }
            }
        }
        Ok(Self { intervals })
    }

    pub fn real_line() -> Self {
        Self {
            intervals: vec![Interval::new(None, None)],
        }
    }

    pub fn interval(lo: Rat, hi: Rat) -> Result<Self, KSetError> {
        Self::new(vec![Interval::bounded(lo, hi)])
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn min(&self) -> Option<&Rat> {
        self.intervals[0].lo.as_ref()
    }

    pub fn max(&self) -> Option<&Rat> {
        self.intervals.last().and_then(|iv| iv.hi.as_ref())
    }

    pub fn is_bounded(&self) -> bool {
        self.min().is_some() && self.max().is_some()
    }

    pub fn is_real_line(&self) -> bool {
        self.min().is_none() && self.max().is_none() && self.intervals.len() == 1
    }

    pub fn has_interior(&self) -> bool {
        self.intervals.iter().any(|iv| !iv.is_point())
    }

    /// True iff `x` lies within `tol` of some interval.
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.intervals.iter().any(|iv| iv.contains_f64(x, tol))
    }

    pub fn contains_exact(&self, x: &Rat) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    pub fn interior_contains(&self, x: &Rat) -> bool {
        self.intervals.iter().any(|iv| iv.contains_interior(x))
    }

    pub fn isolated_points(&self) -> Vec<Rat> {
        self.intervals
            .iter()
            .filter(|iv| iv.is_point())
            .filter_map(|iv| iv.lo.clone())
            .collect()
    }

    /// Finite endpoints, each isolated point counted once, ascending.
    pub fn boundary(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        for iv in &self.intervals {
            if let Some(a) = &iv.lo {
                out.push(a.clone());
            }
            if let Some(b) = &iv.hi {
                if !iv.is_point() {
                    out.push(b.clone());
                }
            }
        }
        out
    }

    /// Replaces each interval by its intersection with `[lo, hi]`, dropping
    /// empty pieces. `None` if nothing is left.
    pub fn clip(&self, lo: &Rat, hi: &Rat) -> Option<Self> {
        let intervals: Vec<Interval> = self
            .intervals
            .iter()
            .filter_map(|iv| {
                let a = match &iv.lo {
                    Some(a) if a > lo => a.clone(),
                    _ => lo.clone(),
                };
                let b = match &iv.hi {
                    Some(b) if b < hi => b.clone(),
                    _ => hi.clone(),
                };
                (a <= b).then(|| Interval::bounded(a, b))
            })
            .collect();
        Self::new(intervals).ok()
    }

    /// Moves the finite endpoint equal to `at` by `delta` towards the inside
    /// of its interval. Isolated points are left untouched.
    pub fn shrink_endpoint(&self, at: &Rat, delta: &Rat) -> Self {
        let intervals = self
            .intervals
            .iter()
            .map(|iv| {
                if iv.is_point() {
                    return iv.clone();
                }
                let mut out = iv.clone();
                if iv.lo.as_ref() == Some(at) {
                    out.lo = Some(at + delta);
                }
                if iv.hi.as_ref() == Some(at) {
                    out.hi = Some(at - delta);
                }
                out
            })
            .collect();
        Self { intervals }
    }
}

impl fmt::Display for ClosedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " U ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    LeastElement(Rat),
    GreatestElement(Rat),
    Gap(Rat, Rat),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub poly: Poly,
    pub kind: GeneratorKind,
}

impl Generator {
    pub fn roots(&self) -> Vec<Rat> {
        match &self.kind {
            GeneratorKind::LeastElement(a) | GeneratorKind::GreatestElement(a) => vec![a.clone()],
            GeneratorKind::Gap(a, b) => vec![a.clone(), b.clone()],
        }
    }
}

/// Generators `x - a` (least element), `b - x` (greatest element) and
/// `(x - a)(x - b)` per bounded gap `(a, b)`, in that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NaturalDescription {
    pub generators: Vec<Generator>,
}

pub fn natural_description(k: &ClosedSet) -> NaturalDescription {
    let mut generators = Vec::new();
    if let Some(a) = k.min() {
        generators.push(Generator {
            poly: Poly::linear_root(a),
            kind: GeneratorKind::LeastElement(a.clone()),
        });
    }
    if let Some(b) = k.max() {
        generators.push(Generator {
            poly: -&Poly::linear_root(b),
            kind: GeneratorKind::GreatestElement(b.clone()),
        });
    }
    for w in k.intervals().windows(2) {
        let a = w[0].hi.clone().expect("inner endpoint");
        let b = w[1].lo.clone().expect("inner endpoint");
        generators.push(Generator {
            poly: &Poly::linear_root(&a) * &Poly::linear_root(&b),
            kind: GeneratorKind::Gap(a, b),
        });
    }
    NaturalDescription { generators }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// Product of a subset of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiProduct {
    pub f: Poly,
    pub exponents: Vec<u8>,
    pub parity: Parity,
    pub leading_sign: i8,
    /// Real zeros of `f`, with repetition, ascending.
    pub roots: Vec<Rat>,
}

impl PiProduct {
    pub fn degree(&self) -> usize {
        self.f.deg()
    }

    fn selected(&self) -> Vec<usize> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == 1)
            .map(|(i, _)| i)
            .collect()
    }

    /// Distinct real zeros.
    pub fn zeros(&self) -> Vec<Rat> {
        let mut z = self.roots.clone();
        z.dedup();
        z
    }
}

impl fmt::Display for PiProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.f)
    }
}

/// All products of distinct generators with degree at most `budget`, ordered
/// by degree and then lexicographically by the list of selected generator
/// indices. The empty product `1` comes first.
pub fn pi_products(s: &NaturalDescription, budget: usize) -> Vec<PiProduct> {
    let m = s.generators.len();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << m) {
        let exponents: Vec<u8> = (0..m).map(|i| ((mask >> i) & 1) as u8).collect();
        let degree: usize = s
            .generators
            .iter()
            .zip(&exponents)
            .filter(|(_, &e)| e == 1)
            .map(|(g, _)| g.poly.deg())
            .sum();
        if degree > budget {
            continue;
        }
        let mut f = Poly::one();
        let mut roots = Vec::new();
        for (g, &e) in s.generators.iter().zip(&exponents) {
            if e == 1 {
                f = &f * &g.poly;
                roots.extend(g.roots());
            }
        }
        roots.sort();
        let lc = f.leading_coeff();
        out.push(PiProduct {
            parity: if degree % 2 == 0 { Parity::Even } else { Parity::Odd },
            leading_sign: if lc > Rat::zero() { 1 } else { -1 },
            f,
            exponents,
            roots,
        });
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.selected().cmp(&b.selected())));
    debug_assert!(out[0].f == Poly::constant(Rat::one()));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KKind {
    /// `ℝ`, `[a, ∞)` or `(-∞, a]`.
    WholeOrHalfLine,
    BoundedWithInterior,
    /// A finite set of points.
    BoundedWithoutInterior,
    OneSidedUnbounded,
    TwoSidedUnbounded,
}

/// Shape of `K` with `Card(∂K) = 2 ℓ1 + ℓ2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KClass {
    pub kind: KKind,
    pub ell1: usize,
    pub ell2: usize,
    points: usize,
}

impl KClass {
    /// Upper bound on the number of atoms of the measures constructed for a
    /// strictly positive functional on polynomials of degree `2k`.
    pub fn atom_bound(&self, k: usize) -> usize {
        match self.kind {
            KKind::WholeOrHalfLine => k + 1,
            KKind::BoundedWithInterior => k + self.ell1 + 1,
            KKind::BoundedWithoutInterior => self.points.min(2 * k + 1),
            KKind::OneSidedUnbounded => k + self.ell1 + self.ell2 + 1,
            KKind::TwoSidedUnbounded => k + self.ell1 + 2,
        }
    }
}

pub fn classify(k: &ClosedSet) -> KClass {
    let card = k.boundary().len();
    let (ell1, ell2) = (card / 2, card % 2);
    let single = k.intervals().len() == 1;
    let kind = match (k.min().is_some(), k.max().is_some()) {
        (true, true) if k.has_interior() => KKind::BoundedWithInterior,
        (true, true) => KKind::BoundedWithoutInterior,
        (false, false) if single => KKind::WholeOrHalfLine,
        (false, false) => KKind::TwoSidedUnbounded,
        _ if single => KKind::WholeOrHalfLine,
        _ => KKind::OneSidedUnbounded,
    };
    KClass {
        kind,
        ell1,
        ell2,
        points: k.intervals().len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{rat, rat_int};

    fn unit() -> ClosedSet {
        ClosedSet::interval(rat_int(0), rat_int(1)).unwrap()
    }

    fn three_pieces() -> ClosedSet {
        ClosedSet::new(vec![
            Interval::new(None, Some(rat_int(0))),
            Interval::bounded(rat_int(1), rat_int(2)),
            Interval::new(Some(rat_int(3)), None),
        ])
        .unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(ClosedSet::new(vec![]), Err(KSetError::Empty));
        assert!(matches!(
            ClosedSet::new(vec![Interval::bounded(rat_int(2), rat_int(1))]),
            Err(KSetError::Reversed { index: 0 })
        ));
        assert!(matches!(
            ClosedSet::new(vec![
                Interval::bounded(rat_int(0), rat_int(1)),
                Interval::bounded(rat_int(1), rat_int(2))
            ]),
            Err(KSetError::NotDisjoint { .. })
        ));
        assert!(matches!(
            ClosedSet::new(vec![
                Interval::bounded(rat_int(0), rat_int(1)),
                Interval::new(None, Some(rat_int(5)))
            ]),
            Err(KSetError::InnerInfinity { index: 1 })
        ));
    }

    #[test]
    fn natural_description_examples() {
        let s = natural_description(&unit());
        let polys: Vec<Poly> = s.generators.iter().map(|g| g.poly.clone()).collect();
        assert_eq!(polys, vec![Poly::from_ints(&[0, 1]), Poly::from_ints(&[1, -1])]);

        assert!(natural_description(&ClosedSet::real_line()).generators.is_empty());

        let s = natural_description(&three_pieces());
        let polys: Vec<Poly> = s.generators.iter().map(|g| g.poly.clone()).collect();
        assert_eq!(polys, vec![Poly::from_ints(&[0, -1, 1]), Poly::from_ints(&[6, -5, 1])]);
    }

    #[test]
    fn pi_products_examples() {
        let ps = pi_products(&natural_description(&unit()), 4);
        let fs: Vec<Poly> = ps.iter().map(|p| p.f.clone()).collect();
        assert_eq!(
            fs,
            vec![
                Poly::one(),
                Poly::from_ints(&[0, 1]),
                Poly::from_ints(&[1, -1]),
                Poly::from_ints(&[0, 1, -1])
            ]
        );
        let parities: Vec<Parity> = ps.iter().map(|p| p.parity).collect();
        assert_eq!(parities, vec![Parity::Even, Parity::Odd, Parity::Odd, Parity::Even]);
        let signs: Vec<i8> = ps.iter().map(|p| p.leading_sign).collect();
        assert_eq!(signs, vec![1, 1, -1, -1]);

        let ps = pi_products(&natural_description(&ClosedSet::real_line()), 4);
        assert_eq!(ps.len(), 1);

        let ps = pi_products(&natural_description(&three_pieces()), 6);
        assert_eq!(ps.len(), 4);
        assert_eq!(ps[3].f, Poly::from_ints(&[0, -6, 11, -6, 1]));
        assert!(ps.iter().all(|p| p.parity == Parity::Even && p.leading_sign == 1));
        assert_eq!(ps[3].roots, vec![rat_int(0), rat_int(1), rat_int(2), rat_int(3)]);

        assert_eq!(pi_products(&natural_description(&three_pieces()), 3).len(), 3);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&ClosedSet::real_line()).atom_bound(3), 4);
        let c = classify(&unit());
        assert_eq!((c.ell1, c.ell2, c.atom_bound(2)), (1, 0, 4));
        let c = classify(&three_pieces());
        assert_eq!((c.kind, c.ell1, c.ell2, c.atom_bound(3)), (KKind::TwoSidedUnbounded, 2, 0, 7));
        let half = ClosedSet::new(vec![Interval::new(Some(rat_int(0)), None)]).unwrap();
        assert_eq!(classify(&half).atom_bound(2), 3);
        let pts = ClosedSet::new(vec![
            Interval::bounded(rat_int(0), rat_int(0)),
            Interval::bounded(rat_int(1), rat_int(1)),
        ])
        .unwrap();
        assert_eq!(classify(&pts).kind, KKind::BoundedWithoutInterior);
        assert_eq!(classify(&pts).atom_bound(3), 2);
    }

    #[test]
    fn contains_examples() {
        assert!(unit().contains(0.5, 0.0));
        assert!(unit().contains(1.0 + 1e-12, 1e-9));
        let k = ClosedSet::new(vec![
            Interval::new(None, Some(rat_int(0))),
            Interval::bounded(rat_int(1), rat_int(2)),
        ])
        .unwrap();
        assert!(!k.contains(0.5, 1e-9));
        assert!(k.contains_exact(&rat(3, 2)));
    }

    #[test]
    fn clip_and_shrink() {
        let c = three_pieces().clip(&rat_int(-4), &rat_int(4)).unwrap();
        assert!(c.is_bounded());
        assert_eq!(c.boundary(), vec![rat_int(-4), rat_int(0), rat_int(1), rat_int(2), rat_int(3), rat_int(4)]);
        let s = unit().shrink_endpoint(&rat_int(0), &rat(1, 8));
        assert_eq!(s.min(), Some(&rat(1, 8)));
    }
}
