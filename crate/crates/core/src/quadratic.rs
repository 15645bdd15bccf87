//! Exact quadratics in one variable and their solution sets, with interval
//! endpoints in `ℚ(√d)`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::polyalg::{rat_from_f64, rat_int, rat_to_f64, Poly, Rat};

/// `a x² + b x + c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadratic {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl Quadratic {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Self {
        Self { a, b, c }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(Rat::zero(), Rat::zero(), c)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        (&self.a * x + &self.b) * x + &self.c
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        (rat_to_f64(&self.a) * x + rat_to_f64(&self.b)) * x + rat_to_f64(&self.c)
    }

    pub fn sub(&self, other: &Quadratic) -> Quadratic {
        Quadratic::new(&self.a - &other.a, &self.b - &other.b, &self.c - &other.c)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(vec![self.c.clone(), self.b.clone(), self.a.clone()])
    }

    pub fn discriminant(&self) -> Rat {
        &self.b * &self.b - rat_int(4) * &self.a * &self.c
    }

    /// The closed set `{x : self(x) ≥ 0}`.
    pub fn nonneg_set(&self) -> SurdSet {
        if self.a.is_zero() {
            if self.b.is_zero() {
                return if self.c.is_negative() { SurdSet::empty() } else { SurdSet::full() };
            }
            let r = Surd::rational(-&self.c / &self.b);
            return if self.b.is_positive() {
                SurdSet::from_interval(Some(r), None)
            } else {
                SurdSet::from_interval(None, Some(r))
            };
        }
        let d = self.discriminant();
        let center = -&self.b / (rat_int(2) * &self.a);
        if d.is_negative() || (d.is_zero() && self.a.is_positive()) {
            return if self.a.is_positive() { SurdSet::full() } else { SurdSet::empty() };
        }
        let half = Rat::one() / (rat_int(2) * self.a.abs());
        let lo = Surd::new(center.clone(), -half.clone(), d.clone());
        let hi = Surd::new(center, half, d);
        if self.a.is_positive() {
            SurdSet {
                intervals: vec![SurdInterval::new(None, Some(lo)), SurdInterval::new(Some(hi), None)],
            }
        } else {
            SurdSet::from_interval(Some(lo), Some(hi))
        }
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})x^2 + ({})x + ({})", self.a, self.b, self.c)
    }
}

/// The real number `a + b √d` with `d ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    pub a: Rat,
    pub b: Rat,
    pub d: Rat,
}

fn sign_of(r: &Rat) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl Surd {
    pub fn new(a: Rat, b: Rat, d: Rat) -> Self {
        assert!(!d.is_negative(), "negative radicand");
        if b.is_zero() || d.is_zero() {
            return Self::rational(a);
        }
        Self { a, b, d }
    }

    pub fn rational(a: Rat) -> Self {
        Self {
            a,
            b: Rat::zero(),
            d: Rat::zero(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * rat_to_f64(&self.d).sqrt()
    }

    /// Exact sign of `a + b √d`.
    pub fn sign(&self) -> i8 {
        sign3(&self.a, &self.b, &self.d)
    }

    /// Exact comparison, also across different radicands.
    pub fn cmp_exact(&self, other: &Surd) -> Ordering {
        let s = if other.b.is_zero() {
            sign3(&(&self.a - &other.a), &self.b, &self.d)
        } else if self.d == other.d {
            sign3(&(&self.a - &other.a), &(&self.b - &other.b), &self.d)
        } else if self.b.is_zero() {
            -sign3(&(&other.a - &self.a), &other.b, &other.d)
        } else {
            // sign of s1 - t with s1 = u + b1 √d1, t = b2 √d2
            let u = &self.a - &other.a;
            let ss = sign3(&u, &self.b, &self.d);
            let st = sign_of(&other.b);
            if ss != st || ss == 0 {
                (ss - st).signum()
            } else {
                let rational = &u * &u + &self.b * &self.b * &self.d - &other.b * &other.b * &other.d;
                let sq = sign3(&rational, &(rat_int(2) * &u * &self.b), &self.d);
                if ss > 0 {
                    sq
                } else {
                    -sq
                }
            }
        };
        s.cmp(&0)
    }

    pub fn cmp_rat(&self, x: &Rat) -> Ordering {
        self.cmp_exact(&Surd::rational(x.clone()))
    }
}

fn sign3(a: &Rat, b: &Rat, d: &Rat) -> i8 {
    let sa = sign_of(a);
    let sb = if d.is_zero() { 0 } else { sign_of(b) };
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    match (a * a).cmp(&(b * b * d)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + ({})*sqrt({})", self.a, self.b, self.d)
        }
    }
}

/// Closed interval with surd endpoints; `None` is infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurdInterval {
    pub lo: Option<Surd>,
    pub hi: Option<Surd>,
}

impl SurdInterval {
    pub fn new(lo: Option<Surd>, hi: Option<Surd>) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lo.as_ref().is_none_or(|l| l.cmp_rat(x) != Ordering::Greater)
            && self.hi.as_ref().is_none_or(|h| h.cmp_rat(x) != Ordering::Less)
    }

    pub fn contains_interior(&self, x: &Rat) -> bool {
        self.lo.as_ref().is_none_or(|l| l.cmp_rat(x) == Ordering::Less)
            && self.hi.as_ref().is_none_or(|h| h.cmp_rat(x) == Ordering::Greater)
    }

    pub fn bounds_f64(&self) -> (f64, f64) {
        (
            self.lo.as_ref().map_or(f64::NEG_INFINITY, Surd::to_f64),
            self.hi.as_ref().map_or(f64::INFINITY, Surd::to_f64),
        )
    }

    pub fn is_point(&self) -> bool {
        matches!((&self.lo, &self.hi), (Some(l), Some(h)) if l.cmp_exact(h) == Ordering::Equal)
    }

    fn intersect(&self, other: &SurdInterval) -> Option<SurdInterval> {
        let lo = match (&self.lo, &other.lo) {
            (Some(a), Some(b)) => Some(if a.cmp_exact(b) == Ordering::Less { b.clone() } else { a.clone() }),
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        let hi = match (&self.hi, &other.hi) {
            (Some(a), Some(b)) => Some(if a.cmp_exact(b) == Ordering::Greater { b.clone() } else { a.clone() }),
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        match (&lo, &hi) {
            (Some(l), Some(h)) if l.cmp_exact(h) == Ordering::Greater => None,
            _ => Some(SurdInterval { lo, hi }),
        }
    }

    /// A rational point strictly inside the interval, or the point itself
    /// for a degenerate rational interval.
    pub fn rational_point(&self) -> Option<Rat> {
        match (&self.lo, &self.hi) {
            (None, None) => Some(Rat::zero()),
            (Some(l), None) => Some(rational_above(l) + Rat::one()),
            (None, Some(h)) => Some(rational_below(h) - Rat::one()),
            (Some(l), Some(h)) => {
                if l.cmp_exact(h) == Ordering::Equal {
                    return l.b.is_zero().then(|| l.a.clone());
                }
                let (a, b) = (l.to_f64(), h.to_f64());
                let mid = rat_from_f64(0.5 * (a + b));
                if self.contains_interior(&mid) {
                    return Some(mid);
                }
                bisect_inside(self)
            }
        }
    }
}

fn rational_above(s: &Surd) -> Rat {
    let mut x = rat_from_f64(s.to_f64());
    while s.cmp_rat(&x) != Ordering::Less {
        x += Rat::one();
    }
    x
}

fn rational_below(s: &Surd) -> Rat {
    let mut x = rat_from_f64(s.to_f64());
    while s.cmp_rat(&x) != Ordering::Greater {
        x -= Rat::one();
    }
    x
}

fn bisect_inside(iv: &SurdInterval) -> Option<Rat> {
    // Endpoints closer than float resolution: refine with exact rationals.
    let l = iv.lo.as_ref()?;
    let mut lo = rational_below(l);
    let mut hi = rational_above(iv.hi.as_ref()?);
    for _ in 0..400 {
        let mid = (&lo + &hi) / rat_int(2);
        if iv.contains_interior(&mid) {
            return Some(mid);
        }
        if l.cmp_rat(&mid) != Ordering::Less {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    None
}

/// Finite union of disjoint closed intervals with surd endpoints, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurdSet {
    pub intervals: Vec<SurdInterval>,
}

impl SurdSet {
    pub fn empty() -> Self {
        Self { intervals: Vec::new() }
    }

    pub fn full() -> Self {
        Self::from_interval(None, None)
    }

    pub fn from_interval(lo: Option<Surd>, hi: Option<Surd>) -> Self {
        Self {
            intervals: vec![SurdInterval::new(lo, hi)],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    pub fn intersect(&self, other: &SurdSet) -> SurdSet {
        let mut intervals: Vec<SurdInterval> = self
            .intervals
            .iter()
            .flat_map(|a| other.intervals.iter().filter_map(move |b| a.intersect(b)))
            .collect();
        intervals.sort_by(|x, y| match (&x.lo, &y.lo) {
            (None, None) => Ordering::Equal,
            (None, _) => Ordering::Less,
            (_, None) => Ordering::Greater,
            (Some(a), Some(b)) => a.cmp_exact(b),
        });
        SurdSet { intervals }
    }

    pub fn bounds_f64(&self) -> Vec<(f64, f64)> {
        self.intervals.iter().map(SurdInterval::bounds_f64).collect()
    }

    /// Smallest and largest element as floats, `None` when empty.
    pub fn hull_f64(&self) -> Option<(f64, f64)> {
        let first = self.intervals.first()?.bounds_f64().0;
        let last = self.intervals.last()?.bounds_f64().1;
        Some((first, last))
    }
}

impl fmt::Display for SurdSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, (lo, hi)) in self.bounds_f64().iter().enumerate() {
            if i > 0 {
                write!(f, " U ")?;
            }
            write!(f, "[{lo}, {hi}]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat;

    fn q(a: i64, b: i64, c: i64) -> Quadratic {
        Quadratic::new(rat_int(a), rat_int(b), rat_int(c))
    }

    #[test]
    fn surd_sign_and_order() {
        // 1 - sqrt(2) < 0, 3 - sqrt(8) > 0
        assert_eq!(Surd::new(rat_int(1), rat_int(-1), rat_int(2)).sign(), -1);
        assert_eq!(Surd::new(rat_int(3), rat_int(-1), rat_int(8)).sign(), 1);
        assert_eq!(Surd::new(rat_int(2), rat_int(-1), rat_int(4)).sign(), 0);
        // sqrt(2) < 3/2 < sqrt(3)
        let s2 = Surd::new(rat_int(0), rat_int(1), rat_int(2));
        let s3 = Surd::new(rat_int(0), rat_int(1), rat_int(3));
        assert_eq!(s2.cmp_rat(&rat(3, 2)), Ordering::Less);
        assert_eq!(s3.cmp_rat(&rat(3, 2)), Ordering::Greater);
        assert_eq!(s2.cmp_exact(&s3), Ordering::Less);
        assert_eq!(s3.cmp_exact(&s2), Ordering::Greater);
        // 1 + sqrt(2) vs sqrt(5): 2.414 > 2.236
        let a = Surd::new(rat_int(1), rat_int(1), rat_int(2));
        let b = Surd::new(rat_int(0), rat_int(1), rat_int(5));
        assert_eq!(a.cmp_exact(&b), Ordering::Greater);
        assert_eq!(b.cmp_exact(&a), Ordering::Less);
        assert_eq!(a.cmp_exact(&a.clone()), Ordering::Equal);
    }

    #[test]
    fn nonneg_sets() {
        // x^2 - 2 >= 0
        let s = q(1, 0, -2).nonneg_set();
        assert_eq!(s.intervals.len(), 2);
        assert!(s.contains(&rat_int(2)) && !s.contains(&rat_int(1)));
        // -(x-1)(x-3) >= 0 -> [1, 3]
        let s = q(-1, 4, -3).nonneg_set();
        assert_eq!(s.bounds_f64(), vec![(1.0, 3.0)]);
        assert!(q(-1, 0, -1).nonneg_set().is_empty());
        assert_eq!(q(1, 0, 1).nonneg_set(), SurdSet::full());
        assert_eq!(q(0, 2, -1).nonneg_set().bounds_f64(), vec![(0.5, f64::INFINITY)]);
        assert_eq!(q(0, 0, -1).nonneg_set(), SurdSet::empty());
        // -(x-1)^2 >= 0 -> {1}
        let s = q(-1, 2, -1).nonneg_set();
        assert!(s.intervals[0].is_point());
        assert_eq!(s.intervals[0].rational_point(), Some(rat_int(1)));
    }

    #[test]
    fn intersections() {
        let a = q(1, 0, -2).nonneg_set();
        let b = q(-1, 0, 9).nonneg_set();
        let c = a.intersect(&b);
        assert_eq!(c.intervals.len(), 2);
        let bounds = c.bounds_f64();
        assert!((bounds[0].0 + 3.0).abs() < 1e-15 && (bounds[1].1 - 3.0).abs() < 1e-15);
        assert!(c.intersect(&SurdSet::empty()).is_empty());
        let p = c.intervals[1].rational_point().unwrap();
        assert!(c.contains(&p));
    }
}
