//! Exact rational polynomial algebra, real root extraction and Vandermonde
//! density solves.
//!
//! Coefficients are stored in ascending order of degree: `coeffs[i]` is the
//! coefficient of `x^i`. The zero polynomial has no coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number. Always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("invalid rational literal `{0}`")]
    InvalidRational(String),
    #[error("root extraction requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("companion eigenvalue iteration did not converge for degree {degree} polynomial")]
    EigenNoConvergence { degree: usize },
    #[error("Vandermonde system is singular: nodes {i} and {j} coincide")]
    SingularVandermonde { i: usize, j: usize },
    #[error("Vandermonde system needs at least {needed} right-hand side values, got {got}")]
    ShortRhs { needed: usize, got: usize },
}

/// Builds the rational `num / den`. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"-0.125"`.
pub fn parse_rat(s: &str) -> Result<Rat, PolyError> {
    let t = s.trim();
    let bad = || PolyError::InvalidRational(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str_radix(n.trim(), 10).map_err(|_| bad())?;
        let d = BigInt::from_str_radix(d.trim(), 10).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let neg = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let n = BigInt::from_str_radix(&digits, 10).map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac_part.len());
        let r = Rat::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    BigInt::from_str_radix(t, 10)
        .map(Rat::from_integer)
        .map_err(|_| bad())
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational value of a finite float.
pub fn rat_from_f64(x: f64) -> Rat {
    Rat::from_f64(x).expect("finite float")
}

/// Rational approximation of `x` with denominator `2^bits`.
pub fn rat_dyadic(x: f64, bits: u32) -> Rat {
    let scale = (1u64 << bits) as f64;
    let n = (x * scale).round();
    Rat::new(
        BigInt::from_f64(n).expect("finite float"),
        BigInt::from(1u64 << bits),
    )
}

/// Dense univariate polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    pub fn monomial(c: Rat, degree: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `x - a`.
    pub fn linear_root(a: &Rat) -> Self {
        Self::new(vec![-a.clone(), Rat::one()])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Rat]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear_root(r))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as degree 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    /// Exact value at `x` (Horner).
    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rat_to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `x^shift * self`.
    pub fn shift(&self, shift: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff();
        Self::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.deg();
        let lc = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(rat_to_f64).collect()
    }

    /// Largest coefficient magnitude, as a float.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| rat_to_f64(c).abs())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// A real root and its inferred multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub location: f64,
    pub multiplicity: usize,
}

/// Real roots of a polynomial.
///
/// `residual_bound` is the largest normalized residual
/// `|p(r)| / (max|coeff| * max(1,|r|)^deg)` over the reported roots.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Root>,
    pub residual_bound: f64,
}

impl RootSet {
    pub fn locations(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.location).collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

/// Real roots of `p` via the eigenvalues of its (scaled) companion matrix.
///
/// Eigenvalues with `|Im| > tol * (1 + |z|)` are discarded, the rest are
/// polished with one exact Newton step and clustered at relative distance
/// `1e-8`. Exact zero roots are split off first.
pub fn real_roots(p: &Poly, tol: f64) -> Result<RootSet, PolyError> {
    let Some(deg) = p.degree() else {
        return Err(PolyError::ZeroPolynomial);
    };
    let zero_mult = p.coeffs.iter().take_while(|c| c.is_zero()).count();
    let reduced = Poly::new(p.coeffs[zero_mult..].to_vec());
    let mut found: Vec<f64> = Vec::new();

    match reduced.deg() {
        0 => {}
        1 => {
            let c = reduced.coeffs();
            found.push(rat_to_f64(&(-&c[0] / &c[1])));
        }
        n => {
            let monic = reduced.monic();
            let c: Vec<f64> = monic.to_f64_coeffs();
            // Scale x = s z so that the monic coefficients are bounded by 1.
            let s = (0..n)
                .map(|i| c[i].abs().powf(1.0 / (n - i) as f64))
                .fold(0.0, f64::max)
                .max(f64::MIN_POSITIVE);
            let mut comp = DMatrix::<f64>::zeros(n, n);
            for i in 1..n {
                comp[(i, i - 1)] = 1.0;
            }
            for i in 0..n {
                comp[(i, n - 1)] = -c[i] / s.powi((n - i) as i32);
            }
            let schur = comp
                .try_schur(1e-15, 10_000)
                .ok_or(PolyError::EigenNoConvergence { degree: n })?;
            for z in schur.complex_eigenvalues().iter() {
                let (re, im) = (z.re * s, z.im * s);
                if im.abs() <= tol * (1.0 + re.abs()).max(s) {
                    found.push(newton_polish(&reduced, re));
                }
            }
        }
    }

    found.sort_by(|a, b| a.total_cmp(b));
    let mut roots: Vec<Root> = Vec::new();
    for x in found {
        match roots.last_mut() {
            Some(last) if (x - last.location).abs() <= 1e-8 * (1.0 + x.abs()) => {
                let m = last.multiplicity as f64;
                last.location = (last.location * m + x) / (m + 1.0);
                last.multiplicity += 1;
            }
            _ => roots.push(Root {
                location: x,
                multiplicity: 1,
            }),
        }
    }
    if zero_mult > 0 {
        match roots.iter_mut().find(|r| r.location.abs() <= 1e-8) {
            Some(r) => r.multiplicity += zero_mult,
            None => roots.push(Root {
                location: 0.0,
                multiplicity: zero_mult,
            }),
        }
        roots.sort_by(|a, b| a.location.total_cmp(&b.location));
    }

    let norm = p.max_abs_coeff();
    let residual_bound = roots
        .iter()
        .map(|r| {
            let scale = norm * r.location.abs().max(1.0).powi(deg as i32);
            exact_abs_value(p, r.location) / scale
        })
        .fold(0.0, f64::max);
    Ok(RootSet {
        roots,
        residual_bound,
    })
}

fn exact_abs_value(p: &Poly, x: f64) -> f64 {
    rat_to_f64(&p.eval(&rat_from_f64(x))).abs()
}

/// One Newton step evaluated in exact arithmetic at the float `x`.
fn newton_polish(p: &Poly, x: f64) -> f64 {
    let xr = rat_from_f64(x);
    let d = p.derivative().eval(&xr);
    if d.is_zero() {
        return x;
    }
    let step = rat_to_f64(&(p.eval(&xr) / d));
    let polished = x - step;
    if polished.is_finite() && step.abs() <= 1e-6 * (1.0 + x.abs()) {
        polished
    } else {
        x
    }
}

/// Solves `sum_j w_j x_j^i = b_i`, `i = 0..n-1`, for the weights `w` using the
/// Björck–Pereyra recurrence for the dual Vandermonde system.
fn bjorck_pereyra<T>(nodes: &[T], rhs: &mut [T])
where
    T: Num + Clone,
{
    let n = nodes.len();
    if n == 0 {
        return;
    }
    let last = n - 1;
    for k in 0..last {
        for i in (k + 1..=last).rev() {
            let t = nodes[k].clone() * rhs[i - 1].clone();
            rhs[i] = rhs[i].clone() - t;
        }
    }
    for k in (0..last).rev() {
        for i in k + 1..=last {
            let d = nodes[i].clone() - nodes[i - k - 1].clone();
            rhs[i] = rhs[i].clone() / d;
        }
        for i in k..last {
            rhs[i] = rhs[i].clone() - rhs[i + 1].clone();
        }
    }
}

fn check_nodes<T, F>(nodes: &[T], rhs_len: usize, coincide: F) -> Result<(), PolyError>
where
    F: Fn(&T, &T) -> bool,
{
    if rhs_len < nodes.len() {
        return Err(PolyError::ShortRhs {
            needed: nodes.len(),
            got: rhs_len,
        });
    }
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if coincide(&nodes[i], &nodes[j]) {
                return Err(PolyError::SingularVandermonde { i, j });
            }
        }
    }
    Ok(())
}

/// Densities `rho` with `sum_j rho_j nodes_j^i = rhs_i` for
/// `i < nodes.len()`, followed by one step of iterative refinement with an
/// exactly computed residual.
pub fn vandermonde_solve(nodes: &[f64], rhs: &[Rat]) -> Result<Vec<f64>, PolyError> {
    check_nodes(nodes, rhs.len(), |a, b| {
        (a - b).abs() <= 1e-14 * (1.0 + a.abs().max(b.abs()))
    })?;
    let n = nodes.len();
    let mut w: Vec<f64> = rhs[..n].iter().map(rat_to_f64).collect();
    bjorck_pereyra(nodes, &mut w);

    let exact_nodes: Vec<Rat> = nodes.iter().map(|&x| rat_from_f64(x)).collect();
    let exact_w: Vec<Rat> = w.iter().map(|&x| rat_from_f64(x)).collect();
    let mut residual: Vec<f64> = (0..n)
        .map(|i| {
            let s = exact_nodes
                .iter()
                .zip(&exact_w)
                .fold(Rat::zero(), |acc, (x, wj)| acc + wj * num_traits::pow(x.clone(), i));
            rat_to_f64(&(&rhs[i] - s))
        })
        .collect();
    bjorck_pereyra(nodes, &mut residual);
    Ok(w.iter().zip(&residual).map(|(a, b)| a + b).collect())
}

/// Exact variant of [`vandermonde_solve`] for rational nodes.
pub fn vandermonde_solve_exact(nodes: &[Rat], rhs: &[Rat]) -> Result<Vec<Rat>, PolyError> {
    check_nodes(nodes, rhs.len(), |a, b| a == b)?;
    let mut w = rhs[..nodes.len()].to_vec();
    bjorck_pereyra(nodes, &mut w);
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn eval_examples() {
        let half = rat(1, 2);
        assert_eq!(Poly::linear_root(&half).eval(&half), Rat::zero());
        let sq = (&p(&[0, 1]) * &p(&[-1, 1])).pow(2);
        assert_eq!(sq.eval(&rat_int(2)), rat_int(4));
        let four = Poly::from_roots(&[rat_int(0), rat_int(1), rat_int(2), rat_int(3)]);
        assert_eq!(four.eval(&rat_int(4)), rat_int(24));
    }

    #[test]
    fn mul_examples() {
        let f1 = p(&[0, -1, 1]);
        let f2 = p(&[6, -5, 1]);
        assert_eq!(&f1 * &f2, p(&[0, -6, 11, -6, 1]));
        assert_eq!(&Poly::one() * &f1, f1);
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
        assert!((&Poly::zero() * &f1).is_zero());
    }

    #[test]
    fn div_rem_recombines() {
        let a = p(&[3, 0, -2, 5, 1]);
        let b = p(&[1, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.deg() < b.deg() || r.is_zero());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(Poly::new(vec![rat(-1, 2), Rat::one()]).to_string(), "x - 1/2");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn parse_rat_forms() {
        assert_eq!(parse_rat("5/12").unwrap(), rat(5, 12));
        assert_eq!(parse_rat("-3").unwrap(), rat_int(-3));
        assert_eq!(parse_rat("-0.125").unwrap(), rat(-1, 8));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn real_roots_examples() {
        let r = real_roots(&Poly::new(vec![rat(-1, 2), Rat::one()]), 1e-9).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert_eq!(r.roots[0].location, 0.5);

        let r = real_roots(&p(&[1, 0, 1]), 1e-9).unwrap();
        assert!(r.roots.is_empty());

        let r = real_roots(&p(&[0, 2, -3, 1]), 1e-9).unwrap();
        let locs = r.locations();
        assert_eq!(locs.len(), 3);
        for (got, want) in locs.iter().zip([0.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        assert!(r.roots.iter().all(|r| r.multiplicity == 1));
    }

    #[test]
    fn real_roots_multiplicities() {
        // x^2 (x - 3)
        let r = real_roots(&p(&[0, 0, -3, 1]), 1e-9).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert_eq!(r.roots[0].multiplicity, 2);
        assert_eq!(r.total_multiplicity(), 3);
        assert!(matches!(
            real_roots(&Poly::zero(), 1e-9),
            Err(PolyError::ZeroPolynomial)
        ));
    }

    #[test]
    fn vandermonde_examples() {
        let w = vandermonde_solve(&[0.0, 0.5, 1.0], &[rat_int(1), rat(1, 2), rat(5, 12)]).unwrap();
        for wi in w {
            assert!((wi - 1.0 / 3.0).abs() < 1e-15);
        }
        let w = vandermonde_solve(&[0.7], &[rat(3, 4)]).unwrap();
        assert_eq!(w, vec![0.75]);
        let w = vandermonde_solve(&[2.0, -0.5], &[rat_int(2), rat_int(0)]).unwrap();
        assert!((w[0] - 0.4).abs() < 1e-15 && (w[1] - 1.6).abs() < 1e-15);

        let exact =
            vandermonde_solve_exact(&[rat_int(2), rat(-1, 2)], &[rat_int(2), rat_int(0)]).unwrap();
        assert_eq!(exact, vec![rat(2, 5), rat(8, 5)]);
    }

    #[test]
    fn vandermonde_errors() {
        assert!(matches!(
            vandermonde_solve(&[1.0, 1.0], &[rat_int(1), rat_int(1)]),
            Err(PolyError::SingularVandermonde { i: 0, j: 1 })
        ));
        assert!(matches!(
            vandermonde_solve(&[1.0, 2.0], &[rat_int(1)]),
            Err(PolyError::ShortRhs { .. })
        ));
    }
}
