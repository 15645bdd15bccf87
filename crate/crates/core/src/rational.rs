//! Rational moment data: the denominator `q`, exact partial fractions, the
//! conversion to power moments `L(f) = ℒ(f/q)` and the measure bijection
//! `μ ↦ q·μ`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::hankel::{riesz, solve_exact, MomentSequence};
use crate::kset::ClosedSet;
use crate::polyalg::{rat_to_f64, Poly, Rat};
use crate::solver::{
    solve, AtomicMeasure, InfeasibleReason, Outcome, PoleSet, Solution, SolverConfig, SolverError,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RationalError {
    #[error("real pole {0} listed twice")]
    DuplicateRealPole(Rat),
    #[error("complex pole parameter {0} listed twice")]
    DuplicateComplexPole(Rat),
    #[error("complex pole parameter {0} must be positive")]
    NonPositiveEta(Rat),
    #[error("pole order must be at least 1")]
    ZeroOrder,
    #[error("{what}: expected {expected} values, got {got}")]
    Length {
        what: String,
        expected: usize,
        got: usize,
    },
    #[error("polynomial degree {degree} exceeds 2k = {two_k}")]
    DegreeTooHigh { degree: usize, two_k: usize },
    #[error("atom {atom} lies on a real zero of q")]
    AtomOnPole { atom: f64 },
}

/// Pole data of `q(x) = Π (x - λ_j)^{2 k_j} Π (x² + η_j)^{ℓ_j}` together with
/// the polynomial allowance `2 k0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PoleSpec {
    pub k0: usize,
    pub real_poles: Vec<(Rat, usize)>,
    pub complex_poles: Vec<(Rat, usize)>,
}

impl PoleSpec {
    pub fn new(
        k0: usize,
        real_poles: Vec<(Rat, usize)>,
        complex_poles: Vec<(Rat, usize)>,
    ) -> Result<Self, RationalError> {
        for (i, (l, k)) in real_poles.iter().enumerate() {
            if *k == 0 {
                return Err(RationalError::ZeroOrder);
            }
            if real_poles[..i].iter().any(|(m, _)| m == l) {
                return Err(RationalError::DuplicateRealPole(l.clone()));
            }
        }
        for (i, (e, l)) in complex_poles.iter().enumerate() {
            if *l == 0 {
                return Err(RationalError::ZeroOrder);
            }
            if !e.is_positive() {
                return Err(RationalError::NonPositiveEta(e.clone()));
            }
            if complex_poles[..i].iter().any(|(m, _)| m == e) {
                return Err(RationalError::DuplicateComplexPole(e.clone()));
            }
        }
        Ok(Self {
            k0,
            real_poles,
            complex_poles,
        })
    }

    /// Pole-free data: `q = 1`.
    pub fn polynomial(k: usize) -> Self {
        Self {
            k0: k,
            real_poles: Vec::new(),
            complex_poles: Vec::new(),
        }
    }

    /// `k` with `2k = 2k0 + Σ 2k_j + Σ 2ℓ_j`.
    pub fn k(&self) -> usize {
        self.k0
            + self.real_poles.iter().map(|(_, k)| k).sum::<usize>()
            + self.complex_poles.iter().map(|(_, l)| l).sum::<usize>()
    }

    pub fn pole_set(&self) -> PoleSet {
        PoleSet::new(self.real_poles.iter().map(|(l, _)| l.clone()).collect())
    }

    /// The rational basis in its fixed order.
    pub fn basis(&self) -> Vec<BasisFn> {
        let mut out: Vec<BasisFn> = (0..=2 * self.k0).map(BasisFn::Power).collect();
        for (j, (_, k)) in self.real_poles.iter().enumerate() {
            out.extend((1..=2 * k).map(|i| BasisFn::Real { pole: j, order: i }));
        }
        for (j, (_, l)) in self.complex_poles.iter().enumerate() {
            out.extend((1..=*l).map(|i| BasisFn::ComplexEven { pole: j, order: i }));
        }
        for (j, (_, l)) in self.complex_poles.iter().enumerate() {
            out.extend((1..=*l).map(|i| BasisFn::ComplexOdd { pole: j, order: i }));
        }
        out
    }

    /// `q · b` as a polynomial of degree at most `2k`.
    pub fn numerator(&self, b: BasisFn) -> Poly {
        let mut q = Poly::one();
        for (j, (l, k)) in self.real_poles.iter().enumerate() {
            let skip = match b {
                BasisFn::Real { pole, order } if pole == j => order,
                _ => 0,
            };
            q = &q * &Poly::linear_root(l).pow(2 * k - skip);
        }
        for (j, (e, l)) in self.complex_poles.iter().enumerate() {
            let skip = match b {
                BasisFn::ComplexEven { pole, order } | BasisFn::ComplexOdd { pole, order }
                    if pole == j =>
                {
                    order
                }
                _ => 0,
            };
            q = &q * &complex_factor(e).pow(l - skip);
        }
        match b {
            BasisFn::Power(i) => q.shift(i),
            BasisFn::ComplexOdd { .. } => q.shift(1),
            _ => q,
        }
    }

    /// Value of the basis function at `x`.
    pub fn eval_basis(&self, b: BasisFn, x: &Rat) -> Rat {
        match b {
            BasisFn::Power(i) => num_traits::pow(x.clone(), i),
            BasisFn::Real { pole, order } => {
                Rat::one() / num_traits::pow(x - &self.real_poles[pole].0, order)
            }
            BasisFn::ComplexEven { pole, order } => {
                Rat::one() / num_traits::pow(x * x + &self.complex_poles[pole].0, order)
            }
            BasisFn::ComplexOdd { pole, order } => {
                x / num_traits::pow(x * x + &self.complex_poles[pole].0, order)
            }
        }
    }
}

fn complex_factor(eta: &Rat) -> Poly {
    Poly::new(vec![eta.clone(), Rat::zero(), Rat::one()])
}

/// `q` of the pole specification.
pub fn build_q(spec: &PoleSpec) -> Poly {
    spec.numerator(BasisFn::Power(0))
}

/// One element of the rational basis: `x^i`, `(x-λ_j)^{-i}`,
/// `(x²+η_j)^{-i}` or `x (x²+η_j)^{-i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisFn {
    Power(usize),
    Real { pole: usize, order: usize },
    ComplexEven { pole: usize, order: usize },
    ComplexOdd { pole: usize, order: usize },
}

impl fmt::Display for BasisFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Power(i) => write!(f, "x^{i}"),
            Self::Real { pole, order } => write!(f, "(x-λ{pole})^-{order}"),
            Self::ComplexEven { pole, order } => write!(f, "(x^2+η{pole})^-{order}"),
            Self::ComplexOdd { pole, order } => write!(f, "x(x^2+η{pole})^-{order}"),
        }
    }
}

/// Values of `ℒ` on the rational basis, grouped by pole.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMoments {
    /// `ℒ(x^i)`, `i = 0..=2k0`.
    pub gamma0: Vec<Rat>,
    /// Per real pole `j`: `ℒ((x-λ_j)^{-i})`, `i = 1..=2k_j`.
    pub real: Vec<Vec<Rat>>,
    /// Per complex pole `j`: `(ℒ((x²+η_j)^{-i}), ℒ(x(x²+η_j)^{-i}))`,
    /// `i = 1..=ℓ_j`.
    pub complex: Vec<(Vec<Rat>, Vec<Rat>)>,
}

impl RationalMoments {
    pub fn check(&self, spec: &PoleSpec) -> Result<(), RationalError> {
        let len = |what: String, expected: usize, got: usize| {
            if expected == got {
                Ok(())
            } else {
                Err(RationalError::Length { what, expected, got })
            }
        };
        len("gamma0".into(), 2 * spec.k0 + 1, self.gamma0.len())?;
        len("real pole count".into(), spec.real_poles.len(), self.real.len())?;
        for (j, (v, (_, k))) in self.real.iter().zip(&spec.real_poles).enumerate() {
            len(format!("real pole {j}"), 2 * k, v.len())?;
        }
        len("complex pole count".into(), spec.complex_poles.len(), self.complex.len())?;
        for (j, ((s0, s1), (_, l))) in self.complex.iter().zip(&spec.complex_poles).enumerate() {
            len(format!("complex pole {j} s0"), *l, s0.len())?;
            len(format!("complex pole {j} s1"), *l, s1.len())?;
        }
        Ok(())
    }

    /// Values in the order of [`PoleSpec::basis`].
    pub fn flatten(&self) -> Vec<Rat> {
        let mut out = self.gamma0.clone();
        for v in &self.real {
            out.extend(v.iter().cloned());
        }
        for (s0, _) in &self.complex {
            out.extend(s0.iter().cloned());
        }
        for (_, s1) in &self.complex {
            out.extend(s1.iter().cloned());
        }
        out
    }

    pub fn from_flat(spec: &PoleSpec, values: &[Rat]) -> Self {
        let mut it = values.iter().cloned();
        let gamma0 = it.by_ref().take(2 * spec.k0 + 1).collect();
        let real = spec
            .real_poles
            .iter()
            .map(|(_, k)| it.by_ref().take(2 * k).collect())
            .collect();
        let s0: Vec<Vec<Rat>> = spec
            .complex_poles
            .iter()
            .map(|(_, l)| it.by_ref().take(*l).collect())
            .collect();
        let s1: Vec<Vec<Rat>> = spec
            .complex_poles
            .iter()
            .map(|(_, l)| it.by_ref().take(*l).collect())
            .collect();
        Self {
            gamma0,
            real,
            complex: s0.into_iter().zip(s1).collect(),
        }
    }

    /// Data of the exact atomic measure, by direct summation.
    pub fn of_measure(spec: &PoleSpec, atoms: &[Rat], densities: &[Rat]) -> Self {
        let values: Vec<Rat> = spec
            .basis()
            .into_iter()
            .map(|b| {
                atoms
                    .iter()
                    .zip(densities)
                    .fold(Rat::zero(), |acc, (x, r)| acc + r * spec.eval_basis(b, x))
            })
            .collect();
        Self::from_flat(spec, &values)
    }
}

/// Coefficients of `f/q` in the rational basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCoefficients {
    pub terms: Vec<(BasisFn, Rat)>,
}

impl BasisCoefficients {
    pub fn get(&self, b: BasisFn) -> Rat {
        self.terms
            .iter()
            .find(|(t, _)| *t == b)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// `Σ c_b · (q b)`, which equals `f`.
    pub fn recombine(&self, spec: &PoleSpec) -> Poly {
        self.terms
            .iter()
            .fold(Poly::zero(), |acc, (b, c)| &acc + &spec.numerator(*b).scale(c))
    }
}

/// Matrix whose column `b` holds the coefficients of `q·b`.
fn numerator_matrix(spec: &PoleSpec) -> Vec<Vec<Rat>> {
    let basis = spec.basis();
    let n = basis.len();
    let cols: Vec<Poly> = basis.iter().map(|&b| spec.numerator(b)).collect();
    (0..n).map(|i| cols.iter().map(|c| c.coeff(i)).collect()).collect()
}

/// Exact decomposition of `f/q` by one linear solve over the numerators.
pub fn partial_fractions(f: &Poly, spec: &PoleSpec) -> Result<BasisCoefficients, RationalError> {
    let two_k = 2 * spec.k();
    if f.deg() > two_k {
        return Err(RationalError::DegreeTooHigh {
            degree: f.deg(),
            two_k,
        });
    }
    let rhs: Vec<Rat> = (0..=two_k).map(|i| f.coeff(i)).collect();
    let c = solve_exact(&numerator_matrix(spec), &rhs)
        .expect("numerators of a valid pole specification are linearly independent");
    let out = BasisCoefficients {
        terms: spec.basis().into_iter().zip(c).collect(),
    };
    assert_eq!(&out.recombine(spec), f, "partial fractions must recombine exactly");
    Ok(out)
}

/// Power moments `γ_m = ℒ(x^m / q)`, `m = 0..=2k`.
pub fn rational_to_power(
    data: &RationalMoments,
    spec: &PoleSpec,
) -> Result<MomentSequence, RationalError> {
    data.check(spec)?;
    let d = data.flatten();
    let values: Vec<Rat> = (0..=2 * spec.k())
        .map(|m| {
            let pf = partial_fractions(&Poly::monomial(Rat::one(), m), spec)?;
            Ok(pf
                .terms
                .iter()
                .zip(&d)
                .fold(Rat::zero(), |acc, ((_, c), v)| acc + c * v))
        })
        .collect::<Result<_, RationalError>>()?;
    Ok(MomentSequence::new(values).expect("nonempty"))
}

/// Rational data `ℒ(b) = L(q b)` of power moments `γ` of degree `2k`.
pub fn power_to_rational(
    gamma: &MomentSequence,
    spec: &PoleSpec,
) -> Result<RationalMoments, RationalError> {
    if gamma.degree() != 2 * spec.k() {
        return Err(RationalError::Length {
            what: "power moments".into(),
            expected: 2 * spec.k() + 1,
            got: gamma.degree() + 1,
        });
    }
    let values: Vec<Rat> = spec
        .basis()
        .into_iter()
        .map(|b| riesz(gamma, &spec.numerator(b)).expect("numerator degree ≤ 2k"))
        .collect();
    Ok(RationalMoments::from_flat(spec, &values))
}

/// `q·μ`: same atoms, densities multiplied by `q(x_i)`.
pub fn pushforward_q(mu: &AtomicMeasure, q: &Poly, tol: f64) -> Result<AtomicMeasure, RationalError> {
    scale_by_q(mu, q, tol, false)
}

/// `μ / q`, the inverse of [`pushforward_q`].
pub fn pullback_q(mu: &AtomicMeasure, q: &Poly, tol: f64) -> Result<AtomicMeasure, RationalError> {
    scale_by_q(mu, q, tol, true)
}

fn scale_by_q(mu: &AtomicMeasure, q: &Poly, tol: f64, inverse: bool) -> Result<AtomicMeasure, RationalError> {
    let (atoms, dens) = mu.exact_parts();
    let mut new_dens = Vec::with_capacity(dens.len());
    for (x, r) in atoms.iter().zip(&dens) {
        let qx = q.eval(x);
        let xf = rat_to_f64(x);
        let scale = q.max_abs_coeff() * xf.abs().max(1.0).powi(q.deg() as i32);
        if qx.is_zero() || rat_to_f64(&qx).abs() <= tol * tol * scale {
            return Err(RationalError::AtomOnPole { atom: xf });
        }
        new_dens.push(if inverse { r / qx } else { r * qx });
    }
    Ok(match &mu.exact {
        Some(_) => AtomicMeasure::exact(atoms, new_dens),
        None => AtomicMeasure::new(
            mu.atoms.clone(),
            new_dens.iter().map(rat_to_f64).collect(),
        ),
    })
}

/// A representing measure for `ℒ` together with the measure for `L`.
#[derive(Clone, Debug, PartialEq)]
pub struct RtmpSolution {
    pub measure: AtomicMeasure,
    pub power: Solution,
    pub gamma: MomentSequence,
}

/// Solves the rational problem on `K` avoiding the real poles of `q`.
pub fn solve_rtmp(
    data: &RationalMoments,
    spec: &PoleSpec,
    k: &ClosedSet,
    cfg: &SolverConfig,
) -> Result<Outcome<RtmpSolution>, SolverError> {
    let gamma = rational_to_power(data, spec).map_err(|e| SolverError::Precondition(e.to_string()))?;
    let poles = spec.pole_set();
    match solve(&gamma, k, &poles, cfg)? {
        Outcome::Infeasible(r) => Ok(Outcome::Infeasible(r)),
        Outcome::Solved(power) => {
            let q = build_q(spec);
            let measure = match pushforward_q(&power.measure, &q, cfg.tol) {
                Ok(m) => m,
                Err(e) => {
                    return Ok(Outcome::Infeasible(InfeasibleReason::VerificationFailed {
                        detail: e.to_string(),
                    }))
                }
            };
            Ok(Outcome::Solved(RtmpSolution {
                measure,
                power,
                gamma,
            }))
        }
    }
}

/// Per-datum comparison of a measure for `ℒ` against rational data.
#[derive(Clone, Debug, PartialEq)]
pub struct RtmpReport {
    pub residuals: Vec<(BasisFn, f64)>,
    pub data_ok: bool,
    pub atoms_off_poles: bool,
    pub densities_positive: bool,
}

impl RtmpReport {
    pub fn passed(&self) -> bool {
        self.data_ok && self.atoms_off_poles && self.densities_positive
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|(_, r)| *r).fold(0.0, f64::max)
    }
}

pub fn verify_rtmp(mu: &AtomicMeasure, data: &RationalMoments, spec: &PoleSpec, tol: f64) -> RtmpReport {
    let poles = spec.pole_set();
    let atoms_off_poles = mu.atoms.iter().all(|&x| poles.distance(x) > tol);
    let densities_positive = mu.densities.iter().all(|&r| r > 0.0);
    let values = data.flatten();
    let (atoms, dens) = mu.exact_parts();
    let residuals: Vec<(BasisFn, f64)> = if atoms_off_poles {
        spec.basis()
            .into_iter()
            .zip(&values)
            .map(|(b, v)| {
                let s = atoms
                    .iter()
                    .zip(&dens)
                    .filter(|(x, _)| !poles.contains(x))
                    .fold(Rat::zero(), |acc, (x, r)| acc + r * spec.eval_basis(b, x));
                (b, rat_to_f64(&(s - v)).abs() / (1.0 + rat_to_f64(v).abs()))
            })
            .collect()
    } else {
        spec.basis().into_iter().map(|b| (b, f64::INFINITY)).collect()
    };
    let data_ok = residuals.len() == values.len() && residuals.iter().all(|(_, r)| *r <= tol);
    RtmpReport {
        residuals,
        data_ok,
        atoms_off_poles,
        densities_positive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{rat, rat_int};

    fn ex3_spec() -> PoleSpec {
        PoleSpec::new(0, vec![(rat_int(0), 1), (rat_int(1), 1)], vec![]).unwrap()
    }

    fn ex3_data() -> RationalMoments {
        RationalMoments {
            gamma0: vec![rat(1, 48)],
            real: vec![vec![rat(1, 24), rat(5, 12)], vec![rat(-1, 24), rat(5, 12)]],
            complex: vec![],
        }
    }

    #[test]
    fn build_q_examples() {
        assert_eq!(build_q(&ex3_spec()), Poly::from_ints(&[0, 0, 1, -2, 1]));
        let s = PoleSpec::new(0, vec![(rat_int(0), 1), (rat_int(1), 1), (rat_int(2), 1)], vec![]).unwrap();
        assert_eq!(build_q(&s), Poly::from_ints(&[0, 0, 1, -2, 1]) * Poly::from_ints(&[4, -4, 1]));
        let s = PoleSpec::new(0, vec![], vec![(rat_int(1), 2)]).unwrap();
        assert_eq!(build_q(&s), Poly::from_ints(&[1, 0, 2, 0, 1]));
        assert!(PoleSpec::new(0, vec![(rat_int(0), 1), (rat_int(0), 2)], vec![]).is_err());
        assert!(PoleSpec::new(0, vec![], vec![(rat_int(0), 1)]).is_err());
    }

    #[test]
    fn partial_fraction_examples() {
        let s = ex3_spec();
        let pf = partial_fractions(&Poly::one(), &s).unwrap();
        let r = |pole, order| BasisFn::Real { pole, order };
        assert_eq!(
            [pf.get(r(0, 1)), pf.get(r(0, 2)), pf.get(r(1, 1)), pf.get(r(1, 2))],
            [rat_int(2), rat_int(1), rat_int(-2), rat_int(1)]
        );
        let pf = partial_fractions(&Poly::x(), &s).unwrap();
        assert_eq!(
            [pf.get(r(0, 1)), pf.get(r(0, 2)), pf.get(r(1, 1)), pf.get(r(1, 2))],
            [rat_int(1), rat_int(0), rat_int(-1), rat_int(1)]
        );
        let pf = partial_fractions(&build_q(&s), &s).unwrap();
        assert_eq!(pf.get(BasisFn::Power(0)), rat_int(1));
        assert!(pf.terms.iter().skip(1).all(|(_, c)| c.is_zero()));
    }

    #[test]
    fn conversion_examples() {
        let g = rational_to_power(&ex3_data(), &ex3_spec()).unwrap();
        assert_eq!(
            g.values(),
            &[rat_int(1), rat(1, 2), rat(5, 12), rat(3, 8), rat(17, 48)]
        );
        assert_eq!(power_to_rational(&g, &ex3_spec()).unwrap(), ex3_data());
        let zero = RationalMoments::from_flat(&ex3_spec(), &vec![Rat::zero(); 5]);
        assert!(rational_to_power(&zero, &ex3_spec()).unwrap().is_zero());
    }

    #[test]
    fn pushforward_examples() {
        let third = rat(1, 3);
        let mu = AtomicMeasure::exact(
            vec![rat_int(0), rat(1, 2), rat_int(1)],
            vec![third.clone(), third.clone(), third],
        );
        assert!(pushforward_q(&mu, &build_q(&ex3_spec()), 1e-9).is_err());
        let d2 = AtomicMeasure::exact(vec![rat_int(2)], vec![rat_int(1)]);
        let pushed = pushforward_q(&d2, &Poly::from_ints(&[0, 0, 1]), 1e-9).unwrap();
        assert_eq!(pushed.exact.as_ref().unwrap().1, vec![rat_int(4)]);
        assert_eq!(pullback_q(&pushed, &Poly::from_ints(&[0, 0, 1]), 1e-9).unwrap(), d2);
    }

    #[test]
    fn solve_rtmp_examples() {
        let cfg = SolverConfig::default();
        let k = ClosedSet::interval(rat_int(0), rat_int(1)).unwrap();
        let out = solve_rtmp(&ex3_data(), &ex3_spec(), &k, &cfg).unwrap();
        assert!(matches!(out, Outcome::Infeasible(InfeasibleReason::PoleHit { .. })));

        let spec = PoleSpec::polynomial(2);
        let data = RationalMoments::of_measure(&spec, &[rat_int(2)], &[rat_int(1)]);
        let sol = solve_rtmp(&data, &spec, &ClosedSet::real_line(), &cfg).unwrap().solved().unwrap();
        assert_eq!(sol.measure.atoms, vec![2.0]);
        assert!(verify_rtmp(&sol.measure, &data, &spec, 1e-9).passed());
    }

    #[test]
    fn verify_rtmp_rejects_single_atom() {
        let mu = AtomicMeasure::exact(vec![rat(1, 2)], vec![rat(1, 16)]);
        assert!(!verify_rtmp(&mu, &ex3_data(), &ex3_spec(), 1e-8).passed());
    }
}
