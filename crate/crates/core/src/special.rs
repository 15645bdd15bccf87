//! The strong Hamburger problem and the moment problem on the unit circle.
//!
//! The circle is reached through `φ(t) = ((t²-1)/(t²+1), 2t/(t²+1))`, which
//! turns bivariate moments on `x² + y² = 1` into rational moments with the
//! single complex pole `t² + 1` of order `2k`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::hankel::{build_hankel, psd_status, riesz, solve_exact, HankelMatrix, MomentSequence, PsdReport, PsdStatus};
use crate::kset::ClosedSet;
use crate::polyalg::{rat_int, rat_to_f64, Rat};
use crate::rational::{power_to_rational, solve_rtmp, PoleSpec, RationalMoments, RtmpSolution};
use crate::solver::{measure_on, AtomicMeasure, InfeasibleReason, Outcome, SolverConfig, SolverError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecialError {
    #[error("circle moment problems need k >= 2, got k = {0}")]
    DegreeTooSmall(usize),
    #[error("missing moment beta({i},{j})")]
    MissingIndex { i: usize, j: usize },
    #[error("moment beta({i},{j}) exceeds total degree {degree}")]
    IndexOutOfRange { i: usize, j: usize, degree: usize },
    #[error("beta({i2},{j}) + beta({i},{j2}) != beta({i},{j})", i2 = i + 2, j2 = j + 2)]
    RelationViolated { i: usize, j: usize },
    #[error("strong Hamburger data needs exactly one real pole at 0 and no complex poles")]
    NotStrongHamburger,
}

/// Bivariate moments `β_{i,j} = L(x^i y^j)`, `i + j ≤ 2k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSequence {
    k: usize,
    beta: BTreeMap<(usize, usize), Rat>,
}

impl BivariateSequence {
    pub fn new(k: usize, beta: BTreeMap<(usize, usize), Rat>) -> Result<Self, SpecialError> {
        if k < 2 {
            return Err(SpecialError::DegreeTooSmall(k));
        }
        if let Some(&(i, j)) = beta.keys().find(|(i, j)| i + j > 2 * k) {
            return Err(SpecialError::IndexOutOfRange { i, j, degree: 2 * k });
        }
        if let Some((i, j)) = indices(2 * k).find(|ij| !beta.contains_key(ij)) {
            return Err(SpecialError::MissingIndex { i, j });
        }
        Ok(Self { k, beta })
    }

    pub fn from_fn(k: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Result<Self, SpecialError> {
        Self::new(k, indices(2 * k).map(|(i, j)| ((i, j), f(i, j))).collect())
    }

    /// Moments of `Σ ρ_m δ_{(x_m, y_m)}`.
    pub fn from_atoms(k: usize, atoms: &[(Rat, Rat)], densities: &[Rat]) -> Result<Self, SpecialError> {
        assert_eq!(atoms.len(), densities.len());
        Self::from_fn(k, |i, j| {
            atoms
                .iter()
                .zip(densities)
                .map(|((x, y), r)| r * pow(x, i) * pow(y, j))
                .sum()
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.beta[&(i, j)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Rat)> {
        self.beta.iter()
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        Self {
            k: self.k,
            beta: self.beta.iter().map(|(ij, b)| (*ij, b * c)).collect(),
        }
    }
}

fn indices(degree: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=degree).flat_map(move |d| (0..=d).map(move |j| (d - j, j)))
}

fn pow(x: &Rat, n: usize) -> Rat {
    (0..n).fold(Rat::one(), |acc, _| acc * x)
}

fn binom(n: usize, m: usize) -> Rat {
    (0..m).fold(Rat::one(), |acc, t| acc * rat_int((n - t) as i64) / rat_int((t + 1) as i64))
}

/// Monomials `x^i y^j`, `i + j ≤ k`, graded, and within a degree by
/// decreasing power of `x`.
pub fn monomials(k: usize) -> Vec<(usize, usize)> {
    indices(k).collect()
}

/// Exact psd classification of the bivariate moment matrix indexed by
/// [`monomials`]. Kernel polynomials are coefficient vectors in that order.
pub fn bivariate_square_positive(beta: &BivariateSequence) -> PsdReport {
    let mons = monomials(beta.k);
    let entries = mons
        .iter()
        .map(|(a, b)| mons.iter().map(|(c, d)| beta.get(a + c, b + d).clone()).collect())
        .collect();
    psd_status(&HankelMatrix::from_symmetric(entries))
}

/// First `(i, j)` in graded order where `β_{i+2,j} + β_{i,j+2} = β_{i,j}` fails.
pub fn circle_relation_violation(beta: &BivariateSequence) -> Option<(usize, usize)> {
    indices(2 * beta.k - 2).find(|&(i, j)| beta.get(i + 2, j) + beta.get(i, j + 2) != *beta.get(i, j))
}

pub fn circle_relations_check(beta: &BivariateSequence) -> bool {
    circle_relation_violation(beta).is_none()
}

/// Pole data `(t² + 1)^{2k}` with no polynomial part.
pub fn circle_spec(k: usize) -> PoleSpec {
    PoleSpec::new(0, vec![], vec![(Rat::one(), 2 * k)]).expect("valid circle pole data")
}

/// `L(t^i) = ℒ(t^i/(t²+1)^{2k})`, `i = 0..=4k`, read off `β` through the
/// parametrization.
pub fn circle_power_moments(beta: &BivariateSequence) -> Result<MomentSequence, SpecialError> {
    if let Some((i, j)) = circle_relation_violation(beta) {
        return Err(SpecialError::RelationViolated { i, j });
    }
    let k2 = 2 * beta.k;
    let scale = Rat::one() / pow(&rat_int(2), k2);
    let values = (0..=2 * k2)
        .map(|i| {
            let s: Rat = if i <= k2 {
                // (1 - x)^{2k-i} y^i
                (0..=k2 - i)
                    .map(|m| {
                        let c = binom(k2 - i, m) * beta.get(m, i);
                        if m % 2 == 1 { -c } else { c }
                    })
                    .sum()
            } else {
                // (1 + x)^{i-2k} y^{4k-i}
                (0..=i - k2).map(|m| binom(i - k2, m) * beta.get(m, 2 * k2 - i)).sum()
            };
            s * &scale
        })
        .collect();
    Ok(MomentSequence::new(values).expect("nonempty"))
}

/// The rational moment data of the parametrized circle problem.
pub fn circle_to_univariate(beta: &BivariateSequence) -> Result<(PoleSpec, RationalMoments), SpecialError> {
    let gamma = circle_power_moments(beta)?;
    let spec = circle_spec(beta.k);
    let data = power_to_rational(&gamma, &spec).expect("degrees agree by construction");
    Ok((spec, data))
}

/// `φ(t)`, exact.
pub fn circle_point(t: &Rat) -> (Rat, Rat) {
    let t2 = t * t;
    let d = &t2 + Rat::one();
    ((&t2 - Rat::one()) / &d, rat_int(2) * t / d)
}

/// Finitely atomic measure on the unit circle.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CircleMeasure {
    pub atoms: Vec<(f64, f64)>,
    pub densities: Vec<f64>,
}

impl CircleMeasure {
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn moment(&self, i: usize, j: usize) -> f64 {
        self.atoms
            .iter()
            .zip(&self.densities)
            .map(|((x, y), r)| r * x.powi(i as i32) * y.powi(j as i32))
            .sum()
    }
}

impl fmt::Display for CircleMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (n, ((x, y), r)) in self.atoms.iter().zip(&self.densities).enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{r:.6e}*δ({x:.10}, {y:.10})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircleReport {
    pub residuals: Vec<((usize, usize), f64)>,
    pub moments_ok: bool,
    pub on_circle: bool,
    pub densities_positive: bool,
}

impl CircleReport {
    pub fn passed(&self) -> bool {
        self.moments_ok && self.on_circle && self.densities_positive
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|(_, r)| *r).fold(0.0, f64::max)
    }

    /// Index of the first moment outside tolerance, if any.
    pub fn first_failure(&self, beta: &BivariateSequence, tol: f64) -> Option<(usize, usize)> {
        self.residuals
            .iter()
            .find(|((i, j), r)| *r > tol * (1.0 + rat_to_f64(beta.get(*i, *j)).abs()))
            .map(|(ij, _)| *ij)
    }
}

pub fn circle_verify(mu: &CircleMeasure, beta: &BivariateSequence, tol: f64) -> CircleReport {
    let residuals: Vec<((usize, usize), f64)> = indices(2 * beta.k)
        .map(|(i, j)| ((i, j), (mu.moment(i, j) - rat_to_f64(beta.get(i, j))).abs()))
        .collect();
    let moments_ok = residuals
        .iter()
        .all(|((i, j), r)| *r <= tol * (1.0 + rat_to_f64(beta.get(*i, *j)).abs()));
    CircleReport {
        residuals,
        moments_ok,
        on_circle: mu.atoms.iter().all(|(x, y)| (x * x + y * y - 1.0).abs() <= tol),
        densities_positive: mu.densities.iter().all(|&r| r > 0.0),
    }
}

/// A circle measure with the univariate measure it was pushed forward from.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleSolution {
    pub measure: CircleMeasure,
    /// Representing measure of `L(f) = ℒ(f/(t²+1)^{2k})` on the line.
    pub univariate: AtomicMeasure,
    /// Mass placed at `(1, 0)`, the point the parametrization misses.
    pub deficit: f64,
}

/// Representing measure on `x² + y² = 1` for `β`, or the reason none exists.
pub fn circle_solve(beta: &BivariateSequence, cfg: &SolverConfig) -> Result<Outcome<CircleSolution>, SolverError> {
    if let Some((i, j)) = circle_relation_violation(beta) {
        return Ok(Outcome::Infeasible(InfeasibleReason::CircleRelationViolated { i, j }));
    }
    if bivariate_square_positive(beta).status == PsdStatus::Indefinite {
        return Ok(Outcome::Infeasible(InfeasibleReason::NotSquarePositive));
    }
    let k = beta.k;
    let n = 4 * k;
    let gamma = circle_power_moments(beta).expect("relations checked");
    let head = gamma.truncated(n - 2);
    let h = build_hankel(&head, None)?;
    let report = psd_status(&h);
    let nu = match report.status {
        PsdStatus::Indefinite => return Ok(Outcome::Infeasible(InfeasibleReason::NotSquarePositive)),
        PsdStatus::PositiveDefinite => {
            // Keep γ_{4k-1} and take the smallest admissible top moment.
            let b: Vec<Rat> = (0..2 * k).map(|j| gamma.get(2 * k + j).clone()).collect();
            let w = solve_exact(h.entries(), &b).expect("positive definite block");
            let y: Rat = b.iter().zip(&w).map(|(bi, wi)| bi * wi).sum();
            let ext = head.extended(&[gamma.get(n - 1).clone(), y]);
            let flat = psd_status(&build_hankel(&ext, None)?);
            let p = flat
                .kernel_basis
                .first()
                .ok_or_else(|| SolverError::Numerical("extension is not flat".into()))?;
            measure_on(&[], p, &ext, cfg.tol).map_err(SolverError::Numerical)?
        }
        PsdStatus::PsdSingular => {
            let p = &report.kernel_basis[0];
            let odd = gamma.truncated(n - 1);
            for s in 0..=n - 1 - p.deg() {
                if !riesz(&odd, &p.shift(s))?.is_zero() {
                    return Ok(Outcome::Infeasible(InfeasibleReason::VerificationFailed {
                        detail: format!("moments up to degree {} do not follow the recursion of {p}", n - 1),
                    }));
                }
            }
            if p.deg() == 0 {
                AtomicMeasure::new(vec![], vec![])
            } else {
                measure_on(&[], p, &odd, cfg.tol).map_err(SolverError::Numerical)?
            }
        }
    };

    let top = nu.moments(n).pop().expect("degree n");
    let delta = rat_to_f64(&(gamma.get(n) - top));
    let slack = cfg.tol * (1.0 + rat_to_f64(gamma.get(n)).abs());
    if delta < -slack {
        return Err(SolverError::Numerical(format!("negative deficit {delta:e} at the top moment")));
    }
    let q = |t: &Rat| pow(&(t * t + Rat::one()), 2 * k);
    let (ts, rhos) = nu.exact_parts();
    let mut measure = CircleMeasure::default();
    for (t, r) in ts.iter().zip(&rhos) {
        let (x, y) = circle_point(t);
        measure.atoms.push((rat_to_f64(&x), rat_to_f64(&y)));
        measure.densities.push(rat_to_f64(&(r * q(t))));
    }
    let deficit = if delta > slack { delta } else { 0.0 };
    if deficit > 0.0 {
        measure.atoms.push((1.0, 0.0));
        measure.densities.push(delta);
    }

    let check = circle_verify(&measure, beta, cfg.tol);
    if !check.passed() {
        let detail = match check.first_failure(beta, cfg.tol) {
            Some((i, j)) => format!("moment ({i},{j}) off by {:e}", check.max_residual()),
            None if !check.on_circle => "atom off the circle".into(),
            None => "nonpositive density".into(),
        };
        return Ok(Outcome::Infeasible(InfeasibleReason::VerificationFailed { detail }));
    }
    Ok(Outcome::Solved(CircleSolution {
        measure,
        univariate: nu,
        deficit,
    }))
}

/// Pole data of `ℛ = {f/x^{2k₁} : deg f ≤ 2k}`.
pub fn strong_hamburger_spec(k: usize, k1: usize) -> Result<PoleSpec, SpecialError> {
    if k1 == 0 || k < k1 {
        return Err(SpecialError::NotStrongHamburger);
    }
    PoleSpec::new(k - k1, vec![(Rat::zero(), k1)], vec![]).map_err(|_| SpecialError::NotStrongHamburger)
}

/// Strong truncated Hamburger problem: `K = ℝ`, single pole at 0.
pub fn strong_hamburger_solve(
    data: &RationalMoments,
    spec: &PoleSpec,
    cfg: &SolverConfig,
) -> Result<Outcome<RtmpSolution>, SolverError> {
    let single_zero_pole = spec.complex_poles.is_empty()
        && spec.real_poles.len() == 1
        && spec.real_poles[0].0.is_zero();
    if !single_zero_pole {
        return Err(SolverError::Precondition(SpecialError::NotStrongHamburger.to_string()));
    }
    solve_rtmp(data, spec, &ClosedSet::real_line(), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{rat, Poly};
    use crate::rational::verify_rtmp;

    fn double_factorial(n: i64) -> i64 {
        if n <= 0 { 1 } else { n * double_factorial(n - 2) }
    }

    /// Normalized arc length: `(i-1)!!(j-1)!!/(i+j)!!` for even `i, j`.
    fn arc_length(k: usize) -> BivariateSequence {
        BivariateSequence::from_fn(k, |i, j| {
            if i % 2 == 1 || j % 2 == 1 {
                Rat::zero()
            } else {
                rat(
                    double_factorial(i as i64 - 1) * double_factorial(j as i64 - 1),
                    double_factorial((i + j) as i64),
                )
            }
        })
        .unwrap()
    }

    fn point_mass(k: usize, x: i64, y: i64) -> BivariateSequence {
        BivariateSequence::from_atoms(k, &[(rat_int(x), rat_int(y))], &[Rat::one()]).unwrap()
    }

    #[test]
    fn arc_length_values() {
        let b = arc_length(2);
        assert_eq!(*b.get(2, 0), rat(1, 2));
        assert_eq!(*b.get(4, 0), rat(3, 8));
        assert_eq!(*b.get(2, 2), rat(1, 8));
        assert_eq!(*b.get(1, 1), Rat::zero());
    }

    #[test]
    fn rejects_small_or_incomplete() {
        assert_eq!(
            BivariateSequence::from_fn(1, |_, _| Rat::one()),
            Err(SpecialError::DegreeTooSmall(1))
        );
        let mut m: BTreeMap<_, _> = arc_length(2).iter().map(|(a, b)| (*a, b.clone())).collect();
        m.remove(&(3, 1));
        assert_eq!(BivariateSequence::new(2, m), Err(SpecialError::MissingIndex { i: 3, j: 1 }));
    }

    #[test]
    fn square_positivity() {
        assert_eq!(bivariate_square_positive(&arc_length(2)).status, PsdStatus::PsdSingular);
        let r = bivariate_square_positive(&point_mass(2, 1, 0));
        assert!(r.is_psd());
        assert_eq!(r.rank, 1);
        let neg = point_mass(2, 1, 0).scaled(&rat_int(-1));
        assert_eq!(bivariate_square_positive(&neg).status, PsdStatus::Indefinite);
    }

    #[test]
    fn relations() {
        assert!(circle_relations_check(&arc_length(2)));
        assert!(circle_relations_check(&point_mass(2, 1, 0)));
        let mut m: BTreeMap<_, _> = arc_length(2).iter().map(|(a, b)| (*a, b.clone())).collect();
        *m.get_mut(&(2, 0)).unwrap() += Rat::one();
        let bad = BivariateSequence::new(2, m).unwrap();
        assert!(!circle_relations_check(&bad));
        assert_eq!(circle_relation_violation(&bad), Some((0, 0)));
    }

    #[test]
    fn univariate_data_of_point_masses() {
        let k = 2;
        let g = circle_power_moments(&point_mass(k, -1, 0)).unwrap();
        assert_eq!(*g.get(0), Rat::one());
        assert!(g.values()[1..].iter().all(Zero::is_zero));

        let g = circle_power_moments(&point_mass(k, 0, 1)).unwrap();
        // δ_{t=1} pushed through 1/(t²+1)^{2k}: every value is 2^{-2k}.
        assert!(g.values().iter().all(|v| *v == rat(1, 16)));

        let (spec, data) = circle_to_univariate(&point_mass(k, 0, 1)).unwrap();
        let direct = RationalMoments::of_measure(&spec, &[Rat::one()], &[Rat::one()]);
        assert_eq!(data, direct);
    }

    #[test]
    fn univariate_data_is_linear() {
        let a = arc_length(3);
        let b = point_mass(3, 0, -1);
        let sum = BivariateSequence::from_fn(3, |i, j| a.get(i, j) + b.get(i, j)).unwrap();
        let ga = circle_power_moments(&a).unwrap();
        let gb = circle_power_moments(&b).unwrap();
        let gs = circle_power_moments(&sum).unwrap();
        for i in 0..=12 {
            assert_eq!(gs.get(i), &(ga.get(i) + gb.get(i)));
        }
    }

    #[test]
    fn parametrization_identities() {
        for t in [-3.7, -0.2, 0.0, 0.9, 12.5] {
            let tr = crate::polyalg::rat_from_f64(t);
            let (x, y) = circle_point(&tr);
            let (x, y) = (rat_to_f64(&x), rat_to_f64(&y));
            let d = t * t + 1.0;
            assert!((1.0 / d - 0.5 * (1.0 - x)).abs() < 1e-12);
            assert!((t / d - 0.5 * y).abs() < 1e-12);
            assert!((t * t / d - 0.5 * (1.0 + x)).abs() < 1e-12);
        }
    }

    #[test]
    fn solves_two_antipodal_atoms() {
        let beta = BivariateSequence::from_atoms(
            2,
            &[(Rat::zero(), Rat::one()), (Rat::zero(), -Rat::one())],
            &[rat(1, 2), rat(1, 2)],
        )
        .unwrap();
        let sol = circle_solve(&beta, &SolverConfig::default()).unwrap().solved().unwrap();
        assert_eq!(sol.measure.len(), 2);
        assert_eq!(sol.deficit, 0.0);
        for ((x, y), r) in sol.measure.atoms.iter().zip(&sol.measure.densities) {
            assert!(x.abs() < 1e-10 && (y.abs() - 1.0).abs() < 1e-10);
            assert!((r - 0.5).abs() < 1e-10);
        }
    }

    #[test]
    fn point_mass_at_one_uses_deficit() {
        let sol = circle_solve(&point_mass(2, 1, 0), &SolverConfig::default())
            .unwrap()
            .solved()
            .unwrap();
        assert!(sol.univariate.is_empty());
        assert_eq!(sol.measure.atoms, vec![(1.0, 0.0)]);
        assert!((sol.deficit - 1.0).abs() < 1e-12);
    }

    #[test]
    fn arc_length_measure() {
        for k in [2, 3] {
            let beta = arc_length(k);
            let sol = circle_solve(&beta, &SolverConfig::default()).unwrap().solved().unwrap();
            assert!(sol.measure.len() >= 2 * k + 1, "{}", sol.measure);
            assert!(circle_verify(&sol.measure, &beta, 1e-8).passed());
        }
    }

    #[test]
    fn circle_infeasible_inputs() {
        let neg = point_mass(2, 1, 0).scaled(&rat_int(-1));
        assert_eq!(
            circle_solve(&neg, &SolverConfig::default()).unwrap().infeasible(),
            Some(&InfeasibleReason::NotSquarePositive)
        );
        let off = BivariateSequence::from_atoms(2, &[(rat_int(2), Rat::zero())], &[Rat::one()]).unwrap();
        assert!(matches!(
            circle_solve(&off, &SolverConfig::default()).unwrap().infeasible(),
            Some(InfeasibleReason::CircleRelationViolated { .. })
        ));
    }

    #[test]
    fn verify_reports() {
        let arc = arc_length(2);
        let one = CircleMeasure {
            atoms: vec![(1.0, 0.0)],
            densities: vec![1.0],
        };
        let r = circle_verify(&one, &arc, 1e-8);
        assert!(!r.passed());
        assert_eq!(r.first_failure(&arc, 1e-8), Some((1, 0)));
        let zero = BivariateSequence::from_fn(2, |_, _| Rat::zero()).unwrap();
        assert!(circle_verify(&CircleMeasure::default(), &zero, 1e-8).passed());
    }

    fn hamburger_data(gamma: &[i64], k1: usize) -> (PoleSpec, RationalMoments) {
        let g = MomentSequence::from_ints(gamma);
        let spec = strong_hamburger_spec(g.degree() / 2, k1).unwrap();
        let data = power_to_rational(&g, &spec).unwrap();
        (spec, data)
    }

    #[test]
    fn strong_hamburger_two_atoms() {
        // μ = δ_1 + δ_{-1} seen through x^{-2}: L(x^i) = ∫ x^{i-2} dμ.
        let (spec, data) = hamburger_data(&[2, 0, 2, 0, 2], 1);
        let cfg = SolverConfig::default();
        let sol = strong_hamburger_solve(&data, &spec, &cfg).unwrap().solved().unwrap();
        assert_eq!(sol.measure.atoms.len(), 2);
        assert!((sol.measure.atoms[0] + 1.0).abs() < 1e-10);
        assert!((sol.measure.atoms[1] - 1.0).abs() < 1e-10);
        assert!(verify_rtmp(&sol.measure, &data, &spec, 1e-8).passed());
        let direct = solve_rtmp(&data, &spec, &ClosedSet::real_line(), &cfg).unwrap().solved().unwrap();
        assert_eq!(direct.measure.atoms, sol.measure.atoms);
    }

    #[test]
    fn strong_hamburger_generator_at_zero() {
        // p = x vanishes at the pole; the kernel condition fails as well.
        let (spec, data) = hamburger_data(&[1, 0, 0, 0, 0, 0, 1], 1);
        let out = strong_hamburger_solve(&data, &spec, &SolverConfig::default()).unwrap();
        assert!(matches!(out.infeasible(), Some(InfeasibleReason::PoleHit { pole, .. }) if pole.is_zero()));
        let g = MomentSequence::from_ints(&[1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(riesz(&g, &Poly::monomial(Rat::one(), 6)).unwrap(), Rat::one());

        // δ_0 + δ_1: p = x² - x has the root 0.
        let (spec, data) = hamburger_data(&[2, 1, 1, 1, 1], 1);
        let out = strong_hamburger_solve(&data, &spec, &SolverConfig::default()).unwrap();
        assert!(matches!(out.infeasible(), Some(InfeasibleReason::PoleHit { .. })));
    }

    #[test]
    fn strong_hamburger_rejects_other_poles() {
        let spec = PoleSpec::new(0, vec![(Rat::one(), 1)], vec![]).unwrap();
        let data = RationalMoments::of_measure(&spec, &[rat_int(3)], &[Rat::one()]);
        assert!(matches!(
            strong_hamburger_solve(&data, &spec, &SolverConfig::default()),
            Err(SolverError::Precondition(_))
        ));
        assert!(strong_hamburger_spec(1, 2).is_err());
    }
}
