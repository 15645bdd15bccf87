//! Positivity certificates, extension regions and the construction of atomic
//! representing measures supported on `K` and avoiding a finite pole set.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::hankel::{
    build_hankel, localize, localizing_hankel, psd_status, riesz, solve_exact, HankelError,
    MomentSequence, PsdReport, PsdStatus,
};
use crate::kset::{
    classify, natural_description, pi_products, ClosedSet, Interval, KKind, Parity, PiProduct,
};
use crate::polyalg::{
    rat_dyadic, rat_from_f64, rat_int, rat_to_f64, real_roots, vandermonde_solve,
    vandermonde_solve_exact, Poly, PolyError, Rat,
};
use crate::quadratic::{Quadratic, Surd, SurdSet};

/// Finitely atomic positive measure `sum_j densities_j δ_{atoms_j}`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct AtomicMeasure {
    pub atoms: Vec<f64>,
    pub densities: Vec<f64>,
    /// Exact atoms and densities when they are known to be rational.
    pub exact: Option<(Vec<Rat>, Vec<Rat>)>,
}

impl AtomicMeasure {
    pub fn new(atoms: Vec<f64>, densities: Vec<f64>) -> Self {
        assert_eq!(atoms.len(), densities.len());
        let mut m = Self {
            atoms,
            densities,
            exact: None,
        };
        m.sort();
        m
    }

    pub fn exact(atoms: Vec<Rat>, densities: Vec<Rat>) -> Self {
        assert_eq!(atoms.len(), densities.len());
        let mut m = Self {
            atoms: atoms.iter().map(rat_to_f64).collect(),
            densities: densities.iter().map(rat_to_f64).collect(),
            exact: Some((atoms, densities)),
        };
        m.sort();
        m
    }

    fn sort(&mut self) {
        let mut idx: Vec<usize> = (0..self.atoms.len()).collect();
        idx.sort_by(|&a, &b| self.atoms[a].total_cmp(&self.atoms[b]));
        self.atoms = idx.iter().map(|&i| self.atoms[i]).collect();
        self.densities = idx.iter().map(|&i| self.densities[i]).collect();
        if let Some((a, d)) = &self.exact {
            self.exact = Some((
                idx.iter().map(|&i| a[i].clone()).collect(),
                idx.iter().map(|&i| d[i].clone()).collect(),
            ));
        }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Atoms and densities as exact rationals (the float values themselves
    /// when no exact form is known).
    pub fn exact_parts(&self) -> (Vec<Rat>, Vec<Rat>) {
        match &self.exact {
            Some(e) => e.clone(),
            None => (
                self.atoms.iter().map(|&x| rat_from_f64(x)).collect(),
                self.densities.iter().map(|&x| rat_from_f64(x)).collect(),
            ),
        }
    }

    /// Power moments `sum_j ρ_j x_j^i`, `i ≤ degree`, summed exactly.
    pub fn moments(&self, degree: usize) -> Vec<Rat> {
        let (atoms, dens) = self.exact_parts();
        let mut out = vec![Rat::zero(); degree + 1];
        for (x, r) in atoms.iter().zip(&dens) {
            let mut p = r.clone();
            for m in out.iter_mut() {
                *m += &p;
                p *= x;
            }
        }
        out
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        let cf = rat_to_f64(c);
        Self {
            atoms: self.atoms.clone(),
            densities: self.densities.iter().map(|d| d * cf).collect(),
            exact: self
                .exact
                .as_ref()
                .map(|(a, d)| (a.clone(), d.iter().map(|x| x * c).collect())),
        }
    }
}

impl fmt::Display for AtomicMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, r)) in self.atoms.iter().zip(&self.densities).enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{r:.6e}*δ({x:.10})")?;
        }
        Ok(())
    }
}

/// Finite set of forbidden points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PoleSet {
    points: Vec<Rat>,
}

impl PoleSet {
    pub fn new(mut points: Vec<Rat>) -> Self {
        points.sort();
        points.dedup();
        Self { points }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn points(&self) -> &[Rat] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.points.binary_search(x).is_ok()
    }

    pub fn distance(&self, x: f64) -> f64 {
        self.points
            .iter()
            .map(|p| (rat_to_f64(p) - x).abs())
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    StrictlyPositive,
    PositiveSingular,
    Violated,
}

/// Exact psd reports of `H_{f,γ}` for every product `f` of the natural
/// description of `K` with `deg f ≤ deg γ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PositivityCertificate {
    pub per_product: Vec<(PiProduct, PsdReport)>,
    pub verdict: Verdict,
    /// Index into `per_product` of the product deciding the verdict: the
    /// first indefinite one, or the lowest-degree singular one.
    pub witness: Option<usize>,
}

impl PositivityCertificate {
    pub fn witness_product(&self) -> Option<&PiProduct> {
        self.witness.map(|i| &self.per_product[i].0)
    }

    pub fn witness_report(&self) -> Option<&PsdReport> {
        self.witness.map(|i| &self.per_product[i].1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub tol: f64,
    pub density_floor: f64,
    pub max_retries: usize,
    /// `None` selects `ℓ1 + 3` for the given `K`.
    pub max_extension_steps: Option<usize>,
    pub rng_seed: u64,
    /// Moment pairs `(γ_{2k+1}, γ_{2k+2}), ...` appended before solving.
    pub fixed_extension: Vec<(Rat, Rat)>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            density_floor: 1e-10,
            max_retries: 64,
            max_extension_steps: None,
            rng_seed: 0,
            fixed_extension: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum InfeasibleReason {
    PositivityViolated {
        witness: Poly,
    },
    /// The unique candidate measure charges a pole.
    PoleHit {
        pole: Rat,
        measure: Option<AtomicMeasure>,
    },
    UnboundedKernelConditionFailed {
        f0: Poly,
        p: Poly,
        shift: usize,
        value: Rat,
    },
    VerificationFailed {
        detail: String,
    },
    NotSquarePositive,
    CircleRelationViolated {
        i: usize,
        j: usize,
    },
}

impl fmt::Display for InfeasibleReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PositivityViolated { witness } => {
                write!(f, "positivity violated: H_{{f,γ}} is indefinite for f = {witness}")
            }
            Self::PoleHit { pole, .. } => {
                write!(f, "the unique representing measure has an atom at the pole {pole}")
            }
            Self::UnboundedKernelConditionFailed { f0, p, shift, value } => write!(
                f,
                "kernel condition failed: L({f0} * x^{shift} * ({p})^2) = {value} ≠ 0"
            ),
            Self::VerificationFailed { detail } => write!(f, "verification failed: {detail}"),
            Self::NotSquarePositive => write!(f, "moment matrix is not positive semidefinite"),
            Self::CircleRelationViolated { i, j } => write!(
                f,
                "relation β[{},{}] + β[{},{}] = β[{i},{j}] does not hold",
                i + 2,
                j,
                i,
                j + 2
            ),
        }
    }
}

impl InfeasibleReason {
    pub fn code(&self) -> &'static str {
        match self {
            Self::PositivityViolated { .. } => "positivity_violated",
            Self::PoleHit { .. } => "pole_hit",
            Self::UnboundedKernelConditionFailed { .. } => "unbounded_kernel_condition_failed",
            Self::VerificationFailed { .. } => "verification_failed",
            Self::NotSquarePositive => "not_square_positive",
            Self::CircleRelationViolated { .. } => "circle_relation_violated",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no representing measure found after {attempts} attempts; last failure: {last_failure}")]
    RetriesExhausted { attempts: usize, last_failure: String },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error(transparent)]
    Hankel(#[from] HankelError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome<M> {
    Solved(M),
    Infeasible(InfeasibleReason),
}

impl<M> Outcome<M> {
    pub fn solved(self) -> Option<M> {
        match self {
            Outcome::Solved(m) => Some(m),
            Outcome::Infeasible(_) => None,
        }
    }

    pub fn infeasible(&self) -> Option<&InfeasibleReason> {
        match self {
            Outcome::Solved(_) => None,
            Outcome::Infeasible(r) => Some(r),
        }
    }
}

pub fn positivity_certificate(
    gamma: &MomentSequence,
    k: &ClosedSet,
) -> Result<PositivityCertificate, SolverError> {
    if gamma.degree() % 2 != 0 {
        return Err(SolverError::Precondition(format!(
            "positivity certificate needs an even-degree sequence, got degree {}",
            gamma.degree()
        )));
    }
    let products = pi_products(&natural_description(k), gamma.degree());
    let per_product: Vec<(PiProduct, PsdReport)> = products
        .into_iter()
        .map(|f| {
            let report = psd_status(&localizing_hankel(gamma, &f.f).expect("degree within budget"));
            (f, report)
        })
        .collect();
    let indefinite = per_product
        .iter()
        .position(|(_, r)| r.status == PsdStatus::Indefinite);
    let singular = per_product
        .iter()
        .position(|(_, r)| r.status == PsdStatus::PsdSingular);
    let (verdict, witness) = match (indefinite, singular) {
        (Some(i), _) => (Verdict::Violated, Some(i)),
        (None, Some(i)) => (Verdict::PositiveSingular, Some(i)),
        (None, None) => (Verdict::StrictlyPositive, None),
    };
    Ok(PositivityCertificate {
        per_product,
        verdict,
        witness,
    })
}

/// A bound `γ_{2k+2} ≥ bound(γ_{2k+1})` (lower) or `≤` (upper) coming from
/// the psd condition on `H_{f,(γ, x, y)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundTerm {
    pub product: PiProduct,
    pub bound: Quadratic,
}

/// Feasible `(x, y) = (γ_{2k+1}, γ_{2k+2})` keeping every localizing matrix
/// of the extended sequence psd.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionRegion {
    pub x_interval: Interval,
    pub y_lower: Vec<BoundTerm>,
    pub y_upper: Vec<BoundTerm>,
}

impl ExtensionRegion {
    /// Largest lower bound at `x` and the index of the lowest-degree product
    /// attaining it.
    pub fn max_lower(&self, x: &Rat) -> Option<(Rat, usize)> {
        extreme(&self.y_lower, x, Ordering::Greater)
    }

    pub fn min_upper(&self, x: &Rat) -> Option<(Rat, usize)> {
        extreme(&self.y_upper, x, Ordering::Less)
    }

    /// Points of `x_interval` where lower bound `idx` is at least every
    /// other lower bound.
    pub fn lower_dominance_set(&self, idx: usize) -> SurdSet {
        let mut set = interval_as_surd_set(&self.x_interval);
        for (j, other) in self.y_lower.iter().enumerate() {
            if j != idx {
                set = set.intersect(&self.y_lower[idx].bound.sub(&other.bound).nonneg_set());
            }
        }
        set
    }

    /// `{x : max lower(x) ≤ min upper(x)} ∩ x_interval`.
    pub fn feasible_x(&self) -> SurdSet {
        let mut set = interval_as_surd_set(&self.x_interval);
        for u in &self.y_upper {
            for l in &self.y_lower {
                set = set.intersect(&u.bound.sub(&l.bound).nonneg_set());
            }
        }
        set
    }

    pub fn contains(&self, x: &Rat, y: &Rat) -> bool {
        self.x_interval.contains(x)
            && self.y_lower.iter().all(|t| &t.bound.eval(x) <= y)
            && self.y_upper.iter().all(|t| &t.bound.eval(x) >= y)
    }
}

fn interval_as_surd_set(iv: &Interval) -> SurdSet {
    SurdSet::from_interval(iv.lo.clone().map(Surd::rational), iv.hi.clone().map(Surd::rational))
}

fn extreme(terms: &[BoundTerm], x: &Rat, want: Ordering) -> Option<(Rat, usize)> {
    let mut best: Option<(Rat, usize)> = None;
    for (i, t) in terms.iter().enumerate() {
        let v = t.bound.eval(x);
        let better = match &best {
            None => true,
            Some((b, bi)) => {
                let c = v.cmp(b);
                c == want || (c == Ordering::Equal && t.product.degree() < terms[*bi].product.degree())
            }
        };
        if better {
            best = Some((v, i));
        }
    }
    best
}

/// Exact extension region of a strictly positive `γ` of degree `2k`.
pub fn extension_region(gamma: &MomentSequence, k: &ClosedSet) -> Result<ExtensionRegion, SolverError> {
    let cert = positivity_certificate(gamma, k)?;
    if cert.verdict != Verdict::StrictlyPositive {
        return Err(SolverError::Precondition(
            "extension region requires a strictly positive functional".into(),
        ));
    }
    Ok(extension_region_unchecked(gamma, k))
}

fn extension_region_unchecked(gamma: &MomentSequence, k: &ClosedSet) -> ExtensionRegion {
    let two_k = gamma.degree();
    let products = pi_products(&natural_description(k), two_k + 2);
    let mut x_lo: Option<Rat> = None;
    let mut x_hi: Option<Rat> = None;
    let mut y_lower = Vec::new();
    let mut y_upper = Vec::new();
    let g = gamma.values();

    for prod in products {
        let f = &prod.f;
        let d = prod.degree();
        // entry_t of f·(γ, x, y) as (const, coeff of x, coeff of y)
        let entry = |t: usize| -> (Rat, Rat, Rat) {
            let mut c = Rat::zero();
            let mut cx = Rat::zero();
            let mut cy = Rat::zero();
            for (j, a) in f.coeffs().iter().enumerate() {
                match t + j {
                    s if s <= two_k => c += a * &g[s],
                    s if s == two_k + 1 => cx += a,
                    _ => cy += a,
                }
            }
            (c, cx, cy)
        };
        let m = (two_k + 2 - d) / 2;
        let h: Vec<Vec<Rat>> = (0..m)
            .map(|i| (0..m).map(|j| entry(i + j).0).collect())
            .collect();
        let v0: Vec<Rat> = (0..m).map(|i| entry(i + m).0).collect();
        let w = solve_exact(&h, &v0).expect("strictly positive: leading block invertible");
        let v0w = v0.iter().zip(&w).fold(Rat::zero(), |acc, (a, b)| acc + a * b);
        let (c0, cx, cy) = entry(2 * m);
        match prod.parity {
            Parity::Odd => {
                // cx x + c0 - v0ᵀ H⁻¹ v0 ≥ 0
                let r = (&v0w - &c0) / &cx;
                if cx.is_positive() {
                    if x_lo.as_ref().is_none_or(|l| &r > l) {
                        x_lo = Some(r);
                    }
                } else if x_hi.as_ref().is_none_or(|u| &r < u) {
                    x_hi = Some(r);
                }
            }
            Parity::Even => {
                // border entry at row m-1 carries f_d x
                let fd = f.leading_coeff();
                let (qa, qb) = if m == 0 {
                    (Rat::zero(), Rat::zero())
                } else {
                    let mut e = vec![Rat::zero(); m];
                    e[m - 1] = Rat::one();
                    let u = solve_exact(&h, &e).expect("invertible");
                    (&fd * &fd * &u[m - 1], rat_int(2) * &fd * &w[m - 1])
                };
                let quad = Quadratic::new(qa / &cy, (qb - &cx) / &cy, (&v0w - &c0) / &cy);
                let term = BoundTerm {
                    product: prod.clone(),
                    bound: quad,
                };
                if cy.is_positive() {
                    y_lower.push(term);
                } else {
                    y_upper.push(term);
                }
            }
        }
    }
    ExtensionRegion {
        x_interval: Interval::new(x_lo, x_hi),
        y_lower,
        y_upper,
    }
}

/// Per-check outcome of [`verify_measure`].
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    /// `|Σ ρ x^i - γ_i| / (1 + |γ_i|)` per moment.
    pub moment_residuals: Vec<f64>,
    pub moments_ok: bool,
    pub first_moment_failure: Option<usize>,
    pub atoms_in_k: bool,
    pub atoms_off_poles: bool,
    pub densities_positive: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.moments_ok && self.atoms_in_k && self.atoms_off_poles && self.densities_positive
    }

    pub fn max_residual(&self) -> f64 {
        self.moment_residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some(i) = self.first_moment_failure {
            parts.push(format!("moment {i} off by {:.3e}", self.moment_residuals[i]));
        }
        if !self.atoms_in_k {
            parts.push("atom outside K".to_string());
        }
        if !self.atoms_off_poles {
            parts.push("atom on a pole".to_string());
        }
        if !self.densities_positive {
            parts.push("nonpositive density".to_string());
        }
        if parts.is_empty() {
            "ok".into()
        } else {
            parts.join(", ")
        }
    }
}

pub fn verify_measure(
    mu: &AtomicMeasure,
    gamma: &MomentSequence,
    k: &ClosedSet,
    poles: &PoleSet,
    tol: f64,
) -> VerificationReport {
    let moments = mu.moments(gamma.degree());
    let moment_residuals: Vec<f64> = moments
        .iter()
        .zip(gamma.values())
        .map(|(m, g)| rat_to_f64(&(m - g)).abs() / (1.0 + rat_to_f64(g).abs()))
        .collect();
    let first_moment_failure = moment_residuals.iter().position(|&r| !(r <= tol));
    VerificationReport {
        moments_ok: first_moment_failure.is_none(),
        first_moment_failure,
        moment_residuals,
        atoms_in_k: mu.atoms.iter().all(|&x| k.contains(x, tol)),
        atoms_off_poles: mu.atoms.iter().all(|&x| poles.distance(x) > tol),
        densities_positive: mu.densities.iter().all(|&r| r > 0.0),
    }
}

/// Tries to read each float root of `p` as an exact rational root.
fn exact_roots(p: &Poly, approx: &[f64]) -> Option<Vec<Rat>> {
    approx
        .iter()
        .map(|&x| {
            let r = continued_fraction(x, 1_000_000)?;
            p.eval(&r).is_zero().then_some(r)
        })
        .collect()
}

fn continued_fraction(x: f64, max_den: i64) -> Option<Rat> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        let ai = a as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    (k1 != 0).then(|| crate::polyalg::rat(h1, k1))
}

/// Measure supported on `exact_atoms ∪ roots(p)` matching the first moments
/// of `gamma`. Fails when `p` lacks real simple roots or roots collide.
pub(crate) fn measure_on(
    exact_atoms: &[Rat],
    p: &Poly,
    gamma: &MomentSequence,
    tol: f64,
) -> Result<AtomicMeasure, String> {
    let mut float_roots = Vec::new();
    if p.deg() > 0 {
        let rs = real_roots(p, tol.max(1e-9)).map_err(|e| e.to_string())?;
        if rs.roots.len() != p.deg() || rs.roots.iter().any(|r| r.multiplicity != 1) {
            return Err(format!(
                "generating polynomial {p} has {} distinct real roots, need {}",
                rs.roots.len(),
                p.deg()
            ));
        }
        float_roots = rs.locations();
    }
    let n = exact_atoms.len() + float_roots.len();
    if n > gamma.degree() + 1 {
        return Err(format!("{n} atoms exceed the {} available moments", gamma.degree() + 1));
    }
    if let Some(rr) = exact_roots(p, &float_roots) {
        let mut nodes: Vec<Rat> = exact_atoms.to_vec();
        nodes.extend(rr);
        let mut sorted = nodes.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != nodes.len() {
            return Err("atoms coincide".into());
        }
        let dens = vandermonde_solve_exact(&nodes, gamma.values()).map_err(|e| e.to_string())?;
        return Ok(AtomicMeasure::exact(nodes, dens));
    }
    let mut nodes: Vec<f64> = exact_atoms.iter().map(rat_to_f64).collect();
    nodes.extend(float_roots);
    nodes.sort_by(|a, b| a.total_cmp(b));
    for w in nodes.windows(2) {
        if (w[1] - w[0]).abs() <= 1e-12 * (1.0 + w[0].abs()) {
            return Err(format!("atoms {} and {} coincide", w[0], w[1]));
        }
    }
    let dens = vandermonde_solve(&nodes, gamma.values()).map_err(|e| e.to_string())?;
    Ok(AtomicMeasure::new(nodes, dens))
}

fn check_measure(
    mu: &AtomicMeasure,
    gamma: &MomentSequence,
    k: &ClosedSet,
    poles: &PoleSet,
    cfg: &SolverConfig,
) -> Result<(), String> {
    let report = verify_measure(mu, gamma, k, poles, cfg.tol);
    if !report.passed() {
        return Err(report.describe());
    }
    if let Some(w) = negligible_atom(mu, gamma, cfg.density_floor) {
        return Err(format!("atom {w} carries a negligible share of the moments"));
    }
    Ok(())
}

/// First atom whose weight `ρ max(1,|x|)^d`, relative to `1 + max|γ_i|`,
/// falls below `floor`.
fn negligible_atom(mu: &AtomicMeasure, gamma: &MomentSequence, floor: f64) -> Option<f64> {
    let d = gamma.degree() as i32;
    let scale = 1.0 + gamma.values().iter().map(|g| rat_to_f64(g).abs()).fold(0.0, f64::max);
    mu.atoms
        .iter()
        .zip(&mu.densities)
        .find(|(x, r)| **r * x.abs().max(1.0).powi(d) / scale < floor)
        .map(|(x, _)| *x)
}

fn check_isolated_poles(k: &ClosedSet, poles: &PoleSet) -> Result<(), SolverError> {
    if let Some(p) = k.isolated_points().iter().find(|p| poles.contains(p)) {
        return Err(SolverError::Precondition(format!(
            "pole {p} is an isolated point of K"
        )));
    }
    Ok(())
}

/// Result of the singular decision procedure when it succeeds.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularSolution {
    pub measure: AtomicMeasure,
    pub f0: Poly,
    pub p: Poly,
}

/// Decides the singular case: the representing measure, if any, is unique
/// and supported on `Z(f0) ∪ Z(p_{f0})`.
pub fn solve_singular(
    gamma: &MomentSequence,
    k: &ClosedSet,
    poles: &PoleSet,
    cfg: &SolverConfig,
) -> Result<Outcome<SingularSolution>, SolverError> {
    check_isolated_poles(k, poles)?;
    let cert = positivity_certificate(gamma, k)?;
    match cert.verdict {
        Verdict::Violated => {
            return Ok(Outcome::Infeasible(InfeasibleReason::PositivityViolated {
                witness: cert.witness_product().expect("witness").f.clone(),
            }))
        }
        Verdict::StrictlyPositive => {
            return Err(SolverError::Precondition(
                "singular solver called on a strictly positive functional".into(),
            ))
        }
        Verdict::PositiveSingular => {}
    }
    let f0 = cert.witness_product().expect("witness").clone();
    let p = cert.witness_report().expect("witness").kernel_basis[0].clone();
    let zeros = f0.zeros();

    let candidate = measure_on(&zeros, &p, gamma, cfg.tol);
    if let Some(pole) = poles
        .points()
        .iter()
        .find(|l| f0.f.eval(l).is_zero() || p.eval(l).is_zero())
    {
        return Ok(Outcome::Infeasible(InfeasibleReason::PoleHit {
            pole: pole.clone(),
            measure: candidate.ok(),
        }));
    }
    if !k.is_bounded() {
        let shift = gamma.degree() - f0.degree() - 2 * p.deg();
        let test = &(&f0.f * &p.pow(2)).shift(shift) * &Poly::one();
        let value = riesz(gamma, &test)?;
        if !value.is_zero() {
            return Ok(Outcome::Infeasible(InfeasibleReason::UnboundedKernelConditionFailed {
                f0: f0.f.clone(),
                p,
                shift,
                value,
            }));
        }
    }
    let measure = match candidate {
        Ok(m) => m,
        Err(detail) => return Ok(Outcome::Infeasible(InfeasibleReason::VerificationFailed { detail })),
    };
    if let Err(detail) = check_measure(&measure, gamma, k, poles, cfg) {
        return Ok(Outcome::Infeasible(InfeasibleReason::VerificationFailed { detail }));
    }
    Ok(Outcome::Solved(SingularSolution {
        measure,
        f0: f0.f,
        p,
    }))
}

/// A measure found by the nonsingular construction and how it was found.
#[derive(Clone, Debug, PartialEq)]
pub struct NonsingularSolution {
    pub measure: AtomicMeasure,
    /// Moments appended to `γ`, in order, including any fixed prefix.
    pub extension: Vec<Rat>,
    /// The set the construction ran on; a subset of `K`.
    pub working_set: ClosedSet,
    /// Localizer whose extended matrix was made singular.
    pub binding: Poly,
    pub attempts: usize,
}

/// Extends a strictly positive `γ` to a flat sequence and reads off a
/// representing measure on `K` avoiding `poles`.
pub fn solve_nonsingular(
    gamma: &MomentSequence,
    k: &ClosedSet,
    poles: &PoleSet,
    cfg: &SolverConfig,
) -> Result<NonsingularSolution, SolverError> {
    check_isolated_poles(k, poles)?;
    // Work with γ_0 = 1 so the construction commutes with positive scaling.
    let g0 = gamma.get(0).clone();
    if g0.is_positive() && !g0.is_one() {
        let inv = g0.recip();
        let mut unit_cfg = cfg.clone();
        for (x, y) in &mut unit_cfg.fixed_extension {
            *x *= &inv;
            *y *= &inv;
        }
        let mut sol = solve_nonsingular(&gamma.scaled(&inv), k, poles, &unit_cfg)?;
        sol.measure = sol.measure.scaled(&g0);
        for e in &mut sol.extension {
            *e *= &g0;
        }
        return Ok(sol);
    }
    let mut base = gamma.clone();
    let mut prefix = Vec::new();
    for (x, y) in &cfg.fixed_extension {
        base = base.extended(&[x.clone(), y.clone()]);
        prefix.extend([x.clone(), y.clone()]);
    }
    let cert = positivity_certificate(&base, k)?;
    if cert.verdict != Verdict::StrictlyPositive {
        return Err(SolverError::Precondition(format!(
            "nonsingular solver needs a strictly positive functional (witness {})",
            cert.witness_product().map(|p| p.f.to_string()).unwrap_or_default()
        )));
    }
    let steps = cfg
        .max_extension_steps
        .unwrap_or_else(|| classify(k).ell1 + 3);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut sol = extend_and_flatten(&base, gamma, k, poles, cfg, steps, &mut rng)?;
    prefix.append(&mut sol.extension);
    sol.extension = prefix;
    Ok(sol)
}

/// Subsets of `K` on which a flat extension is attempted, in order.
fn working_sets(k: &ClosedSet, poles: &PoleSet) -> Vec<ClosedSet> {
    let mut bases = vec![k.clone()];
    let kc = classify(k);
    if !k.is_bounded() && kc.kind != KKind::WholeOrHalfLine {
        let reach = k
            .boundary()
            .iter()
            .chain(poles.points())
            .map(|x| rat_to_f64(x).abs())
            .fold(0.0, f64::max);
        let r0 = (reach + 1.0).ceil();
        for j in 0..10 {
            let r = rat_from_f64(r0 * f64::powi(2.0, j));
            let lo = k.min().cloned().unwrap_or_else(|| -r.clone());
            let hi = k.max().cloned().unwrap_or_else(|| r.clone());
            if let Some(c) = k.clip(&lo, &hi) {
                bases.push(c);
            }
        }
    }
    let mut out = Vec::new();
    for b in bases {
        let iso = b.isolated_points();
        let hits: Vec<Rat> = b
            .boundary()
            .into_iter()
            .filter(|x| poles.contains(x) && !iso.contains(x))
            .collect();
        out.push(b.clone());
        if hits.is_empty() {
            continue;
        }
        // Room available next to each pole endpoint inside its interval.
        let room = b
            .intervals()
            .iter()
            .filter(|iv| !iv.is_point())
            .filter_map(|iv| match (&iv.lo, &iv.hi) {
                (Some(a), Some(c)) => Some(rat_to_f64(&(c - a))),
                _ => None,
            })
            .fold(1.0, f64::min);
        let mut eps = room / 8.0;
        for _ in 0..12 {
            let e = rat_dyadic(eps, 40);
            if e.is_zero() {
                break;
            }
            let shrunk = hits.iter().fold(b.clone(), |acc, h| acc.shrink_endpoint(h, &e));
            out.push(shrunk);
            eps /= 2.0;
        }
    }
    out
}

fn extend_and_flatten(
    gamma: &MomentSequence,
    original: &MomentSequence,
    k: &ClosedSet,
    poles: &PoleSet,
    cfg: &SolverConfig,
    steps_left: usize,
    rng: &mut ChaCha8Rng,
) -> Result<NonsingularSolution, SolverError> {
    let mut attempts = 0;
    let mut last_failure = String::from("no working set admitted a strictly positive certificate");
    let mut first_region: Option<(ExtensionRegion, ClosedSet)> = None;

    for w in working_sets(k, poles) {
        if w != *k {
            match positivity_certificate(gamma, &w) {
                Ok(c) if c.verdict == Verdict::StrictlyPositive => {}
                _ => continue,
            }
        }
        let region = extension_region_unchecked(gamma, &w);
        for x in x_candidates(&region, cfg.max_retries, rng) {
            attempts += 1;
            let Some((lower, li)) = region.max_lower(&x) else {
                continue;
            };
            let upper = region.min_upper(&x);
            if let Some((u, _)) = &upper {
                if &lower > u {
                    last_failure = format!("empty y-range at x = {x}");
                    continue;
                }
            }
            let mut choices = vec![(lower, region.y_lower[li].product.clone())];
            if let Some((u, ui)) = upper {
                choices.push((u, region.y_upper[ui].product.clone()));
            }
            for (y, f) in choices {
                let ext = gamma.extended(&[x.clone(), y]);
                match flat_measure(&ext, &f) {
                    Ok(mu) => match check_measure(&mu, original, k, poles, cfg) {
                        Ok(()) => {
                            return Ok(NonsingularSolution {
                                measure: mu,
                                extension: ext.values()[gamma.degree() + 1..].to_vec(),
                                working_set: w,
                                binding: f.f,
                                attempts,
                            })
                        }
                        Err(e) => last_failure = format!("binding {}: {e}", f.f),
                    },
                    Err(e) => last_failure = format!("binding {}: {e}", f.f),
                }
            }
        }
        if first_region.is_none() {
            first_region = Some((region, w));
        }
    }

    if steps_left == 0 {
        return Err(SolverError::RetriesExhausted {
            attempts,
            last_failure,
        });
    }
    // One more degree: append an interior point of the region and recurse.
    let (region, _) = first_region.expect("K itself is strictly positive");
    for x in x_candidates(&region, cfg.max_retries, rng) {
        let Some((lower, _)) = region.max_lower(&x) else {
            continue;
        };
        let y = match region.min_upper(&x) {
            Some((u, _)) if u <= lower => continue,
            Some((u, _)) => short_between(&lower, &u),
            None => short_between(&lower, &(&lower + (Rat::one() + lower.abs()) / rat_int(2))),
        };
        let ext = gamma.extended(&[x.clone(), y.clone()]);
        if positivity_certificate(&ext, k)?.verdict != Verdict::StrictlyPositive {
            continue;
        }
        return match extend_and_flatten(&ext, original, k, poles, cfg, steps_left - 1, rng) {
            Ok(mut sol) => {
                let mut e = vec![x, y];
                e.append(&mut sol.extension);
                sol.extension = e;
                sol.attempts += attempts;
                Ok(sol)
            }
            Err(SolverError::RetriesExhausted {
                attempts: a,
                last_failure,
            }) => Err(SolverError::RetriesExhausted {
                attempts: a + attempts,
                last_failure,
            }),
            Err(e) => Err(e),
        };
    }
    Err(SolverError::RetriesExhausted {
        attempts,
        last_failure,
    })
}

/// A rational with a short dyadic expansion strictly between `a < b`.
fn short_between(a: &Rat, b: &Rat) -> Rat {
    let mid = (a + b) / rat_int(2);
    for bits in [4u32, 12, 20, 32, 52] {
        let c = rat_dyadic(rat_to_f64(&mid), bits);
        if a < &c && &c < b {
            return c;
        }
    }
    mid
}

/// Measure read off the flat sequence `ext` whose `f`-localized matrix is
/// singular at its top level.
fn flat_measure(ext: &MomentSequence, f: &PiProduct) -> Result<AtomicMeasure, String> {
    let report = psd_status(&localizing_hankel(ext, &f.f).map_err(|e| e.to_string())?);
    if report.status != PsdStatus::PsdSingular {
        return Err(format!("localized matrix is {:?}", report.status));
    }
    measure_on(&f.zeros(), &report.kernel_basis[0], ext, 1e-9)
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Candidate values for `γ_{2k+1}`, exact rationals strictly inside the
/// feasible x-set.
fn x_candidates(region: &ExtensionRegion, n: usize, rng: &mut ChaCha8Rng) -> Vec<Rat> {
    let feasible = region.feasible_x();
    let mut out = Vec::new();
    if feasible.is_empty() {
        return out;
    }
    let anchor = region
        .y_lower
        .iter()
        .find(|t| t.product.degree() == 0)
        .map(|t| {
            let q = &t.bound;
            if q.a.is_positive() {
                rat_to_f64(&(-&q.b / (rat_int(2) * &q.a)))
            } else {
                0.0
            }
        })
        .unwrap_or(0.0);
    let pieces = feasible.intervals.len();
    let mut i = 0usize;
    let mut guard = 0usize;
    while out.len() < n && guard < 8 * n + 16 {
        guard += 1;
        let piece = &feasible.intervals[i % pieces];
        let j = i / pieces;
        i += 1;
        let (lo, hi) = piece.bounds_f64();
        let x = match (lo.is_finite(), hi.is_finite()) {
            (true, true) => {
                let t = if j == 0 {
                    0.5
                } else {
                    let g = (0.5 + j as f64 * GOLDEN).fract();
                    (0.02 + 0.96 * g + rng.random_range(-1e-3..1e-3)).clamp(0.01, 0.99)
                };
                lo + t * (hi - lo)
            }
            (true, false) | (false, true) => {
                // Step toward the finite end geometrically.
                let end = if lo.is_finite() { lo } else { hi };
                let dir = if lo.is_finite() { 1.0 } else { -1.0 };
                let jitter = 1.0 + rng.random_range(-0.05..0.05);
                end + dir * (1.0 + end.abs()) * f64::powi(2.0, -(2 + 2 * j as i32)) * jitter
            }
            _ => {
                let scale = 1.0 + anchor.abs();
                let jitter = 1.0 + rng.random_range(-0.05..0.05);
                let offset = if j == 0 {
                    0.0
                } else {
                    let e = j.div_ceil(2) as i32 - 3;
                    let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
                    sign * scale * f64::powi(2.0, e) * jitter
                };
                anchor + offset
            }
        };
        if !x.is_finite() {
            continue;
        }
        let mut cand = rat_dyadic(x, 20);
        if !piece.contains_interior(&cand) {
            match piece.rational_point() {
                Some(p) if j == 0 => cand = p,
                _ => continue,
            }
        }
        if !out.contains(&cand) {
            out.push(cand);
        }
    }
    out
}

/// How a measure was obtained by [`solve`].
#[derive(Clone, Debug, PartialEq)]
pub enum SolvePath {
    Singular { f0: Poly, p: Poly },
    Nonsingular {
        extension: Vec<Rat>,
        working_set: ClosedSet,
        binding: Poly,
        attempts: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub measure: AtomicMeasure,
    pub certificate: PositivityCertificate,
    pub path: SolvePath,
}

/// Full decision procedure for `γ` of even degree on `K` avoiding `poles`.
pub fn solve(
    gamma: &MomentSequence,
    k: &ClosedSet,
    poles: &PoleSet,
    cfg: &SolverConfig,
) -> Result<Outcome<Solution>, SolverError> {
    check_isolated_poles(k, poles)?;
    let certificate = positivity_certificate(gamma, k)?;
    match certificate.verdict {
        Verdict::Violated => Ok(Outcome::Infeasible(InfeasibleReason::PositivityViolated {
            witness: certificate.witness_product().expect("witness").f.clone(),
        })),
        Verdict::PositiveSingular => Ok(match solve_singular(gamma, k, poles, cfg)? {
            Outcome::Solved(s) => Outcome::Solved(Solution {
                measure: s.measure,
                certificate,
                path: SolvePath::Singular { f0: s.f0, p: s.p },
            }),
            Outcome::Infeasible(r) => Outcome::Infeasible(r),
        }),
        Verdict::StrictlyPositive => {
            let s = solve_nonsingular(gamma, k, poles, cfg)?;
            Ok(Outcome::Solved(Solution {
                measure: s.measure,
                certificate,
                path: SolvePath::Nonsingular {
                    extension: s.extension,
                    working_set: s.working_set,
                    binding: s.binding,
                    attempts: s.attempts,
                },
            }))
        }
    }
}

fn det_exact(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let piv = m[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[r][j] -= t;
            }
        }
    }
    det
}

/// Newton-form interpolation through `(xs_i, ys_i)`.
fn interpolate(xs: &[Rat], ys: &[Rat]) -> Poly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = Poly::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = &(&p * &Poly::linear_root(&xs[i])) + &Poly::constant(coef[i].clone());
    }
    p
}

/// The `(k+1)`-atomic representing measure of a positive definite `γ` of
/// degree `2k` having `x1` as an atom; `None` when no such measure exists.
pub fn prescribed_atom_quadrature(
    gamma: &MomentSequence,
    x1: &Rat,
) -> Result<Option<AtomicMeasure>, SolverError> {
    let two_k = gamma.degree();
    if two_k % 2 != 0 || two_k == 0 {
        return Err(SolverError::Precondition(
            "prescribed-atom quadrature needs a sequence of even positive degree".into(),
        ));
    }
    if psd_status(&build_hankel(gamma, None)?).status != PsdStatus::PositiveDefinite {
        return Err(SolverError::Precondition("Hankel matrix must be positive definite".into()));
    }
    let k = two_k / 2;
    let g = gamma.values();
    let h = |s: usize| -> Vec<Vec<Rat>> {
        (0..k).map(|i| (0..k).map(|j| g[i + j + s].clone()).collect()).collect()
    };
    let (h0, h1, h2) = (h(0), h(1), h(2));
    let a: Vec<Vec<Rat>> = (0..k)
        .map(|i| (0..k).map(|j| x1 * &h0[i][j] - &h1[i][j]).collect())
        .collect();
    if det_exact(a.clone()).is_zero() {
        return Ok(None);
    }
    let b: Vec<Vec<Rat>> = (0..k)
        .map(|i| (0..k).map(|j| &h2[i][j] - x1 * &h1[i][j]).collect())
        .collect();
    let xs: Vec<Rat> = (0..=k).map(|i| rat_int(i as i64)).collect();
    let ys: Vec<Rat> = xs
        .iter()
        .map(|x| {
            det_exact(
                (0..k)
                    .map(|i| (0..k).map(|j| x * &a[i][j] + &b[i][j]).collect())
                    .collect(),
            )
        })
        .collect();
    let gpoly = interpolate(&xs, &ys);
    let mu = measure_on(std::slice::from_ref(x1), &gpoly, gamma, 1e-9)
        .map_err(SolverError::Numerical)?;
    let report = verify_measure(&mu, gamma, &ClosedSet::real_line(), &PoleSet::empty(), 1e-8);
    if !report.passed() {
        return Err(SolverError::Numerical(format!(
            "prescribed-atom measure failed verification: {}",
            report.describe()
        )));
    }
    Ok(Some(mu))
}

/// `L_γ(f g²)` through the localizing matrix, used by property tests.
pub fn localized_square(gamma: &MomentSequence, f: &Poly, g: &Poly) -> Result<Rat, HankelError> {
    let lf = localize(gamma, f)?;
    let h = build_hankel(&lf, None)?;
    Ok(h.quadratic_form(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{rat, rat_int};

    fn ex3() -> MomentSequence {
        MomentSequence::new(vec![rat_int(1), rat(1, 2), rat(5, 12), rat(3, 8), rat(17, 48)]).unwrap()
    }

    fn unit() -> ClosedSet {
        ClosedSet::interval(rat_int(0), rat_int(1)).unwrap()
    }

    #[test]
    fn certificate_examples() {
        let c = positivity_certificate(&ex3(), &unit()).unwrap();
        assert_eq!(c.verdict, Verdict::PositiveSingular);
        assert_eq!(c.witness_product().unwrap().f, Poly::from_ints(&[0, 1, -1]));
        assert_eq!(
            c.witness_report().unwrap().kernel_basis[0],
            Poly::new(vec![rat(-1, 2), rat_int(1)])
        );

        let bad = MomentSequence::from_ints(&[1, 5, 25, 125, 625]);
        let c = positivity_certificate(&bad, &unit()).unwrap();
        assert_eq!(c.verdict, Verdict::Violated);
        assert_eq!(c.witness_product().unwrap().f, Poly::from_ints(&[1, -1]));

        assert!(positivity_certificate(&MomentSequence::from_ints(&[1, 0, 1, 0]), &unit()).is_err());
    }

    #[test]
    fn region_on_real_line() {
        let r = extension_region(&MomentSequence::from_ints(&[1, 0, 1]), &ClosedSet::real_line()).unwrap();
        assert_eq!(r.x_interval, Interval::new(None, None));
        assert_eq!(r.y_lower.len(), 1);
        assert_eq!(r.y_lower[0].bound, Quadratic::new(rat_int(1), rat_int(0), rat_int(1)));
        assert!(r.y_upper.is_empty());
        assert!(extension_region(&MomentSequence::from_ints(&[1, 0, 0, 0, 0]), &ClosedSet::real_line()).is_err());
    }

    #[test]
    fn singular_examples() {
        let cfg = SolverConfig::default();
        let out = solve_singular(&ex3(), &unit(), &PoleSet::empty(), &cfg).unwrap();
        let sol = out.solved().unwrap();
        assert_eq!(
            sol.measure.exact.as_ref().unwrap().0,
            vec![rat_int(0), rat(1, 2), rat_int(1)]
        );
        assert!(sol.measure.densities.iter().all(|d| (d - 1.0 / 3.0).abs() < 1e-15));

        let poles = PoleSet::new(vec![rat_int(0), rat_int(1)]);
        let out = solve_singular(&ex3(), &unit(), &poles, &cfg).unwrap();
        assert!(matches!(out, Outcome::Infeasible(InfeasibleReason::PoleHit { .. })));

        let g = MomentSequence::from_ints(&[1, 0, 0, 0, 0, 0, 1]);
        let out = solve_singular(&g, &ClosedSet::real_line(), &PoleSet::empty(), &cfg).unwrap();
        match out {
            Outcome::Infeasible(InfeasibleReason::UnboundedKernelConditionFailed { f0, p, shift, value }) => {
                assert_eq!((f0, p, shift, value), (Poly::one(), Poly::x(), 4, rat_int(1)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn nonsingular_lebesgue_avoiding_half() {
        let g = MomentSequence::new((1..=5).map(|i| rat(1, i)).collect()).unwrap();
        let poles = PoleSet::new(vec![rat(1, 2)]);
        let sol = solve_nonsingular(&g, &unit(), &poles, &SolverConfig::default()).unwrap();
        assert!(sol.measure.len() <= 4);
        assert!(verify_measure(&sol.measure, &g, &unit(), &poles, 1e-9).passed());
    }

    #[test]
    fn nonsingular_on_real_line() {
        let g = MomentSequence::from_ints(&[1, 0, 2, 0, 5]);
        let k = ClosedSet::real_line();
        let sol = solve_nonsingular(&g, &k, &PoleSet::empty(), &SolverConfig::default()).unwrap();
        assert_eq!(sol.measure.len(), 3);
        assert!(verify_measure(&sol.measure, &g, &k, &PoleSet::empty(), 1e-9).passed());
    }

    #[test]
    fn prescribed_atom_examples() {
        let g = MomentSequence::from_ints(&[2, 0, 2]);
        assert_eq!(prescribed_atom_quadrature(&g, &rat_int(0)).unwrap(), None);
        let mu = prescribed_atom_quadrature(&g, &rat_int(2)).unwrap().unwrap();
        assert_eq!(mu.exact.unwrap(), (vec![rat(-1, 2), rat_int(2)], vec![rat(8, 5), rat(2, 5)]));
    }

    #[test]
    fn verify_examples() {
        let third = rat(1, 3);
        let mu = AtomicMeasure::exact(
            vec![rat_int(0), rat(1, 2), rat_int(1)],
            vec![third.clone(), third.clone(), third],
        );
        assert!(verify_measure(&mu, &ex3(), &unit(), &PoleSet::empty(), 1e-12).passed());
        let r = verify_measure(&mu, &ex3(), &unit(), &PoleSet::new(vec![rat_int(0), rat_int(1)]), 1e-12);
        assert!(r.moments_ok && !r.atoms_off_poles);

        let d0 = AtomicMeasure::exact(vec![rat_int(0)], vec![rat_int(1)]);
        let k = ClosedSet::real_line();
        assert!(verify_measure(&d0, &MomentSequence::from_ints(&[1, 0, 0]), &k, &PoleSet::empty(), 1e-9).passed());
        let r = verify_measure(&d0, &MomentSequence::from_ints(&[1, 1, 1]), &k, &PoleSet::empty(), 1e-9);
        assert_eq!(r.first_moment_failure, Some(1));
    }

    #[test]
    fn continued_fraction_recovers_simple_rationals() {
        assert_eq!(continued_fraction(0.5, 100), Some(rat(1, 2)));
        assert_eq!(continued_fraction(-1.0 / 3.0, 100), Some(rat(-1, 3)));
        assert_eq!(continued_fraction(2.0, 100), Some(rat_int(2)));
    }
}
