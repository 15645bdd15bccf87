//! Moment sequences, Hankel and localizing matrices, exact positive
//! semidefiniteness classification and generating polynomials.

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::polyalg::{rat_to_f64, Poly, Rat};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HankelError {
    #[error("moment sequence must contain at least one value")]
    Empty,
    #[error("polynomial of degree {poly_degree} exceeds sequence degree {seq_degree}")]
    DegreeOverflow {
        poly_degree: usize,
        seq_degree: usize,
    },
    #[error("Hankel level {level} needs moments up to degree {needed}, sequence has degree {have}")]
    LevelTooLarge {
        level: usize,
        needed: usize,
        have: usize,
    },
    #[error("Hankel matrix is not positive semidefinite")]
    NotPsd,
    #[error("Hankel matrix is positive definite, no column relation exists")]
    NotSingular,
}

/// Power moments `γ_0, ..., γ_d` of a linear functional, `L(x^i) = γ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MomentSequence {
    values: Vec<Rat>,
}

impl MomentSequence {
    pub fn new(values: Vec<Rat>) -> Result<Self, HankelError> {
        if values.is_empty() {
            return Err(HankelError::Empty);
        }
        Ok(Self { values })
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| crate::polyalg::rat_int(v)).collect())
            .expect("nonempty")
    }

    /// Moments of the atomic measure `sum_j densities_j * delta_{atoms_j}` up
    /// to `degree`.
    pub fn from_atoms(atoms: &[Rat], densities: &[Rat], degree: usize) -> Self {
        let values = (0..=degree)
            .map(|i| {
                atoms
                    .iter()
                    .zip(densities)
                    .fold(Rat::zero(), |acc, (x, r)| acc + r * num_traits::pow(x.clone(), i))
            })
            .collect();
        Self { values }
    }

    pub fn degree(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn get(&self, i: usize) -> &Rat {
        &self.values[i]
    }

    /// `(γ, extra...)`.
    pub fn extended(&self, extra: &[Rat]) -> Self {
        let mut values = self.values.clone();
        values.extend_from_slice(extra);
        Self { values }
    }

    /// First `degree + 1` moments.
    pub fn truncated(&self, degree: usize) -> Self {
        Self {
            values: self.values[..=degree.min(self.degree())].to_vec(),
        }
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        Self {
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

/// Riesz functional `L_γ(f) = sum_i a_i γ_i`.
pub fn riesz(gamma: &MomentSequence, f: &Poly) -> Result<Rat, HankelError> {
    if f.is_zero() {
        return Ok(Rat::zero());
    }
    if f.deg() > gamma.degree() {
        return Err(HankelError::DegreeOverflow {
            poly_degree: f.deg(),
            seq_degree: gamma.degree(),
        });
    }
    Ok(f.coeffs()
        .iter()
        .zip(&gamma.values)
        .fold(Rat::zero(), |acc, (a, g)| acc + a * g))
}

/// The sequence `i -> L_γ(f x^i)` for `i = 0..=deg γ - deg f`.
pub fn localize(gamma: &MomentSequence, f: &Poly) -> Result<MomentSequence, HankelError> {
    let df = f.deg();
    if df > gamma.degree() {
        return Err(HankelError::DegreeOverflow {
            poly_degree: df,
            seq_degree: gamma.degree(),
        });
    }
    let values = (0..=gamma.degree() - df)
        .map(|i| {
            f.coeffs()
                .iter()
                .enumerate()
                .fold(Rat::zero(), |acc, (j, a)| acc + a * &gamma.values[i + j])
        })
        .collect();
    Ok(MomentSequence { values })
}

/// Square Hankel matrix `(γ_{i+j})` together with the localizer it was
/// built from.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelMatrix {
    entries: Vec<Vec<Rat>>,
    localizer: Poly,
}

impl HankelMatrix {
    /// Wraps an arbitrary symmetric matrix so the exact psd sweep applies.
    pub(crate) fn from_symmetric(entries: Vec<Vec<Rat>>) -> Self {
        Self {
            entries,
            localizer: Poly::one(),
        }
    }

    pub fn side(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }

    pub fn localizer(&self) -> &Poly {
        &self.localizer
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        let n = self.side();
        DMatrix::from_fn(n, n, |i, j| rat_to_f64(&self.entries[i][j]))
    }

    /// `H v` for a polynomial read as its coefficient vector.
    pub fn apply(&self, v: &Poly) -> Vec<Rat> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v.coeffs())
                    .fold(Rat::zero(), |acc, (h, c)| acc + h * c)
            })
            .collect()
    }

    /// `ĝᵀ H ĝ`.
    pub fn quadratic_form(&self, g: &Poly) -> Rat {
        self.apply(g)
            .iter()
            .zip(g.coeffs())
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Eigenvalues of the float image of the matrix, largest first.
    pub fn eigenvalue_estimates(&self) -> Vec<f64> {
        if self.side() == 0 {
            return Vec::new();
        }
        let mut ev: Vec<f64> = SymmetricEigen::new(self.to_f64()).eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    }
}

/// Hankel matrix of `γ` at `level` (side `level + 1`). `None` selects
/// `⌊deg γ / 2⌋`, so an odd-degree sequence drops its last moment.
pub fn build_hankel(gamma: &MomentSequence, level: Option<usize>) -> Result<HankelMatrix, HankelError> {
    let level = level.unwrap_or(gamma.degree() / 2);
    if 2 * level > gamma.degree() {
        return Err(HankelError::LevelTooLarge {
            level,
            needed: 2 * level,
            have: gamma.degree(),
        });
    }
    let entries = (0..=level)
        .map(|i| (0..=level).map(|j| gamma.values[i + j].clone()).collect())
        .collect();
    Ok(HankelMatrix {
        entries,
        localizer: Poly::one(),
    })
}

/// `H_{f,γ}`: the Hankel matrix of `f·γ`. When `f·γ` has odd degree its
/// last moment is dropped.
pub fn localizing_hankel(gamma: &MomentSequence, f: &Poly) -> Result<HankelMatrix, HankelError> {
    let mut h = build_hankel(&localize(gamma, f)?, None)?;
    h.localizer = f.clone();
    Ok(h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PsdStatus {
    PositiveDefinite,
    PsdSingular,
    Indefinite,
}

/// Exact classification of a symmetric matrix.
///
/// `kernel_basis` holds one monic polynomial per zero pivot, of degree equal
/// to the pivot index, so the first element is the column relation of lowest
/// degree. It is empty unless the status is `PsdSingular`.
#[derive(Clone, Debug, PartialEq)]
pub struct PsdReport {
    pub status: PsdStatus,
    pub rank: usize,
    pub kernel_basis: Vec<Poly>,
    pub min_eigenvalue_estimate: f64,
    pub eigenvalue_estimates: Vec<f64>,
}

impl PsdReport {
    pub fn is_psd(&self) -> bool {
        self.status != PsdStatus::Indefinite
    }
}

/// Solves `A x = b` exactly for a nonsingular `A` by Gaussian elimination.
pub(crate) fn solve_exact(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = b.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let piv = m[c][c].clone();
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = &m[r][c] / &piv;
                for j in c..=n {
                    let t = &f * &m[c][j];
                    m[r][j] -= t;
                }
            }
        }
    }
    Some((0..n).map(|i| &m[i][n] / &m[i][i]).collect())
}

/// Exact rank by Gaussian elimination.
fn exact_rank(a: &[Vec<Rat>]) -> usize {
    let mut m = a.to_vec();
    let (rows, cols) = (m.len(), m.first().map_or(0, Vec::len));
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            if !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for j in c..cols {
                    let t = &f * &m[rank][j];
                    m[r][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Classifies `h` exactly with an order-preserving LDLᵀ sweep over leading
/// principal submatrices.
pub fn psd_status(h: &HankelMatrix) -> PsdReport {
    let n = h.side();
    let eigenvalue_estimates = h.eigenvalue_estimates();
    let min_eigenvalue_estimate = eigenvalue_estimates.last().copied().unwrap_or(0.0);
    let mut s: Vec<Vec<Rat>> = h.entries.clone();
    let mut pivots: Vec<usize> = Vec::new();
    let mut kernel_basis = Vec::new();
    let mut status = PsdStatus::PositiveDefinite;

    for i in 0..n {
        let d = s[i][i].clone();
        if d.is_positive() {
            for j in i + 1..n {
                if s[j][i].is_zero() {
                    continue;
                }
                let f = &s[j][i] / &d;
                for c in i + 1..n {
                    let t = &f * &s[i][c];
                    s[j][c] -= t;
                }
            }
            pivots.push(i);
            continue;
        }
        if d.is_negative() || (i + 1..n).any(|j| !s[i][j].is_zero()) {
            status = PsdStatus::Indefinite;
            break;
        }
        status = PsdStatus::PsdSingular;
        let sub: Vec<Vec<Rat>> = pivots
            .iter()
            .map(|&r| pivots.iter().map(|&c| h.entries[r][c].clone()).collect())
            .collect();
        let rhs: Vec<Rat> = pivots.iter().map(|&r| h.entries[r][i].clone()).collect();
        let w = solve_exact(&sub, &rhs).expect("leading pivot block is positive definite");
        let mut coeffs = vec![Rat::zero(); i + 1];
        coeffs[i] = Rat::from_integer(1.into());
        for (&r, wr) in pivots.iter().zip(w) {
            coeffs[r] = -wr;
        }
        kernel_basis.push(Poly::new(coeffs));
    }

    let rank = match status {
        PsdStatus::Indefinite => {
            kernel_basis.clear();
            exact_rank(&h.entries)
        }
        _ => pivots.len(),
    };
    PsdReport {
        status,
        rank,
        kernel_basis,
        min_eigenvalue_estimate,
        eigenvalue_estimates,
    }
}

/// Monic column relation at the smallest singular level of a psd Hankel
/// matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratingPoly {
    pub p: Poly,
    pub level: usize,
}

/// `None` when `H_{1,γ}` is positive definite.
pub fn generating_polynomial(gamma: &MomentSequence) -> Result<Option<GeneratingPoly>, HankelError> {
    let report = psd_status(&build_hankel(gamma, None)?);
    match report.status {
        PsdStatus::Indefinite => Err(HankelError::NotPsd),
        PsdStatus::PositiveDefinite => Ok(None),
        PsdStatus::PsdSingular => {
            let p = report.kernel_basis[0].clone();
            let level = p.deg();
            Ok(Some(GeneratingPoly { p, level }))
        }
    }
}

/// True iff every shift `x^s p_γ`, `deg(x^s p_γ) ≤ ⌊deg γ/2⌋`, is a column
/// relation of `H_{1,γ}`.
pub fn flat_extension_check(gamma: &MomentSequence) -> Result<bool, HankelError> {
    let gp = generating_polynomial(gamma)?.ok_or(HankelError::NotSingular)?;
    let h = build_hankel(gamma, None)?;
    let top = h.side() - 1;
    Ok((0..=top - gp.level).all(|s| h.apply(&gp.p.shift(s)).iter().all(Zero::is_zero)))
}
