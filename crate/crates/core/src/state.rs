//! Validated density matrices for one and two atoms.
//!
//! Two-atom states are stored in the product basis
//! f₁ = |1⟩⊗|1⟩, f₂ = |1⟩⊗|0⟩, f₃ = |0⟩⊗|1⟩, f₄ = |0⟩⊗|0⟩,
//! where |1⟩ = (1, 0)ᵀ is the excited and |0⟩ = (0, 1)ᵀ the ground state.
//! Index 0 of every matrix is therefore f₁.

use nalgebra::{DMatrix, Matrix2, Matrix4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, c, ComplexMatrix};

/// Acceptance thresholds for the three density-matrix invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub hermitian: f64,
    pub trace: f64,
    pub psd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-9,
            trace: 1e-9,
            psd: 1e-9,
        }
    }
}

/// Checks the invariants on a square matrix, returning its Hermitian part
/// renormalized to unit trace.
fn validated(m: &ComplexMatrix, tol: Tolerances) -> Result<ComplexMatrix> {
    let residual = linalg::hermitian_residual(m);
    if residual.is_nan() || residual > tol.hermitian {
        return Err(Error::NotHermitian { residual });
    }
    let h = (m + m.adjoint()) * c(0.5);
    let tr = h.trace().re;
    let residual = (tr - 1.0).abs();
    if residual.is_nan() || residual > tol.trace {
        return Err(Error::TraceNotOne { residual });
    }
    let h = h * c(1.0 / tr);
    let (values, _) = linalg::hermitian_eigen(&h);
    let min_eigenvalue = values.iter().copied().fold(f64::INFINITY, f64::min);
    if min_eigenvalue < -tol.psd {
        return Err(Error::NotPositive { min_eigenvalue });
    }
    Ok(h)
}

/// A two-atom state: 4×4 Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix4(Matrix4<Complex64>);

/// A single-atom state in the basis (|1⟩, |0⟩).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix2(Matrix2<Complex64>);

/// Validates an arbitrary complex matrix as a two-atom state.
pub fn validate_density(m: &ComplexMatrix, tol: Tolerances) -> Result<DensityMatrix4> {
    if m.nrows() != 4 || m.ncols() != 4 {
        return Err(Error::Dimension {
            expected: 4,
            found: m.nrows().max(m.ncols()),
        });
    }
    let h = validated(m, tol)?;
    Ok(DensityMatrix4(Matrix4::from_fn(|i, j| h[(i, j)])))
}

impl DensityMatrix4 {
    pub fn new(m: Matrix4<Complex64>) -> Result<Self> {
        Self::with_tolerances(m, Tolerances::default())
    }

    pub fn with_tolerances(m: Matrix4<Complex64>, tol: Tolerances) -> Result<Self> {
        validate_density(&to_dynamic(&m), tol)
    }

    /// Wraps a matrix already known to be a valid state.
    pub(crate) fn from_trusted(m: Matrix4<Complex64>) -> Self {
        Self(m)
    }

    pub fn maximally_mixed() -> Self {
        Self(Matrix4::identity() * c(0.25))
    }

    /// Projector onto the (normalized) vector `psi`.
    pub fn pure(psi: [Complex64; 4]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm.is_nan() || norm <= 0.0 {
            return Err(Error::Domain {
                name: "|psi|",
                value: norm,
                domain: "(0, inf)",
            });
        }
        let m = Matrix4::from_fn(|i, j| psi[i] * psi[j].conj() / (norm * norm));
        Ok(Self(m))
    }

    /// ρ_A ⊗ ρ_B.
    pub fn product(a: &DensityMatrix2, b: &DensityMatrix2) -> Self {
        Self(linalg::kron2(a.matrix(), b.matrix()))
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    /// Entry (i, j) with zero-based indices in the f₁…f₄ order.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn to_dynamic(&self) -> ComplexMatrix {
        to_dynamic(&self.0)
    }

    /// Spectrum, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let (mut v, _) = linalg::hermitian_eigen(&self.to_dynamic());
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix4) -> f64 {
        max_abs_diff4(&self.0, &other.0)
    }

    /// U ρ U† for a 4×4 unitary U.
    pub fn conjugate_by(&self, u: &Matrix4<Complex64>) -> Self {
        Self(u * self.0 * u.adjoint())
    }
}

impl DensityMatrix2 {
    pub fn new(m: Matrix2<Complex64>) -> Result<Self> {
        Self::with_tolerances(m, Tolerances::default())
    }

    pub fn with_tolerances(m: Matrix2<Complex64>, tol: Tolerances) -> Result<Self> {
        let h = validated(&DMatrix::from_fn(2, 2, |i, j| m[(i, j)]), tol)?;
        Ok(Self(Matrix2::from_fn(|i, j| h[(i, j)])))
    }

    pub(crate) fn from_trusted(m: Matrix2<Complex64>) -> Self {
        Self(m)
    }

    pub fn excited() -> Self {
        Self(Matrix2::new(c(1.0), c(0.0), c(0.0), c(0.0)))
    }

    pub fn ground() -> Self {
        Self(Matrix2::new(c(0.0), c(0.0), c(0.0), c(1.0)))
    }

    pub fn maximally_mixed() -> Self {
        Self(Matrix2::identity() * c(0.5))
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }
}

pub(crate) fn to_dynamic(m: &Matrix4<Complex64>) -> ComplexMatrix {
    DMatrix::from_fn(4, 4, |i, j| m[(i, j)])
}

pub(crate) fn max_abs_diff4(a: &Matrix4<Complex64>, b: &Matrix4<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Atom label in the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Reduced state of the subsystem `keep`, tracing out the other one.
pub fn partial_trace(rho: &DensityMatrix4, keep: Subsystem) -> DensityMatrix2 {
    // index = 2·a + b
    let m = rho.matrix();
    let reduced = Matrix2::from_fn(|i, j| match keep {
        Subsystem::A => m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)],
        Subsystem::B => m[(i, j)] + m[(2 + i, 2 + j)],
    });
    DensityMatrix2::from_trusted(reduced)
}

/// S_lin(ρ) = 1 − tr ρ².
pub fn linear_entropy(rho: &DensityMatrix4) -> f64 {
    linear_entropy_raw(rho.matrix())
}

/// Linear entropy of any Hermitian matrix, without validation. Used on
/// backward-propagated matrices that need not be states.
pub(crate) fn linear_entropy_raw(m: &Matrix4<Complex64>) -> f64 {
    // tr ρ² = Σ |ρ_ij|² for Hermitian ρ
    1.0 - m.iter().map(|z| z.norm_sqr()).sum::<f64>()
}
