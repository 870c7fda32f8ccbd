//! Bell nonlocality through the Pauli correlation matrix: a two-qubit state
//! violates some CHSH inequality iff the two largest eigenvalues of TᵀT sum
//! to more than one.

use nalgebra::Matrix3;

use crate::error::{check_domain, Error, Result};
use crate::linalg::{self, pauli};
use crate::state::DensityMatrix4;

const IMAG_LIMIT: f64 = 1e-9;

/// t_nm = tr(ρ σ_n⊗σ_m), n, m = 1..3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationMatrix(pub Matrix3<f64>);

impl CorrelationMatrix {
    /// Eigenvalues of U = TᵀT, descending.
    pub fn u_eigenvalues(&self) -> [f64; 3] {
        let u = self.0.transpose() * self.0;
        let eig = u.symmetric_eigen();
        let mut v = [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2]];
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }
}

fn correlations(rho: &DensityMatrix4) -> (Matrix3<f64>, f64) {
    let mut t = Matrix3::zeros();
    let mut worst_imag = 0.0_f64;
    for n in 0..3 {
        for m in 0..3 {
            let op = linalg::kron2(&pauli(n + 1), &pauli(m + 1));
            let value = (rho.matrix() * op).trace();
            t[(n, m)] = value.re;
            worst_imag = worst_imag.max(value.im.abs());
        }
    }
    (t, worst_imag)
}

pub fn correlation_matrix(rho: &DensityMatrix4) -> Result<CorrelationMatrix> {
    let (t, imag) = correlations(rho);
    if imag > IMAG_LIMIT {
        return Err(Error::NonRealCorrelation { imag });
    }
    Ok(CorrelationMatrix(t))
}

/// m(ρ) = u₁ + u₂, the sum of the two largest eigenvalues of TᵀT.
pub fn m_value(rho: &DensityMatrix4) -> f64 {
    // validated states are Hermitian, so every correlation is real
    let (t, _) = correlations(rho);
    let u = CorrelationMatrix(t).u_eigenvalues();
    u[0] + u[1]
}

/// n(ρ) = max(0, m(ρ) − 1).
pub fn n_value(rho: &DensityMatrix4) -> f64 {
    (m_value(rho) - 1.0).max(0.0)
}

pub fn violates_bell(rho: &DensityMatrix4) -> bool {
    m_value(rho) > 1.0
}

/// m along the trajectory of the pure representative state P_Φ(c).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MPureEvolved {
    /// e^{−8Γt} + c²e^{−4Γt}, the sum of u = e^{−8Γt} and one of the two
    /// degenerate values c²e^{−4Γt}.
    pub longitudinal_branch: f64,
    /// c²e^{−4Γt} + max(c²e^{−4Γt}, e^{−8Γt}), the actual top-two sum.
    pub exact: f64,
    /// True while e^{−4Γt} ≥ c², where the two expressions coincide.
    pub branch_valid: bool,
}

pub fn m_pure_evolved(c: f64, t: f64, gamma: f64) -> Result<MPureEvolved> {
    check_domain("c", c, "[0, 1]", (0.0..=1.0).contains(&c))?;
    check_domain("t", t, "[0, inf)", t >= 0.0)?;
    check_domain("gamma", gamma, "(0, inf)", gamma > 0.0)?;
    let y = (-4.0 * gamma * t).exp();
    let transverse = c * c * y;
    let longitudinal = y * y;
    Ok(MPureEvolved {
        longitudinal_branch: longitudinal + transverse,
        exact: transverse + transverse.max(longitudinal),
        branch_valid: y >= c * c,
    })
}
