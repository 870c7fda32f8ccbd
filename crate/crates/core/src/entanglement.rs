//! Concurrence, entanglement of formation and the partial-transpose
//! separability test for two atoms.

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::collective::canonical_to_collective;
use crate::error::{check_domain, Error, Result};
use crate::factories::x_class_residual;
use crate::linalg::{self, c, pauli};
use crate::state::{to_dynamic, DensityMatrix4, Tolerances};

/// ρ̃ = (σ₂⊗σ₂) ρ̄ (σ₂⊗σ₂).
pub fn spin_flip(rho: &DensityMatrix4) -> Matrix4<Complex64> {
    let yy = linalg::kron2(&pauli(2), &pauli(2));
    yy * rho.matrix().map(|z| z.conj()) * yy
}

/// Relative eigenvalue cutoff below which a direction of ρ is treated as
/// outside its support.
const SUPPORT_CUTOFF: f64 = 1e-14;

/// Square roots of the eigenvalues of ρ^{1/2} ρ̃ ρ^{1/2}, i.e. the spectrum
/// of ρ̂, sorted descending.
///
/// With ρ = Σ p_k e_k e_k†, ρ^{1/2} ρ̃ ρ^{1/2} is unitarily equivalent to
/// M M† for the complex
/// symmetric M_kl = √(p_k p_l) e_k†(σ₂⊗σ₂)ē_l, so the wanted values are the
/// singular values of M. Taking them from an SVD avoids square roots of
/// round-off-sized eigenvalues on rank-deficient states.
pub fn wootters_spectrum(rho: &DensityMatrix4) -> [f64; 4] {
    let (p, vectors) = linalg::hermitian_eigen(&rho.to_dynamic());
    let p_max = p.iter().copied().fold(0.0, f64::max);
    let yy = to_dynamic(&linalg::kron2(&pauli(2), &pauli(2)));
    let w = vectors.adjoint() * yy * vectors.map(|z| z.conj());
    let weight = |k: usize| {
        if p[k] > SUPPORT_CUTOFF * p_max {
            p[k].sqrt()
        } else {
            0.0
        }
    };
    let m = nalgebra::DMatrix::from_fn(4, 4, |k, l| w[(k, l)] * c(weight(k) * weight(l)));
    let sv = m.singular_values();
    let mut roots = [0.0; 4];
    for (slot, v) in roots.iter_mut().zip(sv.iter()) {
        *slot = *v;
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    roots
}

/// Square roots of the eigenvalues of the non-Hermitian product ρρ̃, sorted
/// descending. Agrees with [`wootters_spectrum`]; kept as a cross-check.
pub fn wootters_spectrum_nonhermitian(rho: &DensityMatrix4) -> [f64; 4] {
    let product = to_dynamic(&(rho.matrix() * spin_flip(rho)));
    let (_, t) = product.schur().unpack();
    let mut roots = [0.0; 4];
    for (k, slot) in roots.iter_mut().enumerate() {
        *slot = t[(k, k)].re.max(0.0).sqrt();
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    roots
}

/// λ₁ − λ₂ − λ₃ − λ₄ over the Wootters spectrum. Positive exactly on
/// entangled states; continuous in ρ, unlike the clamped concurrence.
pub fn wootters_margin(rho: &DensityMatrix4) -> f64 {
    let l = wootters_spectrum(rho);
    l[0] - l[1] - l[2] - l[3]
}

/// C(ρ) = max(0, 2 p_max(ρ̂) − tr ρ̂).
pub fn concurrence(rho: &DensityMatrix4) -> f64 {
    wootters_margin(rho).clamp(0.0, 1.0)
}

/// The two candidate values C₁, C₂ of the X-state concurrence and their
/// clamped maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceBreakdown {
    pub c1: f64,
    pub c2: f64,
    pub value: f64,
}

impl ConcurrenceBreakdown {
    pub fn new(c1: f64, c2: f64) -> Self {
        Self {
            c1,
            c2,
            value: c1.max(c2).max(0.0),
        }
    }
}

fn require_x_class(rho: &DensityMatrix4) -> Result<()> {
    let residual = x_class_residual(rho);
    if residual > Tolerances::default().psd {
        return Err(Error::NotXClass { residual });
    }
    Ok(())
}

/// C₁ = 2(|ρ₁₄| − √(ρ₂₂ρ₃₃)), C₂ = 2(|ρ₂₃| − √(ρ₁₁ρ₄₄)).
pub fn concurrence_x(rho: &DensityMatrix4) -> Result<ConcurrenceBreakdown> {
    require_x_class(rho)?;
    let d = |k: usize| rho.get(k, k).re.max(0.0);
    let c1 = 2.0 * (rho.get(0, 3).norm() - (d(1) * d(2)).sqrt());
    let c2 = 2.0 * (rho.get(1, 2).norm() - (d(0) * d(3)).sqrt());
    Ok(ConcurrenceBreakdown::new(c1, c2))
}

/// Clamps a radicand that is negative only by round-off.
fn radicand(value: f64) -> Result<f64> {
    if value < -Tolerances::default().psd {
        return Err(Error::ComplexRoot { radicand: value });
    }
    Ok(value.max(0.0))
}

/// The same two candidates written in collective-basis matrix elements:
///
/// C₁ = 2|ρ_eg| − √((ρ_aa+ρ_ss)² − (ρ_as+ρ_sa)²),
/// C₂ = √((ρ_ss−ρ_aa)² − (ρ_as−ρ_sa)²) − 2√(ρ_ee ρ_gg).
///
/// ρ_as − ρ_sa is imaginary, so its square enters with a positive sign.
pub fn concurrence_x_collective(rho: &DensityMatrix4) -> Result<ConcurrenceBreakdown> {
    require_x_class(rho)?;
    let k = canonical_to_collective(rho);
    let sum = k.as_() + k.sa();
    let diff = k.as_() - k.sa();
    let r1 = radicand((k.aa() + k.ss()).powi(2) - (sum * sum).re)?;
    let r2 = radicand((k.ss() - k.aa()).powi(2) - (diff * diff).re)?;
    let c1 = 2.0 * k.eg().norm() - r1.sqrt();
    let c2 = r2.sqrt() - 2.0 * (k.ee().max(0.0) * k.gg().max(0.0)).sqrt();
    Ok(ConcurrenceBreakdown::new(c1, c2))
}

/// Closed-form C₁(t), C₂(t) for an X-class initial state under the
/// two-atom dissipative dynamics at rate Γ.
pub fn c1c2_evolved(rho0: &DensityMatrix4, t: f64, gamma: f64) -> Result<ConcurrenceBreakdown> {
    require_x_class(rho0)?;
    check_domain("t", t, "[0, inf)", t >= 0.0)?;
    check_domain("gamma", gamma, "(0, inf)", gamma > 0.0)?;
    let k = canonical_to_collective(rho0);
    let x = (-2.0 * gamma * t).exp();
    let x2 = x * x;
    let x4 = x2 * x2;
    let (aa, ss, ee, gg) = (k.aa(), k.ss(), k.ee(), k.gg());
    let sum = k.as_() + k.sa();
    let diff = k.as_() - k.sa();

    let r1 = radicand((x2 * (aa + ss - 0.5) + 0.5).powi(2) - x2 * (sum * sum).re)?;
    let c1 = 2.0 * x * k.eg().norm() - r1.sqrt();

    let r2a = radicand((ss - aa).powi(2) - (diff * diff).re)?;
    let r2b = radicand(
        1.0 + x4 * (-1.0 + 2.0 * ee + 2.0 * gg).powi(2) + 4.0 * x2 * (ee + gg - 0.5 - (ee - gg).powi(2)),
    )?;
    let c2 = x * r2a.sqrt() - 0.5 * r2b.sqrt();
    Ok(ConcurrenceBreakdown::new(c1, c2))
}

/// h(x) = −x log₂ x − (1−x) log₂(1−x).
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// Entanglement of formation as a function of concurrence,
/// h((1 + √(1 − C²))/2).
pub fn eof_from_concurrence(concurrence: f64) -> f64 {
    let cc = concurrence.clamp(0.0, 1.0);
    binary_entropy(0.5 * (1.0 + (1.0 - cc * cc).sqrt()))
}

pub fn entanglement_of_formation(rho: &DensityMatrix4) -> f64 {
    eof_from_concurrence(concurrence(rho))
}

/// Partial transpose over atom B.
pub fn partial_transpose(rho: &DensityMatrix4) -> Matrix4<Complex64> {
    // index = 2·a + b; swap b ↔ b'
    let m = rho.matrix();
    Matrix4::from_fn(|r, col| {
        let (a, b) = (r / 2, r % 2);
        let (a2, b2) = (col / 2, col % 2);
        m[(2 * a + b2, 2 * a2 + b)]
    })
}

/// Smallest eigenvalue of the partial transpose.
pub fn ppt_min_eigenvalue(rho: &DensityMatrix4) -> f64 {
    let (values, _) = linalg::hermitian_eigen(&to_dynamic(&partial_transpose(rho)));
    values.into_iter().fold(f64::INFINITY, f64::min)
}

/// Positive partial transpose, which for two qubits is equivalent to
/// separability.
pub fn is_separable_ppt(rho: &DensityMatrix4) -> bool {
    ppt_min_eigenvalue(rho) >= -Tolerances::default().psd
}
