//! Canonical families of initial states and random test states.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{check_domain, Error, Result};
use crate::linalg::{self, c};
use crate::state::{DensityMatrix2, DensityMatrix4, Tolerances};

/// Entries of a state whose only nonzero elements lie on the diagonal and
/// the anti-diagonal of the f₁…f₄ matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateParams {
    pub r11: f64,
    pub r22: f64,
    pub r33: f64,
    pub r44: f64,
    pub r14: Complex64,
    pub r23: Complex64,
}

impl XStateParams {
    /// Reads the X pattern of any state; off-pattern entries are ignored.
    pub fn of(rho: &DensityMatrix4) -> Self {
        Self {
            r11: rho.get(0, 0).re,
            r22: rho.get(1, 1).re,
            r33: rho.get(2, 2).re,
            r44: rho.get(3, 3).re,
            r14: rho.get(0, 3),
            r23: rho.get(1, 2),
        }
    }
}

/// Builds the X-class state with the given entries.
pub fn x_state(p: &XStateParams) -> Result<DensityMatrix4> {
    let tol = Tolerances::default();
    // positivity of the {f1,f4} and {f2,f3} blocks, reported as the smaller
    // block eigenvalue
    for (a, b, off) in [(p.r11, p.r44, p.r14), (p.r22, p.r33, p.r23)] {
        let gap = (a * b - off.norm_sqr()).min(0.0);
        if a < -tol.psd || b < -tol.psd || gap < -tol.psd {
            let half = 0.5 * (a + b);
            let min_eigenvalue = half - (0.25 * (a - b).powi(2) + off.norm_sqr()).sqrt();
            return Err(Error::NotPositive { min_eigenvalue });
        }
    }
    let z = c(0.0);
    #[rustfmt::skip]
    let m = Matrix4::new(
        c(p.r11), z,              z,        p.r14,
        z,        c(p.r22),       p.r23,    z,
        z,        p.r23.conj(),   c(p.r33), z,
        p.r14.conj(), z,          z,        c(p.r44),
    );
    DensityMatrix4::new(m)
}

/// Indices (i, j) outside the X pattern.
fn off_x_pattern(i: usize, j: usize) -> bool {
    !(i == j || i + j == 3)
}

/// Largest modulus among entries outside the X pattern.
pub fn x_class_residual(rho: &DensityMatrix4) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..4 {
        for j in 0..4 {
            if off_x_pattern(i, j) {
                worst = worst.max(rho.get(i, j).norm());
            }
        }
    }
    worst
}

pub fn is_x_class(rho: &DensityMatrix4, tol: f64) -> bool {
    x_class_residual(rho) <= tol
}

/// Representative pure state with concurrence `c`: the projector on
/// (√(1+√(1−c²)), 0, 0, √(1−√(1−c²)))/√2.
pub fn pure_phi(c_val: f64) -> Result<DensityMatrix4> {
    check_domain("c", c_val, "[0, 1]", (0.0..=1.0).contains(&c_val))?;
    let s = (1.0 - c_val * c_val).sqrt();
    x_state(&XStateParams {
        r11: 0.5 * (1.0 + s),
        r22: 0.0,
        r33: 0.0,
        r44: 0.5 * (1.0 - s),
        r14: c(0.5 * c_val),
        r23: c(0.0),
    })
}

/// Sign of the maximally entangled component (f₄ ± f₁)/√2 of a Werner state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WernerSign {
    Plus,
    Minus,
}

/// (1−p)·𝕀/4 + p·|Ψ±⟩⟨Ψ±| with Ψ± = (f₄ ± f₁)/√2.
pub fn werner(p: f64, sign: WernerSign) -> Result<DensityMatrix4> {
    check_domain("p", p, "[0, 1]", (0.0..=1.0).contains(&p))?;
    let s = match sign {
        WernerSign::Plus => 1.0,
        WernerSign::Minus => -1.0,
    };
    x_state(&XStateParams {
        r11: 0.25 * (1.0 + p),
        r22: 0.25 * (1.0 - p),
        r33: 0.25 * (1.0 - p),
        r44: 0.25 * (1.0 + p),
        r14: c(0.5 * s * p),
        r23: c(0.0),
    })
}

/// The diagonal weight g(c) of the maximally entangled mixed states.
pub fn mems_weight(c_val: f64) -> f64 {
    if c_val < 2.0 / 3.0 {
        1.0 / 3.0
    } else {
        0.5 * c_val
    }
}

/// Maximally entangled mixed state with concurrence `c`.
pub fn mems(c_val: f64) -> Result<DensityMatrix4> {
    check_domain("c", c_val, "[0, 1]", (0.0..=1.0).contains(&c_val))?;
    let g = mems_weight(c_val);
    x_state(&XStateParams {
        r11: g,
        r22: 1.0 - 2.0 * g,
        r33: 0.0,
        r44: g,
        r14: c(0.5 * c_val),
        r23: c(0.0),
    })
}

fn ginibre<R: rand::Rng>(rng: &mut R, n: usize) -> nalgebra::DMatrix<Complex64> {
    nalgebra::DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im)
    })
}

/// Full-rank random state G·G†/tr(G·G†) with G a 4×4 matrix of standard
/// complex Gaussians. Deterministic per seed.
pub fn random_density(seed: u64) -> DensityMatrix4 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = ginibre(&mut rng, 4);
    let w = &g * g.adjoint();
    let w = &w / w.trace();
    let m = Matrix4::from_fn(|i, j| w[(i, j)]);
    // symmetrize away round-off in the product
    DensityMatrix4::from_trusted((m + m.adjoint()) * c(0.5))
}

/// Random X-class state: independent Ginibre 2×2 blocks on {f₁,f₄} and
/// {f₂,f₃}, jointly normalized.
pub fn random_x_state(seed: u64) -> DensityMatrix4 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x05ee_d0fc_1a55);
    let outer = ginibre(&mut rng, 2);
    let inner = ginibre(&mut rng, 2);
    let outer = &outer * outer.adjoint();
    let inner = &inner * inner.adjoint();
    let tr = (outer.trace() + inner.trace()).re;
    let z = c(0.0);
    #[rustfmt::skip]
    let m = Matrix4::new(
        outer[(0, 0)], z, z, outer[(0, 1)],
        z, inner[(0, 0)], inner[(0, 1)], z,
        z, inner[(1, 0)], inner[(1, 1)], z,
        outer[(1, 0)], z, z, outer[(1, 1)],
    ) / c(tr);
    DensityMatrix4::from_trusted((m + m.adjoint()) * c(0.5))
}

/// Random pure single-atom state.
pub fn random_pure_qubit(seed: u64) -> DensityMatrix2 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9b17);
    let v = ginibre(&mut rng, 2).column(0).normalize();
    DensityMatrix2::from_trusted(Matrix2::from_fn(|i, j| v[i] * v[j].conj()))
}

/// Random 2×2 unitary from the QR (Gram–Schmidt) of a Ginibre matrix.
pub fn random_unitary2(seed: u64) -> Matrix2<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa11ce);
    let g = ginibre(&mut rng, 2);
    let first = g.column(0).normalize();
    let second = g.column(1) - &first * first.dotc(&g.column(1));
    let second = second.normalize();
    Matrix2::new(first[0], second[0], first[1], second[1])
}

/// U_A ⊗ U_B with both factors drawn by [`random_unitary2`].
pub fn random_local_unitary(seed: u64) -> Matrix4<Complex64> {
    linalg::kron2(
        &random_unitary2(seed),
        &random_unitary2(seed.wrapping_mul(6364136223846793005).wrapping_add(1)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::linear_entropy;
    use approx::assert_abs_diff_eq;

    #[test]
    fn pure_phi_endpoints() {
        let bell = pure_phi(1.0).unwrap();
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            assert_abs_diff_eq!(bell.get(i, j).re, 0.5, epsilon = 1e-15);
        }
        let product = pure_phi(0.0).unwrap();
        assert_abs_diff_eq!(product.get(0, 0).re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(product.get(3, 3).re, 0.0, epsilon = 1e-15);
        assert!(pure_phi(1.2).is_err());
        assert!(pure_phi(-0.1).is_err());
    }

    #[test]
    fn pure_phi_at_six_tenths() {
        let rho = pure_phi(0.6).unwrap();
        assert_abs_diff_eq!(rho.get(0, 0).re, 0.9, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.get(3, 3).re, 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.get(0, 3).re, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(linear_entropy(&rho), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn werner_endpoints() {
        let mixed = werner(0.0, WernerSign::Plus).unwrap();
        assert!(mixed.max_abs_diff(&DensityMatrix4::maximally_mixed()) < 1e-15);
        let bell = werner(1.0, WernerSign::Minus).unwrap();
        assert_abs_diff_eq!(linear_entropy(&bell), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(bell.get(0, 3).re, -0.5, epsilon = 1e-15);
        assert!(werner(1.5, WernerSign::Plus).is_err());
    }

    #[test]
    fn mems_values() {
        let bell = mems(1.0).unwrap();
        assert_abs_diff_eq!(bell.get(0, 0).re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(bell.get(1, 1).re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(bell.get(0, 3).re, 0.5, epsilon = 1e-15);

        assert_abs_diff_eq!(mems_weight(2.0 / 3.0), 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(mems_weight(2.0 / 3.0 - 1e-12), 1.0 / 3.0, epsilon = 1e-15);

        let m = mems(0.4).unwrap();
        for (i, want) in [(0, 1.0 / 3.0), (1, 1.0 / 3.0), (2, 0.0), (3, 1.0 / 3.0)] {
            assert_abs_diff_eq!(m.get(i, i).re, want, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(m.get(0, 3).re, 0.2, epsilon = 1e-15);
    }

    #[test]
    fn x_state_symmetric_projector() {
        let s = x_state(&XStateParams {
            r11: 0.0,
            r22: 0.5,
            r33: 0.5,
            r44: 0.0,
            r14: c(0.0),
            r23: c(0.5),
        })
        .unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let want = DensityMatrix4::pure([c(0.0), c(h), c(h), c(0.0)]).unwrap();
        assert!(s.max_abs_diff(&want) < 1e-15);
        assert!(is_x_class(&s, 1e-12));
    }

    #[test]
    fn x_state_rejects_block_violation() {
        let bad = XStateParams {
            r11: 0.1,
            r22: 0.4,
            r33: 0.4,
            r44: 0.1,
            r14: c(0.3),
            r23: c(0.0),
        };
        assert!(matches!(x_state(&bad), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn x_state_reproduces_werner() {
        let w = werner(0.7, WernerSign::Plus).unwrap();
        let rebuilt = x_state(&XStateParams::of(&w)).unwrap();
        assert!(w.max_abs_diff(&rebuilt) < 1e-15);
        assert!(is_x_class(&w, 1e-12));
    }

    #[test]
    fn off_pattern_entry_breaks_x_class() {
        let mut m = *DensityMatrix4::maximally_mixed().matrix();
        m[(0, 1)] = c(0.1);
        m[(1, 0)] = c(0.1);
        let rho = DensityMatrix4::new(m).unwrap();
        assert!(!is_x_class(&rho, 1e-12));
    }

    #[test]
    fn random_states_are_valid_and_distinct() {
        let a = random_density(1);
        let b = random_density(2);
        assert_abs_diff_eq!(a.matrix().trace().re, 1.0, epsilon = 1e-12);
        assert!(a.eigenvalues()[3] > 0.0);
        assert!(a.max_abs_diff(&b) > 1e-6);
        assert_eq!(random_density(1), a);
        assert!(is_x_class(&random_x_state(3), 0.0));
    }

    #[test]
    fn random_unitaries_are_unitary() {
        for seed in 0..20 {
            let u = random_local_unitary(seed);
            assert!((u * u.adjoint() - Matrix4::identity()).norm() < 1e-13);
        }
    }
}
