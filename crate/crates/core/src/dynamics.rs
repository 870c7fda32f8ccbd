//! Dissipative dynamics of two atoms in independent infinite-temperature
//! baths.
//!
//! The generator is
//!
//! ```text
//! L ρ = Γ (σ₊ᴬ ρ σ₋ᴬ + σ₋ᴬ ρ σ₊ᴬ + σ₊ᴮ ρ σ₋ᴮ + σ₋ᴮ ρ σ₊ᴮ − 2ρ)
//! ```
//!
//! Every closed form depends on time only through Γt, so propagation runs
//! at unit rate on the scaled time τ = Γt.
//!
//! Two propagators are provided and checked against each other: fixed-step
//! RK4 on the operator form of `L`, and the matrix exponential of the 16×16
//! superoperator.

use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector, Matrix2, Matrix4};
use num_complex::Complex64;

use crate::collective::{canonical_to_collective, Collective, CollectiveComponents};
use crate::error::{check_domain, Error, Result};
use crate::factories::x_class_residual;
use crate::linalg::{self, c, sigma_minus, sigma_plus, ComplexMatrix};
use crate::state::{DensityMatrix2, DensityMatrix4};

fn commutator(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> Matrix2<Complex64> {
    a * b - b * a
}

/// Right-hand side of the single-atom thermal master equation
///
/// ½Γ↑{[σ₊,ρσ₋] + [σ₊ρ,σ₋]} + ½Γ↓{[σ₋,ρσ₊] + [σ₋ρ,σ₊]}.
///
/// With `gamma_up == gamma_down == Γ` this is Γ(σ₊ρσ₋ + σ₋ρσ₊ − ρ).
pub fn single_qubit_rhs(rho: &DensityMatrix2, gamma_up: f64, gamma_down: f64) -> Matrix2<Complex64> {
    single_qubit_rhs_raw(rho.matrix(), gamma_up, gamma_down)
}

fn single_qubit_rhs_raw(rho: &Matrix2<Complex64>, gamma_up: f64, gamma_down: f64) -> Matrix2<Complex64> {
    let (sp, sm) = (sigma_plus(), sigma_minus());
    let up = commutator(&sp, &(rho * sm)) + commutator(&(sp * rho), &sm);
    let down = commutator(&sm, &(rho * sp)) + commutator(&(sm * rho), &sp);
    up * c(0.5 * gamma_up) + down * c(0.5 * gamma_down)
}

/// Absorption and emission rates (Γ↑, Γ↓) = (γ₀ n, γ₀ (1 + n)) for a bath
/// with mean occupation n = 1/(e^{βω₀} − 1). `beta_omega` is βω₀ > 0.
pub fn thermal_rates(gamma0: f64, beta_omega: f64) -> Result<(f64, f64)> {
    check_domain("beta*omega0", beta_omega, "(0, inf)", beta_omega > 0.0)?;
    let n = 1.0 / beta_omega.exp_m1();
    Ok((gamma0 * n, gamma0 * (1.0 + n)))
}

/// Integrates the single-atom master equation with classical RK4.
pub fn evolve_single_qubit(
    rho: &DensityMatrix2,
    t: f64,
    gamma_up: f64,
    gamma_down: f64,
    steps: usize,
) -> Result<DensityMatrix2> {
    check_domain("t", t, "[0, inf)", t >= 0.0)?;
    let steps = steps.max(1);
    let h = t / steps as f64;
    let f = |m: &Matrix2<Complex64>| single_qubit_rhs_raw(m, gamma_up, gamma_down);
    let mut m = *rho.matrix();
    for _ in 0..steps {
        m = rk4_step(&m, h, f);
    }
    DensityMatrix2::new(m)
}

fn rk4_step<M, F>(y: &M, h: f64, f: F) -> M
where
    M: Clone + std::ops::Add<Output = M> + std::ops::Mul<Complex64, Output = M>,
    F: Fn(&M) -> M,
{
    let k1 = f(y);
    let k2 = f(&(y.clone() + k1.clone() * c(0.5 * h)));
    let k3 = f(&(y.clone() + k2.clone() * c(0.5 * h)));
    let k4 = f(&(y.clone() + k3.clone() * c(h)));
    y.clone() + (k1 + k2 * c(2.0) + k3 * c(2.0) + k4) * c(h / 6.0)
}

/// The four jump operators σ₊ᴬ, σ₋ᴬ, σ₊ᴮ, σ₋ᴮ.
fn jump_operators() -> &'static [Matrix4<Complex64>; 4] {
    static OPS: OnceLock<[Matrix4<Complex64>; 4]> = OnceLock::new();
    OPS.get_or_init(|| {
        let id = Matrix2::identity();
        [
            linalg::kron2(&sigma_plus(), &id),
            linalg::kron2(&sigma_minus(), &id),
            linalg::kron2(&id, &sigma_plus()),
            linalg::kron2(&id, &sigma_minus()),
        ]
    })
}

/// Unit-rate generator applied in operator form.
#[cfg(test)]
fn generator_unit_operator(rho: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    let [pa, ma, pb, mb] = jump_operators();
    pa * rho * ma + ma * rho * pa + pb * rho * mb + mb * rho * pb - rho * c(2.0)
}

/// Unit-rate generator by index. With i = 2a + b, the two A-jump terms
/// together copy ρ from the A-flipped indices (i ^ 2, j ^ 2) onto blocks
/// diagonal in a, and likewise for B with i ^ 1.
fn generator_unit(rho: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    Matrix4::from_fn(|i, j| {
        let mut v = rho[(i, j)] * -2.0;
        if (i ^ j) & 2 == 0 {
            v += rho[(i ^ 2, j ^ 2)];
        }
        if (i ^ j) & 1 == 0 {
            v += rho[(i ^ 1, j ^ 1)];
        }
        v
    })
}

fn kron_dyn(a: &Matrix4<Complex64>, b: &Matrix4<Complex64>) -> ComplexMatrix {
    DMatrix::from_fn(16, 16, |r, col| a[(r / 4, col / 4)] * b[(r % 4, col % 4)])
}

fn unit_superoperator() -> &'static ComplexMatrix {
    static UNIT: OnceLock<ComplexMatrix> = OnceLock::new();
    UNIT.get_or_init(|| {
        // Row-major vectorization, vec(ρ)[4i + j] = ρ_ij, gives
        // vec(X ρ Y) = (X ⊗ Yᵀ) vec(ρ).
        let [pa, ma, pb, mb] = jump_operators();
        let sandwich = |x: &Matrix4<Complex64>, y: &Matrix4<Complex64>| kron_dyn(x, &y.transpose());
        sandwich(pa, ma) + sandwich(ma, pa) + sandwich(pb, mb) + sandwich(mb, pb)
            - ComplexMatrix::identity(16, 16) * c(2.0)
    })
}

pub fn vectorize(m: &Matrix4<Complex64>) -> DVector<Complex64> {
    DVector::from_fn(16, |k, _| m[(k / 4, k % 4)])
}

pub fn unvectorize(v: &DVector<Complex64>) -> Matrix4<Complex64> {
    Matrix4::from_fn(|i, j| v[4 * i + j])
}

/// Superoperator of the two-atom generator at rate Γ, acting on row-major
/// vectorized 4×4 matrices.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    gamma: f64,
    matrix: ComplexMatrix,
}

pub fn build_liouvillian(gamma: f64) -> Result<Liouvillian> {
    check_domain("gamma", gamma, "(0, inf)", gamma > 0.0)?;
    Ok(Liouvillian {
        gamma,
        matrix: unit_superoperator() * c(gamma),
    })
}

impl Liouvillian {
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// L(X) for any 4×4 matrix X.
    pub fn apply(&self, x: &Matrix4<Complex64>) -> Matrix4<Complex64> {
        unvectorize(&(&self.matrix * vectorize(x)))
    }

    /// Eigenvalues of the 16×16 matrix from a complex Schur decomposition.
    pub fn spectrum(&self) -> Vec<Complex64> {
        let schur = self.matrix.clone().schur();
        let (_, t) = schur.unpack();
        (0..16).map(|k| t[(k, k)]).collect()
    }

    /// e^{tL} X without any validation of the input or the output. `t` may
    /// be negative.
    pub fn propagate_raw(&self, x: &Matrix4<Complex64>, t: f64) -> Matrix4<Complex64> {
        let p = linalg::expm(&(&self.matrix * c(t)));
        unvectorize(&(p * vectorize(x)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Rk4,
    Expm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionConfig {
    pub method: Method,
    pub steps_per_unit_gamma_t: usize,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        Self {
            method: Method::Rk4,
            steps_per_unit_gamma_t: 1000,
        }
    }
}

impl EvolutionConfig {
    pub fn expm() -> Self {
        Self {
            method: Method::Expm,
            ..Self::default()
        }
    }
}

/// e^{tL} ρ₀ by the configured method. The result is re-validated; an
/// integration error beyond the default tolerances surfaces as the
/// corresponding validation error.
pub fn evolve_numeric(
    rho0: &DensityMatrix4,
    t: f64,
    gamma: f64,
    cfg: &EvolutionConfig,
) -> Result<DensityMatrix4> {
    check_domain("t", t, "[0, inf)", t >= 0.0)?;
    check_domain("gamma", gamma, "(0, inf)", gamma > 0.0)?;
    check_domain(
        "steps_per_unit_gamma_t",
        cfg.steps_per_unit_gamma_t as f64,
        "[1, inf)",
        cfg.steps_per_unit_gamma_t >= 1,
    )?;
    let tau = gamma * t;
    if tau == 0.0 {
        return Ok(rho0.clone());
    }
    let m = match cfg.method {
        Method::Rk4 => {
            let steps = ((tau * cfg.steps_per_unit_gamma_t as f64).ceil() as usize).max(1);
            let h = tau / steps as f64;
            let mut m = *rho0.matrix();
            for _ in 0..steps {
                m = rk4_step(&m, h, generator_unit);
            }
            m
        }
        Method::Expm => {
            let p = linalg::expm(&(unit_superoperator() * c(tau)));
            unvectorize(&(p * vectorize(rho0.matrix())))
        }
    };
    DensityMatrix4::new(m)
}

/// Time derivatives of all sixteen collective matrix elements at rate Γ.
pub fn collective_rhs(comp: &CollectiveComponents, gamma: f64) -> CollectiveComponents {
    use Collective::{A, E, G, S};
    let r = |x, y| comp.get(x, y);
    let two = c(2.0);
    let mut d = CollectiveComponents::from_matrix(Matrix4::zeros());

    let excited_pair = r(E, E) + r(G, G);
    let single_pair = r(S, S) + r(A, A);
    d.set(A, A, -two * r(A, A) + excited_pair);
    d.set(S, S, -two * r(S, S) + excited_pair);
    d.set(G, G, -two * r(G, G) + single_pair);
    d.set(E, E, -two * r(E, E) + single_pair);

    let upper = [
        (E, G, -two * r(E, G)),
        (A, S, -two * r(A, S)),
        (A, E, -two * r(A, E) - r(G, A)),
        (A, G, -two * r(A, G) - r(E, A)),
        (S, E, -two * r(S, E) + r(G, S)),
        (S, G, -two * r(S, G) + r(E, S)),
    ];
    for (x, y, v) in upper {
        d.set(x, y, v);
    }
    // mirror images; conjugates of the above when ρ is Hermitian
    let mirrored = [
        (G, E, -two * r(G, E)),
        (S, A, -two * r(S, A)),
        (E, A, -two * r(E, A) - r(A, G)),
        (G, A, -two * r(G, A) - r(A, E)),
        (E, S, -two * r(E, S) + r(S, G)),
        (G, S, -two * r(G, S) + r(S, E)),
    ];
    for (x, y, v) in mirrored {
        d.set(x, y, v);
    }
    CollectiveComponents::from_matrix(d.matrix() * c(gamma))
}

/// Closed-form evolution of an X-class state.
///
/// Populations relax as ¼ ± ½e^{−2Γt}(difference) + ½e^{−4Γt}(pair sum − ½);
/// the coherences ρ_eg and ρ_as decay as e^{−2Γt}.
pub fn evolve_x_closed(rho0: &DensityMatrix4, t: f64, gamma: f64) -> Result<DensityMatrix4> {
    use Collective::{A, E, G, S};
    check_domain("t", t, "[0, inf)", t >= 0.0)?;
    check_domain("gamma", gamma, "(0, inf)", gamma > 0.0)?;
    let residual = x_class_residual(rho0);
    if residual > crate::state::Tolerances::default().psd {
        return Err(Error::NotXClass { residual });
    }
    if t == 0.0 {
        return Ok(rho0.clone());
    }
    let comp = canonical_to_collective(rho0);
    let e2 = (-2.0 * gamma * t).exp();
    let e4 = e2 * e2;
    let (aa, ss, ee, gg) = (comp.aa(), comp.ss(), comp.ee(), comp.gg());

    let mut out = CollectiveComponents::from_matrix(Matrix4::zeros());
    out.set(A, A, c(0.25 + 0.5 * e2 * (aa - ss) + 0.5 * e4 * (aa + ss - 0.5)));
    out.set(S, S, c(0.25 - 0.5 * e2 * (aa - ss) + 0.5 * e4 * (aa + ss - 0.5)));
    out.set(E, E, c(0.25 + 0.5 * e2 * (ee - gg) + 0.5 * e4 * (ee + gg - 0.5)));
    out.set(G, G, c(0.25 - 0.5 * e2 * (ee - gg) + 0.5 * e4 * (ee + gg - 0.5)));
    out.set(E, G, comp.eg() * c(e2));
    out.set(G, E, comp.eg().conj() * c(e2));
    out.set(A, S, comp.as_() * c(e2));
    out.set(S, A, comp.as_().conj() * c(e2));
    DensityMatrix4::new(out.to_canonical())
}
