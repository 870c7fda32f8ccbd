//! Characteristic times of the dissipative evolution.
//!
//! * the disentanglement time t_d, the smallest t with ρ(t) separable;
//! * the locality time t_loc, the first t with m(ρ(t)) ≤ 1;
//! * the decoherence rate λ = ½ dS_lin/dt at t = 0 for pure states.
//!
//! Each time is available from a numeric solver working on the evolved
//! state and, for the standard families, from a closed form. The numeric
//! solvers are the reference; closed forms are tested against them.

use crate::dynamics::{build_liouvillian, evolve_numeric, EvolutionConfig};
use crate::entanglement::{is_separable_ppt, wootters_margin};
use crate::error::{check_domain, Error, Result};
use crate::nonlocality::m_value;
use crate::state::{linear_entropy, linear_entropy_raw, DensityMatrix4};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    ClosedForm,
    Numeric,
}

/// A solved characteristic time.
#[derive(Debug, Clone, PartialEq)]
pub struct TimescaleResult {
    /// Time in the same units as 1/Γ.
    pub time: f64,
    pub gamma: f64,
    pub method: SolveMethod,
    /// Final bisection interval, numeric results only.
    pub bracket: Option<(f64, f64)>,
    /// Monitored quantity at `time`: concurrence for t_d, n = max(0, m−1)
    /// for t_loc. Zero for closed forms.
    pub residual: f64,
    /// First sampled time after t_d at which the state is entangled again.
    pub revival: Option<f64>,
}

impl TimescaleResult {
    fn closed(gamma_t: f64, gamma: f64) -> Self {
        Self {
            time: gamma_t / gamma,
            gamma,
            method: SolveMethod::ClosedForm,
            bracket: None,
            residual: 0.0,
            revival: None,
        }
    }

    /// Dimensionless Γt.
    pub fn gamma_t(&self) -> f64 {
        self.time * self.gamma
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Root tolerance in Γt.
    pub tol: f64,
    pub evolution: EvolutionConfig,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            evolution: EvolutionConfig::expm(),
        }
    }
}

const BRACKET_START: f64 = 1.0 / 16.0;
const BRACKET_LIMIT: f64 = 64.0;
const REVIVAL_SAMPLES: usize = 32;
const REVIVAL_WINDOW: f64 = 4.0;
// margins at or below this count as separable / Bell-local at t = 0
const ENTANGLED_EPS: f64 = 1e-9;

/// First τ ≥ 0 with `f(τ) ≤ 0`, assuming `f(0) > 0`. Doubles from
/// [`BRACKET_START`] until a non-positive value is found, then bisects.
/// Returns (lo, hi) with hi − lo ≤ tol and f(hi) ≤ 0.
fn first_nonpositive<F>(f: F, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut lo = 0.0;
    let mut hi = BRACKET_START;
    while f(hi)? > 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > BRACKET_LIMIT {
            return Err(Error::NoBracket { limit: BRACKET_LIMIT });
        }
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

fn check_solver_inputs(gamma: f64, tol: f64) -> Result<()> {
    check_domain("gamma", gamma, "(0, inf)", gamma > 0.0)?;
    check_domain("tol", tol, "(0, inf)", tol > 0.0)
}

fn numeric_result(lo: f64, hi: f64, gamma: f64, residual: f64) -> TimescaleResult {
    TimescaleResult {
        time: hi / gamma,
        gamma,
        method: SolveMethod::Numeric,
        bracket: Some((lo / gamma, hi / gamma)),
        residual,
        revival: None,
    }
}

fn zero_numeric(gamma: f64, residual: f64) -> TimescaleResult {
    TimescaleResult {
        bracket: Some((0.0, 0.0)),
        ..numeric_result(0.0, 0.0, gamma, residual)
    }
}

/// Smallest t with ρ(t) separable, from the concurrence of the numerically
/// evolved state. Afterwards samples the partial-transpose test on
/// (t_d, t_d + 4/Γ] and records any re-entanglement in `revival`.
pub fn disentanglement_time_numeric(
    rho0: &DensityMatrix4,
    gamma: f64,
    cfg: &SolverConfig,
) -> Result<TimescaleResult> {
    check_solver_inputs(gamma, cfg.tol)?;
    if wootters_margin(rho0) <= ENTANGLED_EPS {
        return Ok(zero_numeric(gamma, wootters_margin(rho0).max(0.0)));
    }
    let margin =
        |tau: f64| -> Result<f64> { Ok(wootters_margin(&evolve_numeric(rho0, tau, 1.0, &cfg.evolution)?)) };
    let (lo, hi) = first_nonpositive(margin, cfg.tol)?;
    let mut result = numeric_result(lo, hi, gamma, margin(hi)?.max(0.0));
    for k in 1..=REVIVAL_SAMPLES {
        let tau = hi + REVIVAL_WINDOW * k as f64 / REVIVAL_SAMPLES as f64;
        if !is_separable_ppt(&evolve_numeric(rho0, tau, 1.0, &cfg.evolution)?) {
            result.revival = Some(tau / gamma);
            break;
        }
    }
    Ok(result)
}

/// First t with m(ρ(t)) ≤ 1, using the full eigenvalue definition of m.
pub fn locality_time_numeric(
    rho0: &DensityMatrix4,
    gamma: f64,
    cfg: &SolverConfig,
) -> Result<TimescaleResult> {
    check_solver_inputs(gamma, cfg.tol)?;
    let excess0 = m_value(rho0) - 1.0;
    if excess0 <= ENTANGLED_EPS {
        return Ok(zero_numeric(gamma, 0.0));
    }
    let excess =
        |tau: f64| -> Result<f64> { Ok(m_value(&evolve_numeric(rho0, tau, 1.0, &cfg.evolution)?) - 1.0) };
    let (lo, hi) = first_nonpositive(excess, cfg.tol)?;
    Ok(numeric_result(lo, hi, gamma, excess(hi)?.max(0.0)))
}

fn check_gamma(gamma: f64) -> Result<()> {
    check_domain("gamma", gamma, "(0, inf)", gamma > 0.0)
}

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    check_domain(name, value, "[0, 1]", (0.0..=1.0).contains(&value))
}

/// t_d = arcsinh(C)/(2Γ) for states supported on the single-excitation
/// block {f₂, f₃} with initial concurrence `c0`.
pub fn t_d_single_excitation(c0: f64, gamma: f64) -> Result<TimescaleResult> {
    check_unit("c0", c0)?;
    check_gamma(gamma)?;
    Ok(TimescaleResult::closed(
        0.5 * (c0 + (1.0 + c0 * c0).sqrt()).ln(),
        gamma,
    ))
}

/// t_d = (1/2Γ) ln[c + √(1 + c²)] for the pure representative P_Φ(c).
pub fn t_d_pure(c: f64, gamma: f64) -> Result<TimescaleResult> {
    check_unit("c", c)?;
    check_gamma(gamma)?;
    Ok(TimescaleResult::closed(
        0.5 * (c + (1.0 + c * c).sqrt()).ln(),
        gamma,
    ))
}

/// t_d = (1/2Γ) ln[p + √(p(1 + p))] for Werner states with p > 1/3, and 0
/// for the separable ones.
pub fn t_d_werner(p: f64, gamma: f64) -> Result<TimescaleResult> {
    check_unit("p", p)?;
    check_gamma(gamma)?;
    if p <= 1.0 / 3.0 {
        return Ok(TimescaleResult::closed(0.0, gamma));
    }
    Ok(TimescaleResult::closed(
        0.5 * (p + (p * (1.0 + p)).sqrt()).ln(),
        gamma,
    ))
}

/// Coefficient of the square root in the c ≤ 2/3 branch of the MEMS
/// disentanglement time that is consistent with the dynamics.
pub const MEMS_LOW_BRANCH_COEFFICIENT: f64 = 1.0 / 18.0;

/// Γt_d = ¼ ln[5/9 + 2c² + k·√((36c² + 10)² − 36)] with a caller-chosen k.
/// With k = 1/18 this is the exact t_d of mems(c) for c ≤ 2/3.
pub fn mems_low_branch(c: f64, coefficient: f64) -> f64 {
    let root = ((36.0 * c * c + 10.0).powi(2) - 36.0).sqrt();
    0.25 * (5.0 / 9.0 + 2.0 * c * c + coefficient * root).ln()
}

/// Γt_d = ¼ ln[1 − 2c + 4c² + 2√2·c·√(1 − 2c + 2c²)], exact for c ≥ 2/3.
pub fn mems_high_branch(c: f64) -> f64 {
    let inner = 1.0 - 2.0 * c + 2.0 * c * c;
    0.25 * (1.0 - 2.0 * c + 4.0 * c * c + 2.0 * std::f64::consts::SQRT_2 * c * inner.sqrt()).ln()
}

/// Disentanglement time of the maximally entangled mixed state mems(c).
pub fn t_d_mems(c: f64, gamma: f64) -> Result<TimescaleResult> {
    check_unit("c", c)?;
    check_gamma(gamma)?;
    let gamma_t = if c == 0.0 {
        0.0
    } else if c <= 2.0 / 3.0 {
        mems_low_branch(c, MEMS_LOW_BRANCH_COEFFICIENT)
    } else {
        mems_high_branch(c)
    };
    Ok(TimescaleResult::closed(gamma_t, gamma))
}

/// Both closed forms for the locality time of P_Φ(c).
#[derive(Debug, Clone, PartialEq)]
pub struct PureLocalityTimes {
    /// (1/4Γ) ln[(c² + √(4 + c⁴))/2], the root of e^{−8Γt} + c²e^{−4Γt} = 1.
    pub longitudinal_branch: TimescaleResult,
    /// The root of the exact m(t) = c²e^{−4Γt} + max(c²e^{−4Γt}, e^{−8Γt}).
    pub exact: TimescaleResult,
    /// True when c ≤ 2^{−1/4}, where both coincide.
    pub branch_valid: bool,
}

/// c at which the two largest eigenvalues of TᵀT swap at the locality time.
pub fn pure_locality_switch() -> f64 {
    0.5_f64.powf(0.25)
}

pub fn t_loc_pure(c: f64, gamma: f64) -> Result<PureLocalityTimes> {
    check_unit("c", c)?;
    check_gamma(gamma)?;
    let c2 = c * c;
    let branch = 0.25 * (0.5 * (c2 + (4.0 + c2 * c2).sqrt())).ln();
    let branch_valid = c <= pure_locality_switch();
    let exact = if branch_valid {
        branch
    } else {
        0.25 * (2.0 * c2).ln()
    };
    Ok(PureLocalityTimes {
        longitudinal_branch: TimescaleResult::closed(branch, gamma),
        exact: TimescaleResult::closed(exact, gamma),
        branch_valid,
    })
}

/// t_loc = (1/4Γ) ln 2p² for p > 1/√2, else 0.
pub fn t_loc_werner(p: f64, gamma: f64) -> Result<TimescaleResult> {
    check_unit("p", p)?;
    check_gamma(gamma)?;
    let gamma_t = if p <= std::f64::consts::FRAC_1_SQRT_2 {
        0.0
    } else {
        0.25 * (2.0 * p * p).ln()
    };
    Ok(TimescaleResult::closed(gamma_t, gamma))
}

/// t_loc = (1/4Γ) ln 2c² for c > 1/√2, else 0.
pub fn t_loc_mems(c: f64, gamma: f64) -> Result<TimescaleResult> {
    check_unit("c", c)?;
    check_gamma(gamma)?;
    let gamma_t = if c <= std::f64::consts::FRAC_1_SQRT_2 {
        0.0
    } else {
        0.25 * (2.0 * c * c).ln()
    };
    Ok(TimescaleResult::closed(gamma_t, gamma))
}

const PURITY_LIMIT: f64 = 1e-9;
const DIFF_STEP: f64 = 1e-5;

/// λ(P) = ½ dS_lin(P(t))/dt at t = 0 for a pure state P, by a central
/// difference with step 10⁻⁵/Γ and one Richardson extrapolation.
pub fn decoherence_rate(pure: &DensityMatrix4, gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    let s0 = linear_entropy(pure);
    if s0 > PURITY_LIMIT {
        return Err(Error::NotPure { linear_entropy: s0 });
    }
    // unit rate; the generator is linear in Γ
    let l = build_liouvillian(1.0)?;
    let s = |tau: f64| linear_entropy_raw(&l.propagate_raw(pure.matrix(), tau));
    let central = |h: f64| (s(h) - s(-h)) / (2.0 * h);
    let slope = (4.0 * central(0.5 * DIFF_STEP) - central(DIFF_STEP)) / 3.0;
    Ok(0.5 * slope * gamma)
}

/// Entanglement and Bell-violation times for one initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct Timescales {
    pub disentanglement: TimescaleResult,
    pub locality: TimescaleResult,
}

pub fn solve_timescales(rho0: &DensityMatrix4, gamma: f64, cfg: &SolverConfig) -> Result<Timescales> {
    Ok(Timescales {
        disentanglement: disentanglement_time_numeric(rho0, gamma, cfg)?,
        locality: locality_time_numeric(rho0, gamma, cfg)?,
    })
}
