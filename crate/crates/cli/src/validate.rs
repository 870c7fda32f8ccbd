//! `disent validate`: every closed form against the numeric solvers, plus
//! randomized identity checks. Time deltas are compared against `--tol`
//! (in Γt); entrywise and measure identities against a fixed 1e-10.

use std::path::Path;

use serde_json::json;

use disent_core::dynamics::{evolve_numeric, evolve_x_closed, EvolutionConfig};
use disent_core::entanglement::{concurrence, concurrence_x, is_separable_ppt};
use disent_core::factories::{
    is_x_class, mems, pure_phi, random_density, random_x_state, werner, WernerSign,
};
use disent_core::nonlocality::{m_pure_evolved, m_value};
use disent_core::timescales::{
    decoherence_rate, disentanglement_time_numeric, locality_time_numeric, mems_low_branch, solve_timescales,
    t_d_mems, t_d_pure, t_d_werner, t_loc_mems, t_loc_pure, t_loc_werner, SolverConfig, TimescaleResult,
};
use disent_core::DensityMatrix4;

use crate::{emit, read_state, Failure};

const IDENTITY_TOL: f64 = 1e-10;

struct Check {
    name: String,
    delta: f64,
    tol: f64,
}

impl Check {
    fn passed(&self) -> bool {
        self.delta <= self.tol
    }
}

struct Finding {
    name: String,
    delta: f64,
    note: &'static str,
}

#[derive(Default)]
struct Report {
    checks: Vec<Check>,
    findings: Vec<Finding>,
}

impl Report {
    fn check(&mut self, name: impl Into<String>, delta: f64, tol: f64) {
        // NaN must fail
        let delta = if delta.is_nan() { f64::INFINITY } else { delta };
        self.checks.push(Check {
            name: name.into(),
            delta,
            tol,
        });
    }
}

type Closed = fn(f64, f64) -> disent_core::Result<TimescaleResult>;

fn family_times(
    report: &mut Report,
    name: &str,
    params: &[f64],
    state: impl Fn(f64) -> disent_core::Result<DensityMatrix4>,
    closed: Closed,
    locality: bool,
    tol: f64,
) -> Result<(), Failure> {
    let cfg = SolverConfig::default();
    let mut worst: f64 = 0.0;
    for &x in params {
        let rho = state(x)?;
        let numeric = if locality {
            locality_time_numeric(&rho, 1.0, &cfg)?
        } else {
            disentanglement_time_numeric(&rho, 1.0, &cfg)?
        };
        worst = worst.max((numeric.gamma_t() - closed(x, 1.0)?.gamma_t()).abs());
    }
    report.check(name, worst, tol);
    Ok(())
}

fn t_loc_pure_exact(c: f64, gamma: f64) -> disent_core::Result<TimescaleResult> {
    t_loc_pure(c, gamma).map(|f| f.exact)
}

fn closed_forms(report: &mut Report, tol: f64) -> Result<(), Failure> {
    let grid = [0.1, 0.3, 0.5, 0.7, 0.9, 1.0];
    family_times(report, "t_d pure", &grid, pure_phi, t_d_pure, false, tol)?;
    family_times(report, "t_loc pure", &grid, pure_phi, t_loc_pure_exact, true, tol)?;
    let werner_plus = |p| werner(p, WernerSign::Plus);
    family_times(
        report,
        "t_d Werner",
        &[0.4, 0.6, 0.8, 1.0],
        werner_plus,
        t_d_werner,
        false,
        tol,
    )?;
    family_times(
        report,
        "t_loc Werner",
        &[0.75, 0.85, 1.0],
        werner_plus,
        t_loc_werner,
        true,
        tol,
    )?;
    family_times(
        report,
        "t_d MEMS",
        &[0.05, 0.3, 0.5, 2.0 / 3.0, 0.8, 1.0],
        mems,
        t_d_mems,
        false,
        tol,
    )?;
    family_times(
        report,
        "t_loc MEMS",
        &[0.75, 0.9, 1.0],
        mems,
        t_loc_mems,
        true,
        tol,
    )?;

    let mut rate: f64 = 0.0;
    for c in [0.0, 0.3, 0.6, 1.0] {
        rate = rate.max((decoherence_rate(&pure_phi(c)?, 1.0)? / 2.0 - 1.0).abs());
    }
    report.check("decoherence rate 2Γ (relative)", rate, tol);

    let mut m_delta: f64 = 0.0;
    let expm = EvolutionConfig::expm();
    for c in [0.2, 0.6, 0.9, 1.0] {
        for gt in [0.0, 0.1, 0.3, 0.6] {
            let m = m_value(&evolve_numeric(&pure_phi(c)?, gt, 1.0, &expm)?);
            m_delta = m_delta.max((m - m_pure_evolved(c, gt, 1.0)?.exact).abs());
        }
    }
    report.check("m along pure trajectories", m_delta, IDENTITY_TOL);

    // comparisons that document known discrepancies rather than gate the run
    let numeric = disentanglement_time_numeric(&mems(0.05)?, 1.0, &SolverConfig::default())?.gamma_t();
    report.findings.push(Finding {
        name: "MEMS t_d with 1/16 coefficient, c = 0.05".into(),
        delta: (mems_low_branch(0.05, 1.0 / 16.0) - numeric).abs(),
        note: "the 1/16 variant disagrees with the dynamics; 1/18 is used",
    });
    let numeric = locality_time_numeric(&pure_phi(1.0)?, 1.0, &SolverConfig::default())?.gamma_t();
    report.findings.push(Finding {
        name: "pure t_loc single-branch form, c = 1".into(),
        delta: (t_loc_pure(1.0, 1.0)?.longitudinal_branch.gamma_t() - numeric).abs(),
        note: "valid only for c <= 2^(-1/4); the exact form is used beyond",
    });
    Ok(())
}

fn random_checks(report: &mut Report, seed: u64, cases: usize) -> Result<(), Failure> {
    if cases == 0 {
        return Ok(());
    }
    let expm = EvolutionConfig::expm();
    let (mut propagator, mut measure): (f64, f64) = (0.0, 0.0);
    let mut disagreements = 0;
    let mut out_of_order = 0;
    for k in 0..cases as u64 {
        let s = seed.wrapping_add(k);
        let x = random_x_state(s);
        for gt in [0.3, 1.1, 2.5] {
            let a = evolve_x_closed(&x, gt, 1.0)?;
            let b = evolve_numeric(&x, gt, 1.0, &expm)?;
            propagator = propagator.max(a.max_abs_diff(&b));
        }
        measure = measure.max((concurrence_x(&x)?.value - concurrence(&x)).abs());

        let rho = random_density(s);
        if is_separable_ppt(&rho) != (concurrence(&rho) <= 1e-9) {
            disagreements += 1;
        }
        let t = solve_timescales(&rho, 1.0, &SolverConfig::default())?;
        if t.locality.time > 0.0 && t.locality.time >= t.disentanglement.time {
            out_of_order += 1;
        }
    }
    report.check(
        format!("random X propagator ({cases} states)"),
        propagator,
        IDENTITY_TOL,
    );
    report.check(
        format!("random X concurrence ({cases} states)"),
        measure,
        IDENTITY_TOL,
    );
    report.check(
        format!("PPT vs concurrence ({cases} states)"),
        disagreements as f64,
        0.0,
    );
    report.check(format!("t_loc < t_d ({cases} states)"), out_of_order as f64, 0.0);
    Ok(())
}

fn input_checks(report: &mut Report, rho: &DensityMatrix4) -> Result<(), Failure> {
    if is_x_class(rho, 1e-12) {
        let expm = EvolutionConfig::expm();
        let mut worst: f64 = 0.0;
        for gt in [0.1, 0.5, 1.0, 3.0] {
            worst =
                worst.max(evolve_x_closed(rho, gt, 1.0)?.max_abs_diff(&evolve_numeric(rho, gt, 1.0, &expm)?));
        }
        report.check("input: X propagator", worst, IDENTITY_TOL);
        report.check(
            "input: X concurrence",
            (concurrence_x(rho)?.value - concurrence(rho)).abs(),
            IDENTITY_TOL,
        );
    }
    let t = solve_timescales(rho, 1.0, &SolverConfig::default())?;
    let violated = t.locality.time > 0.0 && t.locality.time >= t.disentanglement.time;
    report.check("input: t_loc < t_d", f64::from(u8::from(violated)), 0.0);
    Ok(())
}

pub fn cmd_validate(tol: f64, seed: u64, cases: usize, input: Option<&Path>) -> Result<(), Failure> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Failure::Usage(format!("--tol must be positive, got {tol}")));
    }
    // read the input before running anything so a bad file fails fast
    let user_state = input.map(|p| read_state(Some(p))).transpose()?;

    let mut report = Report::default();
    closed_forms(&mut report, tol)?;
    random_checks(&mut report, seed, cases)?;
    if let Some(rho) = &user_state {
        input_checks(&mut report, rho)?;
    }

    let mut lines = Vec::new();
    for c in &report.checks {
        let status = if c.passed() { "ok  " } else { "FAIL" };
        lines.push(format!(
            "{status} {:<40} delta {:.3e}  tol {:.0e}",
            c.name, c.delta, c.tol
        ));
    }
    for f in &report.findings {
        lines.push(format!("info {:<40} delta {:.3e}  ({})", f.name, f.delta, f.note));
    }
    let passed = report.checks.iter().all(Check::passed);
    let summary = json!({
        "passed": passed,
        "seed": seed,
        "cases": cases,
        "checks": report.checks.iter().map(|c| json!({
            "name": c.name,
            "delta": c.delta,
            "tol": c.tol,
            "passed": c.passed(),
        })).collect::<Vec<_>>(),
        "findings": report.findings.iter().map(|f| json!({
            "name": f.name,
            "delta": f.delta,
            "note": f.note,
        })).collect::<Vec<_>>(),
    });
    lines.push(summary.to_string());
    emit(&lines.join("\n"));
    if passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}
