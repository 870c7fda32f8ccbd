//! `disent`: build two-atom states, evolve them, report their measures and
//! characteristic times, sweep the standard families and cross-check every
//! closed form against the numeric solvers.
//!
//! Exit codes: 0 success, 1 a validation check failed, 2 bad usage or input.

mod validate;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use disent_core::dynamics::{evolve_numeric, evolve_x_closed, EvolutionConfig, Method};
use disent_core::entanglement::{concurrence, concurrence_x, entanglement_of_formation};
use disent_core::factories::{is_x_class, mems, pure_phi, werner, x_state, WernerSign, XStateParams};
use disent_core::io::{state_from_json, state_to_json};
use disent_core::nonlocality::{m_value, n_value};
use disent_core::state::linear_entropy;
use disent_core::sweep::{sweep, Family, CSV_HEADER};
use disent_core::timescales::{solve_timescales, SolverConfig, TimescaleResult};
use disent_core::DensityMatrix4;

#[derive(Parser)]
#[command(
    name = "disent",
    version,
    about = "Entanglement and Bell nonlocality of two atoms in infinite-temperature baths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a state as canonical-basis JSON.
    State {
        #[command(subcommand)]
        family: StateFamily,
    },
    /// Evolve a state read from --input (or stdin) to time t.
    Evolve {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, value_enum, default_value_t = EvolveMethod::Auto)]
        method: EvolveMethod,
    },
    /// Report concurrence, EoF, m, n and linear entropy of a state.
    Metrics {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Solve t_d and t_loc of a state numerically (times in units of 1/Γ).
    Times {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// CSV of t_d and t_loc across one family of initial states.
    Sweep {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        figure: u8,
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
    },
    /// Cross-check closed forms against the numeric solvers.
    Validate {
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
        /// Optional state to check in addition to the built-in families.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum StateFamily {
    /// Pure superposition of |11⟩ and |00⟩ with concurrence c.
    Pure {
        #[arg(long)]
        c: f64,
    },
    Werner {
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum, default_value_t = Sign::Plus)]
        sign: Sign,
    },
    /// Maximally entangled mixed state with concurrence c.
    Mems {
        #[arg(long)]
        c: f64,
    },
    /// General X-class state from its six parameters.
    X {
        #[arg(long)]
        r11: f64,
        #[arg(long)]
        r22: f64,
        #[arg(long)]
        r33: f64,
        #[arg(long)]
        r44: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        r14_re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        r14_im: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        r23_re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        r23_im: f64,
    },
    /// Validate and re-emit a state file.
    File {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvolveMethod {
    Auto,
    Rk4,
    Expm,
    Closed,
}

/// Failure modes, mapped onto exit codes.
pub enum Failure {
    Usage(String),
    Check,
}

impl From<disent_core::Error> for Failure {
    fn from(e: disent_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn read_state(input: Option<&Path>) -> Result<DensityMatrix4, Failure> {
    let text = match input {
        Some(path) => {
            fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
            s
        }
    };
    Ok(state_from_json(&text)?)
}

fn emit(text: &str) {
    let mut out = io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = writeln!(out, "{text}");
}

fn cmd_state(family: StateFamily) -> CmdResult {
    let rho = match family {
        StateFamily::Pure { c } => pure_phi(c)?,
        StateFamily::Werner { p, sign } => werner(
            p,
            match sign {
                Sign::Plus => WernerSign::Plus,
                Sign::Minus => WernerSign::Minus,
            },
        )?,
        StateFamily::Mems { c } => mems(c)?,
        StateFamily::X {
            r11,
            r22,
            r33,
            r44,
            r14_re,
            r14_im,
            r23_re,
            r23_im,
        } => x_state(&XStateParams {
            r11,
            r22,
            r33,
            r44,
            r14: Complex64::new(r14_re, r14_im),
            r23: Complex64::new(r23_re, r23_im),
        })?,
        StateFamily::File { input } => read_state(Some(&input))?,
    };
    emit(&state_to_json(&rho));
    Ok(())
}

fn cmd_evolve(input: Option<&Path>, gamma: f64, t: f64, method: EvolveMethod) -> CmdResult {
    let rho = read_state(input)?;
    let evolved = match method {
        EvolveMethod::Closed => evolve_x_closed(&rho, t, gamma)?,
        EvolveMethod::Auto if is_x_class(&rho, 1e-12) => evolve_x_closed(&rho, t, gamma)?,
        EvolveMethod::Auto | EvolveMethod::Expm => evolve_numeric(&rho, t, gamma, &EvolutionConfig::expm())?,
        EvolveMethod::Rk4 => evolve_numeric(
            &rho,
            t,
            gamma,
            &EvolutionConfig {
                method: Method::Rk4,
                ..EvolutionConfig::default()
            },
        )?,
    };
    emit(&state_to_json(&evolved));
    Ok(())
}

fn cmd_metrics(input: Option<&Path>) -> CmdResult {
    let rho = read_state(input)?;
    let x_class = is_x_class(&rho, 1e-12);
    let (c1, c2) = match concurrence_x(&rho) {
        Ok(b) if x_class => (Some(b.c1), Some(b.c2)),
        _ => (None, None),
    };
    let report = json!({
        "concurrence": concurrence(&rho),
        "c1": c1,
        "c2": c2,
        "eof": entanglement_of_formation(&rho),
        "m": m_value(&rho),
        "n": n_value(&rho),
        "linear_entropy": linear_entropy(&rho),
        "x_class": x_class,
    });
    emit(&report.to_string());
    Ok(())
}

fn time_json(r: &TimescaleResult) -> serde_json::Value {
    json!({
        "gamma_t": r.gamma_t(),
        "bracket_gamma_t": r.bracket.map(|(lo, hi)| [lo * r.gamma, hi * r.gamma]),
        "residual": r.residual,
        "revival_gamma_t": r.revival.map(|t| t * r.gamma),
    })
}

fn cmd_times(input: Option<&Path>, gamma: f64, tol: f64) -> CmdResult {
    let rho = read_state(input)?;
    let cfg = SolverConfig {
        tol,
        ..SolverConfig::default()
    };
    let t = solve_timescales(&rho, gamma, &cfg)?;
    let report = json!({
        "gamma": gamma,
        "t_d": time_json(&t.disentanglement),
        "t_loc": time_json(&t.locality),
    });
    emit(&report.to_string());
    Ok(())
}

fn cmd_sweep(figure: u8, points: usize, gamma: f64) -> CmdResult {
    let family =
        Family::from_figure(figure).ok_or_else(|| Failure::Usage(format!("unknown figure {figure}")))?;
    let rows = sweep(family, points, gamma, &SolverConfig::default())?;
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    for r in &rows {
        out.push('\n');
        out.push_str(&r.to_csv());
    }
    emit(&out);
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::State { family } => cmd_state(family),
        Command::Evolve {
            input,
            gamma,
            t,
            method,
        } => cmd_evolve(input.as_deref(), gamma, t, method),
        Command::Metrics { input } => cmd_metrics(input.as_deref()),
        Command::Times { input, gamma, tol } => cmd_times(input.as_deref(), gamma, tol),
        Command::Sweep {
            figure,
            points,
            gamma,
        } => cmd_sweep(figure, points, gamma),
        Command::Validate {
            tol,
            seed,
            cases,
            input,
        } => validate::cmd_validate(tol, seed, cases, input.as_deref()),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on its own usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
