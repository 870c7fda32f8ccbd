//! Parameter sweeps of t_d and t_loc over the three standard families of
//! initial states, each time computed both in closed form and numerically.

use rayon::prelude::*;

use crate::error::{check_domain, Result};
use crate::factories::{mems, pure_phi, werner, WernerSign};
use crate::state::DensityMatrix4;
use crate::timescales::{
    disentanglement_time_numeric, locality_time_numeric, t_d_mems, t_d_pure, t_d_werner, t_loc_mems,
    t_loc_pure, t_loc_werner, SolverConfig, TimescaleResult,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Pure states P_Φ(c), parameter c.
    Pure,
    /// Werner states, parameter p.
    Werner,
    /// Maximally entangled mixed states, parameter c.
    Mems,
}

impl Family {
    pub fn from_figure(figure: u8) -> Option<Self> {
        match figure {
            1 => Some(Self::Pure),
            2 => Some(Self::Werner),
            3 => Some(Self::Mems),
            _ => None,
        }
    }

    pub fn state(self, parameter: f64) -> Result<DensityMatrix4> {
        match self {
            Self::Pure => pure_phi(parameter),
            Self::Werner => werner(parameter, WernerSign::Plus),
            Self::Mems => mems(parameter),
        }
    }
}

/// One sweep point. Times are Γt; `None` marks an undefined quantity (the
/// initial state is separable or satisfies every Bell inequality).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub parameter: f64,
    pub t_d_closed: Option<f64>,
    pub t_d_numeric: Option<f64>,
    pub t_loc_closed: Option<f64>,
    pub t_loc_numeric: Option<f64>,
    pub flags: Vec<String>,
}

fn positive(r: TimescaleResult) -> Option<f64> {
    let v = r.gamma_t();
    (v > 0.0).then_some(v)
}

fn row(family: Family, parameter: f64, gamma: f64, cfg: &SolverConfig) -> Result<SweepRow> {
    let rho = family.state(parameter)?;
    let mut flags = Vec::new();
    let (t_d_closed, t_loc_closed) = match family {
        Family::Pure => {
            let loc = t_loc_pure(parameter, gamma)?;
            if !loc.branch_valid {
                flags.push(format!(
                    "t_loc_single_branch={:.9}",
                    loc.longitudinal_branch.gamma_t()
                ));
            }
            (positive(t_d_pure(parameter, gamma)?), positive(loc.exact))
        }
        Family::Werner => (
            positive(t_d_werner(parameter, gamma)?),
            positive(t_loc_werner(parameter, gamma)?),
        ),
        Family::Mems => (
            positive(t_d_mems(parameter, gamma)?),
            positive(t_loc_mems(parameter, gamma)?),
        ),
    };
    let d = disentanglement_time_numeric(&rho, gamma, cfg)?;
    if let Some(t) = d.revival {
        flags.push(format!("revival_at={:.9}", t * gamma));
    }
    let loc = locality_time_numeric(&rho, gamma, cfg)?;
    Ok(SweepRow {
        parameter,
        t_d_closed,
        t_d_numeric: positive(d),
        t_loc_closed,
        t_loc_numeric: positive(loc),
        flags,
    })
}

/// `points` equally spaced parameters on [0, 1], computed in parallel and
/// returned in parameter order.
pub fn sweep(family: Family, points: usize, gamma: f64, cfg: &SolverConfig) -> Result<Vec<SweepRow>> {
    check_domain("points", points as f64, "[2, inf)", points >= 2)?;
    (0..points)
        .into_par_iter()
        .map(|k| row(family, k as f64 / (points - 1) as f64, gamma, cfg))
        .collect()
}

pub const CSV_HEADER: &str = "param,t_d_closed,t_d_numeric,t_loc_closed,t_loc_numeric,flags";

fn cell(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.9}")).unwrap_or_default()
}

impl SweepRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{:.9},{},{},{},{},{}",
            self.parameter,
            cell(self.t_d_closed),
            cell(self.t_d_numeric),
            cell(self.t_loc_closed),
            cell(self.t_loc_numeric),
            self.flags.join(";")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_are_ordered_and_consistent() {
        let rows = sweep(Family::Werner, 6, 1.0, &SolverConfig::default()).unwrap();
        let params: Vec<f64> = rows.iter().map(|r| r.parameter).collect();
        assert_eq!(params, vec![0.0, 0.2, 0.4, 0.6, 0.8, 1.0]);
        // p = 0.2 separable, 0.6 entangled but local
        assert_eq!(rows[1].t_d_closed, None);
        assert_eq!(rows[1].t_d_numeric, None);
        assert!(rows[3].t_d_numeric.is_some());
        assert_eq!(rows[3].t_loc_numeric, None);
        let p08 = &rows[4];
        assert!((p08.t_d_closed.unwrap() - 0.346_573_590_279_972_7).abs() < 1e-12);
        assert!((p08.t_loc_closed.unwrap() - 0.061_715_019_482_881_45).abs() < 1e-12);
    }

    #[test]
    fn csv_leaves_undefined_cells_empty() {
        let r = SweepRow {
            parameter: 0.5,
            t_d_closed: Some(0.25),
            t_d_numeric: None,
            t_loc_closed: None,
            t_loc_numeric: None,
            flags: vec![],
        };
        assert_eq!(r.to_csv(), "0.500000000,0.250000000,,,,");
    }

    #[test]
    fn rejects_single_point() {
        assert!(sweep(Family::Pure, 1, 1.0, &SolverConfig::default()).is_err());
    }
}
