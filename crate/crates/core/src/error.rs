use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M - M†| = {residual:e}")]
    NotHermitian { residual: f64 },

    #[error("trace is not one: |tr M - 1| = {residual:e}")]
    TraceNotOne { residual: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("expected a {expected}x{expected} matrix, found dimension {found}")]
    Dimension { expected: usize, found: usize },

    #[error("{name} = {value} is outside its domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("state is not in the X class: largest off-pattern entry {residual:e}")]
    NotXClass { residual: f64 },

    #[error("negative radicand {radicand:e} in closed-form concurrence")]
    ComplexRoot { radicand: f64 },

    #[error("Pauli correlation has imaginary part {imag:e}")]
    NonRealCorrelation { imag: f64 },

    #[error("no sign change found up to Γt = {limit}")]
    NoBracket { limit: f64 },

    #[error("state is not pure: linear entropy {linear_entropy:e}")]
    NotPure { linear_entropy: f64 },

    #[error("invalid state JSON: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_domain(name: &'static str, value: f64, domain: &'static str, ok: bool) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { name, value, domain })
    }
}
