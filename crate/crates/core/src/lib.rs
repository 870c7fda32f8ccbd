//! Two two-level atoms in independent infinite-temperature baths.
//!
//! The crate evolves two-atom density matrices under the dissipative
//! generator `L ρ = Γ Σ (σ±ρσ∓) − 2Γρ`, measures their entanglement
//! (concurrence, entanglement of formation, partial transpose) and Bell
//! nonlocality (Horodecki m), and solves for the time at which each is lost.
//!
//! Matrices use the product basis f₁ = |11⟩, f₂ = |10⟩, f₃ = |01⟩,
//! f₄ = |00⟩ with |1⟩ = (1, 0)ᵀ the excited state.

pub mod collective;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod factories;
pub mod io;
pub mod linalg;
pub mod nonlocality;
pub mod state;
pub mod sweep;
pub mod timescales;

pub use error::{Error, Result};
pub use state::{DensityMatrix2, DensityMatrix4, Tolerances};
