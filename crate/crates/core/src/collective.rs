//! The collective basis |e⟩ = f₁, |s⟩ = (f₂+f₃)/√2, |a⟩ = (f₂−f₃)/√2,
//! |g⟩ = f₄ and matrix elements of two-atom operators in it.

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::linalg::c;
use crate::state::DensityMatrix4;

/// Collective basis vectors, in the storage order used by
/// [`CollectiveComponents`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Collective {
    E = 0,
    S = 1,
    A = 2,
    G = 3,
}

/// Columns are |e⟩, |s⟩, |a⟩, |g⟩ expanded in f₁…f₄.
pub fn collective_basis() -> Matrix4<Complex64> {
    let h = c(std::f64::consts::FRAC_1_SQRT_2);
    let z = c(0.0);
    let o = c(1.0);
    #[rustfmt::skip]
    let u = Matrix4::new(
        o, z,  z, z,
        z, h,  h, z,
        z, h, -h, z,
        z, z,  z, o,
    );
    u
}

/// Matrix elements ρ_xy = ⟨x|ρ|y⟩ for x, y ∈ {e, s, a, g}.
///
/// Also used for time derivatives of such elements, which need not
/// satisfy the population constraints of a state.
#[derive(Debug, Clone, PartialEq)]
pub struct CollectiveComponents(Matrix4<Complex64>);

impl CollectiveComponents {
    pub fn from_matrix(m: Matrix4<Complex64>) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    pub fn get(&self, row: Collective, col: Collective) -> Complex64 {
        self.0[(row as usize, col as usize)]
    }

    pub fn set(&mut self, row: Collective, col: Collective, value: Complex64) {
        self.0[(row as usize, col as usize)] = value;
    }

    pub fn ee(&self) -> f64 {
        self.get(Collective::E, Collective::E).re
    }

    pub fn ss(&self) -> f64 {
        self.get(Collective::S, Collective::S).re
    }

    pub fn aa(&self) -> f64 {
        self.get(Collective::A, Collective::A).re
    }

    pub fn gg(&self) -> f64 {
        self.get(Collective::G, Collective::G).re
    }

    pub fn eg(&self) -> Complex64 {
        self.get(Collective::E, Collective::G)
    }

    pub fn as_(&self) -> Complex64 {
        self.get(Collective::A, Collective::S)
    }

    pub fn sa(&self) -> Complex64 {
        self.get(Collective::S, Collective::A)
    }

    pub fn population_sum(&self) -> f64 {
        self.ee() + self.ss() + self.aa() + self.gg()
    }

    /// The same operator expressed back in the product basis f₁…f₄.
    pub fn to_canonical(&self) -> Matrix4<Complex64> {
        let u = collective_basis();
        u * self.0 * u.adjoint()
    }
}

pub fn canonical_to_collective(rho: &DensityMatrix4) -> CollectiveComponents {
    matrix_to_collective(rho.matrix())
}

pub fn matrix_to_collective(m: &Matrix4<Complex64>) -> CollectiveComponents {
    let u = collective_basis();
    CollectiveComponents(u.adjoint() * m * u)
}
