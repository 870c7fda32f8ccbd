//! Small dense complex linear algebra: Hermitian spectra, PSD square roots,
//! Kronecker products, Pauli matrices and the matrix exponential.

use nalgebra::{DMatrix, Matrix2, Matrix4};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Square complex matrix of arbitrary dimension, row/column indexed.
pub type ComplexMatrix = DMatrix<Complex64>;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Pauli matrix σ₁, σ₂ or σ₃ (`n` in 1..=3) in the basis (|1⟩, |0⟩).
pub fn pauli(n: usize) -> Matrix2<Complex64> {
    match n {
        1 => Matrix2::new(ZERO, ONE, ONE, ZERO),
        2 => Matrix2::new(ZERO, -I, I, ZERO),
        3 => Matrix2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("pauli index must be 1, 2 or 3, got {n}"),
    }
}

/// σ₊ = (σ₁ + iσ₂)/2, mapping the ground state |0⟩ to the excited state |1⟩.
pub fn sigma_plus() -> Matrix2<Complex64> {
    (pauli(1) + pauli(2) * I) * c(0.5)
}

/// σ₋ = (σ₁ − iσ₂)/2.
pub fn sigma_minus() -> Matrix2<Complex64> {
    (pauli(1) - pauli(2) * I) * c(0.5)
}

pub fn kron2(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> Matrix4<Complex64> {
    Matrix4::from_fn(|r, col| a[(r / 2, col / 2)] * b[(r % 2, col % 2)])
}

/// Largest entrywise modulus of `m − m†`.
pub fn hermitian_residual(m: &ComplexMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Real eigenvalues of a Hermitian matrix, sorted descending.
///
/// Fails with [`Error::NotHermitian`] when `m` deviates from `m†` by more
/// than `1e-9` in any entry.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::Dimension {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    let residual = hermitian_residual(m);
    if residual > crate::state::Tolerances::default().hermitian {
        return Err(Error::NotHermitian { residual });
    }
    let (mut values, _) = hermitian_eigen(m);
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Eigen-decomposition of the Hermitian part of `m`. Eigenvalues are in the
/// solver's order; column `k` of the returned matrix belongs to value `k`.
pub(crate) fn hermitian_eigen(m: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let h = (m + m.adjoint()) * c(0.5);
    let eig = h.symmetric_eigen();
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues below zero (round-off) are clamped to zero.
pub fn psd_sqrt(m: &ComplexMatrix) -> ComplexMatrix {
    let (values, vectors) = hermitian_eigen(m);
    let roots = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        values.len(),
        values.iter().map(|&v| c(v.max(0.0).sqrt())),
    ));
    &vectors * roots * vectors.adjoint()
}

fn one_norm(m: &ComplexMatrix) -> f64 {
    m.column_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

// Padé(13) coefficients b_0..b_13 (Higham 2005).
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

// Largest 1-norm for which Padé(13) is accurate to unit round-off.
const THETA13: f64 = 5.371920351148152;

/// Matrix exponential by scaling and squaring with a degree-13 Padé
/// approximant.
pub fn expm(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.nrows();
    assert!(a.is_square(), "expm requires a square matrix");
    let norm = one_norm(a);
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let a = a * c(0.5_f64.powi(squarings));

    let eye = ComplexMatrix::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let b = |k: usize| c(PADE13[k]);

    let u_inner = &a6 * b(13) + &a4 * b(11) + &a2 * b(9);
    let u = &a * (&a6 * u_inner + &a6 * b(7) + &a4 * b(5) + &a2 * b(3) + &eye * b(1));
    let v_inner = &a6 * b(12) + &a4 * b(10) + &a2 * b(8);
    let v = &a6 * v_inner + &a6 * b(6) + &a4 * b(4) + &a2 * b(2) + &eye * b(0);

    let numer = &v + &u;
    let denom = &v - &u;
    let mut result = denom
        .lu()
        .solve(&numer)
        .expect("Padé denominator is nonsingular after scaling");
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn eigenvalues_of_diagonal_are_sorted_descending() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0), c(2.0), c(3.0), c(4.0)]));
        let ev = hermitian_eigenvalues(&m).unwrap();
        for (got, want) in ev.iter().zip([4.0, 3.0, 2.0, 1.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-14);
        }
    }

    #[test]
    fn sigma_x_spectrum() {
        let s1 = pauli(1);
        let m = DMatrix::from_fn(2, 2, |i, j| s1[(i, j)]);
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert_abs_diff_eq!(ev[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ev[1], -1.0, epsilon = 1e-14);
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[ZERO, ONE, ZERO, ZERO]);
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn ladder_operators() {
        // σ₊|0⟩ = |1⟩ with |1⟩ = (1,0), |0⟩ = (0,1)
        let sp = sigma_plus();
        assert_eq!(sp[(0, 1)], ONE);
        assert_eq!(sp[(1, 0)], ZERO);
        assert_eq!(sigma_minus(), sp.adjoint());
    }

    #[test]
    fn expm_matches_closed_forms() {
        // exp(iθσ₁) = cos θ + i sin θ σ₁
        let theta = 0.7;
        let s1 = pauli(1);
        let a = DMatrix::from_fn(2, 2, |i, j| s1[(i, j)] * I * c(theta));
        let e = expm(&a);
        assert_abs_diff_eq!(e[(0, 0)].re, theta.cos(), epsilon = 1e-14);
        assert_abs_diff_eq!(e[(0, 1)].im, theta.sin(), epsilon = 1e-14);

        // large norm triggers squaring: exp(diag(-20, 3))
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(-20.0), c(3.0)]));
        let e = expm(&d);
        assert!((e[(0, 0)].re / (-20.0f64).exp() - 1.0).abs() < 1e-12);
        assert!((e[(1, 1)].re / 3.0f64.exp() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expm_of_nilpotent() {
        let n = DMatrix::from_row_slice(2, 2, &[ZERO, c(2.5), ZERO, ZERO]);
        let e = expm(&n);
        assert_abs_diff_eq!(e[(0, 1)].re, 2.5, epsilon = 1e-14);
        assert_abs_diff_eq!(e[(0, 0)].re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let m = DMatrix::from_row_slice(2, 2, &[c(2.0), c(1.0), c(1.0), c(2.0)]);
        let r = psd_sqrt(&m);
        assert!(max_abs_diff(&(&r * &r), &m) < 1e-13);
    }
}
