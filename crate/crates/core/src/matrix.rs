//! Small dense complex-matrix helpers.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::clifford::CMatrix;

pub fn identity(d: usize) -> CMatrix {
    DMatrix::identity(d, d)
}

pub fn zeros(d: usize) -> CMatrix {
    DMatrix::zeros(d, d)
}

/// Largest singular value.
pub fn spectral_norm(a: &CMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.singular_values().iter().copied().fold(0.0, f64::max)
}

pub fn frobenius_norm(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entry modulus.
pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `||A - A*||_F`.
pub fn hermitian_residual(a: &CMatrix) -> f64 {
    frobenius_norm(&(a - a.adjoint()))
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn real_scalar(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Random Hermitian matrix with standard-normal entries (GUE-like).
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let g = DMatrix::from_fn(d, d, |_, _| {
        Complex64::new(standard_normal(rng), standard_normal(rng))
    });
    (&g + g.adjoint()) * real_scalar(0.5)
}

/// Random complex matrix with standard-normal entries.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    DMatrix::from_fn(d, d, |_, _| Complex64::new(standard_normal(rng), standard_normal(rng)))
}

/// Random unitary from the QR factorization of a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    random_complex(rng, d).qr().q()
}

/// Row-major `[re, im]` nesting used by the JSON file formats.
pub fn to_nested(a: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..a.nrows())
        .map(|i| (0..a.ncols()).map(|j| [a[(i, j)].re, a[(i, j)].im]).collect())
        .collect()
}

/// Inverse of [`to_nested`]; returns `None` for ragged or non-square input.
pub fn from_nested(rows: &[Vec<[f64; 2]>]) -> Option<CMatrix> {
    let d = rows.len();
    if rows.iter().any(|r| r.len() != d) {
        return None;
    }
    Some(DMatrix::from_fn(d, d, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1])))
}
