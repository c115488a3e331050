use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use crate::clifford::{CMatrix, Multivector};
use crate::error::{Error, Result};
use crate::matrix::{frobenius_norm, spectral_norm};
use crate::polyspace::{HyperPolynomial, OperatorTuple};

/// Relative commutator residual above which a tuple is treated as
/// non-commuting.
pub const COMMUTING_TOL: f64 = 1e-12;

// Weights of the generic combination sum c_j T_j whose eigenvectors
// diagonalize a commuting tuple.
fn generic_weight(j: usize) -> f64 {
    const PRIMES: [f64; 8] = [2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0];
    PRIMES.get(j).map_or_else(|| 1.0 + (j as f64 * 0.618_033_988_749_895).fract(), |p| p.sqrt())
}

/// `f(T)` for a commuting tuple by joint diagonalization: on a joint
/// eigenvector with eigenvalues `t`, `V_alpha(T)` acts as `t^alpha`.
pub fn commuting_oracle(f: &HyperPolynomial, tuple: &OperatorTuple) -> Result<Multivector<CMatrix>> {
    let residual = tuple.commutation_residual();
    if residual > COMMUTING_TOL {
        return Err(Error::NonCommuting { residual });
    }
    let padded = tuple.padded(f.n())?;
    let d = tuple.d();
    let mut s = CMatrix::zeros(d, d);
    for (j, t) in tuple.matrices().iter().enumerate() {
        s += t * Complex64::new(generic_weight(j), 0.0);
    }
    let u = SymmetricEigen::new(s).eigenvectors;
    let mut eigenvalues = Vec::with_capacity(padded.m());
    for t in padded.matrices() {
        let diag = u.adjoint() * t * &u;
        let mut off = diag.clone();
        off.fill_diagonal(Complex64::new(0.0, 0.0));
        if frobenius_norm(&off) > 1e-9 * spectral_norm(t).max(1.0) {
            return Err(Error::Precondition("joint diagonalization failed for a commuting tuple".into()));
        }
        eigenvalues.push((0..d).map(|k| diag[(k, k)].re).collect::<Vec<f64>>());
    }
    let mut out = Multivector::zero(f.n());
    for (alpha, c) in f.terms() {
        let weights: Vec<f64> = (0..d)
            .map(|k| alpha.monomial(&eigenvalues.iter().map(|ev| ev[k]).collect::<Vec<f64>>()))
            .collect();
        let diag = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            d,
            weights.iter().map(|&w| Complex64::new(w, 0.0)),
        ));
        let v = &u * diag * u.adjoint();
        out = out.try_add(&c.tensor_matrix(&v))?;
    }
    Ok(out)
}
