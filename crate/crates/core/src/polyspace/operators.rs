use crate::clifford::{CMatrix, Multivector};
use crate::error::{Error, Result};
use crate::matrix::{frobenius_norm, hermitian_residual, identity, spectral_norm};

/// Relative Hermiticity tolerance `||T - T*|| <= tol * ||T||`.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// An `m`-tuple of self-adjoint `d x d` matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorTuple {
    d: usize,
    mats: Vec<CMatrix>,
}

impl OperatorTuple {
    pub fn new(mats: Vec<CMatrix>) -> Result<Self> {
        Self::with_tolerance(mats, HERMITIAN_TOL)
    }

    pub fn with_tolerance(mats: Vec<CMatrix>, tol: f64) -> Result<Self> {
        let first = mats.first().ok_or(Error::Empty("operator tuple"))?;
        let d = first.nrows();
        for (index, t) in mats.iter().enumerate() {
            if t.nrows() != d || t.ncols() != d {
                return Err(Error::DimensionMismatch { expected: d, found: t.nrows().max(t.ncols()) });
            }
            let residual = hermitian_residual(t);
            if residual > tol * frobenius_norm(t) {
                return Err(Error::NotHermitian { index, residual });
            }
        }
        Ok(OperatorTuple { d, mats })
    }

    /// Number of operators.
    pub fn m(&self) -> usize {
        self.mats.len()
    }

    /// Matrix dimension.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.mats
    }

    /// `T_j` for 1-based `j`.
    pub fn get(&self, j: usize) -> Option<&CMatrix> {
        self.mats.get(j.checked_sub(1)?)
    }

    /// Extends to `n >= m` operators by appending identities.
    pub fn padded(&self, n: usize) -> Result<Self> {
        if n < self.m() {
            return Err(Error::DimensionMismatch { expected: self.m(), found: n });
        }
        let mut mats = self.mats.clone();
        mats.resize(n, identity(self.d));
        Ok(OperatorTuple { d: self.d, mats })
    }

    /// `|T| = max_j ||T_j||_2`.
    pub fn norm_bound(&self) -> f64 {
        self.mats.iter().map(spectral_norm).fold(0.0, f64::max)
    }

    pub fn identity(&self) -> CMatrix {
        identity(self.d)
    }

    /// Whether all pairs commute, with the worst relative commutator norm.
    pub fn commutation_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.mats.iter().enumerate() {
            for b in &self.mats[i + 1..] {
                let scale = (frobenius_norm(a) * frobenius_norm(b)).max(f64::MIN_POSITIVE);
                worst = worst.max(frobenius_norm(&crate::matrix::commutator(a, b)) / scale);
            }
        }
        worst
    }
}

/// A point `(x_0, x_1, ..., x_n)` of `R^{n+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointR(Vec<f64>);

impl PointR {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Empty("point coordinates"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain(format!("non-finite coordinate in {coords:?}")));
        }
        Ok(PointR(coords))
    }

    /// Number of generators; the point has `n + 1` coordinates.
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        PointR(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: other.n() });
        }
        Ok(PointR(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// `x_0 e_0 + sum x_j e_j`.
    pub fn paravector(&self) -> Multivector<f64> {
        Multivector::paravector(&self.0).expect("non-empty")
    }
}
