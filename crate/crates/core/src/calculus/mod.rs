//! The operator Cauchy kernel `E(y,T)` and the two routes to `f(T)`:
//! Taylor substitution `sum V_alpha(T) c_alpha` and boundary integration
//! `int E(y,T) dsigma f(y)` over a sphere enclosing the spectral ball.

mod kernel;
mod oracle;
mod routes;

use serde::{Deserialize, Serialize};

use crate::clifford::{mv_norm_bound, CMatrix, Multivector, Ring};
use crate::error::{Error, Result};
use crate::polyspace::OperatorTuple;

pub use kernel::{operator_cauchy_kernel, resolvent_probe, OperatorKernel, OperatorKernelExpansion, ProbeReport, ProbeRow, Verdict};
pub use oracle::{commuting_oracle, COMMUTING_TOL};
pub use routes::{calculus_integral, calculus_integral_direct, calculus_taylor, calculus_taylor_series, vanishing_check};

/// `|T| = max_j ||T_j||_2`; the kernel series converges for `|y| > |T|`.
pub fn spectral_radius_bound(tuple: &OperatorTuple) -> f64 {
    tuple.norm_bound()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorKernelConfig {
    /// Highest degree `J` kept in the kernel series.
    pub truncation: u32,
    pub radius: f64,
    pub quad_order: usize,
    pub tol: f64,
}

impl OperatorKernelConfig {
    /// Radius `2 |T|` (or 1 for the zero tuple) and quadrature order 32.
    pub fn for_tuple(tuple: &OperatorTuple, truncation: u32) -> Self {
        let bound = spectral_radius_bound(tuple);
        OperatorKernelConfig {
            truncation,
            radius: if bound > 0.0 { 2.0 * bound } else { 1.0 },
            quad_order: 32,
            tol: 1e-6,
        }
    }

    pub fn with_radius(self, radius: f64) -> Self {
        OperatorKernelConfig { radius, ..self }
    }

    pub fn validate(&self, tuple: &OperatorTuple) -> Result<()> {
        let bound = spectral_radius_bound(tuple);
        if !(self.radius.is_finite() && self.radius > bound) {
            return Err(Error::Precondition(format!(
                "radius below spectral bound: r = {} must exceed |T| = {bound}",
                self.radius
            )));
        }
        if self.quad_order < 2 {
            return Err(Error::Precondition(format!("quadrature order must be at least 2, got {}", self.quad_order)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Taylor,
    TaylorSeries,
    Integral,
    IntegralDirect,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalculusDiagnostics {
    pub route: Route,
    /// Norm bound of the degree-`j` contribution, indexed by `j`.
    pub term_norms: Vec<f64>,
    pub truncation: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quad_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    /// Zero for polynomial Taylor evaluation; the next-degree contribution
    /// for the integral; a tail bound for series.
    pub truncation_error: f64,
    pub warnings: Vec<String>,
}

/// `f(T)` as a matrix-coefficient multivector plus diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalculusResult {
    pub d: usize,
    #[serde(with = "crate::io::matrix_multivector")]
    pub value: Multivector<CMatrix>,
    pub diagnostics: CalculusDiagnostics,
}

impl CalculusResult {
    /// The plain matrix when every non-scalar blade vanishes.
    pub fn as_matrix(&self) -> Option<CMatrix> {
        match self.value.len() {
            0 => Some(CMatrix::zeros(self.d, self.d)),
            1 => self.value.get(crate::clifford::Blade::UNIT).cloned(),
            _ => None,
        }
    }

    /// `sum_blade ||coefficient||_2`.
    pub fn norm(&self) -> f64 {
        mv_norm_bound(&self.value)
    }

    pub fn distance(&self, other: &Multivector<CMatrix>) -> f64 {
        mv_norm_bound(&self.value.minus(other))
    }

    /// `||self - other|| / max(||other||, tiny)`.
    pub fn relative_distance(&self, other: &Multivector<CMatrix>) -> f64 {
        self.distance(other) / mv_norm_bound(other).max(f64::MIN_POSITIVE)
    }
}

/// Flags a kernel or Taylor expansion whose last terms fail to decay.
pub(crate) fn decay_warning(term_norms: &[f64]) -> Option<String> {
    let k = term_norms.len();
    if k < 3 {
        return None;
    }
    let (a, b) = (term_norms[k - 2], term_norms[k - 1]);
    if a > 0.0 && b >= a {
        Some(format!("series terms not decaying: degree {} norm {b:e} >= degree {} norm {a:e}", k - 1, k - 2))
    } else {
        None
    }
}

#[cfg(test)]
mod tests;
