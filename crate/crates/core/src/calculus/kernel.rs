use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{decay_warning, spectral_radius_bound, OperatorKernelConfig};
use crate::clifford::{mv_norm_bound, CMatrix, Multivector, Ring};
use crate::error::{Error, Result};
use crate::kernels::{FamilyEvaluator, KernelFamily};
use crate::polyspace::{v_operator_lattice, MultiIndex, OperatorTuple, PointR};

/// `E(y,T)` truncated at degree `J`, with per-degree norm bounds.
#[derive(Debug, Clone)]
pub struct OperatorKernel {
    pub value: Multivector<CMatrix>,
    pub term_norms: Vec<f64>,
    pub partial_norms: Vec<f64>,
    pub warnings: Vec<String>,
}

/// Precomputed `V_alpha(T)` and `W_alpha` for repeated kernel evaluation.
#[derive(Debug, Clone)]
pub struct OperatorKernelExpansion {
    n: usize,
    truncation: u32,
    bound: f64,
    lattice: BTreeMap<MultiIndex, CMatrix>,
    evaluator: FamilyEvaluator,
}

impl OperatorKernelExpansion {
    /// Ambient dimension `n >= m`; missing operators are identities.
    pub fn new(tuple: &OperatorTuple, n: usize, truncation: u32) -> Result<Self> {
        let lattice = v_operator_lattice(tuple, n, truncation)?;
        let evaluator = KernelFamily::new(n, truncation).evaluator();
        Ok(OperatorKernelExpansion { n, truncation, bound: spectral_radius_bound(tuple), lattice, evaluator })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Per-degree terms `sum_{|alpha| = j} V_alpha(T) (x) W_alpha(y)`.
    pub fn degree_terms(&self, y: &PointR) -> Result<Vec<Multivector<CMatrix>>> {
        if y.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: y.n() });
        }
        let width = self.evaluator.width();
        let mut w = vec![0.0; self.evaluator.indices().len() * width];
        self.evaluator.eval_into(y.coords(), &mut w)?;
        let mut terms = vec![Multivector::zero(self.n); self.truncation as usize + 1];
        for (k, alpha) in self.evaluator.indices().iter().enumerate() {
            let v = &self.lattice[alpha];
            let term = &mut terms[alpha.degree() as usize];
            for (b, &c) in w[k * width..(k + 1) * width].iter().enumerate() {
                if c != 0.0 {
                    term.accumulate(crate::clifford::Blade::from_bits(b as u32), v * num_complex::Complex64::new(c, 0.0));
                }
            }
        }
        Ok(terms)
    }

    pub fn eval(&self, y: &PointR) -> Result<OperatorKernel> {
        let terms = self.degree_terms(y)?;
        let mut value = Multivector::zero(self.n);
        let mut term_norms = Vec::with_capacity(terms.len());
        let mut partial_norms = Vec::with_capacity(terms.len());
        for t in &terms {
            value = value.plus(t);
            term_norms.push(mv_norm_bound(t));
            partial_norms.push(mv_norm_bound(&value));
        }
        let mut warnings = Vec::new();
        if y.norm() <= self.bound {
            warnings.push(format!(
                "|y| = {} does not exceed the spectral bound {}; convergence is not guaranteed",
                y.norm(),
                self.bound
            ));
        }
        warnings.extend(decay_warning(&term_norms));
        Ok(OperatorKernel { value, term_norms, partial_norms, warnings })
    }
}

/// `E(y,T) = sum_{|alpha| <= J} V_alpha(T) (x) W_alpha(y)` with `n = y.n()`.
pub fn operator_cauchy_kernel(y: &PointR, tuple: &OperatorTuple, cfg: &OperatorKernelConfig) -> Result<OperatorKernel> {
    if y.norm() == 0.0 {
        return Err(Error::Singularity);
    }
    OperatorKernelExpansion::new(tuple, y.n(), cfg.truncation)?.eval(y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Converging,
    Diverging,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Converging => "converging",
            Verdict::Diverging => "diverging",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub degree: u32,
    pub term_norm: f64,
    pub partial_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub radius: f64,
    pub rows: Vec<ProbeRow>,
    /// Geometric mean of the successive term ratios over the upper half of
    /// the degrees.
    pub tail_ratio: f64,
    pub verdict: Verdict,
}

impl ProbeReport {
    pub fn from_norms(radius: f64, term_norms: &[f64], partial_norms: &[f64]) -> Self {
        let rows = term_norms
            .iter()
            .zip(partial_norms)
            .enumerate()
            .map(|(j, (&t, &p))| ProbeRow { degree: j as u32, term_norm: t, partial_norm: p })
            .collect();
        let (tail_ratio, verdict) = classify(term_norms);
        ProbeReport { radius, rows, tail_ratio, verdict }
    }
}

fn classify(term_norms: &[f64]) -> (f64, Verdict) {
    let top = term_norms.len().saturating_sub(1);
    let start = (top / 2).max(1);
    if top < 1 {
        return (f64::NAN, Verdict::Inconclusive);
    }
    let scale = term_norms.iter().copied().fold(0.0, f64::max);
    let negligible = |t: f64| t <= scale * 1e-15;
    if term_norms[start..].iter().all(|&t| negligible(t)) {
        return (0.0, Verdict::Converging);
    }
    let ratios: Vec<f64> = (start..=top)
        .map(|j| {
            let (a, b) = (term_norms[j - 1], term_norms[j]);
            if negligible(a) {
                if negligible(b) {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                b / a
            }
        })
        .collect();
    let log_mean = ratios.iter().map(|r| r.max(f64::MIN_POSITIVE).ln()).sum::<f64>() / ratios.len() as f64;
    let fitted = log_mean.exp();
    let verdict = if ratios.iter().all(|&r| r < 1.0) {
        Verdict::Converging
    } else if fitted > 1.0 {
        Verdict::Diverging
    } else {
        Verdict::Inconclusive
    };
    (fitted, verdict)
}

/// Per-degree norms of the kernel series at `y`, with a ratio-test verdict.
pub fn resolvent_probe(y: &PointR, tuple: &OperatorTuple, degree: u32) -> Result<ProbeReport> {
    let cfg = OperatorKernelConfig { truncation: degree, ..OperatorKernelConfig::for_tuple(tuple, degree) };
    let k = operator_cauchy_kernel(y, tuple, &cfg)?;
    Ok(ProbeReport::from_norms(y.norm(), &k.term_norms, &k.partial_norms))
}
