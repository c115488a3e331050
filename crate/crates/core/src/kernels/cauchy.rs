//! The Cauchy kernel `E(x) = conj(x) / (omega_n |x|^{n+1})` and its derivative
//! family `W_alpha = d^alpha E / alpha!`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::rational::RationalMV;
use crate::clifford::{Multivector, Rational, Scalar};
use crate::error::{Error, Result};
use crate::polyspace::{multi_indices, v_point_lattice, CliffordPoly, MultiIndex, PointR};

/// Surface area of the unit sphere `S^n` in `R^{n+1}`,
/// `2 pi^{(n+1)/2} / Gamma((n+1)/2)`.
pub fn unit_sphere_area(n: usize) -> f64 {
    // S_0 = 2, S_1 = 2 pi, S_n = 2 pi / (n - 1) * S_{n-2}
    let mut area = if n.is_multiple_of(2) { 2.0 } else { 2.0 * PI };
    let mut k = if n.is_multiple_of(2) { 2 } else { 3 };
    while k <= n {
        area *= 2.0 * PI / (k - 1) as f64;
        k += 2;
    }
    area
}

/// `E` as an exact rational multivector in `R^{n+1}`.
pub fn cauchy_kernel_rational(n: usize) -> RationalMV {
    let mut coords = vec![Rational::from_integer(1.into())];
    coords.extend((1..=n).map(|_| Rational::from_integer((-1).into())));
    // conj(x) = x_0 - sum x_j e_j
    let mut numerator = CliffordPoly::zero(n);
    for (i, c) in coords.into_iter().enumerate() {
        let blade = if i == 0 {
            Multivector::one(n)
        } else {
            Multivector::generator(n, i).expect("generator in range")
        };
        let term = CliffordPoly::variable(n, i).right_mul(&blade.map(|b: &Rational| b * &c));
        numerator = numerator.try_add(&term).expect("same dimension");
    }
    RationalMV::new(numerator, (n + 1) as u32, 1.0 / unit_sphere_area(n))
}

/// `E(x)`; singular at the origin.
pub fn cauchy_kernel(x: &PointR) -> Result<Multivector<f64>> {
    let r = x.norm();
    if r == 0.0 {
        return Err(Error::Singularity);
    }
    let n = x.n();
    Ok(x.paravector().conjugate().scale_f64(1.0 / (unit_sphere_area(n) * r.powi(n as i32 + 1))))
}

/// All `W_alpha` with `|alpha| <= max_degree` for one dimension.
#[derive(Debug, Clone)]
pub struct KernelFamily {
    n: usize,
    max_degree: u32,
    kernels: BTreeMap<MultiIndex, RationalMV>,
}

impl KernelFamily {
    /// Derives the family exactly: `W_alpha = (1/alpha_j) d_j W_{alpha - e_j}`
    /// with derivatives taken in `x_1..x_n`.
    pub fn new(n: usize, max_degree: u32) -> Self {
        let mut kernels = BTreeMap::new();
        kernels.insert(MultiIndex::zeros(n), cauchy_kernel_rational(n));
        for degree in 1..=max_degree {
            for alpha in multi_indices(n, degree) {
                let j = alpha.exps().iter().position(|&a| a > 0).expect("degree >= 1");
                let lower = &kernels[&alpha.lowered(j).expect("alpha_j > 0")];
                let w = lower.derivative(j + 1).scale_exact(1, i64::from(alpha.exps()[j]));
                kernels.insert(alpha, w);
            }
        }
        KernelFamily { n, max_degree, kernels }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn get(&self, alpha: &MultiIndex) -> Option<&RationalMV> {
        self.kernels.get(alpha)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &RationalMV)> {
        self.kernels.iter()
    }

    pub fn eval(&self, alpha: &MultiIndex, y: &PointR) -> Result<Multivector<f64>> {
        let w = self.kernels.get(alpha).ok_or_else(|| {
            Error::Domain(format!("multi-index {alpha:?} outside family of degree {}", self.max_degree))
        })?;
        w.eval(y.coords())
    }
}

impl KernelFamily {
    /// Floating-point evaluator sharing one monomial table across the family.
    pub fn evaluator(&self) -> FamilyEvaluator {
        let mut exps: Vec<Vec<u32>> = Vec::new();
        let mut slot: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        let mut indices = Vec::with_capacity(self.kernels.len());
        let mut rows = Vec::with_capacity(self.kernels.len());
        let mut ordered: Vec<(&MultiIndex, &RationalMV)> = self.kernels.iter().collect();
        ordered.sort_by_key(|(a, _)| a.degree());
        for (alpha, w) in ordered {
            let mut row = Vec::new();
            for (e, c) in w.numerator().terms() {
                let k = *slot.entry(e.clone()).or_insert_with(|| {
                    exps.push(e.clone());
                    exps.len() - 1
                });
                for (b, v) in c.terms() {
                    row.push((k, b.bits() as usize, v.to_f64()));
                }
            }
            indices.push(alpha.clone());
            rows.push(row);
        }
        let max_exp = exps.iter().flatten().copied().max().unwrap_or(0);
        FamilyEvaluator {
            n: self.n,
            indices,
            exps,
            rows,
            max_exp,
            scale: 1.0 / unit_sphere_area(self.n),
        }
    }
}

/// Evaluates every `W_alpha` of a [`KernelFamily`] at a point at once.
///
/// Each numerator is homogeneous of degree `1 + 2|alpha|`, so evaluation
/// happens at `y / |y|` and is rescaled by `|y|^{-(n + |alpha|)}`.
#[derive(Debug, Clone)]
pub struct FamilyEvaluator {
    n: usize,
    indices: Vec<MultiIndex>,
    exps: Vec<Vec<u32>>,
    rows: Vec<Vec<(usize, usize, f64)>>,
    max_exp: u32,
    scale: f64,
}

impl FamilyEvaluator {
    /// Multi-indices in output order, sorted by degree.
    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    /// Dense blade-coefficient width of one kernel value.
    pub fn width(&self) -> usize {
        1 << self.n
    }

    /// Writes `W_alpha(y)` for every index into consecutive blocks of
    /// [`Self::width`] reals.
    pub fn eval_into(&self, y: &[f64], out: &mut [f64]) -> Result<()> {
        let r = y.iter().map(|c| c * c).sum::<f64>().sqrt();
        if r == 0.0 {
            return Err(Error::Singularity);
        }
        let stride = self.max_exp as usize + 1;
        let mut powers = vec![1.0; y.len() * stride];
        for (i, c) in y.iter().enumerate() {
            let u = c / r;
            for p in 1..stride {
                powers[i * stride + p] = powers[i * stride + p - 1] * u;
            }
        }
        let monomials: Vec<f64> = self
            .exps
            .iter()
            .map(|e| e.iter().enumerate().map(|(i, &p)| powers[i * stride + p as usize]).product())
            .collect();
        let width = self.width();
        out[..self.indices.len() * width].fill(0.0);
        for (k, (alpha, row)) in self.indices.iter().zip(&self.rows).enumerate() {
            let factor = self.scale * r.powi(-((self.n as u32 + alpha.degree()) as i32));
            let block = &mut out[k * width..(k + 1) * width];
            for &(m, b, c) in row {
                block[b] += factor * c * monomials[m];
            }
        }
        Ok(())
    }
}

/// `W_alpha(x) = d^alpha E(x) / alpha!`.
pub fn w_poly(alpha: &MultiIndex, x: &PointR) -> Result<Multivector<f64>> {
    if alpha.n() != x.n() {
        return Err(Error::DimensionMismatch { expected: x.n(), found: alpha.n() });
    }
    KernelFamily::new(x.n(), alpha.degree()).eval(alpha, x)
}

/// Sup-norm residuals of `E(y - x) - sum_{|alpha| <= J} V_alpha(x) W_alpha(y)`
/// for every `J = 0..=max_degree`.
pub fn kernel_decomposition_residuals(x: &PointR, y: &PointR, max_degree: u32) -> Result<Vec<f64>> {
    if x.n() != y.n() {
        return Err(Error::DimensionMismatch { expected: y.n(), found: x.n() });
    }
    if x.norm() >= y.norm() {
        return Err(Error::Domain(format!(
            "decomposition needs |x| < |y|, got {} >= {}",
            x.norm(),
            y.norm()
        )));
    }
    let exact = cauchy_kernel(&y.sub(x)?)?;
    let family = KernelFamily::new(x.n(), max_degree);
    let vs = v_point_lattice(x, max_degree)?;
    let mut partial = Multivector::zero(x.n());
    let mut out = Vec::with_capacity(max_degree as usize + 1);
    for degree in 0..=max_degree {
        for alpha in multi_indices(x.n(), degree) {
            let term = vs[&alpha].try_mul(&family.eval(&alpha, y)?)?;
            partial = partial.try_add(&term)?;
        }
        out.push(exact.distance(&partial));
    }
    Ok(out)
}

/// Residual of the kernel decomposition truncated at degree `max_degree`.
pub fn kernel_decomposition_check(x: &PointR, y: &PointR, max_degree: u32) -> Result<f64> {
    Ok(*kernel_decomposition_residuals(x, y, max_degree)?.last().expect("non-empty"))
}
