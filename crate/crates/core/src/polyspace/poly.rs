//! Polynomials in `x_0..x_n` with Clifford-algebra coefficients.

use std::collections::BTreeMap;

use crate::clifford::{Blade, DenseAlgebra, Multivector, Rational, Ring, Scalar};
use crate::error::{Error, Result};

/// Polynomial `sum_k x^k c_k` in the real variables `x_0..x_n` with
/// coefficients in `Cl(0,n)` over the scalar ring `S`.
///
/// The variables are real, so they commute with every coefficient; only the
/// coefficients multiply non-commutatively.
#[derive(Clone, PartialEq)]
pub struct CliffordPoly<S> {
    n: usize,
    terms: BTreeMap<Vec<u32>, Multivector<S>>,
}

impl<S: Scalar> CliffordPoly<S> {
    pub fn zero(n: usize) -> Self {
        CliffordPoly { n, terms: BTreeMap::new() }
    }

    /// Number of generators; the polynomial has `n + 1` variables.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constant(coeff: Multivector<S>) -> Self {
        let n = coeff.n();
        Self::monomial(vec![0; n + 1], coeff)
    }

    /// `x^exps * coeff`.
    pub fn monomial(exps: Vec<u32>, coeff: Multivector<S>) -> Self {
        let n = coeff.n();
        assert_eq!(exps.len(), n + 1, "exponent vector covers x_0..x_n");
        let mut p = Self::zero(n);
        p.accumulate(exps, coeff);
        p
    }

    /// The variable `x_i`, `0 <= i <= n`, with unit coefficient.
    pub fn variable(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n + 1];
        exps[i] = 1;
        Self::monomial(exps, Multivector::one(n))
    }

    /// `|x|^2 = x_0^2 + ... + x_n^2`.
    pub fn norm_squared(n: usize) -> Self {
        let mut p = Self::zero(n);
        for i in 0..=n {
            let mut exps = vec![0; n + 1];
            exps[i] = 2;
            p.accumulate(exps, Multivector::one(n));
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Multivector<S>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn accumulate(&mut self, exps: Vec<u32>, coeff: Multivector<S>) {
        if coeff.is_empty() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                let sum = existing.plus(&coeff);
                if sum.is_empty() {
                    self.terms.remove(&exps);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exps, coeff);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.accumulate(exps, ca.times(cb));
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient on the left by `a`.
    pub fn left_mul(&self, a: &Multivector<S>) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            out.accumulate(e.clone(), a.times(c));
        }
        out
    }

    /// Multiplies every coefficient on the right by `a`.
    pub fn right_mul(&self, a: &Multivector<S>) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            out.accumulate(e.clone(), c.times(a));
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Multivector<S>) -> Multivector<S>) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            out.accumulate(e.clone(), f(c));
        }
        out
    }

    /// Exact partial derivative with respect to `x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[i] -= 1;
            out.accumulate(exps, c.scale(i64::from(e[i]), 1));
        }
        out
    }

    /// Left Dirac operator `D p = sum_{j=0}^n e_j dp/dx_j`.
    pub fn dirac(&self) -> Self {
        let mut out = self.derivative(0);
        out = out.try_add(&self.spatial_dirac()).expect("same dimension");
        out
    }

    /// Spatial part `sum_{l=1}^n e_l dp/dx_l` of the Dirac operator.
    pub fn spatial_dirac(&self) -> Self {
        let mut out = Self::zero(self.n);
        for l in 1..=self.n {
            let el = Multivector::generator(self.n, l).expect("generator in range");
            out = out.try_add(&self.derivative(l).left_mul(&el)).expect("same dimension");
        }
        out
    }

    /// Evaluates at `x = (x_0, ..., x_n)`.
    pub fn eval(&self, x: &[f64]) -> Multivector<f64> {
        let mut out = Multivector::zero(self.n);
        for (e, c) in &self.terms {
            let m: f64 = e.iter().zip(x).map(|(&k, &xi)| xi.powi(k as i32)).product();
            for (b, v) in c.terms() {
                out.accumulate(b, v.to_f64() * m);
            }
        }
        out
    }

    pub fn to_f64(&self) -> CliffordPoly<f64> {
        let mut out = CliffordPoly::zero(self.n);
        for (e, c) in &self.terms {
            out.accumulate(e.clone(), c.to_f64());
        }
        out
    }

    /// Flattens to `(monomial, blade) -> coefficient` pairs.
    pub fn coefficient_vector(&self) -> BTreeMap<(Vec<u32>, Blade), S> {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            for (b, v) in c.terms() {
                out.insert((e.clone(), b), v.clone());
            }
        }
        out
    }

    /// Lowers to a dense evaluator for repeated floating-point evaluation.
    pub fn compile(&self, alg: &DenseAlgebra) -> CompiledPoly {
        assert_eq!(alg.n(), self.n, "dense algebra dimension");
        let len = alg.len();
        let mut exps = Vec::with_capacity(self.terms.len());
        let mut coeffs = Vec::with_capacity(self.terms.len() * len);
        for (e, c) in &self.terms {
            exps.push(e.clone());
            let start = coeffs.len();
            coeffs.resize(start + len, 0.0);
            for (b, v) in c.terms() {
                coeffs[start + b.bits() as usize] = v.to_f64();
            }
        }
        CompiledPoly { len, exps, coeffs }
    }
}

impl CliffordPoly<f64> {
    /// Largest coefficient magnitude.
    pub fn sup_norm(&self) -> f64 {
        self.terms.values().map(Multivector::sup_norm).fold(0.0, f64::max)
    }
}

impl CliffordPoly<Rational> {
    pub fn from_f64_exact(p: &CliffordPoly<f64>) -> Self {
        let mut out = CliffordPoly::zero(p.n);
        for (e, c) in &p.terms {
            out.accumulate(e.clone(), c.map(|v| Rational::from_f64(*v)));
        }
        out
    }
}

impl<S: Scalar> Ring for CliffordPoly<S> {
    fn plus(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("polynomial dimensions agree")
    }
    fn times(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("polynomial dimensions agree")
    }
    fn negate(&self) -> Self {
        self.map_coeffs(Multivector::negate)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn scale(&self, num: i64, den: i64) -> Self {
        self.map_coeffs(|c| c.scale(num, den))
    }
}

impl<S: Scalar> std::fmt::Debug for CliffordPoly<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("x^{e:?}*({:?})", c.to_f64()))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Dense floating-point evaluator of a [`CliffordPoly`].
#[derive(Debug, Clone)]
pub struct CompiledPoly {
    len: usize,
    exps: Vec<Vec<u32>>,
    coeffs: Vec<f64>,
}

impl CompiledPoly {
    /// `out += scale * p(x)`, as dense blade coefficients.
    #[inline]
    pub fn eval_acc(&self, x: &[f64], scale: f64, out: &mut [f64]) {
        for (k, e) in self.exps.iter().enumerate() {
            let mut m = scale;
            for (&p, &xi) in e.iter().zip(x) {
                if p > 0 {
                    m *= xi.powi(p as i32);
                }
            }
            let row = &self.coeffs[k * self.len..(k + 1) * self.len];
            for (o, &c) in out.iter_mut().zip(row) {
                *o += m * c;
            }
        }
    }
}

/// Rank of a family of exact polynomials viewed as real coefficient vectors.
pub fn exact_rank(polys: &[CliffordPoly<Rational>]) -> usize {
    let mut columns: BTreeMap<(Vec<u32>, Blade), usize> = BTreeMap::new();
    let vectors: Vec<_> = polys.iter().map(CliffordPoly::coefficient_vector).collect();
    for v in &vectors {
        for key in v.keys() {
            let next = columns.len();
            columns.entry(key.clone()).or_insert(next);
        }
    }
    let mut rows: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| {
            let mut row = vec![Rational::zero(); columns.len()];
            for (key, val) in v {
                row[columns[key]] = val.clone();
            }
            row
        })
        .collect();
    rational_rank(&mut rows)
}

/// Gaussian elimination over the rationals.
pub fn rational_rank(rows: &mut [Vec<Rational>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !Ring::is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || Ring::is_zero(&row[col]) {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
        }
        rank += 1;
    }
    rank
}
