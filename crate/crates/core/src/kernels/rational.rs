use crate::clifford::{DenseAlgebra, Multivector, Rational, Ring};
use crate::error::{Error, Result};
use crate::polyspace::{CliffordPoly, CompiledPoly};

/// `scale * P(x) / |x|^q` with an exact Clifford-polynomial numerator `P`.
///
/// Closed under partial derivatives:
/// `d_i (P |x|^-q) = (d_i P |x|^2 - q x_i P) |x|^-(q+2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMV {
    numerator: CliffordPoly<Rational>,
    denom_exp: u32,
    scale: f64,
}

impl RationalMV {
    pub fn new(numerator: CliffordPoly<Rational>, denom_exp: u32, scale: f64) -> Self {
        RationalMV { numerator, denom_exp, scale }
    }

    pub fn numerator(&self) -> &CliffordPoly<Rational> {
        &self.numerator
    }

    /// Exponent `q` of the denominator `|x|^q`.
    pub fn denom_exp(&self) -> u32 {
        self.denom_exp
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn n(&self) -> usize {
        self.numerator.n()
    }

    /// Multiplies the exact numerator by `num / den`.
    pub fn scale_exact(&self, num: i64, den: i64) -> Self {
        RationalMV { numerator: self.numerator.scale(num, den), ..self.clone() }
    }

    /// Exact partial derivative with respect to `x_i`, `0 <= i <= n`.
    pub fn derivative(&self, i: usize) -> Self {
        let n = self.n();
        let q = i64::from(self.denom_exp);
        let first = self.numerator.derivative(i).times(&CliffordPoly::norm_squared(n));
        let second = CliffordPoly::variable(n, i).times(&self.numerator).scale(-q, 1);
        RationalMV {
            numerator: first.plus(&second),
            denom_exp: self.denom_exp + 2,
            scale: self.scale,
        }
    }

    /// Left Dirac operator applied symbolically.
    pub fn dirac(&self) -> Self {
        let n = self.n();
        let mut numerator = CliffordPoly::zero(n);
        for i in 0..=n {
            let part = self.derivative(i).numerator;
            let part = if i == 0 {
                part
            } else {
                part.left_mul(&Multivector::generator(n, i).expect("generator in range"))
            };
            numerator = numerator.plus(&part);
        }
        RationalMV { numerator, denom_exp: self.denom_exp + 2, scale: self.scale }
    }

    /// Whether the function vanishes identically away from the origin.
    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn eval(&self, x: &[f64]) -> Result<Multivector<f64>> {
        let r = x.iter().map(|c| c * c).sum::<f64>().sqrt();
        if r == 0.0 {
            return Err(Error::Singularity);
        }
        let factor = self.scale / r.powi(self.denom_exp as i32);
        Ok(self.numerator.eval(x).scale_f64(factor))
    }

    pub fn compile(&self, alg: &DenseAlgebra) -> CompiledRational {
        CompiledRational {
            numerator: self.numerator.compile(alg),
            denom_exp: self.denom_exp as i32,
            scale: self.scale,
        }
    }
}

/// Dense floating-point evaluator of a [`RationalMV`].
#[derive(Debug, Clone)]
pub struct CompiledRational {
    numerator: CompiledPoly,
    denom_exp: i32,
    scale: f64,
}

impl CompiledRational {
    /// `out += value(x)` given `|x|` precomputed; `x` must be non-zero.
    #[inline]
    pub fn eval_acc(&self, x: &[f64], norm: f64, out: &mut [f64]) {
        self.numerator.eval_acc(x, self.scale / norm.powi(self.denom_exp), out);
    }
}
