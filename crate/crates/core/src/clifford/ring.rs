//! Coefficient rings for multivectors.

use std::fmt::Debug;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact rational numbers.
pub type Rational = BigRational;

/// Dense complex matrix; the coefficient ring for operator-valued multivectors.
pub type CMatrix = DMatrix<Complex64>;

/// A (not necessarily commutative) ring with unit-free construction.
///
/// Matrices cannot build a zero or one without knowing their dimension, so
/// the ring interface only combines existing values. Multiplication order is
/// `self * rhs`.
pub trait Ring: Clone + Debug + Send + Sync {
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplies by the rational number `num / den`.
    fn scale(&self, num: i64, den: i64) -> Self;

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }
}

/// A commutative scalar ring with distinguished constants.
pub trait Scalar: Ring + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_f64(value: f64) -> Self;
    fn to_f64(&self) -> f64;
    /// Absolute value (modulus for complex scalars).
    fn magnitude(&self) -> f64;
}

impl Ring for f64 {
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn scale(&self, num: i64, den: i64) -> Self {
        self * (num as f64 / den as f64)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn from_f64(value: f64) -> Self {
        value
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Ring for Complex64 {
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn scale(&self, num: i64, den: i64) -> Self {
        self * (num as f64 / den as f64)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn from_f64(value: f64) -> Self {
        Complex64::new(value, 0.0)
    }
    fn to_f64(&self) -> f64 {
        self.re
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl Ring for Rational {
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn scale(&self, num: i64, den: i64) -> Self {
        self * Rational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_f64(value: f64) -> Self {
        Rational::from_float(value).expect("finite value")
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn magnitude(&self) -> f64 {
        ToPrimitive::to_f64(self).map_or(f64::NAN, f64::abs)
    }
}

impl Ring for CMatrix {
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        self.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }
    fn scale(&self, num: i64, den: i64) -> Self {
        self * Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
}
