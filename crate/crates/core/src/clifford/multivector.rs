use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::blade::{blade_product, Blade};
use super::ring::{CMatrix, Ring, Scalar};
use crate::error::{Error, Result};

/// Element of `Cl(0,n)` with coefficients in a ring `T`.
///
/// Zero coefficients are never stored, so two equal multivectors have equal
/// term maps.
#[derive(Clone, PartialEq)]
pub struct Multivector<T> {
    n: usize,
    terms: BTreeMap<Blade, T>,
}

impl<T> Multivector<T> {
    pub fn zero(n: usize) -> Self {
        Multivector { n, terms: BTreeMap::new() }
    }

    /// Number of generators.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &T)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn get(&self, blade: Blade) -> Option<&T> {
        self.terms.get(&blade)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn into_terms(self) -> BTreeMap<Blade, T> {
        self.terms
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Multivector<U> {
        let mut out = Multivector::zero(self.n);
        for (b, c) in &self.terms {
            out.accumulate(*b, f(c));
        }
        out
    }
}

impl<T: Ring> Multivector<T> {
    /// Builds a multivector, summing repeated blades and dropping zeros.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Blade, T)>) -> Result<Self> {
        let mut out = Multivector::zero(n);
        for (blade, coeff) in terms {
            if !blade.is_valid_for(n) {
                let top = 32 - blade.bits().leading_zeros() as usize;
                return Err(Error::InvalidDimension { index: top, n });
            }
            out.accumulate(blade, coeff);
        }
        Ok(out)
    }

    /// Single-term multivector `coeff * blade`.
    pub fn monomial(n: usize, blade: Blade, coeff: T) -> Result<Self> {
        Self::from_terms(n, [(blade, coeff)])
    }

    pub fn accumulate(&mut self, blade: Blade, coeff: T) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(blade) {
            Entry::Vacant(slot) => {
                if !coeff.is_zero() {
                    slot.insert(coeff);
                }
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().plus(&coeff);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    fn check_dims(&self, other_n: usize) -> Result<()> {
        if self.n != other_n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other_n });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other.n)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.accumulate(*b, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.negate())
    }

    /// Geometric product; coefficients multiply as `self_coeff * other_coeff`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.mul_with(other, |a, b| a.times(b))
    }

    /// Bilinear product with a custom coefficient combiner, for mixed rings
    /// such as matrix-by-real multivector products.
    pub fn mul_with<U, V: Ring>(
        &self,
        other: &Multivector<U>,
        combine: impl Fn(&T, &U) -> V,
    ) -> Result<Multivector<V>> {
        self.check_dims(other.n)?;
        let mut out = Multivector::zero(self.n);
        for (&ba, ca) in &self.terms {
            for (&bb, cb) in &other.terms {
                let (sign, blade) = blade_product(ba, bb);
                let coeff = combine(ca, cb);
                out.accumulate(blade, if sign < 0 { coeff.negate() } else { coeff });
            }
        }
        Ok(out)
    }

    pub fn negate(&self) -> Self {
        self.map(Ring::negate)
    }

    pub fn scale(&self, num: i64, den: i64) -> Self {
        self.map(|c| c.scale(num, den))
    }

    /// Clifford conjugation: reverses blades and negates every generator.
    pub fn conjugate(&self) -> Self {
        let mut out = Multivector::zero(self.n);
        for (b, c) in &self.terms {
            let coeff = if b.conjugation_sign() < 0 { c.negate() } else { c.clone() };
            out.accumulate(*b, coeff);
        }
        out
    }

    /// Terms of the given grade only.
    pub fn grade_part(&self, grade: usize) -> Self {
        let terms = self.terms.iter().filter(|(b, _)| b.grade() == grade);
        Multivector { n: self.n, terms: terms.map(|(b, c)| (*b, c.clone())).collect() }
    }
}

impl<S: Scalar> Multivector<S> {
    pub fn scalar(n: usize, value: S) -> Self {
        let mut out = Multivector::zero(n);
        out.accumulate(Blade::UNIT, value);
        out
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, S::one())
    }

    /// The generator `e_j`, `1 <= j <= n`.
    pub fn generator(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::InvalidDimension { index: j, n });
        }
        Self::monomial(n, Blade::generator(j)?, S::one())
    }

    /// Paravector `x_0 e_0 + x_1 e_1 + ... + x_n e_n`.
    pub fn paravector(coords: &[S]) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Empty("paravector coordinates"));
        }
        let n = coords.len() - 1;
        let mut out = Self::scalar(n, coords[0].clone());
        for (j, x) in coords.iter().enumerate().skip(1) {
            out.accumulate(Blade::generator(j)?, x.clone());
        }
        Ok(out)
    }

    /// Scalar (`e_0`) coefficient.
    pub fn scalar_part(&self) -> S {
        self.get(Blade::UNIT).cloned().unwrap_or_else(S::zero)
    }

    pub fn coeff(&self, blade: Blade) -> S {
        self.get(blade).cloned().unwrap_or_else(S::zero)
    }

    /// Largest coefficient magnitude.
    pub fn sup_norm(&self) -> f64 {
        self.terms.values().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c.magnitude().powi(2)).sum::<f64>().sqrt()
    }

    pub fn to_f64(&self) -> Multivector<f64> {
        self.map(Scalar::to_f64)
    }

    /// Lifts to a matrix-coefficient multivector by tensoring with `matrix`.
    pub fn tensor_matrix(&self, matrix: &CMatrix) -> Multivector<CMatrix> {
        self.map(|c| matrix * num_complex::Complex64::new(c.to_f64(), 0.0))
    }
}

impl Multivector<f64> {
    /// `max_blade |self - other|`, treating missing blades as zero.
    pub fn distance(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (b, c) in &self.terms {
            worst = worst.max((c - other.coeff(*b)).abs());
        }
        for (b, c) in &other.terms {
            if !self.terms.contains_key(b) {
                worst = worst.max(c.abs());
            }
        }
        worst
    }

    /// Multiplies every coefficient by `factor`.
    pub fn scale_f64(&self, factor: f64) -> Self {
        self.map(|c| c * factor)
    }
}

impl<T: Ring> Ring for Multivector<T> {
    fn plus(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("multivector dimensions agree")
    }
    fn times(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("multivector dimensions agree")
    }
    fn negate(&self) -> Self {
        Multivector::negate(self)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn scale(&self, num: i64, den: i64) -> Self {
        Multivector::scale(self, num, den)
    }
}

impl<T: fmt::Debug> fmt::Debug for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 (n={})", self.n);
        }
        let mut first = true;
        for (b, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c:?}*{b}")?;
        }
        Ok(())
    }
}

// Operator sugar. These panic on dimension mismatch; use the `try_*` methods
// where the dimensions are not known to agree.

impl<T: Ring> Add for &Multivector<T> {
    type Output = Multivector<T>;
    fn add(self, rhs: Self) -> Multivector<T> {
        self.plus(rhs)
    }
}

impl<T: Ring> Sub for &Multivector<T> {
    type Output = Multivector<T>;
    fn sub(self, rhs: Self) -> Multivector<T> {
        self.try_sub(rhs).expect("multivector dimensions agree")
    }
}

impl<T: Ring> Mul for &Multivector<T> {
    type Output = Multivector<T>;
    fn mul(self, rhs: Self) -> Multivector<T> {
        self.times(rhs)
    }
}

impl<T: Ring> Neg for &Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Multivector<T> {
        Multivector::negate(self)
    }
}

impl<T: Ring> Add for Multivector<T> {
    type Output = Multivector<T>;
    fn add(self, rhs: Self) -> Multivector<T> {
        &self + &rhs
    }
}

impl<T: Ring> Sub for Multivector<T> {
    type Output = Multivector<T>;
    fn sub(self, rhs: Self) -> Multivector<T> {
        &self - &rhs
    }
}

impl<T: Ring> Mul for Multivector<T> {
    type Output = Multivector<T>;
    fn mul(self, rhs: Self) -> Multivector<T> {
        &self * &rhs
    }
}

impl<T: Ring> Neg for Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Multivector<T> {
        Multivector::negate(&self)
    }
}
