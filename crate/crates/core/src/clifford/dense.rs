//! Allocation-free real multivector products for hot quadrature loops.

use super::blade::{blade_product, Blade};
use super::multivector::Multivector;

/// Precomputed product table of `Cl(0,n)` over dense `2^n` coefficient
/// arrays indexed by blade bitmask.
#[derive(Debug, Clone)]
pub struct DenseAlgebra {
    n: usize,
    len: usize,
    table: Vec<(f64, usize)>,
}

impl DenseAlgebra {
    /// Dense tables grow as `4^n`; intended for small `n`.
    pub fn new(n: usize) -> Self {
        assert!(n <= 8, "dense algebra limited to n <= 8");
        let len = 1usize << n;
        let mut table = Vec::with_capacity(len * len);
        for a in 0..len {
            for b in 0..len {
                let (sign, out) = blade_product(Blade::from_bits(a as u32), Blade::from_bits(b as u32));
                table.push((f64::from(sign), out.bits() as usize));
            }
        }
        DenseAlgebra { n, len, table }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of blades, `2^n`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `out += a * b`.
    #[inline]
    pub fn mul_acc(&self, a: &[f64], b: &[f64], out: &mut [f64]) {
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0.0 {
                continue;
            }
            let row = &self.table[i * self.len..(i + 1) * self.len];
            for (&(sign, k), &bj) in row.iter().zip(b) {
                out[k] += sign * ai * bj;
            }
        }
    }

    pub fn to_dense(&self, x: &Multivector<f64>) -> Vec<f64> {
        let mut out = vec![0.0; self.len];
        for (b, c) in x.terms() {
            out[b.bits() as usize] = *c;
        }
        out
    }

    pub fn from_dense(&self, coeffs: &[f64]) -> Multivector<f64> {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (Blade::from_bits(i as u32), c));
        Multivector::from_terms(self.n, terms).expect("blades within dimension")
    }
}
