use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximum number of generators a blade bitmask can hold.
pub const MAX_GENERATORS: usize = 31;

/// Canonically ordered product `e_{j1} ... e_{jk}` with `j1 < ... < jk`.
///
/// Bit `j - 1` is set when generator `e_j` occurs; the empty blade is the unit
/// `e_0`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Blade(u32);

impl Blade {
    pub const UNIT: Blade = Blade(0);

    pub const fn from_bits(bits: u32) -> Self {
        Blade(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The generator `e_j` for `j >= 1`.
    pub fn generator(j: usize) -> Result<Self> {
        if j == 0 || j > MAX_GENERATORS {
            return Err(Error::InvalidDimension { index: j, n: MAX_GENERATORS });
        }
        Ok(Blade(1 << (j - 1)))
    }

    /// Canonical blade of a strictly increasing index list.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        let mut last = 0;
        for &j in indices {
            if j <= last {
                return Err(Error::Domain(format!(
                    "blade indices must be strictly increasing and >= 1, got {indices:?}"
                )));
            }
            bits |= Blade::generator(j)?.0;
            last = j;
        }
        Ok(Blade(bits))
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Generator indices in increasing order (1-based).
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    pub fn is_valid_for(self, n: usize) -> bool {
        n >= 32 || self.0 >> n == 0
    }

    /// Sign picked up by `conj(e_A) = conj(e_jk) ... conj(e_j1)`.
    ///
    /// Reversal contributes `(-1)^{k(k-1)/2}` and negating each generator
    /// `(-1)^k`, so the total is `(-1)^{k(k+1)/2}`.
    pub fn conjugation_sign(self) -> i8 {
        let k = self.grade();
        if (k * (k + 1) / 2).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// Sign and canonical blade of `a * b` in `Cl(0,n)`, without range checks.
#[inline]
pub fn blade_product(a: Blade, b: Blade) -> (i8, Blade) {
    // swaps: pairs (i in a, j in b) with i > j, moved past each other
    let mut swaps = 0u32;
    let mut shifted = a.0 >> 1;
    while shifted != 0 {
        swaps += (shifted & b.0).count_ones();
        shifted >>= 1;
    }
    // each repeated generator contributes e_j^2 = -1
    swaps += (a.0 & b.0).count_ones();
    let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
    (sign, Blade(a.0 ^ b.0))
}

/// Product of two blades of `Cl(0,n)`.
pub fn blade_mul(a: Blade, b: Blade, n: usize) -> Result<(i8, Blade)> {
    for blade in [a, b] {
        if !blade.is_valid_for(n) {
            let top = 32 - blade.0.leading_zeros() as usize;
            return Err(Error::InvalidDimension { index: top, n });
        }
    }
    Ok(blade_product(a, b))
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("e0");
        }
        f.write_str("e")?;
        let idx = self.indices();
        let sep = if idx.iter().any(|&j| j > 9) { "_" } else { "" };
        let parts: Vec<String> = idx.iter().map(|j| j.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(j: usize) -> Blade {
        Blade::generator(j).unwrap()
    }

    #[test]
    fn generator_squares_to_minus_unit() {
        assert_eq!(blade_mul(e(1), e(1), 2).unwrap(), (-1, Blade::UNIT));
    }

    #[test]
    fn unit_is_neutral() {
        assert_eq!(blade_mul(Blade::UNIT, e(2), 2).unwrap(), (1, e(2)));
    }

    #[test]
    fn one_transposition_flips_sign() {
        let e12 = Blade::from_indices(&[1, 2]).unwrap();
        assert_eq!(blade_mul(e(2), e(1), 2).unwrap(), (-1, e12));
        assert_eq!(blade_mul(e(1), e(2), 2).unwrap(), (1, e12));
    }

    #[test]
    fn out_of_range_blade_is_rejected() {
        assert!(matches!(
            blade_mul(e(3), e(1), 2),
            Err(Error::InvalidDimension { index: 3, n: 2 })
        ));
    }

    #[test]
    fn bivector_squares_to_minus_one() {
        // e1e2e1e2 = -e1e1e2e2 = -1
        let e12 = Blade::from_indices(&[1, 2]).unwrap();
        assert_eq!(blade_product(e12, e12), (-1, Blade::UNIT));
    }

    #[test]
    fn conjugation_signs_by_grade() {
        let signs: Vec<i8> = (0..5)
            .map(|k| Blade::from_bits((1u32 << k) - 1).conjugation_sign())
            .collect();
        assert_eq!(signs, vec![1, -1, -1, 1, 1]);
    }

    #[test]
    fn from_indices_rejects_unsorted() {
        assert!(Blade::from_indices(&[2, 1]).is_err());
        assert!(Blade::from_indices(&[0]).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Blade::UNIT.to_string(), "e0");
        assert_eq!(Blade::from_indices(&[1, 3]).unwrap().to_string(), "e13");
    }
}
