use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::clifford::{Blade, Multivector};
use crate::error::{Error, Result};

/// Occupied modes of a finite Fermi system, one blade `e_{i1} ... e_{ik}`
/// per state. The empty state is the vacuum `e0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FillingState(Vec<usize>);

impl FillingState {
    pub fn vacuum() -> Self {
        FillingState(Vec::new())
    }

    /// Modes must be distinct and numbered from 1.
    pub fn new(mut occupied: Vec<usize>) -> Result<Self> {
        occupied.sort_unstable();
        if occupied.first() == Some(&0) {
            return Err(Error::InvalidDimension { index: 0, n: occupied.len() });
        }
        if occupied.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain("a mode holds at most one Fermi particle".into()));
        }
        Ok(FillingState(occupied))
    }

    pub fn from_blade(blade: Blade) -> Self {
        FillingState(blade.indices())
    }

    pub fn to_blade(&self) -> Blade {
        Blade::from_indices(&self.0).expect("validated on construction")
    }

    pub fn occupied(&self) -> &[usize] {
        &self.0
    }

    pub fn particles(&self) -> usize {
        self.0.len()
    }

    /// All `2^m` states of `m` modes, ordered by blade bits.
    pub fn all(m: usize) -> Vec<Self> {
        (0..1u32 << m).map(|b| Self::from_blade(Blade::from_bits(b))).collect()
    }
}

/// How multivector coefficients become probabilities.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FermiConvention {
    /// `p = a_B^2 / sum a^2`.
    #[default]
    SquaredMagnitude,
    /// `p = |a_B| / sum |a|`.
    AbsoluteWeight,
}

pub fn fermi_distribution(a: &Multivector<f64>) -> Result<BTreeMap<FillingState, f64>> {
    fermi_distribution_with(a, FermiConvention::default())
}

pub fn fermi_distribution_with(a: &Multivector<f64>, convention: FermiConvention) -> Result<BTreeMap<FillingState, f64>> {
    let weight = |c: f64| match convention {
        FermiConvention::SquaredMagnitude => c * c,
        FermiConvention::AbsoluteWeight => c.abs(),
    };
    let total: f64 = a.terms().map(|(_, &c)| weight(c)).sum();
    if total == 0.0 {
        return Err(Error::ZeroMultivector);
    }
    Ok(a.terms().map(|(b, &c)| (FillingState::from_blade(b), weight(c) / total)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn state(v: &[usize]) -> FillingState {
        FillingState::new(v.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        let e1 = Multivector::<f64>::generator(3, 1).unwrap();
        let e2 = Multivector::<f64>::generator(3, 2).unwrap();
        let d = fermi_distribution(&e1).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[&state(&[1])], 1.0);
        let d = fermi_distribution(&(&e1 + &e2)).unwrap();
        assert_eq!(d[&state(&[1])], 0.5);
        assert_eq!(d[&state(&[2])], 0.5);
        let d = fermi_distribution(&Multivector::scalar(3, 3.0)).unwrap();
        assert_eq!(d[&FillingState::vacuum()], 1.0);
        assert!(matches!(fermi_distribution(&Multivector::zero(2)), Err(Error::ZeroMultivector)));
    }

    #[test]
    fn conventions_differ() {
        let a = Multivector::from_terms(2, [(Blade::UNIT, 1.0), (Blade::from_bits(0b11), -3.0)]).unwrap();
        let sq = fermi_distribution(&a).unwrap();
        let abs = fermi_distribution_with(&a, FermiConvention::AbsoluteWeight).unwrap();
        assert!((sq[&state(&[1, 2])] - 0.9).abs() < 1e-15);
        assert!((abs[&state(&[1, 2])] - 0.75).abs() < 1e-15);
    }

    #[test]
    fn pauli_principle_is_structural() {
        assert!(FillingState::new(vec![2, 2]).is_err());
        assert!(FillingState::new(vec![0]).is_err());
        assert_eq!(state(&[3, 1]).occupied(), &[1, 3]);
        assert_eq!(state(&[3, 1]).to_blade(), Blade::from_bits(0b101));
        assert_eq!(FillingState::all(3).len(), 8);
    }

    proptest! {
        #[test]
        fn sums_to_one(coeffs in proptest::collection::vec(-5.0f64..5.0, 8)) {
            let a = Multivector::from_terms(3, coeffs.iter().enumerate().map(|(b, &c)| (Blade::from_bits(b as u32), c))).unwrap();
            prop_assume!(!a.is_empty());
            for conv in [FermiConvention::SquaredMagnitude, FermiConvention::AbsoluteWeight] {
                let total: f64 = fermi_distribution_with(&a, conv).unwrap().values().sum();
                prop_assert!((total - 1.0).abs() <= 1e-12);
            }
        }
    }
}
