//! Complex matrix representation of `Cl(0,n)`.

use num_complex::Complex64;

use super::blade::Blade;
use super::multivector::Multivector;
use super::ring::{CMatrix, Scalar};
use crate::error::{Error, Result};
use crate::matrix::{identity, kron, spectral_norm};

/// Anti-Hermitian matrices `E_1..E_n` with `E_j^2 = -I` and pairwise
/// anticommutation, acting on a space of dimension `2^ceil(n/2)`.
#[derive(Debug, Clone)]
pub struct GeneratorRep {
    n: usize,
    dim: usize,
    mats: Vec<CMatrix>,
}

fn pauli() -> [CMatrix; 3] {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        CMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        CMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        CMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
    ]
}

fn kron_all(factors: &[CMatrix]) -> CMatrix {
    factors.iter().skip(1).fold(factors[0].clone(), |acc, f| kron(&acc, f))
}

/// Builds the representation by Kronecker doubling (Jordan-Wigner layout).
///
/// With `k = ceil(n/2)` two-level factors, `E_{2p-1} = i Z^(p-1) X I^(k-p)`
/// and `E_{2p} = i Z^(p-1) Y I^(k-p)`.
pub fn generator_matrices(n: usize) -> Result<GeneratorRep> {
    if n == 0 {
        return Err(Error::InvalidDimension { index: 0, n });
    }
    let [x, y, z] = pauli();
    let k = n.div_ceil(2);
    let id2 = identity(2);
    let i = Complex64::new(0.0, 1.0);
    let mut mats = Vec::with_capacity(n);
    for j in 0..n {
        let p = j / 2;
        let mut factors = vec![z.clone(); p];
        factors.push(if j % 2 == 0 { x.clone() } else { y.clone() });
        factors.extend(std::iter::repeat_n(id2.clone(), k - p - 1));
        mats.push(kron_all(&factors) * i);
    }
    Ok(GeneratorRep { n, dim: 1 << k, mats })
}

impl GeneratorRep {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the representation space.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.mats
    }

    /// Matrix of the blade `e_{j1} ... e_{jk}`.
    pub fn blade_matrix(&self, blade: Blade) -> CMatrix {
        blade
            .indices()
            .iter()
            .fold(identity(self.dim), |acc, &j| acc * &self.mats[j - 1])
    }

    fn check(&self, n: usize) -> Result<()> {
        if n != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: n });
        }
        Ok(())
    }

    /// Image of a scalar-coefficient multivector.
    pub fn represent<S: Scalar>(&self, x: &Multivector<S>) -> Result<CMatrix> {
        self.check(x.n())?;
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (blade, c) in x.terms() {
            out += self.blade_matrix(blade) * Complex64::new(c.to_f64(), 0.0);
        }
        Ok(out)
    }

    /// Image of an operator-valued multivector on `H (x) H_0`.
    pub fn represent_operator(&self, x: &Multivector<CMatrix>) -> Result<CMatrix> {
        self.check(x.n())?;
        let d = x.terms().next().map_or(1, |(_, c)| c.nrows());
        let mut out = CMatrix::zeros(d * self.dim, d * self.dim);
        for (blade, c) in x.terms() {
            if c.nrows() != d {
                return Err(Error::DimensionMismatch { expected: d, found: c.nrows() });
            }
            out += kron(c, &self.blade_matrix(blade));
        }
        Ok(out)
    }
}

/// Sum of coefficient spectral norms: an upper bound for the operator norm of
/// the represented element.
pub fn mv_norm_bound(x: &Multivector<CMatrix>) -> f64 {
    x.terms().map(|(_, c)| spectral_norm(c)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{frobenius_norm, random_hermitian};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generator_relations_hold() {
        for n in 1..=6 {
            let rep = generator_matrices(n).unwrap();
            assert_eq!(rep.dim(), 1 << n.div_ceil(2));
            let id = identity(rep.dim());
            for (j, ej) in rep.generators().iter().enumerate() {
                assert!(frobenius_norm(&(ej * ej + &id)) <= 1e-14);
                assert!(frobenius_norm(&(ej + ej.adjoint())) <= 1e-14);
                for ek in &rep.generators()[j + 1..] {
                    assert!(frobenius_norm(&(ej * ek + ek * ej)) <= 1e-14);
                }
            }
        }
    }

    #[test]
    fn n_zero_is_rejected() {
        assert!(generator_matrices(0).is_err());
    }

    #[test]
    fn norm_bound_examples() {
        let zero: Multivector<CMatrix> = Multivector::zero(2);
        assert_eq!(mv_norm_bound(&zero), 0.0);

        let one = Multivector::monomial(2, Blade::UNIT, identity(3)).unwrap();
        assert!((mv_norm_bound(&one) - 1.0).abs() < 1e-14);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_hermitian(&mut rng, 3);
        let b = random_hermitian(&mut rng, 3);
        let x = Multivector::from_terms(
            2,
            [(Blade::UNIT, a.clone()), (Blade::generator(1).unwrap(), b.clone())],
        )
        .unwrap();
        let expected = spectral_norm(&a) + spectral_norm(&b);
        assert!((mv_norm_bound(&x) - expected).abs() < 1e-12);
    }

    #[test]
    fn norm_bound_dominates_represented_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let rep = generator_matrices(3).unwrap();
        let x = Multivector::from_terms(
            3,
            (0..8u32).map(|b| (Blade::from_bits(b), random_hermitian(&mut rng, 2))),
        )
        .unwrap();
        let exact = spectral_norm(&rep.represent_operator(&x).unwrap());
        assert!(exact <= mv_norm_bound(&x) + 1e-12);
    }
}
