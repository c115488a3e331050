//! Regular variables and the hyperholomorphic basis `V_alpha`.

use std::collections::BTreeMap;

use super::multi_index::MultiIndex;
use super::operators::{OperatorTuple, PointR};
use super::poly::CliffordPoly;
use super::symmetric::{symmetric_power, symmetric_power_lattice};
use crate::clifford::{Blade, CMatrix, Multivector, Rational, Ring, Scalar};
use crate::error::{Error, Result};

fn check_index(j: usize, n: usize) -> Result<()> {
    if j == 0 || j > n {
        return Err(Error::InvalidDimension { index: j, n });
    }
    Ok(())
}

fn check_alpha(alpha: &MultiIndex, n: usize) -> Result<()> {
    if alpha.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: alpha.n() });
    }
    Ok(())
}

/// Regular variable `x_j-> = e_j x_0 - e_0 x_j` at a point.
pub fn regular_variable(j: usize, x: &PointR) -> Result<Multivector<f64>> {
    let n = x.n();
    check_index(j, n)?;
    let c = x.coords();
    Multivector::from_terms(n, [(Blade::generator(j)?, c[0]), (Blade::UNIT, -c[j])])
}

/// Regular variable as a polynomial in `x_0..x_n`.
pub fn regular_variable_poly<S: Scalar>(n: usize, j: usize) -> Result<CliffordPoly<S>> {
    check_index(j, n)?;
    let ej = Multivector::generator(n, j)?;
    let x0 = CliffordPoly::variable(n, 0).right_mul(&ej);
    let xj = CliffordPoly::variable(n, j).scale(-1, 1);
    x0.try_add(&xj)
}

/// `V_alpha(x)`: symmetric product of regular-variable values with
/// multiplicities `alpha`; `V_0 = e_0`.
pub fn v_poly_point(alpha: &MultiIndex, x: &PointR) -> Result<Multivector<f64>> {
    let n = x.n();
    check_alpha(alpha, n)?;
    let gens: Vec<_> = (1..=n).map(|j| regular_variable(j, x)).collect::<Result<_>>()?;
    symmetric_power(&gens, &Multivector::one(n), alpha)
}

/// `V_alpha(x)` for every `|alpha| <= max_degree` at one point.
pub fn v_point_lattice(x: &PointR, max_degree: u32) -> Result<BTreeMap<MultiIndex, Multivector<f64>>> {
    let n = x.n();
    let gens: Vec<_> = (1..=n).map(|j| regular_variable(j, x)).collect::<Result<_>>()?;
    Ok(symmetric_power_lattice(&gens, &Multivector::one(n), max_degree))
}

/// `V_alpha` as an exact polynomial.
pub fn v_poly<S: Scalar>(alpha: &MultiIndex) -> Result<CliffordPoly<S>> {
    let n = alpha.n();
    let gens: Vec<_> = (1..=n).map(|j| regular_variable_poly(n, j)).collect::<Result<_>>()?;
    symmetric_power(&gens, &CliffordPoly::constant(Multivector::one(n)), alpha)
}

/// Every `V_alpha` with `|alpha| <= max_degree` as exact polynomials.
pub fn v_poly_lattice<S: Scalar>(n: usize, max_degree: u32) -> Result<BTreeMap<MultiIndex, CliffordPoly<S>>> {
    let gens: Vec<_> = (1..=n).map(|j| regular_variable_poly(n, j)).collect::<Result<_>>()?;
    Ok(symmetric_power_lattice(&gens, &CliffordPoly::constant(Multivector::one(n)), max_degree))
}

/// Cauchy-Kovalevskaya extension `sum_j (-x_0)^j / j! * Dspace^j g` of a
/// polynomial `g` that does not depend on `x_0`.
pub fn ck_extension<S: Scalar>(g: &CliffordPoly<S>) -> Result<CliffordPoly<S>> {
    if g.terms().any(|(e, _)| e[0] != 0) {
        return Err(Error::Domain("initial polynomial must not depend on x_0".into()));
    }
    let n = g.n();
    let minus_x0 = CliffordPoly::variable(n, 0).scale(-1, 1);
    let mut power = CliffordPoly::constant(Multivector::one(n));
    let mut derived = g.clone();
    let mut out = CliffordPoly::zero(n);
    let mut j: i64 = 0;
    while !derived.is_zero() {
        if j > 0 {
            power = power.try_mul(&minus_x0)?.scale(1, j);
        }
        out = out.try_add(&power.try_mul(&derived)?)?;
        derived = derived.spatial_dirac();
        j += 1;
    }
    Ok(out)
}

/// `V_alpha` through its restriction to `x_0 = 0`.
///
/// There `V_alpha` equals `(-1)^|alpha| x^alpha`, so `V_alpha` is
/// `(-1)^|alpha|` times the CK extension of the real monomial `x^alpha`.
pub fn v_poly_ck_poly(alpha: &MultiIndex) -> Result<CliffordPoly<Rational>> {
    let n = alpha.n();
    let mut exps = vec![0];
    exps.extend_from_slice(alpha.exps());
    let sign = if alpha.degree().is_multiple_of(2) { 1 } else { -1 };
    let initial = CliffordPoly::monomial(exps, Multivector::scalar(n, Rational::from_ratio(sign, 1)));
    ck_extension(&initial)
}

/// `V_alpha(x)` evaluated through the CK-extension form.
pub fn v_poly_ck(alpha: &MultiIndex, x: &PointR) -> Result<Multivector<f64>> {
    check_alpha(alpha, x.n())?;
    Ok(v_poly_ck_poly(alpha)?.eval(x.coords()))
}

/// Left Dirac derivative `sum_{j=0}^n e_j dp/dx_j`.
pub fn dirac_apply<S: Scalar>(p: &CliffordPoly<S>) -> CliffordPoly<S> {
    p.dirac()
}

/// `V_alpha(T) = T_1^{alpha_1} x ... x T_m^{alpha_m} x I x ... x I`.
///
/// `alpha` ranges over the ambient dimension `n >= m`; indices past `m` use
/// identity factors.
pub fn v_poly_operators(alpha: &MultiIndex, tuple: &OperatorTuple, n: usize) -> Result<CMatrix> {
    check_alpha(alpha, n)?;
    let padded = tuple.padded(n)?;
    symmetric_power(padded.matrices(), &tuple.identity(), alpha)
}

/// `V_alpha(T)` for every `|alpha| <= max_degree`.
pub fn v_operator_lattice(tuple: &OperatorTuple, n: usize, max_degree: u32) -> Result<BTreeMap<MultiIndex, CMatrix>> {
    let padded = tuple.padded(n)?;
    Ok(symmetric_power_lattice(padded.matrices(), &tuple.identity(), max_degree))
}

/// Finite hyperholomorphic polynomial `f = sum_alpha V_alpha c_alpha` with
/// Clifford coefficients on the right.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperPolynomial {
    n: usize,
    coeffs: BTreeMap<MultiIndex, Multivector<f64>>,
}

impl HyperPolynomial {
    pub fn zero(n: usize) -> Self {
        HyperPolynomial { n, coeffs: BTreeMap::new() }
    }

    /// `V_alpha * c`.
    pub fn basis(alpha: MultiIndex, c: Multivector<f64>) -> Result<Self> {
        let mut p = Self::zero(alpha.n());
        p.add_term(alpha, c)?;
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: Multivector<f64>) -> Result<()> {
        check_alpha(&alpha, self.n)?;
        if c.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: c.n() });
        }
        let sum = match self.coeffs.remove(&alpha) {
            Some(existing) => existing.try_add(&c)?,
            None => c,
        };
        if !sum.is_empty() {
            self.coeffs.insert(alpha, sum);
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Multivector<f64>)> {
        self.coeffs.iter()
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (a, c) in &other.coeffs {
            out.add_term(a.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(a, c)| (a.clone(), c.scale_f64(factor)))
            .filter(|(_, c)| !c.is_empty())
            .collect();
        HyperPolynomial { n: self.n, coeffs }
    }

    /// `f(x) = sum V_alpha(x) c_alpha`.
    pub fn eval(&self, x: &PointR) -> Result<Multivector<f64>> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.n() });
        }
        let lattice = v_point_lattice(x, self.degree())?;
        let mut out = Multivector::zero(self.n);
        for (a, c) in &self.coeffs {
            out = out.try_add(&lattice[a].try_mul(c)?)?;
        }
        Ok(out)
    }

    /// Expanded polynomial form in `x_0..x_n`.
    pub fn to_poly(&self) -> CliffordPoly<f64> {
        let lattice = v_poly_lattice::<f64>(self.n, self.degree()).expect("valid dimension");
        let mut out = CliffordPoly::zero(self.n);
        for (a, c) in &self.coeffs {
            out = out.try_add(&lattice[a].right_mul(c)).expect("same dimension");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyspace::{exact_rank, homogeneous_count, multi_indices, multi_indices_up_to};

    fn pt(c: &[f64]) -> PointR {
        PointR::new(c.to_vec()).unwrap()
    }

    fn mv(n: usize, terms: &[(u32, f64)]) -> Multivector<f64> {
        Multivector::from_terms(n, terms.iter().map(|&(b, c)| (Blade::from_bits(b), c))).unwrap()
    }

    #[test]
    fn regular_variable_examples() {
        assert_eq!(regular_variable(1, &pt(&[1.0, 0.0, 0.0])).unwrap(), mv(2, &[(1, 1.0)]));
        assert_eq!(regular_variable(1, &pt(&[0.0, 1.0, 0.0])).unwrap(), mv(2, &[(0, -1.0)]));
        assert_eq!(regular_variable(2, &pt(&[2.0, 5.0, 3.0])).unwrap(), mv(2, &[(2, 2.0), (0, -3.0)]));
        assert!(regular_variable(3, &pt(&[0.0, 1.0, 0.0])).is_err());
        assert!(regular_variable(0, &pt(&[0.0, 1.0, 0.0])).is_err());
    }

    #[test]
    fn v_poly_point_examples() {
        let x = pt(&[1.0, 1.0, 1.0]);
        assert_eq!(v_poly_point(&MultiIndex::zeros(2), &x).unwrap(), Multivector::one(2));
        assert_eq!(
            v_poly_point(&MultiIndex::unit(2, 2), &x).unwrap(),
            regular_variable(2, &x).unwrap()
        );
        // x1 = e1 - 1, x2 = e2 - 1: (1/2)(x1 x2 + x2 x1) = 1 - e1 - e2
        let v11 = v_poly_point(&MultiIndex::new(vec![1, 1]), &x).unwrap();
        assert!(v11.distance(&mv(2, &[(0, 1.0), (1, -1.0), (2, -1.0)])) < 1e-15);
    }

    #[test]
    fn v_polys_are_hyperholomorphic() {
        for n in 2..=3 {
            for (alpha, p) in v_poly_lattice::<Rational>(n, 4).unwrap() {
                assert!(dirac_apply(&p).is_zero(), "D V_{alpha:?} != 0");
            }
        }
    }

    #[test]
    fn dirac_of_regular_variable_vanishes() {
        let p = regular_variable_poly::<Rational>(3, 2).unwrap();
        assert!(dirac_apply(&p).is_zero());
        assert!(dirac_apply(&CliffordPoly::constant(Multivector::<Rational>::one(3))).is_zero());
        // a plain coordinate is not hyperholomorphic
        assert!(!dirac_apply(&CliffordPoly::<Rational>::variable(3, 1)).is_zero());
    }

    #[test]
    fn ck_form_matches_symmetric_form() {
        for n in 1..=3 {
            for alpha in multi_indices_up_to(n, 4) {
                let sym = v_poly::<Rational>(&alpha).unwrap();
                let ck = v_poly_ck_poly(&alpha).unwrap();
                assert_eq!(sym, ck, "alpha = {alpha:?}");
            }
        }
    }

    #[test]
    fn ck_unit_index_is_regular_variable() {
        let x = pt(&[0.4, -1.1, 0.7]);
        let ck = v_poly_ck(&MultiIndex::unit(2, 1), &x).unwrap();
        // x_j e0 - x0 e_j up to the global sign: equals e_j x0 - x_j
        assert!(ck.distance(&regular_variable(1, &x).unwrap()) < 1e-15);
    }

    #[test]
    fn basis_dimension() {
        for n in 1..=3 {
            for k in 0..=4 {
                let polys: Vec<_> = multi_indices(n, k).iter().map(|a| v_poly::<Rational>(a).unwrap()).collect();
                assert_eq!(exact_rank(&polys), homogeneous_count(n, k));
            }
        }
    }

    #[test]
    fn operator_examples() {
        use crate::matrix::{max_abs, random_hermitian};
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let (a, b) = (random_hermitian(&mut rng, 3), random_hermitian(&mut rng, 3));
        let t = OperatorTuple::new(vec![a.clone(), b.clone()]).unwrap();
        let v20 = v_poly_operators(&MultiIndex::new(vec![2, 0]), &t, 2).unwrap();
        assert!(max_abs(&(v20 - &a * &a)) < 1e-13);
        let v11 = v_poly_operators(&MultiIndex::new(vec![1, 1]), &t, 2).unwrap();
        let jordan = (&a * &b + &b * &a) * num_complex::Complex64::new(0.5, 0.0);
        assert!(max_abs(&(v11 - jordan)) < 1e-13);
        // padding index uses the identity
        let v001 = v_poly_operators(&MultiIndex::new(vec![1, 0, 2]), &t, 3).unwrap();
        assert!(max_abs(&(v001 - &a)) < 1e-13);
        assert!(v_poly_operators(&MultiIndex::new(vec![1]), &t, 1).is_err());
    }

    #[test]
    fn hyperpolynomial_eval_matches_expanded_form() {
        let mut f = HyperPolynomial::zero(2);
        f.add_term(MultiIndex::new(vec![1, 1]), mv(2, &[(0, 1.0), (3, 0.5)])).unwrap();
        f.add_term(MultiIndex::new(vec![0, 2]), mv(2, &[(1, -2.0)])).unwrap();
        let x = pt(&[0.2, -0.4, 0.9]);
        assert!(f.eval(&x).unwrap().distance(&f.to_poly().eval(x.coords())) < 1e-14);
        assert_eq!(f.degree(), 2);
        assert!(f.add_term(MultiIndex::new(vec![1]), Multivector::one(2)).is_err());
    }
}
