//! Symmetrization of classical polynomials, the Jordan product, the
//! exponential bridge identity `d^alpha exp(sum t_j T_j)|_0 = T^{x alpha}` and
//! Fermi filling states.

mod expm;
mod fermi;
mod poly;

use num_complex::Complex64;

use crate::clifford::CMatrix;
use crate::error::{Error, Result};
use crate::matrix::spectral_norm;
use crate::polyspace::{symmetric_power, symmetric_power_lattice, MultiIndex, OperatorTuple};

pub use expm::expm;
pub use fermi::{fermi_distribution, fermi_distribution_with, FermiConvention, FillingState};
pub use poly::ClassicalPolynomial;

fn check_same(a: &CMatrix, b: &CMatrix) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch { expected: a.nrows(), found: b.nrows() });
    }
    Ok(())
}

/// `sum_alpha p_alpha T^{x alpha}`: each monomial becomes the symmetric
/// product of its operator factors. Variables past `p.m()` are absent.
pub fn quantize(p: &ClassicalPolynomial, tuple: &OperatorTuple) -> Result<CMatrix> {
    let p = p.with_variables(tuple.m())?;
    let lattice = symmetric_power_lattice(tuple.matrices(), &tuple.identity(), p.degree());
    let mut out = CMatrix::zeros(tuple.d(), tuple.d());
    for (alpha, c) in p.terms() {
        out += &lattice[alpha] * Complex64::new(c, 0.0);
    }
    Ok(out)
}

/// `A o B = (AB + BA) / 2`.
pub fn jordan_product(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    check_same(a, b)?;
    Ok((b * a + a * b) * Complex64::new(0.5, 0.0))
}

/// `((A + B)/2)^2 - ((A - B)/2)^2`, equal to `A o B`.
pub fn jordan_square_difference(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    check_same(a, b)?;
    let half = Complex64::new(0.5, 0.0);
    let s = (a + b) * half;
    let d = (a - b) * half;
    Ok(&s * &s - &d * &d)
}

/// `||(A o B) o C - A o (B o C)||_2`.
pub fn jordan_nonassociativity_witness(a: &CMatrix, b: &CMatrix, c: &CMatrix) -> Result<f64> {
    let left = jordan_product(&jordan_product(a, b)?, c)?;
    let right = jordan_product(a, &jordan_product(b, c)?)?;
    Ok(spectral_norm(&(left - right)))
}

/// `(sigma_x, sigma_x, sigma_z)`: `(A o A) o C = sigma_z`, `A o (A o C) = 0`
/// and `A x A x C = sigma_z / 3`.
pub fn witness_triple() -> [CMatrix; 3] {
    let c = |v: f64| Complex64::new(v, 0.0);
    let x = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
    let z = CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)]);
    [x.clone(), x, z]
}

// Central stencils (offset, weight) for the k-th derivative with O(h^2) error.
fn stencil(k: u32) -> &'static [(i32, f64)] {
    match k {
        0 => &[(0, 1.0)],
        1 => &[(-1, -0.5), (1, 0.5)],
        2 => &[(-1, 1.0), (0, -2.0), (1, 1.0)],
        3 => &[(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
        _ => &[(-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)],
    }
}

fn mixed_derivative(alpha: &MultiIndex, tuple: &OperatorTuple, h: f64) -> CMatrix {
    let stencils: Vec<&[(i32, f64)]> = alpha.exps().iter().map(|&k| stencil(k)).collect();
    let d = tuple.d();
    let mut out = CMatrix::zeros(d, d);
    let mut idx = vec![0usize; stencils.len()];
    loop {
        let mut weight = 1.0;
        let mut arg = CMatrix::zeros(d, d);
        for (j, s) in stencils.iter().enumerate() {
            let (offset, w) = s[idx[j]];
            weight *= w;
            if offset != 0 {
                arg += &tuple.matrices()[j] * Complex64::new(f64::from(offset) * h, 0.0);
            }
        }
        out += expm(&arg) * Complex64::new(weight, 0.0);
        let mut j = 0;
        loop {
            if j == idx.len() {
                return out * Complex64::new(h.powi(-(alpha.degree() as i32)), 0.0);
            }
            idx[j] += 1;
            if idx[j] < stencils[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// `||D^alpha exp(sum t_j T_j)|_{t=0} - T^{x alpha}||_2` with the derivative
/// taken by central differences at steps `h` and `h/2`, Richardson
/// extrapolated.
pub fn weyl_exponential_check(alpha: &MultiIndex, tuple: &OperatorTuple, step: f64) -> Result<f64> {
    if alpha.degree() > 4 {
        return Err(Error::Domain(format!("|alpha| = {} exceeds 4", alpha.degree())));
    }
    if !(1e-3..=1e-1).contains(&step) {
        return Err(Error::Domain(format!("step {step} outside [1e-3, 1e-1]")));
    }
    if alpha.n() != tuple.m() {
        return Err(Error::DimensionMismatch { expected: tuple.m(), found: alpha.n() });
    }
    let coarse = mixed_derivative(alpha, tuple, step);
    let fine = mixed_derivative(alpha, tuple, step / 2.0);
    let extrapolated = (fine * Complex64::new(4.0, 0.0) - coarse) * Complex64::new(1.0 / 3.0, 0.0);
    let exact = symmetric_power(tuple.matrices(), &tuple.identity(), alpha)?;
    Ok(spectral_norm(&(extrapolated - exact)))
}

/// Truncated oscillator pair `Q = (a + a*)/sqrt 2`, `P = (a - a*)/(i sqrt 2)`
/// in dimension `d`; `[Q, P] = i` holds on the leading `(d-1)` block only.
pub fn heisenberg_pair(d: usize) -> Result<OperatorTuple> {
    if d < 2 {
        return Err(Error::Domain(format!("oscillator truncation needs d >= 2, got {d}")));
    }
    let mut a = CMatrix::zeros(d, d);
    for k in 1..d {
        a[(k - 1, k)] = Complex64::new((k as f64).sqrt(), 0.0);
    }
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let ad = a.adjoint();
    let q = (&a + &ad) * Complex64::new(r, 0.0);
    let p = (&a - &ad) * Complex64::new(0.0, -r);
    OperatorTuple::new(vec![q, p])
}
