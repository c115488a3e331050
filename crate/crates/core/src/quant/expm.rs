use num_complex::Complex64;

use crate::clifford::CMatrix;
use crate::matrix::identity;

// [6/6] Pade coefficients c_k = (12-k)! 6! / (12! k! (6-k)!)
const PADE6: [f64; 7] = [
    1.0,
    1.0 / 2.0,
    5.0 / 44.0,
    1.0 / 66.0,
    1.0 / 792.0,
    1.0 / 15840.0,
    1.0 / 665280.0,
];

fn norm1(a: &CMatrix) -> f64 {
    (0..a.ncols()).map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring with a [6/6] Pade approximant.
pub fn expm(a: &CMatrix) -> CMatrix {
    let d = a.nrows();
    let norm = norm1(a);
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let x = a * Complex64::new(0.5f64.powi(s), 0.0);
    let mut num = identity(d);
    let mut den = identity(d);
    let mut power = identity(d);
    for (k, &c) in PADE6.iter().enumerate().skip(1) {
        power = &power * &x;
        num += &power * Complex64::new(c, 0.0);
        den += &power * Complex64::new(if k % 2 == 0 { c } else { -c }, 0.0);
    }
    let mut r = den.lu().solve(&num).expect("Pade denominator is invertible for scaled input");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{max_abs, random_hermitian};
    use nalgebra::SymmetricEigen;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pade_coefficients() {
        let fact = |n: u32| (1..=n).map(f64::from).product::<f64>();
        for (k, &c) in PADE6.iter().enumerate() {
            let k = k as u32;
            let want = fact(12 - k) * fact(6) / (fact(12) * fact(k) * fact(6 - k));
            assert!((c - want).abs() < 1e-16 * want.max(1.0));
        }
    }

    #[test]
    fn matches_eigendecomposition() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in [1, 3, 6] {
            for scale in [0.01, 1.0, 4.0] {
                let h = random_hermitian(&mut rng, d) * Complex64::new(scale, 0.0);
                let eig = SymmetricEigen::new(h.clone());
                let diag = eig.eigenvalues.map(|l| Complex64::new(l.exp(), 0.0));
                let want = &eig.eigenvectors * CMatrix::from_diagonal(&diag) * eig.eigenvectors.adjoint();
                let got = expm(&h);
                assert!(max_abs(&(got - &want)) <= 1e-12 * max_abs(&want), "d = {d}, scale = {scale}");
            }
        }
    }

    #[test]
    fn rotation_generator() {
        // exp(t [[0,-1],[1,0]]) is the rotation by t
        let t = 1.3;
        let a = CMatrix::from_row_slice(2, 2, &[0.0.into(), (-t).into(), t.into(), 0.0.into()]);
        let r = expm(&a);
        assert!((r[(0, 0)].re - t.cos()).abs() < 1e-14);
        assert!((r[(1, 0)].re - t.sin()).abs() < 1e-14);
        assert_eq!(expm(&CMatrix::zeros(2, 2)), identity(2));
    }
}
