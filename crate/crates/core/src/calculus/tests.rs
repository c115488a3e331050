use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::clifford::{Blade, Multivector};
use crate::kernels::cauchy_kernel;
use crate::matrix::{hermitian_residual, identity, max_abs, random_hermitian, spectral_norm};
use crate::polyspace::{multi_indices_up_to, HyperPolynomial, MultiIndex, OperatorTuple, PointR};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn pauli() -> OperatorTuple {
    let x = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
    let z = CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)]);
    OperatorTuple::new(vec![x, z]).unwrap()
}

fn random_tuple(rng: &mut ChaCha8Rng, m: usize, d: usize) -> OperatorTuple {
    OperatorTuple::new((0..m).map(|_| random_hermitian(rng, d)).collect()).unwrap()
}

fn random_mv(rng: &mut ChaCha8Rng, n: usize) -> Multivector<f64> {
    Multivector::from_terms(n, (0..1u32 << n).map(|b| (Blade::from_bits(b), rng.gen_range(-1.0..1.0)))).unwrap()
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> HyperPolynomial {
    let mut f = HyperPolynomial::zero(n);
    for alpha in multi_indices_up_to(n, degree) {
        f.add_term(alpha, random_mv(rng, n)).unwrap();
    }
    f
}

fn basis(alpha: &[u32], n: usize) -> HyperPolynomial {
    HyperPolynomial::basis(MultiIndex::new(alpha.to_vec()), Multivector::one(n)).unwrap()
}

fn scalar_matrix(r: &CalculusResult) -> CMatrix {
    r.as_matrix().expect("scalar-valued result")
}

fn expm_hermitian(a: &CMatrix) -> CMatrix {
    let eig = SymmetricEigen::new(a.clone());
    let d = eig.eigenvalues.map(|l| c(l.exp()));
    &eig.eigenvectors * CMatrix::from_diagonal(&d) * eig.eigenvectors.adjoint()
}

#[test]
fn spectral_bound_examples() {
    let zero = OperatorTuple::new(vec![CMatrix::zeros(3, 3); 2]).unwrap();
    assert_eq!(spectral_radius_bound(&zero), 0.0);
    let t1 = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0), c(-2.0)]));
    let t = OperatorTuple::new(vec![t1, identity(2)]).unwrap();
    assert!((spectral_radius_bound(&t) - 2.0).abs() < 1e-14);
    assert!((spectral_radius_bound(&pauli()) - 1.0).abs() < 1e-14);
}

#[test]
fn zero_tuple_kernel_is_scalar_kernel() {
    let zero = OperatorTuple::new(vec![CMatrix::zeros(2, 2); 2]).unwrap();
    let y = PointR::new(vec![0.3, -0.7, 0.4]).unwrap();
    let e = cauchy_kernel(&y).unwrap().tensor_matrix(&identity(2));
    for j in [0, 3] {
        let cfg = OperatorKernelConfig::for_tuple(&zero, j);
        let k = operator_cauchy_kernel(&y, &zero, &cfg).unwrap();
        assert!(mv_norm_bound(&k.value.minus(&e)) < 1e-15);
    }
    let origin = PointR::new(vec![0.0; 3]).unwrap();
    assert!(matches!(
        operator_cauchy_kernel(&origin, &zero, &OperatorKernelConfig::for_tuple(&zero, 1)),
        Err(Error::Singularity)
    ));
}

#[test]
fn scalar_tuple_matches_shifted_kernel() {
    // V_alpha(x) = t^alpha at x = (0, -t), so E(y, t) = E(y + (0, t))
    let t = [0.2, -0.15];
    let tuple = OperatorTuple::new(t.iter().map(|&v| CMatrix::from_element(1, 1, c(v))).collect()).unwrap();
    let y = PointR::new(vec![0.5, 0.6, -0.4]).unwrap();
    let shifted = PointR::new(vec![0.5, 0.6 + t[0], -0.4 + t[1]]).unwrap();
    let want = cauchy_kernel(&shifted).unwrap();
    let cfg = OperatorKernelConfig::for_tuple(&tuple, 18);
    let k = operator_cauchy_kernel(&y, &tuple, &cfg).unwrap();
    let got = k.value.map(|m| m[(0, 0)].re);
    assert!(got.distance(&want) < 1e-9, "{}", got.distance(&want));
    assert!(k.warnings.is_empty());
}

#[test]
fn kernel_terms_decay_geometrically() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let tuple = random_tuple(&mut rng, 2, 3);
    let bound = spectral_radius_bound(&tuple);
    let y = PointR::new(vec![0.4, 0.8, -0.45]).unwrap();
    let y = y.scaled(2.0 * bound / y.norm());
    let report = resolvent_probe(&y, &tuple, 12).unwrap();
    assert_eq!(report.verdict, Verdict::Converging);
    assert!(report.tail_ratio <= 0.5 * 1.3, "{}", report.tail_ratio);
    assert!(report.tail_ratio > 0.2, "{}", report.tail_ratio);
}

#[test]
fn probe_verdicts() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let tuple = random_tuple(&mut rng, 2, 4);
    let bound = spectral_radius_bound(&tuple);
    let dir = PointR::new(vec![0.0, 1.0, 0.0]).unwrap();
    let far = resolvent_probe(&dir.scaled(2.0 * bound), &tuple, 10).unwrap();
    let near = resolvent_probe(&dir.scaled(0.1 * bound), &tuple, 10).unwrap();
    assert_eq!(far.verdict, Verdict::Converging);
    assert_eq!(near.verdict, Verdict::Diverging);
    assert_eq!(far.rows.len(), 11);
    let zero = OperatorTuple::new(vec![CMatrix::zeros(2, 2); 2]).unwrap();
    for r in [0.01, 1.0, 50.0] {
        assert_eq!(resolvent_probe(&dir.scaled(r), &zero, 6).unwrap().verdict, Verdict::Converging);
    }
}

#[test]
fn taylor_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let tuple = random_tuple(&mut rng, 2, 3);
    let (t1, t2) = (&tuple.matrices()[0], &tuple.matrices()[1]);
    let r = calculus_taylor(&basis(&[1, 0], 2), &tuple).unwrap();
    assert_eq!(&scalar_matrix(&r), t1);
    let r = calculus_taylor(&basis(&[1, 1], 2), &tuple).unwrap();
    let jordan = (t1 * t2 + t2 * t1) * c(0.5);
    assert!(max_abs(&(scalar_matrix(&r) - jordan)) < 1e-15);
    assert_eq!(r.diagnostics.truncation_error, 0.0);

    let diag = OperatorTuple::new(vec![
        CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(2.0), c(-1.0)])),
        CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(3.0), c(0.5)])),
    ])
    .unwrap();
    let r = calculus_taylor(&basis(&[2, 1], 2), &diag).unwrap();
    let want = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(12.0), c(0.5)]));
    assert!(max_abs(&(scalar_matrix(&r) - want)) < 1e-15);
}

#[test]
fn taylor_is_linear_and_unital() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let tuple = random_tuple(&mut rng, 3, 3);
    let f = random_poly(&mut rng, 3, 2);
    let g = random_poly(&mut rng, 3, 3);
    let lhs = calculus_taylor(&f.scale(1.5).try_add(&g).unwrap(), &tuple).unwrap();
    let rhs = calculus_taylor(&f, &tuple).unwrap().value.map(|m| m * c(1.5)).plus(&calculus_taylor(&g, &tuple).unwrap().value);
    assert!(lhs.distance(&rhs) < 1e-12);
    let one = calculus_taylor(&HyperPolynomial::basis(MultiIndex::zeros(3), Multivector::one(3)).unwrap(), &tuple).unwrap();
    assert_eq!(scalar_matrix(&one), identity(3));
}

#[test]
fn real_scalar_coefficients_give_hermitian_output() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let tuple = random_tuple(&mut rng, 2, 4);
    let mut f = HyperPolynomial::zero(2);
    for alpha in multi_indices_up_to(2, 4) {
        f.add_term(alpha, Multivector::scalar(2, rng.gen_range(-1.0..1.0))).unwrap();
    }
    let m = scalar_matrix(&calculus_taylor(&f, &tuple).unwrap());
    assert!(hermitian_residual(&m) <= 1e-10 * spectral_norm(&m));
}

#[test]
fn padding_with_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let tuple = random_tuple(&mut rng, 1, 3);
    // V_(1,1) with T_2 = I is T_1
    let r = calculus_taylor(&basis(&[1, 1], 2), &tuple).unwrap();
    assert!(max_abs(&(scalar_matrix(&r) - &tuple.matrices()[0])) < 1e-15);
    let two = random_tuple(&mut rng, 2, 3);
    assert!(matches!(calculus_taylor(&basis(&[1], 1), &two), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn taylor_series_reproduces_exponential() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let tuple = random_tuple(&mut rng, 2, 3);
    let s = [0.4, -0.3];
    let coeff = |alpha: &MultiIndex| Multivector::scalar(2, alpha.monomial(&s) / alpha.factorial());
    let r = calculus_taylor_series(2, coeff, &tuple, 24, 4).unwrap();
    let a = &tuple.matrices()[0] * c(s[0]) + &tuple.matrices()[1] * c(s[1]);
    let want = expm_hermitian(&a);
    assert!(max_abs(&(scalar_matrix(&r) - want)) < 1e-12);
    assert!(r.diagnostics.truncation_error < 1e-12);
    let short = calculus_taylor_series(2, coeff, &tuple, 2, 4).unwrap();
    assert!(short.diagnostics.truncation_error > 1e-6);
}

#[test]
fn integral_reproduces_identity_and_generator() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let tuple = random_tuple(&mut rng, 2, 4);
    let cfg = OperatorKernelConfig::for_tuple(&tuple, 1);
    let one = HyperPolynomial::basis(MultiIndex::zeros(2), Multivector::one(2)).unwrap();
    let r = calculus_integral(&one, &tuple, &cfg).unwrap();
    assert!(r.distance(&Multivector::<f64>::one(2).tensor_matrix(&identity(4))) < 1e-7);
    let r = calculus_integral(&basis(&[1, 0], 2), &tuple, &cfg).unwrap();
    assert!(r.distance(&Multivector::<f64>::one(2).tensor_matrix(&tuple.matrices()[0])) < 1e-7);
    assert_eq!(r.diagnostics.quad_order, Some(32));
    assert!(r.diagnostics.truncation_error < 1e-7);
    assert!(r.diagnostics.warnings.is_empty(), "{:?}", r.diagnostics.warnings);
}

#[test]
fn integral_matches_taylor() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let tuple = random_tuple(&mut rng, 2, 4);
        let f = random_poly(&mut rng, 2, 3);
        let taylor = calculus_taylor(&f, &tuple).unwrap();
        let integral = calculus_integral(&f, &tuple, &OperatorKernelConfig::for_tuple(&tuple, 3)).unwrap();
        let rel = integral.relative_distance(&taylor.value);
        assert!(rel < 1e-6, "{rel}");
    }
}

#[test]
fn integral_matches_taylor_three_operators() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let tuple = random_tuple(&mut rng, 3, 3);
    let f = random_poly(&mut rng, 3, 2);
    let taylor = calculus_taylor(&f, &tuple).unwrap();
    let cfg = OperatorKernelConfig { quad_order: 16, ..OperatorKernelConfig::for_tuple(&tuple, 2) };
    let integral = calculus_integral(&f, &tuple, &cfg).unwrap();
    assert!(integral.relative_distance(&taylor.value) < 1e-6);
}

#[test]
fn direct_and_factored_integrals_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let tuple = random_tuple(&mut rng, 2, 3);
    let f = random_poly(&mut rng, 2, 2);
    let cfg = OperatorKernelConfig { quad_order: 12, ..OperatorKernelConfig::for_tuple(&tuple, 2) };
    let direct = calculus_integral_direct(&f, &tuple, &cfg).unwrap();
    let factored = calculus_integral(&f, &tuple, &cfg).unwrap();
    assert!(direct.relative_distance(&factored.value) < 1e-12);
    assert!((direct.diagnostics.truncation_error - factored.diagnostics.truncation_error).abs() < 1e-10);
}

#[test]
fn integral_preconditions() {
    let tuple = pauli();
    let f = basis(&[1, 0], 2);
    let cfg = OperatorKernelConfig::for_tuple(&tuple, 1).with_radius(0.9);
    let err = calculus_integral(&f, &tuple, &cfg).unwrap_err();
    assert!(err.to_string().contains("radius below spectral bound"));
    let cfg = OperatorKernelConfig::for_tuple(&tuple, 0);
    let r = calculus_integral(&f, &tuple, &cfg).unwrap();
    assert!(!r.diagnostics.warnings.is_empty());
    assert!(r.diagnostics.truncation_error > 0.1);
}

#[test]
fn integral_independent_of_radius() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let tuple = random_tuple(&mut rng, 2, 4);
    let bound = spectral_radius_bound(&tuple);
    let cfg = OperatorKernelConfig::for_tuple(&tuple, 1);
    let one = HyperPolynomial::basis(MultiIndex::zeros(2), Multivector::one(2)).unwrap();
    assert!(vanishing_check(&one, &tuple, 1.5 * bound, 3.0 * bound, &cfg).unwrap() < 1e-7);
    let x1 = basis(&[1, 0], 2);
    assert!(vanishing_check(&x1, &tuple, 1.5 * bound, 3.0 * bound, &cfg).unwrap() < 1e-6);
    assert!(vanishing_check(&x1, &tuple, 0.5 * bound, 3.0 * bound, &cfg).is_err());
    let zero = OperatorTuple::new(vec![CMatrix::zeros(2, 2); 2]).unwrap();
    let f = random_poly(&mut rng, 2, 3);
    let cfg = OperatorKernelConfig::for_tuple(&zero, 3);
    assert!(vanishing_check(&f, &zero, 0.5, 2.0, &cfg).unwrap() < 1e-8);
}

#[test]
fn commuting_oracle_examples() {
    let diag = OperatorTuple::new(vec![
        CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(2.0), c(-1.0), c(0.5)])),
        CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(3.0), c(0.5), c(0.5)])),
    ])
    .unwrap();
    let got = commuting_oracle(&basis(&[1, 1], 2), &diag).unwrap();
    let want = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(6.0), c(-0.5), c(0.25)]));
    assert!(mv_norm_bound(&got.minus(&Multivector::<f64>::one(2).tensor_matrix(&want))) < 1e-13);
    let one = HyperPolynomial::basis(MultiIndex::zeros(2), Multivector::one(2)).unwrap();
    let got = commuting_oracle(&one, &diag).unwrap();
    assert!(mv_norm_bound(&got.minus(&Multivector::<f64>::one(2).tensor_matrix(&identity(3)))) < 1e-13);
    assert!(matches!(commuting_oracle(&one, &pauli()), Err(Error::NonCommuting { .. })));
}

#[test]
fn commuting_oracle_matches_taylor() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..5 {
        let s = random_hermitian(&mut rng, 4);
        let t1 = &s * &s * c(0.5) - &s * c(0.3);
        let t2 = &s * &s * &s * c(-0.2) + identity(4) * c(0.7);
        let tuple = OperatorTuple::new(vec![t1, t2]).unwrap();
        let f = random_poly(&mut rng, 2, 3);
        let taylor = calculus_taylor(&f, &tuple).unwrap();
        let oracle = commuting_oracle(&f, &tuple).unwrap();
        assert!(taylor.relative_distance(&oracle) < 1e-10, "{}", taylor.relative_distance(&oracle));
    }
}

#[test]
fn result_json_round_trip() {
    let tuple = pauli();
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let f = random_poly(&mut rng, 2, 2);
    let r = calculus_taylor(&f, &tuple).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let back: CalculusResult = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
    let g = calculus_taylor(&basis(&[1, 0], 2), &tuple).unwrap();
    assert!(serde_json::to_string(&g).unwrap().contains("\"kind\":\"matrix\""));
}
