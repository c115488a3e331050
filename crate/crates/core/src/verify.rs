//! Invariant suites behind `rcc verify`. Every check reports a residual
//! against a named tolerance from [`Tolerances`].

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::calculus::{
    calculus_integral, calculus_taylor, commuting_oracle, spectral_radius_bound, vanishing_check, OperatorKernelConfig,
};
use crate::clifford::{generator_matrices, Blade, Multivector, Rational};
use crate::error::{Error, Result};
use crate::kernels::{
    cauchy_kernel, integrate_boundary, kernel_decomposition_residuals, sphere_rule, KernelFamily,
};
use crate::matrix::{hermitian_residual, identity, max_abs, random_hermitian};
use crate::polyspace::{
    dirac_apply, exact_rank, homogeneous_count, multi_indices, multi_indices_up_to, symmetric_power,
    symmetric_product, v_poly, v_poly_ck_poly, HyperPolynomial, MultiIndex, OperatorTuple, PointR,
};
use crate::quant::{
    fermi_distribution, jordan_nonassociativity_witness, jordan_product, jordan_square_difference, quantize,
    weyl_exponential_check, witness_triple, ClassicalPolynomial,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Algebra,
    Hyperholo,
    Orthogonality,
    Calculus,
    Quantization,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Algebra, Suite::Hyperholo, Suite::Orthogonality, Suite::Calculus, Suite::Quantization];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Hyperholo => "hyperholo",
            Suite::Orthogonality => "orthogonality",
            Suite::Calculus => "calculus",
            Suite::Quantization => "quantization",
        }
    }

    fn seed_offset(self) -> u64 {
        self as u64 * 0x9E37_79B9
    }
}

/// Default tolerances, one per check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances(BTreeMap<String, f64>);

impl Default for Tolerances {
    fn default() -> Self {
        let pairs = [
            ("associativity", 1e-12),
            ("anti_automorphism", 1e-12),
            ("norm_identity", 1e-13),
            ("representation", 1e-12),
            ("dirac", 0.0),
            ("ck_agreement", 0.0),
            ("rank_deficit", 0.0),
            ("reproduction", 1e-8),
            ("exterior", 1e-8),
            ("biorthogonality", 1e-6),
            ("decomposition_rate", 0.1),
            ("route_agreement", 1e-6),
            ("identity", 1e-7),
            ("generator", 1e-7),
            ("vanishing", 1e-6),
            ("commuting_oracle", 1e-10),
            ("symmetric_lattice", 1e-12),
            ("jordan_exact", 0.0),
            ("jordan_square_difference", 1e-13),
            ("nonassociativity_witness", 0.1),
            ("weyl_exponential", 1e-4),
            ("multiplicative", 1e-12),
            ("hermitian", 1e-12),
            ("fermi_normalization", 1e-12),
        ];
        Tolerances(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }
}

impl Tolerances {
    pub fn get(&self, name: &str) -> f64 {
        self.0[name]
    }

    /// Applies `name=value`; unknown names are rejected.
    pub fn set_override(&mut self, spec: &str) -> Result<()> {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| Error::Parse { position: 0, message: format!("expected name=value, got '{spec}'") })?;
        let name = name.trim();
        let value: f64 = value.trim().parse().map_err(|_| Error::Parse {
            position: name.len() + 1,
            message: format!("invalid tolerance value '{}'", value.trim()),
        })?;
        match self.0.get_mut(name) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(Error::Domain(format!("unknown tolerance '{name}'"))),
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub max_degree: u32,
    pub tolerances: Tolerances,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 7, max_degree: 3, tolerances: Tolerances::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Pass when `residual <= tolerance`.
    AtMost,
    /// Pass when `residual > tolerance`.
    Exceeds,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub passed: bool,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

struct Recorder<'a> {
    suite: Suite,
    tol: &'a Tolerances,
    out: Vec<CheckResult>,
}

impl Recorder<'_> {
    fn at_most(&mut self, name: &str, residual: f64, samples: usize) {
        let tolerance = self.tol.get(name);
        self.push(name, residual, tolerance, Comparison::AtMost, residual <= tolerance, samples);
    }

    fn exceeds(&mut self, name: &str, residual: f64, samples: usize) {
        let tolerance = self.tol.get(name);
        self.push(name, residual, tolerance, Comparison::Exceeds, residual > tolerance, samples);
    }

    fn push(&mut self, name: &str, residual: f64, tolerance: f64, comparison: Comparison, passed: bool, samples: usize) {
        self.out.push(CheckResult {
            suite: self.suite,
            name: name.to_string(),
            residual,
            tolerance,
            comparison,
            passed: passed && residual.is_finite(),
            samples,
        });
    }
}

pub fn run_suites(suites: &[Suite], cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    for &suite in suites {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ suite.seed_offset());
        let mut rec = Recorder { suite, tol: &cfg.tolerances, out: Vec::new() };
        match suite {
            Suite::Algebra => algebra(&mut rec, &mut rng)?,
            Suite::Hyperholo => hyperholo(&mut rec, cfg.max_degree)?,
            Suite::Orthogonality => orthogonality(&mut rec, &mut rng, cfg.max_degree)?,
            Suite::Calculus => calculus(&mut rec, &mut rng)?,
            Suite::Quantization => quantization(&mut rec, &mut rng)?,
        }
        checks.extend(rec.out);
    }
    Ok(VerifyReport { passed: checks.iter().all(|c| c.passed), checks })
}

fn random_mv(rng: &mut ChaCha8Rng, n: usize) -> Multivector<f64> {
    Multivector::from_terms(n, (0..1u32 << n).map(|b| (Blade::from_bits(b), rng.gen_range(-1.0..1.0))))
        .expect("blades fit the dimension")
}

fn random_tuple(rng: &mut ChaCha8Rng, m: usize, d: usize) -> OperatorTuple {
    OperatorTuple::new((0..m).map(|_| random_hermitian(rng, d)).collect()).expect("Hermitian by construction")
}

fn random_hyper(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> HyperPolynomial {
    let mut f = HyperPolynomial::zero(n);
    for alpha in multi_indices_up_to(n, degree) {
        f.add_term(alpha, random_mv(rng, n)).expect("dimensions agree");
    }
    f
}

fn algebra(rec: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    let n = 3;
    let samples = 1000;
    let rep = generator_matrices(n)?;
    let (mut assoc, mut anti, mut norm, mut homo) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..samples {
        let (x, y, z) = (random_mv(rng, n), random_mv(rng, n), random_mv(rng, n));
        let xy = x.try_mul(&y)?;
        let left = xy.try_mul(&z)?;
        let right = x.try_mul(&y.try_mul(&z)?)?;
        assoc = assoc.max(left.distance(&right) / left.sup_norm().max(1.0));
        let c = xy.conjugate();
        anti = anti.max(c.distance(&y.conjugate().try_mul(&x.conjugate())?) / c.sup_norm().max(1.0));
        let coords: Vec<f64> = (0..=n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let v = Multivector::paravector(&coords)?;
        let sq: f64 = coords.iter().map(|c| c * c).sum();
        norm = norm.max(v.try_mul(&v.conjugate())?.distance(&Multivector::scalar(n, sq)));
        let lhs = rep.represent(&xy)?;
        let rhs = rep.represent(&x)? * rep.represent(&y)?;
        homo = homo.max(max_abs(&(&lhs - rhs)) / max_abs(&lhs).max(1.0));
    }
    rec.at_most("associativity", assoc, samples);
    rec.at_most("anti_automorphism", anti, samples);
    rec.at_most("norm_identity", norm, samples);
    rec.at_most("representation", homo, samples);
    Ok(())
}

fn hyperholo(rec: &mut Recorder, max_degree: u32) -> Result<()> {
    let (mut nonzero, mut mismatch, mut deficit, mut count) = (0usize, 0usize, 0usize, 0usize);
    for n in [2usize, 3] {
        for k in 0..=max_degree.max(1) {
            let mut basis = Vec::new();
            for alpha in multi_indices(n, k) {
                let v = v_poly::<Rational>(&alpha)?;
                if !dirac_apply(&v).is_zero() {
                    nonzero += 1;
                }
                if v != v_poly_ck_poly(&alpha)? {
                    mismatch += 1;
                }
                basis.push(v);
                count += 1;
            }
            deficit += homogeneous_count(n, k) - exact_rank(&basis);
        }
    }
    rec.at_most("dirac", nonzero as f64, count);
    rec.at_most("ck_agreement", mismatch as f64, count);
    rec.at_most("rank_deficit", deficit as f64, count);
    Ok(())
}

fn orthogonality(rec: &mut Recorder, rng: &mut ChaCha8Rng, max_degree: u32) -> Result<()> {
    let n = 2;
    let rule = sphere_rule(n, 1.0, 32)?;
    let one = Multivector::one(n);
    let (mut inside, mut outside) = (0.0f64, 0.0f64);
    let samples = 20;
    for _ in 0..samples {
        let dir = random_direction(rng, n);
        let x = dir.scaled(rng.gen_range(0.0..0.5));
        let far = dir.scaled(rng.gen_range(1.5..3.0));
        inside = inside.max(cauchy_one(&rule, &x).distance(&one));
        outside = outside.max(cauchy_one(&rule, &far).sup_norm());
    }
    rec.at_most("reproduction", inside, samples);
    rec.at_most("exterior", outside, samples);

    let rule = sphere_rule(n, 1.0, 48)?;
    let family = KernelFamily::new(n, max_degree);
    let indices = multi_indices_up_to(n, max_degree);
    let mut worst = 0.0f64;
    for beta in &indices {
        for alpha in &indices {
            let m = integrate_boundary(&rule, Multivector::zero(n), |node| {
                let y = PointR::new(node.point.to_vec()).expect("finite node");
                let w = family.eval(beta, &y).expect("node off the origin");
                let v = crate::polyspace::v_poly_point(alpha, &y).expect("matching dimension");
                w.try_mul(&node.dsigma()).and_then(|a| a.try_mul(&v)).expect("same algebra")
            });
            let want = if alpha == beta { one.clone() } else { Multivector::zero(n) };
            worst = worst.max(m.distance(&want));
        }
    }
    rec.at_most("biorthogonality", worst, indices.len() * indices.len());

    let samples = 10;
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let y = random_direction(rng, n);
        let x = random_direction(rng, n).scaled(0.3);
        let rate = decomposition_rate(&x, &y)?;
        worst = worst.max((rate - 0.3).abs());
    }
    rec.at_most("decomposition_rate", worst, samples);
    Ok(())
}

/// Per-degree decay rate `(res(8) / res(0))^{1/8}` of the truncated kernel
/// decomposition.
pub fn decomposition_rate(x: &PointR, y: &PointR) -> Result<f64> {
    let res = kernel_decomposition_residuals(x, y, 8)?;
    Ok((res[8] / res[0]).powf(1.0 / 8.0))
}

fn random_direction(rng: &mut ChaCha8Rng, n: usize) -> PointR {
    loop {
        let v: Vec<f64> = (0..=n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if (0.1..=1.0).contains(&r) {
            return PointR::new(v.iter().map(|c| c / r).collect()).expect("finite");
        }
    }
}

fn cauchy_one(rule: &crate::kernels::QuadratureRule, x: &PointR) -> Multivector<f64> {
    integrate_boundary(rule, Multivector::zero(rule.n), |node| {
        let y = PointR::new(node.point.to_vec()).expect("finite node");
        let e = cauchy_kernel(&y.sub(x).expect("same dimension")).expect("x off the sphere");
        e.try_mul(&node.dsigma()).expect("same algebra")
    })
}

fn calculus(rec: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    let samples = 4;
    let (mut agree, mut vanish, mut ident, mut gen) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..samples {
        let tuple = random_tuple(rng, 2, 4);
        let f = random_hyper(rng, 2, 3);
        let cfg = OperatorKernelConfig::for_tuple(&tuple, 3);
        let taylor = calculus_taylor(&f, &tuple)?;
        let integral = calculus_integral(&f, &tuple, &cfg)?;
        agree = agree.max(integral.relative_distance(&taylor.value));
        let bound = spectral_radius_bound(&tuple);
        vanish = vanish.max(vanishing_check(&f, &tuple, 1.5 * bound, 3.0 * bound, &cfg)?);
        let one = HyperPolynomial::basis(MultiIndex::zeros(2), Multivector::one(2))?;
        let r = calculus_integral(&one, &tuple, &cfg)?;
        ident = ident.max(r.distance(&Multivector::<f64>::one(2).tensor_matrix(&identity(4))));
        let x1 = HyperPolynomial::basis(MultiIndex::unit(2, 1), Multivector::one(2))?;
        let r = calculus_integral(&x1, &tuple, &cfg)?;
        gen = gen.max(r.distance(&Multivector::<f64>::one(2).tensor_matrix(&tuple.matrices()[0])));
    }
    rec.at_most("route_agreement", agree, samples);
    rec.at_most("vanishing", vanish, samples);
    rec.at_most("identity", ident, samples);
    rec.at_most("generator", gen, samples);

    let mut worst = 0.0f64;
    for _ in 0..samples {
        let s = random_hermitian(rng, 4);
        let a: f64 = rng.gen_range(-1.0..1.0);
        let tuple = OperatorTuple::new(vec![&s * Complex64::new(a, 0.0), &s * &s - identity(4)])?;
        let f = random_hyper(rng, 2, 3);
        let taylor = calculus_taylor(&f, &tuple)?;
        let oracle = commuting_oracle(&f, &tuple)?;
        worst = worst.max(taylor.relative_distance(&oracle));
    }
    rec.at_most("commuting_oracle", worst, samples);
    Ok(())
}

fn quantization(rec: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    let samples = 20;
    let (mut lattice, mut exact, mut square, mut mult, mut herm) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..samples {
        let tuple = random_tuple(rng, 3, 4);
        let mats = tuple.matrices();
        // multiset x1^2 x2 x3 through the subset table and the multiplicity lattice
        let subset = symmetric_product(&[mats[0].clone(), mats[0].clone(), mats[1].clone(), mats[2].clone()])?;
        let lat = symmetric_power(mats, &tuple.identity(), &MultiIndex::new(vec![2, 1, 1]))?;
        lattice = lattice.max(max_abs(&(&subset - &lat)) / max_abs(&subset).max(1.0));
        let j = jordan_product(&mats[0], &mats[1])?;
        let q = quantize(&"x1 x2".parse()?, &tuple)?;
        exact = exact.max(max_abs(&(&j - q)));
        square = square.max(max_abs(&(jordan_square_difference(&mats[0], &mats[1])? - &j)) / max_abs(&j).max(1.0));
        let mut p = ClassicalPolynomial::zero(3);
        for alpha in multi_indices_up_to(3, 3) {
            p.add_term(alpha, rng.gen_range(-1.0..1.0))?;
        }
        let m = quantize(&p, &tuple)?;
        herm = herm.max(hermitian_residual(&m) / max_abs(&m).max(1.0));

        let s = random_hermitian(rng, 4);
        let commuting = OperatorTuple::new(vec![s.clone(), &s * &s * Complex64::new(0.5, 0.0) - identity(4)])?;
        let whole = quantize(&"x1^2 x2^2".parse()?, &commuting)?;
        let prod = quantize(&"x1^2".parse()?, &commuting)? * quantize(&"x2^2".parse()?, &commuting)?;
        mult = mult.max(max_abs(&(whole - &prod)) / max_abs(&prod).max(1.0));
    }
    rec.at_most("symmetric_lattice", lattice, samples);
    rec.at_most("jordan_exact", exact, samples);
    rec.at_most("jordan_square_difference", square, samples);
    rec.at_most("hermitian", herm, samples);
    rec.at_most("multiplicative", mult, samples);

    let [a, b, c] = witness_triple();
    rec.exceeds("nonassociativity_witness", jordan_nonassociativity_witness(&a, &b, &c)?, 1);

    let mut weyl = 0.0f64;
    let indices: Vec<MultiIndex> = multi_indices_up_to(2, 3).into_iter().filter(|a| a.degree() > 0).collect();
    let tuple = random_tuple(rng, 2, 3);
    for alpha in &indices {
        weyl = weyl.max(weyl_exponential_check(alpha, &tuple, 1e-2)?);
    }
    rec.at_most("weyl_exponential", weyl, indices.len());

    let mut fermi = 0.0f64;
    for _ in 0..samples {
        let total: f64 = fermi_distribution(&random_mv(rng, 4))?.values().sum();
        fermi = fermi.max((total - 1.0).abs());
    }
    rec.at_most("fermi_normalization", fermi, samples);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let mut t = Tolerances::default();
        t.set_override("biorthogonality=1e-3").unwrap();
        assert_eq!(t.get("biorthogonality"), 1e-3);
        assert!(t.set_override("nope=1").is_err());
        assert!(t.set_override("dirac").is_err());
        assert!(t.set_override("dirac=abc").is_err());
    }

    #[test]
    fn fast_suites_pass() {
        let cfg = VerifyConfig::default();
        let report = run_suites(&[Suite::Algebra, Suite::Hyperholo, Suite::Quantization], &cfg).unwrap();
        for c in &report.checks {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn failing_tolerance_fails() {
        let mut cfg = VerifyConfig::default();
        cfg.tolerances.set_override("norm_identity=-1").unwrap();
        let report = run_suites(&[Suite::Algebra], &cfg).unwrap();
        assert!(!report.passed);
    }
}
