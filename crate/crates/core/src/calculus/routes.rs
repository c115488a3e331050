use super::{decay_warning, spectral_radius_bound, CalculusDiagnostics, CalculusResult, OperatorKernelConfig, Route};
use super::kernel::OperatorKernelExpansion;
use crate::clifford::{mv_norm_bound, CMatrix, DenseAlgebra, Multivector, Ring};
use crate::error::{Error, Result};
use crate::kernels::{integrate_boundary_with, integrate_dense, sphere_rule, KernelFamily};
use crate::polyspace::{multi_indices, v_operator_lattice, HyperPolynomial, MultiIndex, OperatorTuple, PointR};

fn tensor(v: &CMatrix, c: &Multivector<f64>) -> Multivector<CMatrix> {
    c.tensor_matrix(v)
}

fn check_dims(f_n: usize, tuple: &OperatorTuple) -> Result<()> {
    if f_n < tuple.m() {
        return Err(Error::DimensionMismatch { expected: tuple.m(), found: f_n });
    }
    Ok(())
}

/// `f(T) = sum_alpha V_alpha(T) c_alpha`, exact for polynomials.
pub fn calculus_taylor(f: &HyperPolynomial, tuple: &OperatorTuple) -> Result<CalculusResult> {
    check_dims(f.n(), tuple)?;
    let degree = f.degree();
    let lattice = v_operator_lattice(tuple, f.n(), degree)?;
    let mut by_degree = vec![Multivector::zero(f.n()); degree as usize + 1];
    for (alpha, c) in f.terms() {
        let slot = &mut by_degree[alpha.degree() as usize];
        *slot = slot.plus(&tensor(&lattice[alpha], c));
    }
    Ok(assemble(tuple.d(), f.n(), by_degree, Route::Taylor, 0.0))
}

fn assemble(d: usize, n: usize, by_degree: Vec<Multivector<CMatrix>>, route: Route, truncation_error: f64) -> CalculusResult {
    let term_norms: Vec<f64> = by_degree.iter().map(mv_norm_bound).collect();
    let truncation = by_degree.len().saturating_sub(1) as u32;
    let value = by_degree.into_iter().fold(Multivector::zero(n), |acc, t| acc.plus(&t));
    CalculusResult {
        d,
        value,
        diagnostics: CalculusDiagnostics {
            route,
            term_norms,
            truncation,
            quad_order: None,
            radius: None,
            nodes: None,
            truncation_error,
            warnings: Vec::new(),
        },
    }
}

/// Taylor route for a coefficient stream `alpha -> c_alpha` cut at degree
/// `cutoff`.
///
/// The reported truncation error is `sum ||c_alpha||_1 |T|^{|alpha|}` over
/// the `tail_degrees` degrees past the cutoff, a partial tail bound.
pub fn calculus_taylor_series<F>(
    n: usize,
    coeff: F,
    tuple: &OperatorTuple,
    cutoff: u32,
    tail_degrees: u32,
) -> Result<CalculusResult>
where
    F: Fn(&MultiIndex) -> Multivector<f64>,
{
    check_dims(n, tuple)?;
    let lattice = v_operator_lattice(tuple, n, cutoff)?;
    let mut by_degree = Vec::with_capacity(cutoff as usize + 1);
    for k in 0..=cutoff {
        let mut term = Multivector::zero(n);
        for alpha in multi_indices(n, k) {
            let c = coeff(&alpha);
            if c.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: c.n() });
            }
            term = term.plus(&tensor(&lattice[&alpha], &c));
        }
        by_degree.push(term);
    }
    // identity padding has norm 1
    let bound = if n > tuple.m() { spectral_radius_bound(tuple).max(1.0) } else { spectral_radius_bound(tuple) };
    let mut tail = 0.0;
    for k in cutoff + 1..=cutoff + tail_degrees {
        let mass: f64 = multi_indices(n, k).iter().map(|a| coeff(a).terms().map(|(_, v)| v.abs()).sum::<f64>()).sum();
        tail += mass * bound.powi(k as i32);
    }
    let mut result = assemble(tuple.d(), n, by_degree, Route::TaylorSeries, tail);
    result.diagnostics.warnings.extend(decay_warning(&result.diagnostics.term_norms));
    Ok(result)
}

fn integral_diagnostics(result: &mut CalculusResult, f: &HyperPolynomial, cfg: &OperatorKernelConfig, nodes: usize) {
    let floor = result.value_norm_floor();
    let diag = &mut result.diagnostics;
    diag.quad_order = Some(cfg.quad_order);
    diag.radius = Some(cfg.radius);
    diag.nodes = Some(nodes);
    if cfg.truncation < f.degree() {
        diag.warnings.push(format!(
            "truncation {} is below deg f = {}; higher-degree parts of f are dropped",
            cfg.truncation,
            f.degree()
        ));
    }
    if diag.truncation_error > cfg.tol * floor {
        diag.warnings.push(format!("estimated truncation error {:e} exceeds tolerance {:e}", diag.truncation_error, cfg.tol));
    }
}

impl CalculusResult {
    fn value_norm_floor(&self) -> f64 {
        self.norm().max(1.0)
    }
}

/// `f(T) = int_{|y|=r} E(y,T) dsigma_y f(y)` by quadrature, with the kernel
/// series truncated at `cfg.truncation`.
///
/// By linearity the node sum is reorganised as
/// `sum_beta V_beta(T) (x) M_beta` with moments
/// `M_beta = sum_nodes W_beta(y) nu w f(y)`. The degree `J + 1` moments give
/// the truncation error estimate.
pub fn calculus_integral(f: &HyperPolynomial, tuple: &OperatorTuple, cfg: &OperatorKernelConfig) -> Result<CalculusResult> {
    check_dims(f.n(), tuple)?;
    cfg.validate(tuple)?;
    let n = f.n();
    let top = cfg.truncation + 1;
    let rule = sphere_rule(n, cfg.radius, cfg.quad_order)?;
    let alg = DenseAlgebra::new(n);
    let len = alg.len();
    let evaluator = KernelFamily::new(n, top).evaluator();
    let count = evaluator.indices().len();
    let fpoly = f.to_poly().compile(&alg);
    let moments = integrate_dense(&rule, count * len, |node, out| {
        let mut nu = vec![0.0; len];
        nu[0] = node.normal[0] * node.weight;
        for j in 1..=n {
            nu[1 << (j - 1)] = node.normal[j] * node.weight;
        }
        let mut fy = vec![0.0; len];
        fpoly.eval_acc(node.point, 1.0, &mut fy);
        let mut g = vec![0.0; len];
        alg.mul_acc(&nu, &fy, &mut g);
        let mut w = vec![0.0; count * len];
        evaluator.eval_into(node.point, &mut w).expect("nodes lie on a sphere of positive radius");
        for k in 0..count {
            alg.mul_acc(&w[k * len..(k + 1) * len], &g, &mut out[k * len..(k + 1) * len]);
        }
    });
    let lattice = v_operator_lattice(tuple, n, top)?;
    let mut by_degree = vec![Multivector::zero(n); top as usize + 1];
    for (k, beta) in evaluator.indices().iter().enumerate() {
        let m = alg.from_dense(&moments[k * len..(k + 1) * len]);
        let slot = &mut by_degree[beta.degree() as usize];
        *slot = slot.plus(&tensor(&lattice[beta], &m));
    }
    let next = by_degree.pop().expect("top degree present");
    let mut result = assemble(tuple.d(), n, by_degree, Route::Integral, mv_norm_bound(&next));
    integral_diagnostics(&mut result, f, cfg, rule.len());
    Ok(result)
}

/// Node-by-node variant of [`calculus_integral`]: forms `E(y,T)` at every
/// node and integrates `E(y,T) nu w f(y)` directly.
pub fn calculus_integral_direct(
    f: &HyperPolynomial,
    tuple: &OperatorTuple,
    cfg: &OperatorKernelConfig,
) -> Result<CalculusResult> {
    check_dims(f.n(), tuple)?;
    cfg.validate(tuple)?;
    let n = f.n();
    let rule = sphere_rule(n, cfg.radius, cfg.quad_order)?;
    let expansion = OperatorKernelExpansion::new(tuple, n, cfg.truncation + 1)?;
    let zero = vec![Multivector::<CMatrix>::zero(n); cfg.truncation as usize + 2];
    let add = |a: &Vec<Multivector<CMatrix>>, b: &Vec<Multivector<CMatrix>>| -> Vec<Multivector<CMatrix>> {
        a.iter().zip(b).map(|(x, y)| x.plus(y)).collect()
    };
    let mut by_degree = integrate_boundary_with(&rule, zero, add, |node| {
        let y = PointR::new(node.point.to_vec()).expect("finite node");
        let right = node.dsigma().try_mul(&f.eval(&y).expect("dimension checked")).expect("same algebra");
        expansion
            .degree_terms(&y)
            .expect("nodes avoid the origin")
            .iter()
            .map(|t| t.mul_with(&right, |m, c| m * num_complex::Complex64::new(*c, 0.0)).expect("same algebra"))
            .collect()
    });
    let next = by_degree.pop().expect("top degree present");
    let mut result = assemble(tuple.d(), n, by_degree, Route::IntegralDirect, mv_norm_bound(&next));
    integral_diagnostics(&mut result, f, cfg, rule.len());
    Ok(result)
}

/// `||int_{r_outer} - int_{r_inner}||` for the integral route; both radii
/// must exceed the spectral bound.
pub fn vanishing_check(
    f: &HyperPolynomial,
    tuple: &OperatorTuple,
    r_inner: f64,
    r_outer: f64,
    cfg: &OperatorKernelConfig,
) -> Result<f64> {
    let inner = calculus_integral(f, tuple, &cfg.with_radius(r_inner))?;
    let outer = calculus_integral(f, tuple, &cfg.with_radius(r_outer))?;
    Ok(outer.distance(&inner.value))
}
