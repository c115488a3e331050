//! Product quadrature on the sphere `|y| = r` in `R^{n+1}`, `n = 1, 2, 3`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{Multivector, Ring};
use crate::error::{Error, Result};

/// Nodes per parallel work unit. Chunk sums are combined in index order, so
/// results do not depend on the thread count.
const CHUNK: usize = 256;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    for i in 0..order.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(order, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(order, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Nodes, weights and outward unit normals of a sphere rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub n: usize,
    pub radius: f64,
    pub order: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub normals: Vec<Vec<f64>>,
}

/// One quadrature node as seen by an integrand.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryNode<'a> {
    pub index: usize,
    pub point: &'a [f64],
    pub normal: &'a [f64],
    pub weight: f64,
}

impl BoundaryNode<'_> {
    /// The oriented surface element `nu * w` as a paravector.
    pub fn dsigma(&self) -> Multivector<f64> {
        Multivector::paravector(self.normal).expect("normal fits the algebra").scale_f64(self.weight)
    }
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node(&self, index: usize) -> BoundaryNode<'_> {
        BoundaryNode {
            index,
            point: &self.nodes[index],
            normal: &self.normals[index],
            weight: self.weights[index],
        }
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Product rule on the sphere of radius `r` in `R^{n+1}`.
///
/// * `n = 1`: trapezoid with `2 order` nodes.
/// * `n = 2`: Gauss-Legendre in `cos(theta)` times a `2 order` point trapezoid in azimuth.
/// * `n = 3`: Gauss-Chebyshev (second kind) in the first polar coordinate,
///   Gauss-Legendre in the second, trapezoid in azimuth.
pub fn sphere_rule(n: usize, r: f64, order: usize) -> Result<QuadratureRule> {
    if !(1..=3).contains(&n) {
        return Err(Error::Unsupported(format!("sphere quadrature for n = {n}, only 1..=3")));
    }
    if order < 2 {
        return Err(Error::Domain(format!("quadrature order must be at least 2, got {order}")));
    }
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::Domain(format!("radius must be positive and finite, got {r}")));
    }
    let azimuth = 2 * order;
    let dphi = 2.0 * PI / azimuth as f64;
    let angles: Vec<(f64, f64)> = (0..azimuth).map(|k| (k as f64 * dphi).sin_cos()).collect();
    let mut units: Vec<Vec<f64>> = Vec::new();
    let mut weights = Vec::new();
    match n {
        1 => {
            for &(s, c) in &angles {
                units.push(vec![c, s]);
                weights.push(dphi * r);
            }
        }
        2 => {
            let (ts, gs) = gauss_legendre(order);
            for (&t, &g) in ts.iter().zip(&gs) {
                let st = (1.0 - t * t).sqrt();
                for &(s, c) in &angles {
                    units.push(vec![t, st * c, st * s]);
                    weights.push(g * dphi * r * r);
                }
            }
        }
        _ => {
            let step = PI / (order as f64 + 1.0);
            let (t2s, g2s) = gauss_legendre(order);
            for k in 1..=order {
                let (s1, t1) = (k as f64 * step).sin_cos();
                let g1 = step * s1 * s1;
                for (&t2, &g2) in t2s.iter().zip(&g2s) {
                    let s2 = (1.0 - t2 * t2).sqrt();
                    for &(s, c) in &angles {
                        units.push(vec![t1, s1 * t2, s1 * s2 * c, s1 * s2 * s]);
                        weights.push(g1 * g2 * dphi * r * r * r);
                    }
                }
            }
        }
    }
    let nodes = units.iter().map(|u| u.iter().map(|c| c * r).collect()).collect();
    Ok(QuadratureRule { n, radius: r, order, nodes, weights, normals: units })
}

/// `sum_k f(node_k)` over the rule, reduced in a fixed order.
pub fn integrate_boundary<T, F>(rule: &QuadratureRule, zero: T, f: F) -> T
where
    T: Ring,
    F: Fn(&BoundaryNode<'_>) -> T + Sync,
{
    integrate_boundary_with(rule, zero, |a: &T, b: &T| a.plus(b), f)
}

/// [`integrate_boundary`] with an explicit accumulator.
pub fn integrate_boundary_with<T, A, F>(rule: &QuadratureRule, zero: T, add: A, f: F) -> T
where
    T: Clone + Send + Sync,
    A: Fn(&T, &T) -> T + Sync,
    F: Fn(&BoundaryNode<'_>) -> T + Sync,
{
    let indices: Vec<usize> = (0..rule.len()).collect();
    let partials: Vec<T> = indices
        .par_chunks(CHUNK)
        .map(|chunk| chunk.iter().fold(zero.clone(), |acc, &k| add(&acc, &f(&rule.node(k)))))
        .collect();
    partials.iter().fold(zero, |acc, p| add(&acc, p))
}

/// Dense variant of [`integrate_boundary`]: `f` adds its contribution into a
/// buffer of `width` reals.
pub fn integrate_dense<F>(rule: &QuadratureRule, width: usize, f: F) -> Vec<f64>
where
    F: Fn(&BoundaryNode<'_>, &mut [f64]) + Sync,
{
    let indices: Vec<usize> = (0..rule.len()).collect();
    let partials: Vec<Vec<f64>> = indices
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; width];
            for &k in chunk {
                f(&rule.node(k), &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; width];
    for p in partials {
        for (t, v) in total.iter_mut().zip(p) {
            *t += v;
        }
    }
    total
}
