//! Cauchy kernel, its derivative family and boundary quadrature.

mod cauchy;
mod quadrature;
mod rational;

pub use cauchy::{
    cauchy_kernel, cauchy_kernel_rational, kernel_decomposition_check, kernel_decomposition_residuals,
    unit_sphere_area, w_poly, FamilyEvaluator, KernelFamily,
};
pub use quadrature::{gauss_legendre, integrate_boundary, integrate_boundary_with, integrate_dense, sphere_rule, BoundaryNode, QuadratureRule};
pub use rational::{CompiledRational, RationalMV};
