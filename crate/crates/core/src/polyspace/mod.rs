//! Multi-indices, symmetric products, regular variables and the
//! hyperholomorphic polynomial basis.

mod hyper;
mod multi_index;
mod operators;
mod poly;
mod symmetric;

pub use hyper::{
    ck_extension, dirac_apply, regular_variable, regular_variable_poly, v_operator_lattice, v_point_lattice,
    v_poly, v_poly_ck, v_poly_ck_poly, v_poly_lattice, v_poly_operators, v_poly_point, HyperPolynomial,
};
pub use multi_index::{homogeneous_count, multi_indices, multi_indices_up_to, MultiIndex};
pub use operators::{OperatorTuple, PointR, HERMITIAN_TOL};
pub use poly::{exact_rank, rational_rank, CliffordPoly, CompiledPoly};
pub use symmetric::{symmetric_power, symmetric_power_lattice, symmetric_product, symmetric_product_in};
