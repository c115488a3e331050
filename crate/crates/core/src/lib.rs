//! Hyperholomorphic functional calculus for tuples of non-commuting
//! self-adjoint matrices.
//!
//! The crate is organised bottom-up:
//!
//! - [`clifford`]: exact arithmetic in the Clifford algebra `Cl(0,n)` over
//!   pluggable coefficient rings, plus a matrix representation of the
//!   generators.
//! - [`polyspace`]: multi-indices, symmetric (Weyl-ordered) products, regular
//!   variables and the hyperholomorphic basis polynomials `V_alpha`.
//! - [`kernels`]: the Cauchy kernel, its derivative family `W_alpha`, sphere
//!   quadrature and boundary integration.
//! - [`calculus`]: the operator Cauchy kernel and the two routes to `f(T)`
//!   (Taylor substitution and boundary integration), with oracles.
//! - [`quant`]: symmetrization of classical polynomials, the Jordan product,
//!   the exponential bridge identity and Fermi filling states.
//! - [`cli`]: command implementations behind the `rcc` binary.

pub mod calculus;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod io;
pub mod kernels;
pub mod matrix;
pub mod polyspace;
pub mod quant;
pub mod verify;

pub use error::{Error, Result};

/// Library version echoed into every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
