//! Arithmetic in the Clifford algebra `Cl(0,n)`: generators `e_1..e_n` with
//! `e_j^2 = -1` and `e_j e_k = -e_k e_j`. The unit `e_0` is the empty blade.

mod blade;
mod dense;
mod multivector;
mod rep;
mod ring;

pub use blade::{blade_mul, blade_product, Blade, MAX_GENERATORS};
pub use dense::DenseAlgebra;
pub use multivector::Multivector;
pub use rep::{generator_matrices, mv_norm_bound, GeneratorRep};
pub use ring::{CMatrix, Rational, Ring, Scalar};

/// Geometric product with dimension checking.
pub fn mv_mul<T: Ring>(x: &Multivector<T>, y: &Multivector<T>) -> crate::Result<Multivector<T>> {
    x.try_mul(y)
}

/// Clifford conjugation.
pub fn conjugate<T: Ring>(x: &Multivector<T>) -> Multivector<T> {
    x.conjugate()
}
