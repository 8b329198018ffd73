//! Exact arithmetic over the rationals and the rational function field.

pub mod class;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod roots;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use class::{class_norm_product, eliminate, image_class, preimage_polynomial, resultant, AlgebraicClass};
pub use matrix::{bareiss_determinant, charpoly, FunctionMatrix, RationalMatrix};
pub use poly::Polynomial;
pub use ratfunc::{reduce, RationalFunction};
pub use roots::{all_roots_in, count_real_roots, rational_roots, split_classes, squarefree_classes};

pub type Rational = BigRational;

/// Shorthand for `n / d` with small integer parts.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}
