//! Exact sparse polynomial arithmetic over the rationals and fraction-free
//! linear algebra on polynomial matrices.

pub mod gcd;
pub(crate) mod intpoly;
pub mod kernel;
pub mod matrix;
pub(crate) mod modp;
pub mod monomial;
pub mod multipoly;
pub mod qmatrix;
pub mod rational_function;

use num_bigint::BigInt;

pub use gcd::{gcd, gcd_list};
pub use kernel::{certified_rank, minimal_kernel_vector};
pub use matrix::PolyMatrix;
pub use monomial::{monomials_of_degree, Monomial};
pub use multipoly::{arith, ArithOp, Degree, MultiPoly};
pub use qmatrix::{coefficient_matrix, QMatrix};
pub use rational_function::{substitute, RationalFunction};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
