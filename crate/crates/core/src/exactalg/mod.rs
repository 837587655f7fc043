//! Exact arithmetic: generalized binomials, sparse polynomials over the
//! rationals, integer generating functions in `P`, `Q`, `R`, and
//! fraction-free determinants over any integral domain in this module.

mod binomial;
mod det;
mod gf;
mod mpoly;

pub use binomial::binomial;
pub use det::{det_cofactor, det_fraction_free, Ring};
pub use gf::Gf;
pub(crate) use mpoly::format_terms;
pub use mpoly::{MPoly, Monomial, VarRegistry};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("non-divisible: remainder {remainder}")]
    NonDivisible { remainder: String },
    #[error("polynomial is not an integer polynomial in P, Q, R: {0}")]
    NotAGeneratingFunction(String),
}

/// `BigRational` from a machine integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
