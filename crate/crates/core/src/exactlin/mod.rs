//! Exact linear algebra over small finite fields and over the integers.

mod field;
mod matrix;
pub mod poly;
mod zmatrix;

pub use field::{Fq, FqElem, MAX_FIELD_ORDER};
pub use matrix::{FqMatrix, Rref};
pub use zmatrix::{smith_normal_form, SmithForm, ZMatrix};

pub(crate) use field::is_prime;
pub(crate) use matrix::axpy;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {p}^{e} exceeds the supported bound 2^16")]
    FieldTooLarge { p: u64, e: u32 },
    #[error("right-hand side is outside the column space")]
    NoSolution,
}

/// `fq_make`: the field with `p^e` elements and its canonical modulus.
pub fn fq_make(p: u64, e: u32) -> Result<Fq, LinAlgError> {
    Fq::new(p, e)
}
