//! Error type shared across the crate.
//!
//! All integer arithmetic on values is checked; anything that would leave
//! the 128-bit range surfaces as [`Error::Overflow`] instead of wrapping.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A value left the 128-bit range.
    #[error("arithmetic overflow beyond 128 bits")]
    Overflow,

    /// A limit or a problem size exceeded a documented capacity guard.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Malformed or out-of-domain input.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// The function has no inverse under the e-unitary convolution; the
    /// witness is the smallest point where the recursion divides by zero.
    #[error("not invertible under the e-unitary convolution: f vanishes at the squarefree point n = {witness}")]
    NotInvertible { witness: u64 },

    /// Two tabulated functions cover different ranges.
    #[error("tabulated limits differ: {0} vs {1}")]
    LimitMismatch(u64, u64),

    /// A quotient summatory hit a zero denominator value.
    #[error("denominator function vanishes at n = {0}")]
    ZeroDenominator(u64),

    /// Text that should denote an integer or a factorization did not parse.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
