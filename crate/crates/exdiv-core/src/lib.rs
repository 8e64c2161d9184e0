//! Arithmetic of unitary and exponential divisor systems.
//!
//! The crate provides exact machinery for the five divisor systems (all,
//! unitary, exponential, exponential-unitary, unitary-exponential), the
//! arithmetic functions they induce (`tau`/`sigma`/`mu`/`phi` families),
//! the four convolution algebras over exact rationals, segmented-sieve
//! summatory data with main-term residuals, Euler-product constants with
//! rigorous tail bounds, and exhaustive perfect-number searches over
//! powerful kernels.
//!
//! Everything value-level is computed in checked 128-bit integers or exact
//! rationals; floating point enters only for main terms, residuals and
//! limit ratios.

pub mod arithfun;
pub mod constants;
pub mod convolve;
pub mod divisors;
pub mod error;
pub mod exponents;
pub mod extremal;
pub mod factorint;
pub mod perfect;
pub mod summatory;
pub mod verify;

pub use arithfun::FunctionId;
pub use convolve::{ConvolutionKind, LocalSeries, TabulatedFunction};
pub use divisors::DivisorKind;
pub use error::{Error, Result};
pub use factorint::{Classification, Factorization};
pub use perfect::{PerfectKind, SearchFilter};
pub use summatory::{ExactSum, SummatoryReport};
