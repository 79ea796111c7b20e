//! Exact computations around the depth-graded motivic Lie algebra generated
//! in depth one.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactlin`]: exact rational matrices, fraction-free rank, left kernels,
//!   row spaces and a multi-prime modular rank with certificates.
//! * [`liealg`]: words in `e0, e1`, the Ihara bracket, the polynomial
//!   representation `rho` and Brown's `∘̲` operation.
//! * [`tasaka`]: the integer matrices `E^(k)_{N,r}`, `C_{N,r}`, period
//!   polynomials, the spaces `W_{N,r}` and the maps `eta`, `eta~`.
//! * [`harness`]: generating series, rank tables, dimension checks, the result
//!   cache and verification reports.
//!
//! Data-parallel loops go through [`par::Execution`]; with the `parallel`
//! feature disabled every loop runs sequentially and results are identical.

pub mod error;
pub mod exactlin;
pub mod harness;
pub mod liealg;
pub mod par;
pub mod tasaka;

pub use error::{Error, Result};
pub use exactlin::{MatQ, Rational};

/// Version string mixed into every cache key. Bump the suffix whenever the
/// canonical index order or any matrix definition changes.
pub const CODE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+lexorder.1");
