//! Strong stability certificates for explicit Runge–Kutta schemes applied to
//! semi-dissipative linear systems `u' = Lu`.
//!
//! The layers build on each other: [`linalg`] (complex matrix kernels),
//! [`hypocoercivity`] (index and reductions), [`rk`] (tableaux, stability
//! polynomials, indicators), [`classifier`] (verdicts), [`verifier`]
//! (numerical cross-checks) and [`cli`].

pub mod classifier;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod hypocoercivity;
pub mod linalg;
pub mod random;
pub mod rk;
pub mod tolerance;
pub mod verifier;

pub use error::{Error, Result};
