//! Numerical certificates: norm sweeps of the one-step matrix, short-time
//! decay exponents, Gram-defect orders and the quadratic-form identity
//! behind the non-stability proofs.

mod exponent;
mod gram;
mod grid;
mod identity;
mod sweep;

pub use exponent::{
    exponent_tolerance, fit_short_time_exponent, fit_short_time_exponent_auto, short_time_exponent,
    short_time_exponent_on, ExponentFit, MIN_POINTS, SIGNAL_MAX, SIGNAL_MIN, TARGET_POINTS,
};
pub use gram::{gram_defect, GramDefect, DEFECT_FLOOR};
pub use grid::{Grid, DEFAULT_MAX, DEFAULT_MIN, DEFAULT_POINTS};
pub use identity::{quadratic_form_identity, QuadraticFormCheck, IDENTITY_REL};
pub use sweep::{counterexample_search, norm_sweep, Counterexample, SweepResult, Violation};
