//! Numerical thresholds shared by every module.
//!
//! Sign decisions are three-valued: a quantity within `±tol` of zero is
//! [`Sign::Marginal`] and never silently rounded to either side.

use serde::{Deserialize, Serialize};

/// Symmetry / square-root residual, relative to `‖m‖₂`.
pub const SYM_REL: f64 = 1e-12;
/// Eigenvalue sign decisions, relative to `max(1, ‖m‖₂)`.
pub const EIG_REL: f64 = 1e-9;
/// Semi-definiteness decisions, relative to `max(1, ‖m‖₂)`.
pub const PSD_REL: f64 = 1e-9;
/// Lyapunov residual, relative to `‖q‖₂`.
pub const LYAP_REL: f64 = 1e-10;
/// Staircase rank threshold factor (multiplied by `n` and the block scale).
pub const RANK_REL: f64 = 1e-12;
/// `|c_j - 1|` threshold for the linear order, and the marginal band of the
/// coefficient conditions.
pub const ORDER: f64 = 1e-10;
/// Upper edge of the band where the detected order is flagged as ambiguous.
pub const ORDER_AMBIGUOUS: f64 = 1e-6;
/// A norm counts as a violation only above `1 + VIOLATION`.
pub const VIOLATION: f64 = 1e-11;
/// Threshold on the T-chain of the unit-norm rescaled matrix.
pub const HC_CHAIN: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Marginal,
    Positive,
}

impl Sign {
    pub fn of(value: f64, tol: f64) -> Self {
        if value < -tol {
            Sign::Negative
        } else if value > tol {
            Sign::Positive
        } else {
            Sign::Marginal
        }
    }
}

/// Tolerance set used by the high-level entry points; individual operations
/// take explicit absolute tolerances.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub eig_rel: f64,
    pub psd_rel: f64,
    pub rank_rel: f64,
    pub hc_chain: f64,
    pub order: f64,
    pub violation: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eig_rel: EIG_REL,
            psd_rel: PSD_REL,
            rank_rel: RANK_REL,
            hc_chain: HC_CHAIN,
            order: ORDER,
            violation: VIOLATION,
        }
    }
}

impl Tolerances {
    pub fn eig_for(&self, norm: f64) -> f64 {
        self.eig_rel * norm.max(1.0)
    }

    pub fn psd_for(&self, norm: f64) -> f64 {
        self.psd_rel * norm.max(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_bands() {
        assert_eq!(Sign::of(-1.0, 1e-9), Sign::Negative);
        assert_eq!(Sign::of(1e-10, 1e-9), Sign::Marginal);
        assert_eq!(Sign::of(-1e-10, 1e-9), Sign::Marginal);
        assert_eq!(Sign::of(2e-9, 1e-9), Sign::Positive);
    }
}
