//! Stability polynomials of explicit Runge–Kutta schemes and the scalar
//! conditions on their coefficients.

mod catalog;
mod indicators;
mod polynomial;
mod tableau;

pub use catalog::{catalog, scheme_by_name, scheme_names, Scheme, TEXP_MAX};
pub use indicators::{
    coefficient_condition, combined_condition, ks_indicators, ConditionEval, KsIndicators, Parity,
    Truth,
};
pub use polynomial::{eval_poly, eval_poly_matrix, linear_order, StabilityPolynomial};
pub use tableau::ButcherTableau;
