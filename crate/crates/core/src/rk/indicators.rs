//! Scalar coefficient conditions on `c_{p+1}, c_{p+2}`.
//!
//! Every condition is a strict inequality `value < 0`, evaluated with a
//! marginal band: values within `±tol` are neither confirmed nor refuted.

use serde::{Deserialize, Serialize};

use super::polynomial::StabilityPolynomial;
use crate::tolerance::{Sign, ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

/// Local behaviour of `|R(iy)|` near `y = 0`: `γ_{p+1}` for odd `p`,
/// `δ_{p+1}` for even `p`; a positive indicator means `|R(iy)| ≤ 1` nearby.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KsIndicators {
    pub order: usize,
    pub parity: Parity,
    pub gamma: Option<f64>,
    pub delta: Option<f64>,
    pub c_p1: f64,
    pub c_p2: f64,
    /// False when some `c_j` is complex; the real parts are used above.
    pub real_coefficients: bool,
}

impl KsIndicators {
    /// `γ` or `δ`, whichever applies.
    pub fn value(&self) -> f64 {
        self.gamma.or(self.delta).expect("one indicator is present")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    Holds,
    Fails,
    Marginal,
}

impl Truth {
    /// Truth of `value < 0`.
    pub fn of_negative(value: f64, tol: f64) -> Self {
        match Sign::of(value, tol) {
            Sign::Negative => Truth::Holds,
            Sign::Positive => Truth::Fails,
            Sign::Marginal => Truth::Marginal,
        }
    }
}

/// Evaluated left-hand side(s) of a `< 0` condition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionEval {
    /// One entry per disjunct.
    pub values: Vec<f64>,
    pub truth: Truth,
}

impl ConditionEval {
    fn disjunction(values: Vec<f64>, tol: f64) -> Self {
        let truths: Vec<Truth> = values.iter().map(|&v| Truth::of_negative(v, tol)).collect();
        let truth = if truths.contains(&Truth::Holds) {
            Truth::Holds
        } else if truths.iter().all(|&t| t == Truth::Fails) {
            Truth::Fails
        } else {
            Truth::Marginal
        };
        Self { values, truth }
    }

    /// Most negative disjunct.
    pub fn value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn holds(&self) -> bool {
        self.truth == Truth::Holds
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (1..=k).map(|i| (n + 1 - i) as f64 / i as f64).product::<f64>().round()
}

fn sign_power(e: usize) -> f64 {
    if e.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

pub fn ks_indicators(poly: &StabilityPolynomial) -> KsIndicators {
    let p = poly.order();
    let c_p1 = poly.coef(p + 1).re;
    let c_p2 = poly.coef(p + 2).re;
    let (parity, gamma, delta) = if p % 2 == 1 {
        (Parity::Odd, Some(sign_power(p.div_ceil(2)) * (1.0 - c_p1)), None)
    } else {
        let pf = p as f64;
        let d = sign_power(p / 2) * (c_p2 - (pf + 2.0) * c_p1 + pf + 1.0);
        (Parity::Even, None, Some(d))
    };
    KsIndicators {
        order: p,
        parity,
        gamma,
        delta,
        c_p1,
        c_p2,
        real_coefficients: poly.is_real(),
    }
}

/// Odd `p`: `(-1)^{(p+1)/2}(1 - c_{p+1})`; even `p`:
/// `1 + (-1)^{p/2}(c_{p+1} - 1)·C(p, p/2)`.
pub fn coefficient_condition(poly: &StabilityPolynomial) -> ConditionEval {
    let p = poly.order();
    let c_p1 = poly.coef(p + 1).re;
    let value = if p % 2 == 1 {
        sign_power(p.div_ceil(2)) * (1.0 - c_p1)
    } else {
        1.0 + sign_power(p / 2) * (c_p1 - 1.0) * binomial(p, p / 2)
    };
    ConditionEval::disjunction(vec![value], ORDER)
}

/// Non-stability condition: the odd-order inequality above, or for even
/// `p` either `δ_{p+1} < 0` or the even coefficient condition.
pub fn combined_condition(poly: &StabilityPolynomial) -> ConditionEval {
    let c = coefficient_condition(poly);
    match ks_indicators(poly).delta {
        Some(delta) => ConditionEval::disjunction(vec![delta, c.values[0]], ORDER),
        None => c,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texp(p: usize) -> StabilityPolynomial {
        StabilityPolynomial::truncated_exponential(p)
    }

    #[test]
    fn indicator_examples() {
        let rk4 = ks_indicators(&texp(4));
        assert_eq!(rk4.parity, Parity::Even);
        assert!((rk4.delta.unwrap() - 5.0).abs() < 1e-12);
        assert!(rk4.gamma.is_none());
        let euler = ks_indicators(&texp(1));
        assert!((euler.gamma.unwrap() + 1.0).abs() < 1e-12);
        assert!((ks_indicators(&texp(2)).delta.unwrap() + 3.0).abs() < 1e-12);
    }

    #[test]
    fn coefficient_condition_examples() {
        let rk4 = coefficient_condition(&texp(4));
        assert!((rk4.value() + 5.0).abs() < 1e-12);
        assert!(rk4.holds());
        let c3 = coefficient_condition(&texp(3));
        assert!((c3.value() - 1.0).abs() < 1e-12);
        assert_eq!(c3.truth, Truth::Fails);
        let c2 = coefficient_condition(&texp(2));
        assert!((c2.value() - 3.0).abs() < 1e-12);
        assert_eq!(c2.truth, Truth::Fails);
    }

    #[test]
    fn combined_condition_examples() {
        assert!(combined_condition(&texp(4)).holds());
        assert!(combined_condition(&texp(2)).holds());
        assert_eq!(combined_condition(&texp(3)).truth, Truth::Fails);
    }

    #[test]
    fn marginal_delta() {
        // p = 2, δ = -(c_4 - 4 c_3 + 3) = 0 at c_3 = 0, c_4 = -3.
        let p = StabilityPolynomial::from_real_normalized(&[1.0, 1.0, 1.0, 0.0, -3.0]).unwrap();
        let ind = ks_indicators(&p);
        assert_eq!(Truth::of_negative(ind.delta.unwrap(), ORDER), Truth::Marginal);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(8, 4), 70.0);
        assert_eq!(binomial(0, 0), 1.0);
    }
}
