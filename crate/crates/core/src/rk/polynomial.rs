use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::tableau::ButcherTableau;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, ComplexMatrix, JsonScalar, C64};
use crate::tolerance::{ORDER, ORDER_AMBIGUOUS};

/// `R(z) = Σ_j d_j z^j` with normalized coefficients `c_j = j!·d_j`.
///
/// The linear order `p` is detected on construction with the default order
/// tolerance; [`linear_order`] recomputes it for other tolerances.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityPolynomial {
    d: Vec<C64>,
    c: Vec<C64>,
    order: usize,
    order_ambiguous: bool,
}

fn factorial(j: usize) -> f64 {
    (1..=j).map(|k| k as f64).product()
}

impl StabilityPolynomial {
    /// From `c_0, …, c_s`.
    pub fn from_normalized(c: Vec<C64>) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::input("polynomial has no coefficients"));
        }
        if c.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::input("polynomial has non-finite coefficients"));
        }
        let d = c.iter().enumerate().map(|(j, &cj)| cj / factorial(j)).collect();
        Self::build(d, c)
    }

    pub fn from_real_normalized(c: &[f64]) -> Result<Self> {
        Self::from_normalized(c.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// `d_0 = 1`, `d_j = b·A^{j-1}·1`; exact because `A` is nilpotent.
    pub fn from_tableau(t: &ButcherTableau) -> Result<Self> {
        let s = t.stages();
        let mut d = Vec::with_capacity(s + 1);
        d.push(C64::new(1.0, 0.0));
        let mut v = CVector::from_element(s, C64::new(1.0, 0.0));
        for _ in 1..=s {
            d.push(t.b().dot(&v));
            v = t.a() * v;
        }
        let c = d.iter().enumerate().map(|(j, &dj)| dj * factorial(j)).collect();
        Self::build(d, c)
    }

    /// `Σ_{j≤p} z^j / j!`, the stability function of any `p`-stage scheme
    /// of order `p`.
    pub fn truncated_exponential(p: usize) -> Self {
        Self::from_real_normalized(&vec![1.0; p + 1]).expect("valid coefficients")
    }

    fn build(d: Vec<C64>, c: Vec<C64>) -> Result<Self> {
        let mut poly = Self {
            d,
            c,
            order: 0,
            order_ambiguous: false,
        };
        poly.order = linear_order(&poly, ORDER)?;
        poly.order_ambiguous = (poly.coef(poly.order + 1) - 1.0).norm() <= ORDER_AMBIGUOUS;
        Ok(poly)
    }

    /// Degree bound `s`.
    pub fn stages(&self) -> usize {
        self.c.len() - 1
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `|c_{p+1} - 1|` is small enough that the order could be `p + 1`.
    pub fn order_ambiguous(&self) -> bool {
        self.order_ambiguous
    }

    /// `c_j`, zero beyond the degree bound.
    pub fn coef(&self, j: usize) -> C64 {
        self.c.get(j).copied().unwrap_or_default()
    }

    pub fn normalized(&self) -> &[C64] {
        &self.c
    }

    pub fn raw(&self) -> &[C64] {
        &self.d
    }

    pub fn is_real(&self) -> bool {
        self.c.iter().all(|z| z.im == 0.0)
    }

    /// Real parts of `c`, or `None` if any coefficient is complex.
    pub fn real_normalized(&self) -> Option<Vec<f64>> {
        self.is_real().then(|| self.c.iter().map(|z| z.re).collect())
    }

    /// Equals a truncated exponential of degree `s = p`.
    pub fn is_truncated_exponential(&self) -> bool {
        self.order == self.stages() && self.c.iter().all(|z| (z - 1.0).norm() <= ORDER)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("polynomial serializes")
    }
}

/// Largest `p` with `|c_j - 1| ≤ tol` for all `j ≤ p`.
pub fn linear_order(poly: &StabilityPolynomial, tol: f64) -> Result<usize> {
    if (poly.coef(0) - 1.0).norm() > tol {
        return Err(Error::InconsistentScheme(format!("R(0) = {} ≠ 1", poly.coef(0))));
    }
    Ok((1..=poly.stages() + 1)
        .find(|&j| (poly.coef(j) - 1.0).norm() > tol)
        .expect("c_{s+1} = 0")
        - 1)
}

pub fn eval_poly(poly: &StabilityPolynomial, z: C64) -> C64 {
    poly.d.iter().rev().fold(C64::new(0.0, 0.0), |acc, &dj| acc * z + dj)
}

/// `R(τ m)` by Horner's rule.
pub fn eval_poly_matrix(poly: &StabilityPolynomial, m: &ComplexMatrix, tau: f64) -> ComplexMatrix {
    let n = m.dim();
    let tm = m.as_matrix() * C64::new(tau, 0.0);
    let id = CMatrix::identity(n, n);
    let mut acc = CMatrix::zeros(n, n);
    for &dj in poly.d.iter().rev() {
        acc = &acc * &tm + &id * dj;
    }
    ComplexMatrix::wrap(acc)
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    c: Vec<JsonScalar>,
}

impl Serialize for StabilityPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            c: self.c.iter().map(|&z| JsonScalar::from_c64(z)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StabilityPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(deserializer)?;
        StabilityPolynomial::from_normalized(raw.c.into_iter().map(JsonScalar::to_c64).collect())
            .map_err(D::Error::custom)
    }
}
