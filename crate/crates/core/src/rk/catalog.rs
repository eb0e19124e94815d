use super::polynomial::StabilityPolynomial;
use super::tableau::ButcherTableau;
use crate::error::{Error, Result};

/// A named scheme; `tableau` is absent for schemes given only by their
/// stability polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct Scheme {
    pub name: String,
    pub tableau: Option<ButcherTableau>,
    pub polynomial: StabilityPolynomial,
}

impl Scheme {
    pub fn from_tableau(name: impl Into<String>, tableau: ButcherTableau) -> Result<Self> {
        let polynomial = StabilityPolynomial::from_tableau(&tableau)?;
        Ok(Self {
            name: name.into(),
            tableau: Some(tableau),
            polynomial,
        })
    }

    pub fn from_polynomial(name: impl Into<String>, polynomial: StabilityPolynomial) -> Self {
        Self {
            name: name.into(),
            tableau: None,
            polynomial,
        }
    }
}

const TABLEAUX: &[(&str, &[f64], &[f64])] = &[
    ("euler", &[0.0], &[1.0]),
    ("heun2", &[0.0, 0.0, 1.0, 0.0], &[0.5, 0.5]),
    (
        "heun3",
        &[0.0, 0.0, 0.0, 1.0 / 3.0, 0.0, 0.0, 0.0, 2.0 / 3.0, 0.0],
        &[0.25, 0.0, 0.75],
    ),
    (
        "kutta3",
        &[0.0, 0.0, 0.0, 0.5, 0.0, 0.0, -1.0, 2.0, 0.0],
        &[1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0],
    ),
    (
        "rk4",
        &[
            0.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0,
        ],
        &[1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0],
    ),
];

/// Truncated exponentials `texp1..texp8` cover every residue of `p mod 4`
/// twice.
pub const TEXP_MAX: usize = 8;

pub fn scheme_names() -> Vec<String> {
    TABLEAUX
        .iter()
        .map(|(n, _, _)| n.to_string())
        .chain((1..=TEXP_MAX).map(|p| format!("texp{p}")))
        .collect()
}

pub fn scheme_by_name(name: &str) -> Result<Scheme> {
    if let Some((n, a, b)) = TABLEAUX.iter().find(|(n, _, _)| *n == name) {
        return Scheme::from_tableau(*n, ButcherTableau::from_real(a, b)?);
    }
    if let Some(p) = name.strip_prefix("texp").and_then(|d| d.parse::<usize>().ok()) {
        if (1..=TEXP_MAX).contains(&p) {
            return Ok(Scheme::from_polynomial(name, StabilityPolynomial::truncated_exponential(p)));
        }
    }
    Err(Error::input(format!("unknown scheme '{name}'")))
}

pub fn catalog() -> Vec<Scheme> {
    scheme_names()
        .iter()
        .map(|n| scheme_by_name(n).expect("catalog entries are valid"))
        .collect()
}
