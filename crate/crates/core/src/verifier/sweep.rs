use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::Grid;
use crate::error::{Error, Result};
use crate::linalg::decomp::svd;
use crate::linalg::{hpd_sqrt_pair, CMatrix, CVector, ComplexMatrix};
use crate::rk::{eval_poly_matrix, StabilityPolynomial};
use crate::tolerance::VIOLATION;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub tau: f64,
    pub norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub grid: Grid,
    pub norms: Vec<f64>,
    pub first_violation: Option<Violation>,
    /// `max(norm - 1)`; negative when every step contracts.
    pub max_excess: f64,
    /// Largest grid value below which no violation occurs, if any.
    pub stable_threshold: Option<f64>,
    pub weighted: bool,
}

impl SweepResult {
    pub fn violated(&self) -> bool {
        self.first_violation.is_some()
    }

    /// `tau,norm,excess` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("tau,norm,excess\n");
        for (t, n) in self.grid.taus().iter().zip(&self.norms) {
            out.push_str(&format!("{t:e},{n:e},{:e}\n", n - 1.0));
        }
        out
    }
}

/// `P^{1/2}` and `P^{-1/2}` after checking the weight is HPD.
fn weight_factors(m: &ComplexMatrix, weight: Option<&ComplexMatrix>) -> Result<Option<(CMatrix, CMatrix)>> {
    let Some(p) = weight else { return Ok(None) };
    if p.dim() != m.dim() {
        return Err(Error::Dimension("weight and matrix sizes differ".into()));
    }
    let (s, s_inv) = hpd_sqrt_pair(p).map_err(|e| Error::input(format!("weight: {e}")))?;
    Ok(Some((s.into_inner(), s_inv.into_inner())))
}

/// `R(τL)`, conjugated by the weight root when present.
fn step_matrix(
    poly: &StabilityPolynomial,
    m: &ComplexMatrix,
    tau: f64,
    factors: Option<&(CMatrix, CMatrix)>,
) -> CMatrix {
    let r = eval_poly_matrix(poly, m, tau).into_inner();
    match factors {
        Some((s, s_inv)) => s * r * s_inv,
        None => r,
    }
}

/// `‖R(τL)‖₂`, or `‖P^{1/2} R(τL) P^{-1/2}‖₂` with a weight, at every grid
/// point.
pub fn norm_sweep(
    poly: &StabilityPolynomial,
    m: &ComplexMatrix,
    grid: &Grid,
    weight: Option<&ComplexMatrix>,
) -> Result<SweepResult> {
    let factors = weight_factors(m, weight)?;
    let norms: Vec<f64> = grid
        .taus()
        .par_iter()
        .map(|&tau| {
            let r = step_matrix(poly, m, tau, factors.as_ref());
            svd(&r).map(|d| d.singular_values[0])
        })
        .collect::<Result<_>>()?;
    let first = grid
        .taus()
        .iter()
        .zip(&norms)
        .position(|(_, &n)| n > 1.0 + VIOLATION);
    let first_violation = first.map(|k| Violation {
        tau: grid.taus()[k],
        norm: norms[k],
    });
    let stable_threshold = match first {
        Some(0) => None,
        Some(k) => Some(grid.taus()[k - 1]),
        None => grid.taus().last().copied(),
    };
    let max_excess = norms.iter().map(|n| n - 1.0).fold(f64::NEG_INFINITY, f64::max);
    Ok(SweepResult {
        grid: grid.clone(),
        norms,
        first_violation,
        max_excess,
        stable_threshold,
        weighted: weight.is_some(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub tau: f64,
    /// Unit vector (in the weighted norm when a weight is given).
    pub u: CVector,
    /// `‖R(τL)u‖ / ‖u‖ - 1`.
    pub growth: f64,
}

/// Dominant right singular vector of the step matrix at the grid point with
/// the largest amplification, if that amplification is a violation.
pub fn counterexample_search(
    poly: &StabilityPolynomial,
    m: &ComplexMatrix,
    grid: &Grid,
    weight: Option<&ComplexMatrix>,
) -> Result<Option<Counterexample>> {
    let factors = weight_factors(m, weight)?;
    let best = grid
        .taus()
        .par_iter()
        .map(|&tau| {
            let dec = svd(&step_matrix(poly, m, tau, factors.as_ref()))?;
            Ok((tau, dec.singular_values[0], dec.right_vector(0)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("grid is non-empty");
    let (tau, sigma, v) = best;
    if sigma <= 1.0 + VIOLATION {
        return Ok(None);
    }
    let u = match &factors {
        Some((s, s_inv)) => {
            let u = s_inv * v;
            let pn = (s * &u).norm();
            u / crate::linalg::C64::new(pn, 0.0)
        }
        None => v,
    };
    Ok(Some(Counterexample {
        tau,
        u,
        growth: sigma - 1.0,
    }))
}
