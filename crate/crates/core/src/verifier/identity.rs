use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypocoercivity::{witness_profile, witness_profile_full};
use crate::linalg::{hermitian_part_max_eigenvalue, matrix_power, spectral_norm, CVector, ComplexMatrix};
use crate::tolerance::PSD_REL;

/// Both sides of
/// `u*(L^{p+1} + (L*)^{p+1})u = -2(-1)^m ‖(-L_H)^{1/2} L_S^m u‖²`, `p = 2m`,
/// valid for `u` in the kernel of `T_{m-1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticFormCheck {
    pub level: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub matched: bool,
    /// `‖(-L_H)^{1/2} L_S^m u‖²`.
    pub skew_power_term: f64,
    /// `‖(-L_H)^{1/2} L^m u‖²`; equal to the above on the kernel.
    pub full_power_term: f64,
}

/// Relative agreement required of the two sides.
pub const IDENTITY_REL: f64 = 1e-8;

pub fn quadratic_form_identity(m: &ComplexMatrix, u0: &CVector, level: usize) -> Result<QuadraticFormCheck> {
    let n = m.dim();
    if u0.len() != n {
        return Err(Error::Dimension(format!("vector has {} entries, matrix is {n}x{n}", u0.len())));
    }
    let unorm = u0.norm();
    if unorm == 0.0 {
        return Err(Error::input("witness vector is zero"));
    }
    let scale = spectral_norm(m.as_matrix()).max(1.0);
    let lmax = hermitian_part_max_eigenvalue(m)?;
    if lmax > PSD_REL * scale {
        return Err(Error::input(format!(
            "matrix is not semi-dissipative: Hermitian part has eigenvalue {lmax:e}"
        )));
    }
    let skew = witness_profile(m, u0, level)?;
    let full = witness_profile_full(m, u0, level)?;
    for (j, v) in skew[..level].iter().enumerate() {
        let bound = 1e-7 * scale.powf(j as f64 + 0.5) * unorm;
        if *v > bound {
            return Err(Error::input(format!(
                "vector is not in the kernel required at level {level}: ‖(-L_H)^(1/2) L_S^{j} u‖ = {v:e}"
            )));
        }
    }
    let power = matrix_power(m.as_matrix(), 2 * level + 1);
    let lhs = 2.0 * u0.dotc(&(power * u0)).re;
    let sign = if level.is_multiple_of(2) { 1.0 } else { -1.0 };
    let skew_term = skew[level].powi(2);
    let rhs = -2.0 * sign * skew_term;
    let matched = (lhs - rhs).abs() <= IDENTITY_REL * (lhs.abs() + rhs.abs() + 1.0);
    Ok(QuadraticFormCheck {
        level,
        lhs,
        rhs,
        matched,
        skew_power_term: skew_term,
        full_power_term: full[level].powi(2),
    })
}
