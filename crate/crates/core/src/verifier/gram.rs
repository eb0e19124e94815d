use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::exponent::line_fit;
use super::grid::Grid;
use crate::error::{Error, Result};
use crate::linalg::{matrix_exponential, matrix_power, spectral_norm, CMatrix, ComplexMatrix, C64};
use crate::rk::{eval_poly_matrix, StabilityPolynomial};

/// Defects at or below this are rounding noise and are not fitted.
pub const DEFECT_FLOOR: f64 = 1e-12;
/// Default grid, in units of `1/‖L‖₂`.
pub const GRID_MIN: f64 = 1e-3;
pub const GRID_MAX: f64 = 1e-1;
pub const GRID_POINTS: usize = 60;

/// `‖G(τ) - Q(τ)‖₂` with `G = R(τL)*R(τL)` and `Q = e^{τL*}e^{τL}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramDefect {
    pub taus: Vec<f64>,
    pub defect_norms: Vec<f64>,
    /// Log–log slope over points above the noise floor.
    pub fitted_order: Option<f64>,
    pub fit_points: usize,
    /// `|c_{p+1} - 1| · ‖L^{p+1} + (L*)^{p+1}‖₂ / (p+1)!`.
    pub predicted_coefficient: f64,
    /// `defect / τ^{p+1}` extrapolated linearly to `τ = 0`.
    pub measured_coefficient: Option<f64>,
    /// Norm of the `τ^{p+1}` coefficient from the two power series.
    pub series_coefficient: f64,
    /// The predicted leading term vanishes; the order is then at least `p + 2`.
    pub degenerate: bool,
}

impl GramDefect {
    pub fn default_grid(m: &ComplexMatrix) -> Grid {
        Grid::scaled_for(m, GRID_MIN, GRID_MAX, GRID_POINTS).expect("valid grid")
    }
}

fn factorial(j: usize) -> f64 {
    (1..=j).map(|k| k as f64).product()
}

fn binomial(n: usize, k: usize) -> f64 {
    (1..=k).map(|i| (n + 1 - i) as f64 / i as f64).product::<f64>().round()
}

/// `G_j - U_j / j!` with `G_j = Σ_{k+l=j} conj(d_k) d_l (L*)^k L^l` and
/// `U_j = Σ_k C(j,k) (L*)^k L^{j-k}`.
fn series_difference(poly: &StabilityPolynomial, m: &CMatrix, j: usize) -> CMatrix {
    let n = m.nrows();
    let adj = m.adjoint();
    let mut out = CMatrix::zeros(n, n);
    let d = |k: usize| poly.raw().get(k).copied().unwrap_or_default();
    for k in 0..=j {
        let term = matrix_power(&adj, k) * matrix_power(m, j - k);
        let coef = d(k).conj() * d(j - k) - C64::new(binomial(j, k) / factorial(j), 0.0);
        out += term * coef;
    }
    out
}

pub fn gram_defect(poly: &StabilityPolynomial, m: &ComplexMatrix, grid: &Grid) -> Result<GramDefect> {
    let p = poly.order();
    let norm = spectral_norm(m.as_matrix());
    if norm > 0.0 && grid.taus().last().copied().unwrap_or(0.0) * norm > 0.1 * (1.0 + 1e-12) {
        return Err(Error::input("gram defect grid must stay within 0.1 / ‖L‖₂"));
    }
    let defect_norms: Vec<f64> = grid
        .taus()
        .par_iter()
        .map(|&tau| {
            let r = eval_poly_matrix(poly, m, tau).into_inner();
            let e = matrix_exponential(m, tau).into_inner();
            spectral_norm(&(r.adjoint() * &r - e.adjoint() * &e))
        })
        .collect();

    let k = p + 1;
    let lk = matrix_power(m.as_matrix(), k);
    let lead = spectral_norm(&(&lk + lk.adjoint()));
    let c_tilde = (poly.coef(k) - 1.0).norm();
    let predicted = c_tilde * lead / factorial(k);
    let degenerate = predicted <= 1e-12 * norm.powi(k as i32).max(f64::MIN_POSITIVE);
    let series = spectral_norm(&series_difference(poly, m.as_matrix(), k));

    let usable: Vec<(f64, f64)> = grid
        .taus()
        .iter()
        .zip(&defect_norms)
        .filter(|(_, &d)| d > DEFECT_FLOOR)
        .map(|(&t, &d)| (t, d))
        .collect();
    let (fitted_order, measured) = if usable.len() >= 2 {
        let (x, y): (Vec<f64>, Vec<f64>) = usable.iter().map(|(t, d)| (t.ln(), d.ln())).unzip();
        let slope = line_fit(&x, &y).0;
        let (t, c): (Vec<f64>, Vec<f64>) = usable.iter().map(|(t, d)| (*t, d / t.powi(k as i32))).unzip();
        let measured = (!degenerate).then(|| line_fit(&t, &c).1.abs());
        (Some(slope), measured)
    } else {
        (None, None)
    };
    Ok(GramDefect {
        taus: grid.taus().to_vec(),
        defect_norms,
        fitted_order,
        fit_points: usable.len(),
        predicted_coefficient: predicted,
        measured_coefficient: measured,
        series_coefficient: series,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rk::scheme_by_name;

    #[test]
    fn rk4_sun_shu() {
        let m = fixtures::sun_shu();
        let rk4 = scheme_by_name("rk4").unwrap().polynomial;
        let g = gram_defect(&rk4, &m, &GramDefect::default_grid(&m)).unwrap();
        let slope = g.fitted_order.unwrap();
        assert!((slope - 5.0).abs() <= 0.1, "{slope}");
        let l5 = matrix_power(m.as_matrix(), 5);
        let oracle = spectral_norm(&(&l5 + l5.adjoint())) / 120.0;
        assert!((g.predicted_coefficient - oracle).abs() < 1e-12 * oracle);
        let measured = g.measured_coefficient.unwrap();
        assert!((measured - oracle).abs() <= 0.1 * oracle, "{measured} vs {oracle}");
        assert!((g.series_coefficient - oracle).abs() < 1e-10 * oracle);
        assert!(!g.degenerate);
    }

    #[test]
    fn zero_matrix_has_no_defect() {
        let rk4 = scheme_by_name("rk4").unwrap().polynomial;
        let z = ComplexMatrix::zeros(3);
        let g = gram_defect(&rk4, &z, &Grid::log_spaced(1e-3, 1e-1, 10).unwrap()).unwrap();
        assert!(g.defect_norms.iter().all(|&d| d == 0.0));
        assert!(g.degenerate);
        assert!(g.fitted_order.is_none());
    }

    #[test]
    fn euler_rotation_second_order() {
        let euler = scheme_by_name("euler").unwrap().polynomial;
        let m = fixtures::rotation();
        let g = gram_defect(&euler, &m, &GramDefect::default_grid(&m)).unwrap();
        assert!((g.fitted_order.unwrap() - 2.0).abs() < 0.05);
        assert!((g.predicted_coefficient - 1.0).abs() < 1e-14);
    }

    #[test]
    fn grid_too_coarse() {
        let rk4 = scheme_by_name("rk4").unwrap().polynomial;
        let g = Grid::log_spaced(1e-2, 1.0, 5).unwrap();
        assert!(gram_defect(&rk4, &fixtures::sun_shu(), &g).is_err());
    }
}
