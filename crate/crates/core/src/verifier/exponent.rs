use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::Grid;
use crate::error::{Error, Result};
use crate::linalg::{matrix_exponential, spectral_norm, ComplexMatrix};
use crate::tolerance::VIOLATION;

/// Points with `1 - f(τ)` in this band enter the fit; below it rounding
/// dominates, above it the leading term no longer does.
pub const SIGNAL_MIN: f64 = 1e-12;
pub const SIGNAL_MAX: f64 = 1e-2;
pub const MIN_POINTS: usize = 4;
/// The automatic window shifts right until this many points are usable.
pub const TARGET_POINTS: usize = 8;
const MAX_SHIFTS: u32 = 6;

/// `1 - f(τ) ≈ ĉ τ^â` fitted on a log–log scale.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub a_hat: f64,
    pub c_hat: f64,
    /// Root-mean-square residual of the log–log fit.
    pub residual: f64,
    pub window: (f64, f64),
    pub points: usize,
    /// Decades the grid was shifted right to find signal.
    pub shift_decades: u32,
}

/// Least-squares line `y = a x + b`, returning `(a, b, rms residual)`.
pub(crate) fn line_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let a = sxy / sxx;
    let b = my - a * mx;
    let rss: f64 = x.iter().zip(y).map(|(u, v)| (v - a * u - b).powi(2)).sum();
    (a, b, (rss / n).sqrt())
}

fn fit_values(taus: &[f64], values: &[f64]) -> Result<ExponentFit> {
    if let Some(k) = values.iter().position(|&f| f > 1.0 + VIOLATION) {
        return Err(Error::input(format!(
            "f({:e}) = {} exceeds 1; no decay to fit",
            taus[k], values[k]
        )));
    }
    let (x, y): (Vec<f64>, Vec<f64>) = taus
        .iter()
        .zip(values)
        .filter(|(_, &f)| (SIGNAL_MIN..=SIGNAL_MAX).contains(&(1.0 - f)))
        .map(|(&t, &f)| (t.ln(), (1.0 - f).ln()))
        .unzip();
    if x.len() < MIN_POINTS {
        return Err(Error::InsufficientData(format!(
            "{} points with 1 - f in [{SIGNAL_MIN:e}, {SIGNAL_MAX:e}], need {MIN_POINTS}",
            x.len()
        )));
    }
    let (a, b, residual) = line_fit(&x, &y);
    Ok(ExponentFit {
        a_hat: a,
        c_hat: b.exp(),
        residual,
        window: (x[0].exp(), x[x.len() - 1].exp()),
        points: x.len(),
        shift_decades: 0,
    })
}

/// Fits the short-time decay exponent of `f` on the given grid.
pub fn fit_short_time_exponent(f: impl Fn(f64) -> f64 + Sync, grid: &Grid) -> Result<ExponentFit> {
    let values: Vec<f64> = grid.taus().par_iter().map(|&t| f(t)).collect();
    fit_values(grid.taus(), &values)
}

/// Like [`fit_short_time_exponent`], shifting the grid right one decade at a
/// time until enough points carry signal above rounding.
pub fn fit_short_time_exponent_auto(f: impl Fn(f64) -> f64 + Sync, grid: &Grid) -> Result<ExponentFit> {
    let mut last = None;
    for shift in 0..=MAX_SHIFTS {
        let g = grid.scaled(10f64.powi(shift as i32))?;
        match fit_short_time_exponent(&f, &g) {
            Ok(fit) if fit.points >= TARGET_POINTS => {
                return Ok(ExponentFit {
                    shift_decades: shift,
                    ..fit
                })
            }
            Ok(fit) => {
                last = Some(Ok(ExponentFit {
                    shift_decades: shift,
                    ..fit
                }))
            }
            Err(e @ Error::InsufficientData(_)) => {
                if last.is_none() {
                    last = Some(Err(e));
                }
            }
            Err(e) => return Err(e),
        }
    }
    last.expect("at least one attempt")
}

/// Exponent of `1 - ‖e^{τL}‖₂` on the default grid, shifted as needed.
pub fn short_time_exponent(m: &ComplexMatrix) -> Result<ExponentFit> {
    short_time_exponent_on(m, &Grid::default_for(m))
}

pub fn short_time_exponent_on(m: &ComplexMatrix, grid: &Grid) -> Result<ExponentFit> {
    fit_short_time_exponent_auto(
        |t| spectral_norm(matrix_exponential(m, t).as_matrix()),
        grid,
    )
}

/// Acceptance band for a fitted exponent `a`: double precision limits how
/// close to zero the window can reach for large `a`.
pub fn exponent_tolerance(a: usize) -> f64 {
    match a {
        0 | 1 => 0.05,
        2..=6 => 0.15,
        _ => 0.3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn minus_identity_slope_one() {
        let fit = short_time_exponent(&fixtures::minus_identity(3)).unwrap();
        assert!((fit.a_hat - 1.0).abs() <= 0.05, "{fit:?}");
        assert_eq!(fit.shift_decades, 0);
    }

    #[test]
    fn sun_shu_slope_five() {
        let fit = short_time_exponent(&fixtures::sun_shu()).unwrap();
        assert!((fit.a_hat - 5.0).abs() <= 0.15, "{fit:?}");
    }

    #[test]
    fn levy_tadmor_needs_a_shift() {
        let fit = short_time_exponent(&fixtures::levy_tadmor()).unwrap();
        assert!((fit.a_hat - 9.0).abs() <= 0.3, "{fit:?}");
        assert!(fit.shift_decades > 0);
    }

    #[test]
    fn too_few_points() {
        let g = Grid::log_spaced(1e-9, 1e-8, 10).unwrap();
        assert!(matches!(
            fit_short_time_exponent(|t| 1.0 - t.powi(9), &g),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn growth_is_rejected() {
        let g = Grid::log_spaced(1e-3, 1e-1, 10).unwrap();
        assert!(matches!(
            fit_short_time_exponent(|t| 1.0 + t, &g),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn exact_power_law() {
        let g = Grid::log_spaced(1e-4, 1e-1, 30).unwrap();
        let fit = fit_short_time_exponent(|t| 1.0 - 0.5 * t.powi(3), &g).unwrap();
        assert!((fit.a_hat - 3.0).abs() < 1e-3);
        assert!((fit.c_hat - 0.5).abs() < 1e-2);
    }
}
