use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{spectral_norm, ComplexMatrix};

/// Positive, strictly increasing step sizes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Grid(Vec<f64>);

pub const DEFAULT_POINTS: usize = 200;
pub const DEFAULT_MIN: f64 = 1e-6;
pub const DEFAULT_MAX: f64 = 1e-1;

impl Grid {
    pub fn new(taus: Vec<f64>) -> Result<Self> {
        if taus.is_empty() {
            return Err(Error::input("grid is empty"));
        }
        if taus.iter().any(|t| !t.is_finite() || *t <= 0.0) {
            return Err(Error::input("grid values must be positive and finite"));
        }
        if taus.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::input("grid must be strictly increasing"));
        }
        Ok(Self(taus))
    }

    pub fn log_spaced(min: f64, max: f64, points: usize) -> Result<Self> {
        if !(min > 0.0 && max > min && points >= 2) {
            return Err(Error::input(format!(
                "log grid needs 0 < min < max and at least 2 points (got {min}, {max}, {points})"
            )));
        }
        let (lo, hi) = (min.log10(), max.log10());
        let step = (hi - lo) / (points - 1) as f64;
        let mut taus: Vec<f64> = (0..points).map(|k| 10f64.powf(lo + step * k as f64)).collect();
        taus[0] = min;
        taus[points - 1] = max;
        Self::new(taus)
    }

    /// `points` log-spaced values in `[min, max] / ‖m‖₂`.
    pub fn scaled_for(m: &ComplexMatrix, min: f64, max: f64, points: usize) -> Result<Self> {
        let norm = spectral_norm(m.as_matrix());
        let scale = if norm > 0.0 { norm } else { 1.0 };
        Self::log_spaced(min / scale, max / scale, points)
    }

    pub fn default_for(m: &ComplexMatrix) -> Self {
        Self::scaled_for(m, DEFAULT_MIN, DEFAULT_MAX, DEFAULT_POINTS).expect("default grid is valid")
    }

    /// Every value multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.0.iter().map(|t| t * factor).collect())
    }

    pub fn taus(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<f64>> for Grid {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Grid> for Vec<f64> {
    fn from(g: Grid) -> Self {
        g.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn endpoints_exact() {
        let g = Grid::log_spaced(1e-6, 1e-1, 200).unwrap();
        assert_eq!(g.len(), 200);
        assert_eq!(g.taus()[0], 1e-6);
        assert_eq!(g.taus()[199], 1e-1);
    }

    #[test]
    fn default_is_scaled() {
        let g = Grid::default_for(&fixtures::levy_tadmor());
        let n = spectral_norm(fixtures::levy_tadmor().as_matrix());
        assert!((g.taus()[199] * n - 0.1).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(Grid::new(vec![1.0, 1.0]).is_err());
        assert!(Grid::new(vec![-1.0, 1.0]).is_err());
        assert!(Grid::log_spaced(1.0, 0.5, 10).is_err());
    }
}
