use super::decomp::{max_hermitian_eigenvalue, spectral_norm_of};
use super::matrix::{ComplexMatrix, C64};
use crate::error::Result;

/// `m = h + s` with `h` Hermitian and `s` skew-Hermitian.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianSplit {
    pub h: ComplexMatrix,
    pub s: ComplexMatrix,
}

pub fn hermitian_split(m: &ComplexMatrix) -> HermitianSplit {
    let adj = m.adjoint();
    let half = C64::new(0.5, 0.0);
    HermitianSplit {
        h: ComplexMatrix::wrap((m.as_matrix() + adj.as_matrix()) * half),
        s: ComplexMatrix::wrap((m.as_matrix() - adj.as_matrix()) * half),
    }
}

/// Largest eigenvalue of the Hermitian part.
pub fn hermitian_part_max_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    max_hermitian_eigenvalue(hermitian_split(m).h.as_matrix())
}

/// `true` iff the Hermitian part has no eigenvalue above `tol`.
pub fn is_semidissipative(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    Ok(hermitian_part_max_eigenvalue(m)? <= tol)
}

pub fn is_hermitian(m: &ComplexMatrix, rel_tol: f64) -> bool {
    let scale = spectral_norm_of(m).max(f64::MIN_POSITIVE);
    (m.as_matrix() - m.adjoint().as_matrix()).norm() <= rel_tol * scale.max(1.0)
}

pub fn is_skew_hermitian(m: &ComplexMatrix, rel_tol: f64) -> bool {
    let scale = spectral_norm_of(m).max(f64::MIN_POSITIVE);
    (m.as_matrix() + m.adjoint().as_matrix()).norm() <= rel_tol * scale.max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn hermitian_input() {
        let m = ComplexMatrix::from_real_rows(2, &[-1.0, 0.0, 0.0, -1.0]).unwrap();
        let sp = hermitian_split(&m);
        assert_eq!(sp.h, m);
        assert_eq!(sp.s, ComplexMatrix::zeros(2));
    }

    #[test]
    fn skew_input() {
        let m = ComplexMatrix::from_real_rows(2, &[0.0, 1.0, -1.0, 0.0]).unwrap();
        let sp = hermitian_split(&m);
        assert_eq!(sp.h, ComplexMatrix::zeros(2));
        assert_eq!(sp.s, m);
    }

    #[test]
    fn sun_shu_hermitian_part_is_minus_ones() {
        let sp = hermitian_split(&fixtures::sun_shu());
        let ones = ComplexMatrix::from_real_rows(3, &[-1.0; 9]).unwrap();
        assert_eq!(sp.h, ones);
    }

    #[test]
    fn semidissipativity() {
        assert!(is_semidissipative(&fixtures::sun_shu(), 1e-9).unwrap());
        assert!(is_semidissipative(&fixtures::levy_tadmor(), 1e-9).unwrap());
        assert!(!is_semidissipative(&ComplexMatrix::identity(3), 1e-9).unwrap());
    }
}
