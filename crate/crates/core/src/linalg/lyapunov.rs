//! Lyapunov equation `L*P + PL = -Q` and the weighted-norm transform.

use serde::{Deserialize, Serialize};

use super::decomp::{hermitian_eigen, schur, spectral_norm_of};
use super::matrix::{CMatrix, CVector, ComplexMatrix, C64};
use super::split::is_hermitian;
use super::stability::classify_stability;
use crate::error::{Error, Result};
use crate::tolerance::{EIG_REL, LYAP_REL, SYM_REL};

/// Weight `p` together with the residual `q = -(L*P + PL)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LyapunovCertificate {
    pub p: ComplexMatrix,
    pub q: ComplexMatrix,
    pub strict: bool,
}

fn lyapunov_residual(m: &CMatrix, p: &CMatrix) -> CMatrix {
    -(m.adjoint() * p + p * m)
}

/// Solves `L*P + PL = -Q` by complex Schur reduction and a triangular
/// back-substitution (Bartels–Stewart).
pub fn solve_lyapunov(m: &ComplexMatrix, q: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = m.dim();
    if q.dim() != n {
        return Err(Error::Dimension(format!("q is {}x{0}, m is {n}x{n}", q.dim())));
    }
    if !is_hermitian(q, SYM_REL) {
        return Err(Error::input("q must be Hermitian"));
    }
    let q_eig = hermitian_eigen(q.as_matrix())?;
    if q_eig.min() <= 0.0 {
        return Err(Error::input("q must be positive definite"));
    }
    let norm = spectral_norm_of(m.as_matrix());
    let cls = classify_stability(m, EIG_REL * norm.max(1.0))?;
    if !cls.is_asymptotically_stable() {
        return Err(Error::Spectrum(format!(
            "Lyapunov solve needs an asymptotically stable matrix (spectral abscissa {:e})",
            cls.spectral_abscissa
        )));
    }

    // With m = U T U*, X = U* P U solves T* X + X T = C, C = -U* Q U.
    let (u, t) = schur(m.as_matrix())?;
    let c = -(u.adjoint() * q.as_matrix() * &u);
    let mut x = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = c[(i, j)];
            for k in 0..i {
                acc -= t[(k, i)].conj() * x[(k, j)];
            }
            for k in 0..j {
                acc -= x[(i, k)] * t[(k, j)];
            }
            x[(i, j)] = acc / (t[(i, i)].conj() + t[(j, j)]);
        }
    }
    let p = &u * x * u.adjoint();
    let p = (&p + p.adjoint()) * C64::new(0.5, 0.0);

    let residual = (lyapunov_residual(m.as_matrix(), &p) - q.as_matrix()).norm();
    let q_norm = q_eig.max();
    if residual > LYAP_REL * q_norm * (n as f64).sqrt().max(1.0) * norm.max(1.0) {
        return Err(Error::Numerical(format!(
            "Lyapunov residual {residual:e} exceeds tolerance"
        )));
    }
    Ok(ComplexMatrix::wrap(p))
}

/// `true` iff `p ≻ 0` and `-(L*P + PL)` is positive semi-definite
/// (definite when `strict`), both decided with `tol`.
pub fn verify_lyapunov(m: &ComplexMatrix, p: &ComplexMatrix, strict: bool, tol: f64) -> Result<bool> {
    Ok(lyapunov_certificate(m, p, tol)?.is_some_and(|c| !strict || c.strict))
}

/// Certificate when `p` is a valid (possibly strict) Lyapunov weight.
pub fn lyapunov_certificate(
    m: &ComplexMatrix,
    p: &ComplexMatrix,
    tol: f64,
) -> Result<Option<LyapunovCertificate>> {
    if p.dim() != m.dim() {
        return Err(Error::Dimension("weight and matrix sizes differ".into()));
    }
    if !is_hermitian(p, SYM_REL) {
        return Err(Error::input("weight must be Hermitian"));
    }
    if hermitian_eigen(p.as_matrix())?.min() <= tol {
        return Ok(None);
    }
    let q = lyapunov_residual(m.as_matrix(), p.as_matrix());
    let q_min = hermitian_eigen(&q)?.min();
    if q_min < -tol {
        return Ok(None);
    }
    Ok(Some(LyapunovCertificate {
        p: p.clone(),
        q: ComplexMatrix::wrap(q),
        strict: q_min >= tol,
    }))
}

fn hpd_eigen(p: &ComplexMatrix) -> Result<(CMatrix, Vec<f64>)> {
    if !is_hermitian(p, SYM_REL) {
        return Err(Error::input("matrix is not Hermitian"));
    }
    let eig = hermitian_eigen(p.as_matrix())?;
    if eig.min() <= f64::EPSILON * eig.max().abs() * p.dim() as f64 || eig.min() <= 0.0 {
        return Err(Error::input(format!(
            "matrix is not positive definite (smallest eigenvalue {:e})",
            eig.min()
        )));
    }
    Ok((eig.vectors, eig.values))
}

fn spectral_function(vectors: &CMatrix, values: &[f64], f: impl Fn(f64) -> f64) -> CMatrix {
    let d = CVector::from_iterator(values.len(), values.iter().map(|&l| C64::new(f(l), 0.0)));
    let out = vectors * CMatrix::from_diagonal(&d) * vectors.adjoint();
    (&out + out.adjoint()) * C64::new(0.5, 0.0)
}

/// Hermitian positive definite square root.
pub fn hpd_sqrt(p: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (v, l) = hpd_eigen(p)?;
    Ok(ComplexMatrix::wrap(spectral_function(&v, &l, f64::sqrt)))
}

/// `(P^{1/2}, P^{-1/2})` from one eigen-decomposition.
pub fn hpd_sqrt_pair(p: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let (v, l) = hpd_eigen(p)?;
    Ok((
        ComplexMatrix::wrap(spectral_function(&v, &l, f64::sqrt)),
        ComplexMatrix::wrap(spectral_function(&v, &l, |x| 1.0 / x.sqrt())),
    ))
}

/// `P^{1/2} m P^{-1/2}`.
pub fn transform_to_dissipative(m: &ComplexMatrix, p: &ComplexMatrix) -> Result<ComplexMatrix> {
    if p.dim() != m.dim() {
        return Err(Error::Dimension("weight and matrix sizes differ".into()));
    }
    let (s, s_inv) = hpd_sqrt_pair(p)?;
    Ok(ComplexMatrix::wrap(s.as_matrix() * m.as_matrix() * s_inv.as_matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::split::hermitian_part_max_eigenvalue;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn scalar_lyapunov() {
        let m = ComplexMatrix::from_real_rows(1, &[-1.0]).unwrap();
        let q = ComplexMatrix::identity(1);
        let p = solve_lyapunov(&m, &q).unwrap();
        assert!((p[(0, 0)] - c(0.5)).norm() < 1e-14);
    }

    #[test]
    fn diagonal_lyapunov() {
        let m = ComplexMatrix::from_diagonal(&[c(-1.0), c(-2.0)]).unwrap();
        let p = solve_lyapunov(&m, &ComplexMatrix::identity(2)).unwrap();
        let expected = ComplexMatrix::from_diagonal(&[c(0.5), c(0.25)]).unwrap();
        assert!((p.as_matrix() - expected.as_matrix()).norm() < 1e-14);
    }

    #[test]
    fn sun_shu_lyapunov_is_strict() {
        let m = fixtures::sun_shu();
        let p = solve_lyapunov(&m, &ComplexMatrix::identity(3)).unwrap();
        assert!(verify_lyapunov(&m, &p, true, 1e-9).unwrap());
        let r = lyapunov_residual(m.as_matrix(), p.as_matrix()) - CMatrix::identity(3, 3);
        assert!(r.norm() < 1e-10);
    }

    #[test]
    fn lyapunov_rejects_unstable() {
        let m = ComplexMatrix::from_diagonal(&[c(-1.0), C64::new(0.0, 1.0)]).unwrap();
        assert!(matches!(
            solve_lyapunov(&m, &ComplexMatrix::identity(2)),
            Err(Error::Spectrum(_))
        ));
    }

    #[test]
    fn ww_star_is_strict_weight() {
        let m = fixtures::sun_shu();
        let p = fixtures::ww_star();
        assert!(verify_lyapunov(&m, &p, true, 1e-9).unwrap());
        // Oracle: eigenvalues of -(L*P + PL) are (1.0500..., 4, 60.949...).
        let q = lyapunov_residual(m.as_matrix(), p.as_matrix());
        let eig = hermitian_eigen(&q).unwrap();
        assert!((eig.values[1] - 4.0).abs() < 1e-12);
        assert!(eig.min() > 1.0);
    }

    #[test]
    fn verify_lyapunov_trivial_cases() {
        let rot = ComplexMatrix::from_diagonal(&[C64::new(0.0, 1.0)]).unwrap();
        let one = ComplexMatrix::identity(1);
        assert!(verify_lyapunov(&rot, &one, false, 1e-9).unwrap());
        assert!(!verify_lyapunov(&rot, &one, true, 1e-9).unwrap());
        assert!(!verify_lyapunov(&one, &one, false, 1e-9).unwrap());
    }

    #[test]
    fn verify_lyapunov_rejects_non_hermitian() {
        let p = ComplexMatrix::from_real_rows(2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            verify_lyapunov(&ComplexMatrix::identity(2), &p, false, 1e-9),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn sqrt_examples() {
        let p = ComplexMatrix::from_diagonal(&[c(4.0), c(9.0)]).unwrap();
        let s = hpd_sqrt(&p).unwrap();
        let expected = ComplexMatrix::from_diagonal(&[c(2.0), c(3.0)]).unwrap();
        assert!((s.as_matrix() - expected.as_matrix()).norm() < 1e-14);
        let id = hpd_sqrt(&ComplexMatrix::identity(3)).unwrap();
        assert!((id.as_matrix() - CMatrix::identity(3, 3)).norm() < 1e-14);
        let p = fixtures::ww_star();
        let s = hpd_sqrt(&p).unwrap();
        assert!((s.as_matrix() * s.as_matrix() - p.as_matrix()).norm() <= 1e-12 * 61.0);
    }

    #[test]
    fn sqrt_rejects_indefinite() {
        let p = ComplexMatrix::from_diagonal(&[c(1.0), c(-1.0)]).unwrap();
        assert!(matches!(hpd_sqrt(&p), Err(Error::Input(_))));
    }

    #[test]
    fn transform_examples() {
        let m = fixtures::sun_shu();
        let same = transform_to_dissipative(&m, &ComplexMatrix::identity(3)).unwrap();
        assert!((same.as_matrix() - m.as_matrix()).norm() < 1e-13);
        let hat = transform_to_dissipative(&m, &fixtures::ww_star()).unwrap();
        assert!(hermitian_part_max_eigenvalue(&hat).unwrap() < -1e-3);
        let mixed = ComplexMatrix::from_diagonal(&[c(-1.0), C64::new(0.0, 1.0)]).unwrap();
        let t = transform_to_dissipative(&mixed, &ComplexMatrix::identity(2)).unwrap();
        assert!((t.as_matrix() - mixed.as_matrix()).norm() < 1e-14);
        assert!(hermitian_part_max_eigenvalue(&t).unwrap() <= 1e-12);
    }
}
