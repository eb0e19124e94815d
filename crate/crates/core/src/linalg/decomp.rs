//! Thin wrappers over the nalgebra factorizations with sorted, checked output.

use nalgebra::{Schur, SymmetricEigen};

use super::matrix::{CMatrix, CVector, C64};
use crate::error::{Error, Result};

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector of `values[k]`.
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn max(&self) -> f64 {
        *self.values.last().expect("non-empty spectrum")
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn vector(&self, k: usize) -> CVector {
        self.vectors.column(k).into_owned()
    }
}

pub fn hermitian_part_of(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

/// Input is symmetrized first so rounding asymmetry never reaches the solver.
pub fn hermitian_eigen(h: &CMatrix) -> Result<HermitianEigen> {
    let n = h.nrows();
    let sym = hermitian_part_of(h);
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 200 * n.max(4))
        .ok_or_else(|| Error::Numerical("Hermitian eigensolver did not converge".into()))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

pub fn max_hermitian_eigenvalue(h: &CMatrix) -> Result<f64> {
    Ok(hermitian_eigen(h)?.max())
}

/// Singular value decomposition with singular values in descending order.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: CMatrix,
    pub singular_values: Vec<f64>,
    pub v_t: CMatrix,
}

impl Svd {
    /// Right singular vector `k` (column of `V`).
    pub fn right_vector(&self, k: usize) -> CVector {
        self.v_t.row(k).adjoint()
    }
}

/// Singular value decomposition built on the Hermitian eigensolver.
///
/// The eigenvalues of `[[0, M], [M*, 0]]` are `±σ_k` (plus zeros), with
/// eigenvectors `[u_k; v_k]/√2`, so singular values come out with absolute
/// accuracy `ε‖M‖₂`. Pairs for numerically zero `σ` are not separable this
/// way; their `u`/`v` are orthonormal completions of the resolved vectors.
pub fn svd(m: &CMatrix) -> Result<Svd> {
    let (rows, cols) = m.shape();
    let k = rows.min(cols);
    if k == 0 {
        return Ok(Svd {
            u: CMatrix::identity(rows, k),
            singular_values: Vec::new(),
            v_t: CMatrix::identity(k, cols),
        });
    }
    let size = rows + cols;
    let mut aug = CMatrix::zeros(size, size);
    aug.view_mut((0, rows), (rows, cols)).copy_from(m);
    aug.view_mut((rows, 0), (cols, rows)).copy_from(&m.adjoint());
    let eig = hermitian_eigen(&aug)?;
    let singular_values: Vec<f64> = (0..k).map(|j| eig.values[size - 1 - j].max(0.0)).collect();
    let cutoff = 8.0 * f64::EPSILON * size as f64 * singular_values[0];

    let resolved = singular_values.iter().take_while(|&&s| s > cutoff).count();
    let mut u = CMatrix::zeros(rows, k);
    let mut v = CMatrix::zeros(cols, k);
    for j in 0..resolved {
        let x = eig.vectors.column(size - 1 - j);
        let top = x.rows(0, rows).into_owned();
        let bottom = x.rows(rows, cols).into_owned();
        u.set_column(j, &(&top / C64::new(top.norm(), 0.0)));
        v.set_column(j, &(&bottom / C64::new(bottom.norm(), 0.0)));
    }
    if resolved < k {
        let cu = complement(&u.columns(0, resolved).into_owned(), rows)?;
        let cv = complement(&v.columns(0, resolved).into_owned(), cols)?;
        u.columns_mut(resolved, k - resolved).copy_from(&cu.columns(0, k - resolved));
        v.columns_mut(resolved, k - resolved).copy_from(&cv.columns(0, k - resolved));
    }
    Ok(Svd {
        u,
        singular_values,
        v_t: v.adjoint(),
    })
}

/// Orthonormal basis of the orthogonal complement of the (orthonormal)
/// columns of `q` in `C^dim`.
fn complement(q: &CMatrix, dim: usize) -> Result<CMatrix> {
    let have = q.ncols();
    let proj = CMatrix::identity(dim, dim) - q * q.adjoint();
    let eig = hermitian_eigen(&proj)?;
    Ok(CMatrix::from_fn(dim, dim - have, |i, j| eig.vectors[(i, dim - 1 - j)]))
}

/// Full SVD: pads `u` to a unitary `rows × rows` matrix so the trailing
/// columns span the orthogonal complement of the range.
pub fn full_left_basis(m: &CMatrix) -> Result<(CMatrix, Vec<f64>, CMatrix)> {
    let rows = m.nrows();
    let dec = svd(m)?;
    let k = dec.singular_values.len();
    if k == rows {
        return Ok((dec.u, dec.singular_values, dec.v_t));
    }
    let mut full = CMatrix::zeros(rows, rows);
    full.columns_mut(0, k).copy_from(&dec.u);
    full.columns_mut(k, rows - k).copy_from(&complement(&dec.u, rows)?);
    Ok((full, dec.singular_values, dec.v_t))
}

/// Largest singular value.
pub fn spectral_norm_of(m: &CMatrix) -> f64 {
    if m.iter().all(|z| *z == C64::new(0.0, 0.0)) {
        return 0.0;
    }
    // σ_max² = λ_max(M*M), accurate to relative rounding.
    hermitian_eigen(&(m.adjoint() * m))
        .map(|e| e.max().max(0.0).sqrt())
        .unwrap_or_else(|_| m.norm())
}

/// Complex Schur form `m = Q T Q*` with `T` upper triangular.
pub fn schur(m: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    let n = m.nrows();
    let dec = Schur::try_new(m.clone(), f64::EPSILON, 1000 * n.max(4))
        .ok_or_else(|| Error::Numerical("Schur iteration did not converge".into()))?;
    let (q, mut t) = dec.unpack();
    for j in 0..n {
        for i in j + 1..n {
            t[(i, j)] = C64::new(0.0, 0.0);
        }
    }
    Ok((q, t))
}

pub fn eigenvalues(m: &CMatrix) -> Result<Vec<C64>> {
    let (_, t) = schur(m)?;
    Ok((0..m.nrows()).map(|i| t[(i, i)]).collect())
}

/// Square root of a positive semi-definite matrix. Eigenvalues at rounding
/// level are treated as exact zeros; otherwise `√ε` leaks into the kernel.
pub fn psd_sqrt_of(h: &CMatrix) -> Result<CMatrix> {
    let eig = hermitian_eigen(h)?;
    let floor = 4.0 * f64::EPSILON * h.nrows() as f64 * eig.max().abs().max(eig.min().abs());
    let d = CVector::from_iterator(
        eig.values.len(),
        eig.values
            .iter()
            .map(|&l| C64::new(if l <= floor { 0.0 } else { l.sqrt() }, 0.0)),
    );
    Ok(&eig.vectors * CMatrix::from_diagonal(&d) * eig.vectors.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn full_basis_is_unitary() {
        let m = CMatrix::from_row_slice(3, 1, &[c(1.0), c(2.0), c(-1.0)]);
        let (u, s, _) = full_left_basis(&m).unwrap();
        assert_eq!(s.len(), 1);
        let err = (u.adjoint() * &u - CMatrix::identity(3, 3)).norm();
        assert!(err < 1e-13, "{err}");
    }

    #[test]
    fn rank_deficient_complex_svd() {
        let a = CMatrix::from_fn(6, 2, |i, j| C64::new((i + 2 * j) as f64 - 2.5, (i * j) as f64 * 0.3 - 0.7));
        let b = CMatrix::from_fn(2, 5, |i, j| C64::new(1.0 - (i + j) as f64 * 0.4, (i as f64 - j as f64) * 0.5));
        let m = &a * &b;
        let d = svd(&m).unwrap();
        let s = CMatrix::from_diagonal(&CVector::from_iterator(5, d.singular_values.iter().map(|&x| c(x))));
        let rec = (&d.u * s * &d.v_t - &m).norm();
        assert!(rec < 1e-12 * m.norm(), "{rec}");
        assert!(d.singular_values[2] < 1e-13 * d.singular_values[0]);
        let uu = (d.u.adjoint() * &d.u - CMatrix::identity(5, 5)).norm();
        let vv = (&d.v_t * d.v_t.adjoint() - CMatrix::identity(5, 5)).norm();
        assert!(uu < 1e-13 && vv < 1e-13, "{uu} {vv}");
    }

    #[test]
    fn svd_sorted() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0), c(5.0), c(3.0)]));
        let d = svd(&m).unwrap();
        assert_eq!(d.singular_values.len(), 3);
        assert!((d.singular_values[0] - 5.0).abs() < 1e-14);
        assert!((d.singular_values[2] - 1.0).abs() < 1e-14);
    }
}
