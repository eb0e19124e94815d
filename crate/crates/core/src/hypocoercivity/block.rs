use serde::{Deserialize, Serialize};

use super::index::require_semidissipative;
use super::staircase::staircase;
use crate::error::Result;
use crate::linalg::decomp::{hermitian_eigen, spectral_norm_of, svd};
use crate::linalg::{hermitian_split, CMatrix, CVector, ComplexMatrix};

/// `V L V* = diag(l1, l2)` with `l1` asymptotically stable and `l2`
/// skew-Hermitian. Either block may be absent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockDiagonalForm {
    pub v: ComplexMatrix,
    pub l1: Option<ComplexMatrix>,
    pub l2: Option<ComplexMatrix>,
    /// Largest entry of the discarded off-diagonal blocks.
    pub off_diagonal: f64,
}

impl BlockDiagonalForm {
    pub fn sizes(&self) -> (usize, usize) {
        (
            self.l1.as_ref().map_or(0, |b| b.dim()),
            self.l2.as_ref().map_or(0, |b| b.dim()),
        )
    }
}

pub fn block_diagonalize(m: &ComplexMatrix, rank_rel: f64) -> Result<BlockDiagonalForm> {
    require_semidissipative(m)?;
    let n = m.dim();
    let split = hermitian_split(m);
    let scale = spectral_norm_of(m.as_matrix());
    let h_norm = spectral_norm_of(split.h.as_matrix());
    if h_norm <= n as f64 * rank_rel * scale {
        return Ok(BlockDiagonalForm {
            v: ComplexMatrix::identity(n),
            l1: None,
            l2: Some(m.clone()),
            off_diagonal: 0.0,
        });
    }

    let form = staircase(&split.s, &split.h, rank_rel)?;
    let tail = form.residual_size();
    if tail == 0 {
        return Ok(BlockDiagonalForm {
            v: ComplexMatrix::identity(n),
            l1: Some(m.clone()),
            l2: None,
            off_diagonal: 0.0,
        });
    }
    let head = n - tail;
    let t = form.v.as_matrix() * m.as_matrix() * form.v.adjoint().as_matrix();
    let off = t
        .view((0, head), (head, tail))
        .iter()
        .chain(t.view((head, 0), (tail, head)).iter())
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    Ok(BlockDiagonalForm {
        v: form.v.clone(),
        l1: Some(ComplexMatrix::wrap(t.view((0, 0), (head, head)).into_owned())),
        l2: Some(ComplexMatrix::wrap(t.view((head, head), (tail, tail)).into_owned())),
        off_diagonal: off,
    })
}

/// Eigenvector `v` of `L_S` with `‖L_H v‖ ≤ tol`, if one exists.
///
/// For semi-dissipative `L` this exists exactly when `L` has an eigenvalue
/// on the imaginary axis. Degenerate eigenvalues of `L_S` are handled per
/// eigenspace: the best vector is the smallest right singular vector of
/// `L_H` restricted to that eigenspace.
pub fn imaginary_axis_witness(m: &ComplexMatrix, tol: f64) -> Result<Option<CVector>> {
    let n = m.dim();
    let split = hermitian_split(m);
    // L_S = i·K with K Hermitian.
    let k = split.s.as_matrix() * crate::linalg::C64::new(0.0, -1.0);
    let eig = hermitian_eigen(&k)?;
    let cluster_tol = tol.max(1e-10 * spectral_norm_of(&k).max(1.0));
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eig.values[end] - eig.values[end - 1] <= cluster_tol {
            end += 1;
        }
        let basis: CMatrix = eig.vectors.columns(start, end - start).into_owned();
        let restricted = split.h.as_matrix() * &basis;
        let dec = svd(&restricted)?;
        let last = dec.singular_values.len() - 1;
        if dec.singular_values[last] <= tol {
            let v = &basis * dec.right_vector(last);
            return Ok(Some(&v / crate::linalg::C64::new(v.norm(), 0.0)));
        }
        start = end;
    }
    Ok(None)
}
