//! Unitary staircase reduction of a (skew-Hermitian, Hermitian) pair.
//!
//! The first block spans the range of `R`; every further block is the part
//! of the unresolved space reached by `J` from the previous block, found by
//! an SVD of the coupling. The iteration stops when the coupling vanishes
//! (the leftover space is the uncoupled trailing block) or when nothing is
//! left. Block sizes are therefore non-increasing and `V J V*` is block
//! tridiagonal with full-row-rank subdiagonal blocks.

use serde::{Deserialize, Serialize};

use super::index::require_semidissipative;
use crate::error::{Error, Result};
use crate::linalg::decomp::{full_left_basis, hermitian_eigen, spectral_norm_of};
use crate::linalg::{hermitian_split, is_hermitian, is_skew_hermitian, CMatrix, ComplexMatrix};
use crate::tolerance::SYM_REL;

/// One numerical rank decision, kept so borderline cases can be audited.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankDecision {
    /// 1 for the range of `R`, `i ≥ 2` for the coupling into block `i`.
    pub step: usize,
    pub singular_values: Vec<f64>,
    pub threshold: f64,
    pub rank: usize,
}

impl RankDecision {
    /// Ratio between the smallest kept and the largest dropped value.
    pub fn gap(&self) -> Option<f64> {
        let kept = self.singular_values.get(self.rank.checked_sub(1)?)?;
        let dropped = self.singular_values.get(self.rank)?;
        Some(kept / dropped.max(f64::MIN_POSITIVE))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StaircaseForm {
    pub v: ComplexMatrix,
    /// Number of blocks `r`, counting the (possibly empty) trailing block.
    pub block_count: usize,
    /// `n_1, …, n_r`; only the last entry may be zero.
    pub block_sizes: Vec<usize>,
    pub j_t: ComplexMatrix,
    pub r_t: ComplexMatrix,
    pub decisions: Vec<RankDecision>,
}

impl StaircaseForm {
    pub fn residual_size(&self) -> usize {
        *self.block_sizes.last().expect("at least two blocks")
    }

    /// `n_1, …, n_{r-1}`.
    pub fn leading_sizes(&self) -> &[usize] {
        &self.block_sizes[..self.block_sizes.len() - 1]
    }

    /// Start offset of each block in the transformed coordinates.
    pub fn offsets(&self) -> Vec<usize> {
        self.block_sizes
            .iter()
            .scan(0, |acc, &s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect()
    }

    /// `V*(J̃ + R̃)V`, which reproduces `J + R`.
    pub fn reconstruct(&self) -> CMatrix {
        self.v.adjoint().as_matrix() * (self.j_t.as_matrix() + self.r_t.as_matrix()) * self.v.as_matrix()
    }
}

/// Staircase form of `(j, r)`; `rank_rel` scales the rank threshold
/// `n · rank_rel · max(‖J‖₂, ‖R‖₂)`.
pub fn staircase(j: &ComplexMatrix, r: &ComplexMatrix, rank_rel: f64) -> Result<StaircaseForm> {
    let n = j.dim();
    if r.dim() != n {
        return Err(Error::Dimension("j and r sizes differ".into()));
    }
    if !is_skew_hermitian(j, SYM_REL) {
        return Err(Error::input("j must be skew-Hermitian"));
    }
    if !is_hermitian(r, SYM_REL) {
        return Err(Error::input("r must be Hermitian"));
    }
    let scale = spectral_norm_of(j.as_matrix()).max(spectral_norm_of(r.as_matrix()));
    let threshold = n as f64 * rank_rel * scale;
    let r_norm = spectral_norm_of(r.as_matrix());
    if r_norm <= threshold || r_norm == 0.0 {
        return Err(Error::input("r is zero; the pair has no staircase form"));
    }

    let eig = hermitian_eigen(r.as_matrix())?;
    let mut by_mag: Vec<usize> = (0..n).collect();
    by_mag.sort_by(|&a, &b| eig.values[b].abs().total_cmp(&eig.values[a].abs()));
    let n1 = by_mag.iter().filter(|&&k| eig.values[k].abs() > threshold).count();
    let mut decisions = vec![RankDecision {
        step: 1,
        singular_values: by_mag.iter().map(|&k| eig.values[k].abs()).collect(),
        threshold,
        rank: n1,
    }];

    if n1 == n {
        return Ok(StaircaseForm {
            v: ComplexMatrix::identity(n),
            block_count: 2,
            block_sizes: vec![n, 0],
            j_t: j.clone(),
            r_t: r.clone(),
            decisions,
        });
    }

    let columns = |idx: &[usize]| CMatrix::from_fn(n, idx.len(), |i, c| eig.vectors[(i, idx[c])]);
    let mut blocks = vec![columns(&by_mag[..n1])];
    let mut rest = columns(&by_mag[n1..]);

    loop {
        let prev = blocks.last().expect("first block exists");
        let coupling = rest.adjoint() * j.as_matrix() * prev;
        let (p, sv, _) = full_left_basis(&coupling)?;
        let rank = sv.iter().filter(|&&s| s > threshold).count();
        decisions.push(RankDecision {
            step: blocks.len() + 1,
            singular_values: sv,
            threshold,
            rank,
        });
        if rank == 0 {
            break;
        }
        let k = rest.ncols();
        let next = &rest * p.columns(0, rank);
        let remaining = &rest * p.columns(rank, k - rank);
        blocks.push(next);
        rest = remaining;
        if rest.ncols() == 0 {
            break;
        }
    }

    let mut block_sizes: Vec<usize> = blocks.iter().map(|b| b.ncols()).collect();
    block_sizes.push(rest.ncols());
    let mut basis = CMatrix::zeros(n, n);
    let mut col = 0;
    for b in blocks.iter().chain(std::iter::once(&rest)) {
        basis.columns_mut(col, b.ncols()).copy_from(b);
        col += b.ncols();
    }
    let v = basis.adjoint();
    let j_t = &v * j.as_matrix() * &basis;
    let r_t = &v * r.as_matrix() * &basis;
    Ok(StaircaseForm {
        v: ComplexMatrix::wrap(v),
        block_count: block_sizes.len(),
        block_sizes,
        j_t: ComplexMatrix::wrap(j_t),
        r_t: ComplexMatrix::wrap(r_t),
        decisions,
    })
}

/// Staircase form of the split of a semi-dissipative matrix.
pub fn staircase_of(m: &ComplexMatrix, rank_rel: f64) -> Result<StaircaseForm> {
    require_semidissipative(m)?;
    let split = hermitian_split(m);
    staircase(&split.s, &split.h, rank_rel)
}

/// Index as `r - 2` of the staircase form; an uncoupled trailing block means
/// the matrix is not asymptotically stable.
pub fn hc_index_staircase(m: &ComplexMatrix, rank_rel: f64) -> Result<usize> {
    let form = staircase_of(m, rank_rel)?;
    let tail = form.residual_size();
    if tail > 0 {
        let start = m.dim() - tail;
        let residual = form.j_t.view((start, start), (tail, tail)).into_owned();
        return Err(Error::NotAsymptoticallyStable {
            residual: ComplexMatrix::wrap(residual),
        });
    }
    Ok(form.block_count - 2)
}
