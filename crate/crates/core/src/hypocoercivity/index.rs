use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::decomp::{hermitian_eigen, psd_sqrt_of, spectral_norm_of, svd};
use crate::linalg::{
    hermitian_part_max_eigenvalue, hermitian_split, matrix_power, CMatrix, CVector,
    ComplexMatrix, C64,
};
use crate::tolerance::PSD_REL;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HcIndex {
    Finite(usize),
    NoFiniteIndex,
}

impl HcIndex {
    pub fn finite(self) -> Option<usize> {
        match self {
            HcIndex::Finite(m) => Some(m),
            HcIndex::NoFiniteIndex => None,
        }
    }
}

/// Hypocoercivity index with the definiteness evidence behind it.
///
/// The chain values are the largest eigenvalues of `T_0, T_1, …` computed for
/// `L / ‖L‖₂`; the index is invariant under positive scaling, and the
/// rescaled chain keeps one tolerance meaningful across matrix sizes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HcCertificate {
    pub index: HcIndex,
    pub t_chain_max_eigs: Vec<f64>,
    pub scale: f64,
    #[serde(skip)]
    pub witness: Option<CVector>,
}

/// Unit-norm rescaling of `m` and its split parts, shared by the index
/// computations. Returns `None` for the zero matrix.
pub(crate) struct Normalized {
    pub scale: f64,
    pub h: CMatrix,
    pub s: CMatrix,
}

impl Normalized {
    pub fn of(m: &ComplexMatrix) -> Option<Self> {
        let scale = spectral_norm_of(m.as_matrix());
        if scale == 0.0 {
            return None;
        }
        let split = hermitian_split(&m.scale(1.0 / scale));
        Some(Self {
            scale,
            h: split.h.into_inner(),
            s: split.s.into_inner(),
        })
    }

    /// `T_0, …, T_{max_m}` for the rescaled matrix.
    pub fn t_chain(&self, max_m: usize) -> Vec<CMatrix> {
        let mut chain = Vec::with_capacity(max_m + 1);
        let s_adj = self.s.adjoint();
        let mut left = CMatrix::identity(self.h.nrows(), self.h.ncols());
        let mut right = left.clone();
        let mut acc = CMatrix::zeros(self.h.nrows(), self.h.ncols());
        for _ in 0..=max_m {
            acc += &left * &self.h * &right;
            chain.push(acc.clone());
            left = &left * &self.s;
            right = &s_adj * &right;
        }
        chain
    }
}

pub(crate) fn require_semidissipative(m: &ComplexMatrix) -> Result<()> {
    let lmax = hermitian_part_max_eigenvalue(m)?;
    let tol = PSD_REL * spectral_norm_of(m.as_matrix()).max(1.0);
    if lmax > tol {
        return Err(Error::input(format!(
            "matrix is not semi-dissipative: Hermitian part has eigenvalue {lmax:e}"
        )));
    }
    Ok(())
}

/// Least `m ≤ max_m` with `T_m ≺ 0`, i.e. largest eigenvalue of the rescaled
/// `T_m` below `-tol`.
pub fn hc_index_definitional(m: &ComplexMatrix, tol: f64, max_m: usize) -> Result<HcCertificate> {
    require_semidissipative(m)?;
    let Some(norm) = Normalized::of(m) else {
        return Ok(HcCertificate {
            index: HcIndex::NoFiniteIndex,
            t_chain_max_eigs: vec![0.0; max_m + 1],
            scale: 0.0,
            witness: None,
        });
    };
    let mut chain_eigs = Vec::new();
    let mut index = HcIndex::NoFiniteIndex;
    for (level, t) in norm.t_chain(max_m).iter().enumerate() {
        let lmax = hermitian_eigen(t)?.max();
        chain_eigs.push(lmax);
        if lmax < -tol {
            index = HcIndex::Finite(level);
            break;
        }
    }
    let witness = match index {
        HcIndex::Finite(level) if level >= 1 => Some(witness_vector(m, level, tol)?),
        _ => None,
    };
    Ok(HcCertificate {
        index,
        t_chain_max_eigs: chain_eigs,
        scale: norm.scale,
        witness,
    })
}

/// Unit vector in the numerical kernel of `T_{level-1}` maximizing
/// `‖(-L_H)^{1/2} L_S^{level} u‖`.
///
/// Level 0 returns the first standard basis vector not annihilated by
/// `(-L_H)^{1/2}`. Fails with [`Error::WitnessNotFound`] when the kernel is
/// trivial or annihilated, which means `level` exceeds the index.
pub fn witness_vector(m: &ComplexMatrix, level: usize, tol: f64) -> Result<CVector> {
    require_semidissipative(m)?;
    let n = m.dim();
    let not_found = |reason: &str| Error::WitnessNotFound {
        level,
        reason: reason.to_string(),
    };
    let norm = Normalized::of(m).ok_or_else(|| not_found("zero matrix"))?;
    let root = psd_sqrt_of(&(-&norm.h))?;

    if level == 0 {
        return (0..n)
            .find(|&k| root.column(k).norm() > tol)
            .map(|k| {
                let mut e = CVector::zeros(n);
                e[k] = C64::new(1.0, 0.0);
                e
            })
            .ok_or_else(|| not_found("Hermitian part vanishes"));
    }

    let chain = norm.t_chain(level - 1);
    let eig = hermitian_eigen(&chain[level - 1])?;
    let kernel_cols: Vec<usize> = (0..n).filter(|&k| eig.values[k].abs() <= tol).collect();
    if kernel_cols.is_empty() {
        return Err(not_found("T chain is already definite"));
    }
    let kernel = CMatrix::from_fn(n, kernel_cols.len(), |i, j| eig.vectors[(i, kernel_cols[j])]);
    let probe = &root * matrix_power(&norm.s, level) * &kernel;
    let dec = svd(&probe)?;
    if dec.singular_values[0] <= tol {
        return Err(not_found("kernel is annihilated at this level"));
    }
    let u = &kernel * dec.right_vector(0);
    Ok(&u / C64::new(u.norm(), 0.0))
}

/// `‖(-L_H)^{1/2} L_S^j u‖` for `j = 0..=level` on the unscaled matrix.
pub fn witness_profile(m: &ComplexMatrix, u: &CVector, level: usize) -> Result<Vec<f64>> {
    let split = hermitian_split(m);
    let root = psd_sqrt_of(&(-split.h.as_matrix()))?;
    let mut v = u.clone();
    let mut out = Vec::with_capacity(level + 1);
    for _ in 0..=level {
        out.push((&root * &v).norm());
        v = split.s.as_matrix() * v;
    }
    Ok(out)
}

/// `‖(-L_H)^{1/2} L^j u‖` for `j = 0..=level`; agrees with
/// [`witness_profile`] on the kernel of `T_{level-1}`.
pub fn witness_profile_full(m: &ComplexMatrix, u: &CVector, level: usize) -> Result<Vec<f64>> {
    let split = hermitian_split(m);
    let root = psd_sqrt_of(&(-split.h.as_matrix()))?;
    let mut v = u.clone();
    let mut out = Vec::with_capacity(level + 1);
    for _ in 0..=level {
        out.push((&root * &v).norm());
        v = m.as_matrix() * v;
    }
    Ok(out)
}
