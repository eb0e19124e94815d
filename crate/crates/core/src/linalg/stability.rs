use serde::{Deserialize, Serialize};

use super::decomp::{eigenvalues, spectral_norm_of, svd};
use super::matrix::{CMatrix, ComplexMatrix, C64};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StabilityTag {
    AsymptoticallyStable,
    LyapunovStableNotAS,
    Unstable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityClass {
    pub tag: StabilityTag,
    pub spectral_abscissa: f64,
    pub defective_imag_eigs: bool,
}

impl StabilityClass {
    pub fn is_asymptotically_stable(&self) -> bool {
        self.tag == StabilityTag::AsymptoticallyStable
    }
}

/// Eigenvalue-based stability classification.
///
/// `tol` is the absolute threshold on real parts. Eigenvalues within
/// `tol` of the imaginary axis are grouped into clusters; a cluster is
/// defective when the numerical nullity of `m - λ̄I` is smaller than the
/// cluster size. A defective eigenvalue of multiplicity `k` splits by about
/// `ε^{1/k}` under rounding, so the cluster radius is at least `√ε·‖m‖₂`.
pub fn classify_stability(m: &ComplexMatrix, tol: f64) -> Result<StabilityClass> {
    let n = m.dim();
    let eigs = eigenvalues(m.as_matrix())?;
    let abscissa = eigs.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    if abscissa > tol {
        return Ok(StabilityClass {
            tag: StabilityTag::Unstable,
            spectral_abscissa: abscissa,
            defective_imag_eigs: false,
        });
    }
    if abscissa < -tol {
        return Ok(StabilityClass {
            tag: StabilityTag::AsymptoticallyStable,
            spectral_abscissa: abscissa,
            defective_imag_eigs: false,
        });
    }

    let norm = spectral_norm_of(m.as_matrix()).max(1.0);
    let radius = tol.max(10.0 * f64::EPSILON.sqrt() * norm);
    let rank_tol = 10.0 * radius;

    let on_axis: Vec<C64> = eigs.iter().copied().filter(|z| z.re.abs() <= radius).collect();
    let mut defective = false;
    for cluster in cluster_eigenvalues(&on_axis, radius) {
        let center = cluster.iter().sum::<C64>() / cluster.len() as f64;
        let shifted: CMatrix = m.as_matrix() - CMatrix::identity(n, n) * center;
        let sv = svd(&shifted)?.singular_values;
        let nullity = sv.iter().filter(|&&s| s <= rank_tol).count();
        if nullity < cluster.len() {
            defective = true;
            break;
        }
    }

    Ok(StabilityClass {
        tag: if defective {
            StabilityTag::Unstable
        } else {
            StabilityTag::LyapunovStableNotAS
        },
        spectral_abscissa: abscissa,
        defective_imag_eigs: defective,
    })
}

/// Single-linkage clustering of eigenvalues.
fn cluster_eigenvalues(eigs: &[C64], radius: f64) -> Vec<Vec<C64>> {
    let mut label: Vec<usize> = (0..eigs.len()).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..eigs.len() {
        for j in i + 1..eigs.len() {
            if (eigs[i] - eigs[j]).norm() <= radius {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<(usize, Vec<C64>)> = Vec::new();
    for (i, &z) in eigs.iter().enumerate() {
        let root = find(&mut label, i);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, g)) => g.push(z),
            None => groups.push((root, vec![z])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}
