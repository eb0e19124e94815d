//! Random test instances with a prescribed hypocoercivity index.
//!
//! An instance is assembled in staircase coordinates: `R = diag(R_11, 0)`
//! with `R_11 ≺ 0`, and `J` skew-Hermitian block tridiagonal whose
//! subdiagonal blocks have full row rank. Conjugating by a random unitary
//! hides the structure without changing the index.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{CMatrix, ComplexMatrix, C64};

/// Seed used when `RKCERT_SEED` is unset or unparsable.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

pub fn seed_from_env() -> u64 {
    std::env::var("RKCERT_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng_from_env() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed_from_env())
}

fn gaussian(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Orthonormal columns spanning the range of a `rows × cols` Gaussian
/// (`rows ≥ cols`), phases fixed so the distribution is Haar on the square.
fn orthonormal_columns(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    let qr = gaussian(rng, rows, cols).qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..cols {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            let mut col = q.column_mut(j);
            col *= phase;
        }
    }
    q
}

/// Haar-distributed `n × n` unitary.
pub fn random_unitary(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::wrap(orthonormal_columns(rng, n, n))
}

/// Non-increasing block sizes `n_1 ≥ … ≥ n_{index+1}` summing to `n`.
fn block_sizes(n: usize, index: usize, rng: &mut impl Rng) -> Vec<usize> {
    let k = index + 1;
    let mut sizes = vec![1; k];
    for _ in k..n {
        let open: Vec<usize> = (0..k).filter(|&i| i == 0 || sizes[i - 1] > sizes[i]).collect();
        sizes[open[rng.gen_range(0..open.len())]] += 1;
    }
    sizes
}

fn random_skew(rng: &mut impl Rng, n: usize, scale: f64) -> CMatrix {
    let g = gaussian(rng, n, n);
    (&g - g.adjoint()) * C64::new(0.5 * scale, 0.0)
}

/// Semi-dissipative, asymptotically stable `n × n` matrix with index
/// exactly `index` (`n ≥ index + 1`), in random unitary coordinates.
pub fn random_staircase_instance(n: usize, index: usize, rng: &mut impl Rng) -> ComplexMatrix {
    assert!(n > index, "need n > index, got n = {n}, index = {index}");
    let sizes = block_sizes(n, index, rng);
    let m = staircase_coordinates(&sizes, rng);
    let u = random_unitary(n, rng).into_inner();
    ComplexMatrix::wrap(u.adjoint() * m.as_matrix() * u)
}

/// Instance in staircase coordinates with the given non-increasing block
/// sizes; its index is `sizes.len() - 1`.
pub fn staircase_coordinates(sizes: &[usize], rng: &mut impl Rng) -> ComplexMatrix {
    assert!(
        !sizes.is_empty() && sizes.windows(2).all(|w| w[0] >= w[1]) && sizes[sizes.len() - 1] > 0,
        "block sizes must be positive and non-increasing: {sizes:?}"
    );
    let n = sizes.iter().sum();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();

    let mut r = CMatrix::zeros(n, n);
    let n1 = sizes[0];
    let g = gaussian(rng, n1, n1);
    let r11 = -(CMatrix::identity(n1, n1) + &g * g.adjoint() * C64::new(0.5 / n1 as f64, 0.0));
    r.view_mut((0, 0), (n1, n1)).copy_from(&r11);

    let mut j = CMatrix::zeros(n, n);
    for (b, (&o, &s)) in offsets.iter().zip(sizes).enumerate() {
        j.view_mut((o, o), (s, s)).copy_from(&random_skew(rng, s, 0.5));
        if b + 1 < sizes.len() {
            // Well-conditioned full-row-rank coupling: scaled partial isometry.
            let (o2, s2) = (offsets[b + 1], sizes[b + 1]);
            let iso = orthonormal_columns(rng, s, s2).adjoint();
            let scales = CMatrix::from_diagonal(&nalgebra::DVector::from_fn(s2, |_, _| {
                C64::new(rng.gen_range(0.7..1.3), 0.0)
            }));
            let sub = scales * iso;
            j.view_mut((o2, o), (s2, s)).copy_from(&sub);
            j.view_mut((o, o2), (s, s2)).copy_from(&(-sub.adjoint()));
        }
    }
    ComplexMatrix::wrap(j + r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypocoercivity::{hc_index_definitional, hc_index_staircase, HcIndex};
    use crate::linalg::is_semidissipative;
    use crate::tolerance::{HC_CHAIN, RANK_REL};

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = random_unitary(6, &mut rng);
        let err = (u.adjoint().as_matrix() * u.as_matrix() - CMatrix::identity(6, 6)).norm();
        assert!(err < 1e-13);
    }

    #[test]
    fn sizes_are_non_increasing() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let s = block_sizes(10, 3, &mut rng);
            assert_eq!(s.iter().sum::<usize>(), 10);
            assert!(s.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn instances_have_requested_index() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for index in 0..4 {
            let m = random_staircase_instance(8, index, &mut rng);
            assert!(is_semidissipative(&m, 1e-12).unwrap());
            let cert = hc_index_definitional(&m, HC_CHAIN, 8).unwrap();
            assert_eq!(cert.index, HcIndex::Finite(index));
            assert_eq!(hc_index_staircase(&m, RANK_REL).unwrap(), index);
        }
    }

    #[test]
    fn seed_defaults() {
        std::env::remove_var("RKCERT_SEED");
        assert_eq!(seed_from_env(), DEFAULT_SEED);
    }
}
