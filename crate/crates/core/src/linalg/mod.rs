//! Dense complex linear algebra used by every analysis.

pub mod decomp;
mod lyapunov;
mod matrix;
mod split;
mod stability;

pub use lyapunov::{
    hpd_sqrt, hpd_sqrt_pair, lyapunov_certificate, solve_lyapunov, transform_to_dissipative,
    verify_lyapunov, LyapunovCertificate,
};
pub use matrix::{CMatrix, CVector, ComplexMatrix, JsonScalar, C64};
pub use split::{
    hermitian_part_max_eigenvalue, hermitian_split, is_hermitian, is_semidissipative,
    is_skew_hermitian, HermitianSplit,
};
pub use stability::{classify_stability, StabilityClass, StabilityTag};


/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    decomp::spectral_norm_of(m)
}

/// `e^{t m}` by Padé scaling and squaring.
pub fn matrix_exponential(m: &ComplexMatrix, t: f64) -> ComplexMatrix {
    if t == 0.0 {
        return ComplexMatrix::identity(m.dim());
    }
    ComplexMatrix::wrap((m.as_matrix() * C64::new(t, 0.0)).exp())
}

/// `m^k` by repeated multiplication.
pub fn matrix_power(m: &CMatrix, k: usize) -> CMatrix {
    let mut out = CMatrix::identity(m.nrows(), m.ncols());
    for _ in 0..k {
        out = &out * m;
    }
    out
}
