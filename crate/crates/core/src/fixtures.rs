//! Built-in matrices with exactly known structure.

use crate::linalg::ComplexMatrix;

/// `-[[1,2,2],[0,1,2],[0,0,1]]`: semi-dissipative, hypocoercivity index 2.
pub fn sun_shu() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(3, &[-1.0, -2.0, -2.0, 0.0, -1.0, -2.0, 0.0, 0.0, -1.0])
        .expect("valid fixture")
}

/// `-5·U` with `U` the 5×5 upper triangle of ones on the diagonal and twos
/// above it: semi-dissipative, hypocoercivity index 4.
pub fn levy_tadmor() -> ComplexMatrix {
    let mut rows = [0.0; 25];
    for i in 0..5 {
        for j in i..5 {
            rows[5 * i + j] = if i == j { -5.0 } else { -10.0 };
        }
    }
    ComplexMatrix::from_real_rows(5, &rows).expect("valid fixture")
}

/// Jordan transform of the Sun–Shu matrix, `-L = (W*)^{-1} J W*`.
pub fn jordan_w() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(3, &[1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 2.0, 4.0])
        .expect("valid fixture")
}

/// `P = W W*`, a strict Lyapunov weight for [`sun_shu`].
pub fn ww_star() -> ComplexMatrix {
    let w = jordan_w();
    ComplexMatrix::new(w.as_matrix() * w.as_matrix().adjoint()).expect("valid fixture")
}

pub fn minus_identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n).scale(-1.0)
}

/// `L_H = diag(-1, 0)`, `L_S = [[0,1],[-1,0]]`: index 1.
pub fn index_one() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(2, &[-1.0, 1.0, -1.0, 0.0]).expect("valid fixture")
}

/// Planar rotation generator `[[0,1],[-1,0]]` (skew, no finite index).
pub fn rotation() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(2, &[0.0, 1.0, -1.0, 0.0]).expect("valid fixture")
}

pub const MATRIX_NAMES: &[&str] = &[
    "sunshu",
    "levytadmor",
    "minus-identity",
    "index-one",
    "rotation",
    "w",
    "ww-star",
];

/// Looks up a catalog matrix. `minus-identity` is 3×3.
pub fn matrix_by_name(name: &str) -> Option<ComplexMatrix> {
    Some(match name {
        "sunshu" => sun_shu(),
        "levytadmor" => levy_tadmor(),
        "minus-identity" => minus_identity(3),
        "index-one" => index_one(),
        "rotation" => rotation(),
        "w" => jordan_w(),
        "ww-star" => ww_star(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ww_star_entries() {
        let p = ww_star();
        let expected =
            ComplexMatrix::from_real_rows(3, &[1.0, 0.0, 0.0, 0.0, 4.0, 4.0, 0.0, 4.0, 20.0])
                .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn catalog_lookup() {
        for name in MATRIX_NAMES {
            assert!(matrix_by_name(name).is_some(), "{name}");
        }
        assert!(matrix_by_name("nope").is_none());
    }
}
