use std::fmt;
use std::ops::Deref;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Dense square complex matrix with finite entries.
///
/// Dereferences to the underlying [`nalgebra::DMatrix`] so the usual
/// arithmetic is available; every constructor enforces the invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(CMatrix);

impl ComplexMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!(
                "expected a square matrix, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.nrows() == 0 {
            return Err(Error::Dimension("empty matrix".into()));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::input("matrix has non-finite entries"));
        }
        Ok(Self(m))
    }

    /// Wraps a matrix produced by internal arithmetic on valid inputs.
    pub(crate) fn wrap(m: CMatrix) -> Self {
        debug_assert!(m.is_square());
        Self(m)
    }

    /// Row-major real entries.
    pub fn from_real_rows(n: usize, rows: &[f64]) -> Result<Self> {
        if rows.len() != n * n {
            return Err(Error::Dimension(format!(
                "{} entries for a {n}x{n} matrix",
                rows.len()
            )));
        }
        Self::new(DMatrix::from_row_iterator(
            n,
            n,
            rows.iter().map(|&x| C64::new(x, 0.0)),
        ))
    }

    pub fn from_real(m: &DMatrix<f64>) -> Result<Self> {
        Self::new(m.map(|x| C64::new(x, 0.0)))
    }

    pub fn from_diagonal(d: &[C64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&DVector::from_column_slice(d)))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn zeros(n: usize) -> Self {
        Self(DMatrix::zeros(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_inner(self) -> CMatrix {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(self.0.map(|z| z * factor))
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(|z| z.im == 0.0)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization is infallible")
    }
}

impl Deref for ComplexMatrix {
    type Target = CMatrix;

    fn deref(&self) -> &CMatrix {
        &self.0
    }
}

impl TryFrom<CMatrix> for ComplexMatrix {
    type Error = Error;

    fn try_from(m: CMatrix) -> Result<Self> {
        Self::new(m)
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            let row: Vec<String> = (0..self.dim()).map(|j| fmt_c64(self.0[(i, j)])).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn fmt_c64(z: C64) -> String {
    if z.im == 0.0 {
        format!("{:.6}", z.re)
    } else {
        format!("{:.6}{:+.6}i", z.re, z.im)
    }
}

/// A JSON number or a `[re, im]` pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonScalar {
    Real(f64),
    Complex([f64; 2]),
}

impl JsonScalar {
    pub fn to_c64(self) -> C64 {
        match self {
            JsonScalar::Real(x) => C64::new(x, 0.0),
            JsonScalar::Complex([re, im]) => C64::new(re, im),
        }
    }

    /// Real values are written as bare numbers.
    pub fn from_c64(z: C64) -> Self {
        if z.im == 0.0 {
            JsonScalar::Real(z.re)
        } else {
            JsonScalar::Complex([z.re, z.im])
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJsonRead {
    n: usize,
    entries: Vec<Vec<JsonScalar>>,
}

#[derive(Serialize)]
struct MatrixJsonWrite {
    n: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| [self.0[(i, j)].re, self.0[(i, j)].im]).collect())
            .collect();
        MatrixJsonWrite { n, entries }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MatrixJsonRead::deserialize(deserializer)?;
        if raw.entries.len() != raw.n || raw.entries.iter().any(|r| r.len() != raw.n) {
            return Err(D::Error::custom(format!(
                "entries do not form a {0}x{0} matrix",
                raw.n
            )));
        }
        let m = DMatrix::from_fn(raw.n, raw.n, |i, j| raw.entries[i][j].to_c64());
        ComplexMatrix::new(m).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_square_and_nan() {
        assert!(matches!(
            ComplexMatrix::new(DMatrix::zeros(2, 3)),
            Err(Error::Dimension(_))
        ));
        let mut m = DMatrix::<C64>::zeros(2, 2);
        m[(0, 1)] = C64::new(f64::NAN, 0.0);
        assert!(ComplexMatrix::new(m).is_err());
    }

    #[test]
    fn json_accepts_bare_reals_and_pairs() {
        let m = ComplexMatrix::from_json_str(r#"{"n": 2, "entries": [[1, [0, 2]], [-3.5, 0]]}"#)
            .unwrap();
        assert_eq!(m[(0, 0)], C64::new(1.0, 0.0));
        assert_eq!(m[(0, 1)], C64::new(0.0, 2.0));
        assert_eq!(m[(1, 0)], C64::new(-3.5, 0.0));
        let back = ComplexMatrix::from_json_str(&m.to_json_string()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn json_shape_mismatch() {
        let err = ComplexMatrix::from_json_str(r#"{"n": 3, "entries": [[1, 2], [3, 4]]}"#);
        assert!(err.is_err());
    }
}
