use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, ComplexMatrix, JsonScalar, C64};

/// Coefficients `(A, b)` of an explicit Runge–Kutta scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct ButcherTableau {
    a: CMatrix,
    b: CVector,
}

impl ButcherTableau {
    /// `a` must be strictly lower triangular: entries on and above the
    /// diagonal are exactly zero.
    pub fn new(a: CMatrix, b: CVector) -> Result<Self> {
        let s = b.len();
        if s == 0 {
            return Err(Error::input("tableau has no stages"));
        }
        if a.shape() != (s, s) {
            return Err(Error::Dimension(format!(
                "a is {}x{}, b has {s} entries",
                a.nrows(),
                a.ncols()
            )));
        }
        if a.iter().chain(b.iter()).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::input("tableau has non-finite coefficients"));
        }
        for i in 0..s {
            for j in i..s {
                if a[(i, j)] != C64::new(0.0, 0.0) {
                    return Err(Error::NotExplicit(format!("a[{i}][{j}] = {}", a[(i, j)])));
                }
            }
        }
        Ok(Self { a, b })
    }

    /// Real tableau from row-major `a` (`s*s` values) and `b`.
    pub fn from_real(a: &[f64], b: &[f64]) -> Result<Self> {
        let s = b.len();
        if a.len() != s * s {
            return Err(Error::Dimension(format!("need {} entries of a, got {}", s * s, a.len())));
        }
        Self::new(
            CMatrix::from_fn(s, s, |i, j| C64::new(a[i * s + j], 0.0)),
            CVector::from_iterator(s, b.iter().map(|&x| C64::new(x, 0.0))),
        )
    }

    pub fn stages(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn b(&self) -> &CVector {
        &self.b
    }

    pub fn is_real(&self) -> bool {
        self.a.iter().chain(self.b.iter()).all(|z| z.im == 0.0)
    }

    /// One step `u ↦ u + τ Σ b_i k_i` with `k_i = L(u + τ Σ_{j<i} a_ij k_j)`.
    pub fn step(&self, m: &ComplexMatrix, tau: f64, u: &CVector) -> CVector {
        let s = self.stages();
        let t = C64::new(tau, 0.0);
        let mut k: Vec<CVector> = Vec::with_capacity(s);
        for i in 0..s {
            let mut arg = u.clone();
            for (j, kj) in k.iter().enumerate() {
                arg += kj * (t * self.a[(i, j)]);
            }
            k.push(m.as_matrix() * arg);
        }
        let mut out = u.clone();
        for (i, ki) in k.iter().enumerate() {
            out += ki * (t * self.b[i]);
        }
        out
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("tableau serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    s: usize,
    a: Vec<Vec<JsonScalar>>,
    b: Vec<JsonScalar>,
}

impl Serialize for ButcherTableau {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let s = self.stages();
        TableauJson {
            s,
            a: (0..s)
                .map(|i| (0..s).map(|j| JsonScalar::from_c64(self.a[(i, j)])).collect())
                .collect(),
            b: self.b.iter().map(|&z| JsonScalar::from_c64(z)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ButcherTableau {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = TableauJson::deserialize(deserializer)?;
        let s = raw.s;
        if raw.b.len() != s || raw.a.len() != s || raw.a.iter().any(|r| r.len() != s) {
            return Err(D::Error::custom(format!("a must be {s}x{s} and b of length {s}")));
        }
        let a = CMatrix::from_fn(s, s, |i, j| raw.a[i][j].to_c64());
        let b = CVector::from_iterator(s, raw.b.iter().map(|x| x.to_c64()));
        ButcherTableau::new(a, b).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implicit_entries_rejected() {
        let err = ButcherTableau::from_real(&[0.5, 0.0, 0.0, 0.0], &[0.5, 0.5]);
        assert!(matches!(err, Err(Error::NotExplicit(_))));
    }

    #[test]
    fn json_round_trip() {
        let t = ButcherTableau::from_json_str(r#"{"s": 2, "a": [[0, 0], [1, 0]], "b": [0.5, [0.5, 0]]}"#)
            .unwrap();
        assert_eq!(t.stages(), 2);
        assert!(t.is_real());
        let back = ButcherTableau::from_json_str(&t.to_json_string()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn json_shape_checked() {
        assert!(ButcherTableau::from_json_str(r#"{"s": 2, "a": [[0]], "b": [1, 0]}"#).is_err());
    }
}
