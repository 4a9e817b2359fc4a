//! Spaces of n×n matrices with a canonical echelon basis.
//!
//! A space is a vector space over its scalar field: the entry field itself for
//! bilinear structures, the fixed field GF(p) of the involution for Hermitian
//! ones. Matrices are flattened row-major; over GF(p) each GF(p²) entry
//! contributes its coordinates on `1` and `t`, in that order.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{rref, Mat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatSubspace {
    n: usize,
    field: Field,
    scalars: Field,
    echelon: Mat,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for MatSubspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MatSubspace(n={}, {} over {}, dim {})", self.n, self.field, self.scalars, self.k_dim())
    }
}

impl MatSubspace {
    pub fn zero(field: Field, scalars: Field, n: usize) -> MatSubspace {
        let width = n * n * Self::ratio(field, scalars);
        MatSubspace { n, field, scalars, echelon: Mat::zeros(scalars, 0, width), pivots: Vec::new() }
    }

    fn ratio(field: Field, scalars: Field) -> usize {
        if field == scalars {
            1
        } else {
            2
        }
    }

    /// The span of `mats` over `scalars`, which must be `field` or its base field.
    pub fn span(field: Field, scalars: Field, n: usize, mats: &[Mat]) -> Result<MatSubspace> {
        if scalars != field && scalars != field.base() {
            return Err(Error::InvalidInput(format!("{scalars} is not a scalar field for {field}")));
        }
        if let Some(m) = mats.iter().find(|m| m.rows() != n || m.cols() != n || m.field() != field) {
            return Err(Error::DimensionMismatch(format!("expected {n}x{n} over {field}, got {}x{} over {}", m.rows(), m.cols(), m.field())));
        }
        let width = n * n * Self::ratio(field, scalars);
        let rows: Vec<Vec<Scalar>> = mats.iter().map(|m| flatten(m, scalars)).collect();
        let stacked = if rows.is_empty() { Mat::zeros(scalars, 0, width) } else { Mat::from_rows(scalars, rows)? };
        let e = rref(&stacked);
        Ok(MatSubspace {
            n,
            field,
            scalars,
            echelon: e.matrix.submatrix(0, e.rank, 0, width),
            pivots: e.pivots,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// The field over which `k_dim` is counted.
    pub fn scalars(&self) -> Field {
        self.scalars
    }

    pub fn k_dim(&self) -> usize {
        self.echelon.rows()
    }

    pub fn echelon(&self) -> &Mat {
        &self.echelon
    }

    /// Canonical basis, one matrix per echelon row.
    pub fn basis(&self) -> Vec<Mat> {
        (0..self.k_dim()).map(|i| self.unflatten(&self.echelon.row(i))).collect()
    }

    fn unflatten(&self, v: &[Scalar]) -> Mat {
        let n = self.n;
        if self.field == self.scalars {
            return Mat::from_fn(self.field, n, n, |i, j| v[i * n + j]);
        }
        let t = self.field.generator().expect("extension field");
        Mat::from_fn(self.field, n, n, |i, j| {
            let k = 2 * (i * n + j);
            v[k].embed(self.field) + t * v[k + 1].embed(self.field)
        })
    }

    /// Coordinates on the canonical basis, if `m` lies in the space.
    pub fn coords(&self, m: &Mat) -> Option<Vec<Scalar>> {
        if m.rows() != self.n || m.cols() != self.n || m.field() != self.field {
            return None;
        }
        let mut v = flatten(m, self.scalars);
        let coeffs: Vec<Scalar> = self.pivots.iter().map(|&p| v[p]).collect();
        for (row, &c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, vj) in v.iter_mut().enumerate() {
                *vj -= c * self.echelon[(row, j)];
            }
        }
        v.iter().all(|s| s.is_zero()).then_some(coeffs)
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.coords(m).is_some()
    }

    pub fn contains_space(&self, other: &MatSubspace) -> bool {
        other.basis().iter().all(|m| self.contains(m))
    }

    /// `Σ c_i B_i` for scalars `c_i` of the scalar field.
    pub fn combine(&self, coeffs: &[Scalar]) -> Mat {
        let mut v = vec![self.scalars.zero(); self.echelon.cols()];
        for (row, &c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, vj) in v.iter_mut().enumerate() {
                *vj += c * self.echelon[(row, j)];
            }
        }
        self.unflatten(&v)
    }

    /// Number of elements, saturating.
    pub fn cardinality(&self) -> u128 {
        crate::budget::saturating_pow(self.scalars.order(), self.k_dim())
    }

    /// The element with index `idx` in base-q counter order (first coordinate slowest).
    pub fn element(&self, mut idx: u64) -> Mat {
        let q = self.scalars.order();
        let k = self.k_dim();
        let mut coeffs = vec![self.scalars.zero(); k];
        for c in coeffs.iter_mut().rev() {
            *c = self.scalars.element(idx % q);
            idx /= q;
        }
        self.combine(&coeffs)
    }

    /// Total order used to sort census output: pivots, then echelon entries by index.
    pub fn sort_key(&self) -> (Vec<usize>, Vec<u64>) {
        (self.pivots.clone(), self.echelon.entries().iter().map(|s| s.index()).collect())
    }

    pub fn sum(&self, other: &MatSubspace) -> Result<MatSubspace> {
        let mut mats = self.basis();
        mats.extend(other.basis());
        MatSubspace::span(self.field, self.scalars, self.n, &mats)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "field": {"p": self.field.characteristic(), "degree": self.field.degree()},
            "scalars": {"p": self.scalars.characteristic(), "degree": self.scalars.degree()},
            "k_dim": self.k_dim(),
            "basis": self.basis().iter().map(Mat::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<MatSubspace> {
        let field_of = |v: Option<&Value>| -> Result<Field> {
            let v = v.ok_or_else(|| Error::Parse("subspace JSON needs `field`".into()))?;
            let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| Error::Parse("field needs `p`".into()))?;
            let d = v.get("degree").and_then(Value::as_u64).ok_or_else(|| Error::Parse("field needs `degree`".into()))?;
            Field::new(p, d as u32)
        };
        let field = field_of(value.get("field"))?;
        let scalars = match value.get("scalars") {
            Some(_) => field_of(value.get("scalars"))?,
            None => field,
        };
        let n = value.get("n").and_then(Value::as_u64).ok_or_else(|| Error::Parse("subspace JSON needs `n`".into()))? as usize;
        let basis = value
            .get("basis")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("subspace JSON needs `basis`".into()))?
            .iter()
            .map(|m| Mat::from_json(field, m))
            .collect::<Result<Vec<_>>>()?;
        let s = MatSubspace::span(field, scalars, n, &basis)?;
        if let Some(k) = value.get("k_dim").and_then(Value::as_u64) {
            if k as usize != s.k_dim() {
                return Err(Error::InvalidInput(format!("k_dim {k} disagrees with basis rank {}", s.k_dim())));
            }
        }
        Ok(s)
    }
}

/// Row-major coordinates of `m` over `scalars`.
pub fn flatten(m: &Mat, scalars: Field) -> Vec<Scalar> {
    if m.field() == scalars {
        return m.entries().to_vec();
    }
    m.entries().iter().flat_map(|s| s.base_coords()).collect()
}
