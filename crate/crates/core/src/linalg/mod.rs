//! Dense exact matrices over a [`Field`].

mod charpoly;
mod echelon;
mod text;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

pub use charpoly::{berkowitz, char_poly, ck_derivative, ck_derivative_trace_formula, is_nilpotent, CharPoly};
pub use echelon::{kernel_basis, rref, Echelon};

/// Row-major dense matrix. Zero-sized shapes are legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        Mat::from_fn(field, n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, field, data }
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        if data.iter().any(|s| s.field() != field) {
            return Err(Error::DimensionMismatch("entries from a different field".into()));
        }
        Ok(Mat { rows: r, cols: c, field, data })
    }

    /// Convenience constructor from integer residues.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat::from_fn(field, r, c, |i, j| field.from_int(rows[i][j]))
    }

    /// Matrix whose columns are the given vectors, each of length `n`.
    pub fn from_cols(field: Field, n: usize, cols: &[Vec<Scalar>]) -> Mat {
        Mat::from_fn(field, n, cols.len(), |i, j| cols[j][i])
    }

    pub fn column(field: Field, v: &[Scalar]) -> Mat {
        Mat::from_fn(field, v.len(), 1, |i, _| v[i])
    }

    pub fn diag(field: Field, entries: &[Scalar]) -> Mat {
        let n = entries.len();
        Mat::from_fn(field, n, n, |i, j| if i == j { entries[i] } else { field.zero() })
    }

    /// Matrix with a single one at `(i, j)`.
    pub fn unit(field: Field, rows: usize, cols: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(field, rows, cols);
        m[(i, j)] = field.one();
        m
    }

    pub fn random<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Mat {
        Mat::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    /// Uniformly random invertible matrix (rejection sampling).
    pub fn random_invertible<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Mat {
        loop {
            let m = Mat::random(field, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    /// Assembles a block matrix; `None` blocks are zero blocks of the declared size.
    pub fn from_blocks(field: Field, row_sizes: &[usize], col_sizes: &[usize], blocks: &[&[Option<&Mat>]]) -> Result<Mat> {
        if blocks.len() != row_sizes.len() || blocks.iter().any(|r| r.len() != col_sizes.len()) {
            return Err(Error::DimensionMismatch("block grid shape".into()));
        }
        let rows = row_sizes.iter().sum();
        let cols = col_sizes.iter().sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut r0 = 0;
        for (bi, &rs) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &cs) in col_sizes.iter().enumerate() {
                if let Some(b) = blocks[bi][bj] {
                    if b.rows != rs || b.cols != cs {
                        return Err(Error::DimensionMismatch(format!(
                            "block ({bi},{bj}) is {}x{}, expected {rs}x{cs}",
                            b.rows, b.cols
                        )));
                    }
                    for i in 0..rs {
                        for j in 0..cs {
                            out[(r0 + i, c0 + j)] = b[(i, j)];
                        }
                    }
                }
                c0 += cs;
            }
            r0 += rs;
        }
        Ok(out)
    }

    pub fn hstack(field: Field, rows: usize, parts: &[&Mat]) -> Result<Mat> {
        if parts.iter().any(|m| m.rows != rows) {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut c0 = 0;
        for m in parts {
            for i in 0..rows {
                for j in 0..m.cols {
                    out[(i, c0 + j)] = m[(i, j)];
                }
            }
            c0 += m.cols;
        }
        Ok(out)
    }

    pub fn vstack(field: Field, cols: usize, parts: &[&Mat]) -> Result<Mat> {
        if parts.iter().any(|m| m.cols != cols) {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        Ok(Mat { rows, cols, field, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    /// Columns `range.start .. range.end`.
    pub fn col_range(&self, start: usize, end: usize) -> Mat {
        Mat::from_fn(self.field, self.rows, end - start, |i, j| self[(i, start + j)])
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        Mat::from_fn(self.field, r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Entrywise involution.
    pub fn conj(&self) -> Mat {
        Mat { data: self.data.iter().map(|s| s.conj()).collect(), ..self.clone() }
    }

    /// `M* = (M_{j,i}*)`; plain transpose over a prime field.
    pub fn conj_transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Scalar) -> Mat {
        Mat { data: self.data.iter().map(|&x| x * s).collect(), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "mul_vec: length mismatch");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).fold(self.field.zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> Mat {
        assert!(self.is_square());
        let mut acc = Mat::identity(self.field, self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// `Aᵀ = -A` with zero diagonal.
    pub fn is_alternating(&self) -> bool {
        self.is_square() && *self == -&self.transpose() && (0..self.rows).all(|i| self[(i, i)].is_zero())
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.conj_transpose()
    }

    pub fn is_strictly_upper(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i + 1)).all(|j| self[(i, j)].is_zero()))
    }

    pub fn try_mul(&self, rhs: &Mat) -> Result<Mat> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self * rhs)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&Mat::identity(self.field, self.rows))?;
        (self.rank() == self.rows).then_some(x)
    }

    /// Some `X` with `self · X = rhs`, if the system is consistent.
    pub fn solve(&self, rhs: &Mat) -> Option<Mat> {
        echelon::solve(self, rhs)
    }

    /// Coordinates of `v` on the (independent) columns of `self`.
    pub fn coords_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.solve(&Mat::column(self.field, v)).map(|x| x.col(0))
    }

    /// Whether `v` lies in the column space.
    pub fn spans(&self, v: &[Scalar]) -> bool {
        self.coords_of(v).is_some()
    }

    /// Whether every column of `other` lies in the column space of `self`.
    pub fn col_space_contains(&self, other: &Mat) -> bool {
        self.solve(other).is_some()
    }

    /// Canonical basis (rows) of the column space: the non-zero rows of rref(selfᵀ).
    pub fn col_space_key(&self) -> Mat {
        let e = rref(&self.transpose());
        e.matrix.submatrix(0, e.rank, 0, self.rows)
    }

    /// Greedily appends columns of `candidates` that are independent of `self`;
    /// returns only the appended columns.
    pub fn extend_with(&self, candidates: &Mat) -> Mat {
        let mut acc = self.clone();
        let mut added = Vec::new();
        let mut rank = acc.rank();
        for v in candidates.columns() {
            let next = Mat::hstack(self.field, self.rows, &[&acc, &Mat::column(self.field, &v)]).unwrap();
            let r = next.rank();
            if r > rank {
                rank = r;
                acc = next;
                added.push(v);
            }
        }
        Mat::from_cols(self.field, self.rows, &added)
    }

    /// Basis of the intersection of the column spaces of `self` and `other`.
    pub fn intersect_col_spaces(&self, other: &Mat) -> Mat {
        let stacked = Mat::hstack(self.field, self.rows, &[self, &-other]).unwrap();
        let ker = kernel_basis(&stacked);
        let coeffs = ker.submatrix(0, self.cols, 0, ker.cols);
        let raw = self * &coeffs;
        // drop dependencies introduced by a non-independent `self`
        let e = rref(&raw.transpose());
        e.matrix.submatrix(0, e.rank, 0, self.rows).transpose()
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let zero = self.field.zero();
        let mut out = Mat::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == zero {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out[(i, j)] + a * rhs[(k, j)];
                    out[(i, j)] = v;
                }
            }
        }
        out
    }
}

impl Mul for Mat {
    type Output = Mat;
    fn mul(self, rhs: Mat) -> Mat {
        &self * &rhs
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        Mat { data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(), ..self.clone() }
    }
}

impl Add for Mat {
    type Output = Mat;
    fn add(self, rhs: Mat) -> Mat {
        &self + &rhs
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        Mat { data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(), ..self.clone() }
    }
}

impl Sub for Mat {
    type Output = Mat;
    fn sub(self, rhs: Mat) -> Mat {
        &self - &rhs
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat { data: self.data.iter().map(|&a| -a).collect(), ..self.clone() }
    }
}

impl Neg for Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        -&self
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[{}]", self.rows, self.cols, self)
    }
}

/// Free function form of [`Mat::conj_transpose`].
pub fn conj_transpose(m: &Mat) -> Mat {
    m.conj_transpose()
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn blocks_with_void_parts() {
        let f = Field::new(5, 1).unwrap();
        let a = Mat::from_ints(f, &[&[1, 2], &[3, 4]]);
        let m = Mat::from_blocks(f, &[2, 0, 1], &[2, 1], &[&[Some(&a), None], &[None, None], &[None, None]]).unwrap();
        assert_eq!(m, Mat::from_ints(f, &[&[1, 2, 0], &[3, 4, 0], &[0, 0, 0]]));
        let bad = Mat::from_blocks(f, &[1], &[2], &[&[Some(&a)]]);
        assert!(bad.is_err());
        let empty = Mat::zeros(f, 0, 0);
        assert_eq!(empty.rank(), 0);
        assert_eq!(empty.trace(), f.zero());
    }

    #[test]
    fn trace_is_cyclic_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in ["3", "5", "9"] {
            let f = Field::parse(q).unwrap();
            for n in 1..=5 {
                for _ in 0..10 {
                    let a = Mat::random(f, n, n + 1, &mut rng);
                    let b = Mat::random(f, n + 1, n, &mut rng);
                    assert_eq!((&a * &b).trace(), (&b * &a).trace());
                }
            }
        }
    }

    #[test]
    fn conj_transpose_examples() {
        let f = Field::new(3, 2).unwrap();
        let i = f.generator().unwrap();
        let m = Mat::from_rows(f, vec![vec![i]]).unwrap();
        assert_eq!(conj_transpose(&m), Mat::from_rows(f, vec![vec![-i]]).unwrap());
        assert_eq!(conj_transpose(&Mat::identity(f, 3)), Mat::identity(f, 3));
        let h = Mat::from_rows(f, vec![vec![f.one(), i], vec![-i, f.from_int(2)]]).unwrap();
        assert!(h.is_hermitian());
        assert_eq!(conj_transpose(&h), h);
        let g = Field::new(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = Mat::random(g, 3, 4, &mut rng);
        assert_eq!(conj_transpose(&r), r.transpose());
        let r9 = Mat::random(f, 3, 2, &mut rng);
        assert_eq!(r9.conj_transpose().conj_transpose(), r9);
    }

    #[test]
    fn inverse_and_intersection() {
        let f = Field::new(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 0..5 {
            let m = Mat::random_invertible(f, n, &mut rng);
            let inv = m.inverse().unwrap();
            assert_eq!(&m * &inv, Mat::identity(f, n));
        }
        assert!(Mat::from_ints(f, &[&[1, 2], &[2, 4]]).inverse().is_none());
        // span(e1, e2) ∩ span(e2, e3) = span(e2)
        let u = Mat::from_ints(f, &[&[1, 0], &[0, 1], &[0, 0]]);
        let w = Mat::from_ints(f, &[&[0, 0], &[1, 0], &[0, 1]]);
        let meet = u.intersect_col_spaces(&w);
        assert_eq!(meet.cols(), 1);
        assert_eq!(meet.col(0), vec![f.zero(), f.one(), f.zero()]);
    }

    #[test]
    fn extend_with_completes_to_basis() {
        let f = Field::new(3, 1).unwrap();
        let x = Mat::from_ints(f, &[&[1], &[1], &[0]]);
        let added = x.extend_with(&Mat::identity(f, 3));
        assert_eq!(added.cols(), 2);
        let all = Mat::hstack(f, 3, &[&x, &added]).unwrap();
        assert_eq!(all.rank(), 3);
    }
}
