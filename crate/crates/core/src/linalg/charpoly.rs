use super::Mat;
use crate::error::{Error, Result};
use crate::field::{DualScalar, Ring, Scalar};

/// Coefficients `c_0..c_n` of `det(tI − M) = Σ c_k t^{n−k}`, with `c_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub coeffs: Vec<Scalar>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `c_k`, extended by zero for `k > n`.
    pub fn c(&self, k: usize) -> Scalar {
        self.coeffs.get(k).copied().unwrap_or_else(|| self.coeffs[0].field().zero())
    }

    /// True for `t^n`.
    pub fn is_nilpotent_poly(&self) -> bool {
        self.coeffs.iter().skip(1).all(Scalar::is_zero)
    }
}

/// Division-free characteristic polynomial (Berkowitz).
///
/// Grows the trailing principal block one row/column at a time using
/// `χ_{A}(t) = (t − a) χ_B(t) − Σ_k t^{m−1−k} Σ_{i≤k} c_{k−i}(B) · R Bⁱ C`,
/// so only ring operations are needed and small characteristic is harmless.
pub fn berkowitz<T: Ring>(a: &[Vec<T>], zero: &T, one: &T) -> Vec<T> {
    let n = a.len();
    if n == 0 {
        return vec![one.clone()];
    }
    let mut c = vec![one.clone(), -a[n - 1][n - 1].clone()];
    for r in (0..n - 1).rev() {
        let m = n - 1 - r;
        let lo = r + 1;
        // q_i = R · B^i · C
        let mut v: Vec<T> = (lo..n).map(|i| a[i][r].clone()).collect();
        let mut q = Vec::with_capacity(m);
        for step in 0..m {
            if step > 0 {
                v = (lo..n)
                    .map(|i| (lo..n).fold(zero.clone(), |acc, j| acc + a[i][j].clone() * v[j - lo].clone()))
                    .collect();
            }
            q.push((lo..n).fold(zero.clone(), |acc, j| acc + a[r][j].clone() * v[j - lo].clone()));
        }
        let arr = a[r][r].clone();
        let mut d = vec![zero.clone(); m + 2];
        for j in 0..=m {
            d[j] = d[j].clone() + c[j].clone();
            d[j + 1] = d[j + 1].clone() - arr.clone() * c[j].clone();
        }
        for k in 0..m {
            let s = (0..=k).fold(zero.clone(), |acc, i| acc + c[k - i].clone() * q[i].clone());
            d[k + 2] = d[k + 2].clone() - s;
        }
        c = d;
    }
    c
}

fn rows_of(m: &Mat) -> Vec<Vec<Scalar>> {
    (0..m.rows()).map(|i| m.row(i)).collect()
}

pub fn char_poly(m: &Mat) -> Result<CharPoly> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let f = m.field();
    Ok(CharPoly { coeffs: berkowitz(&rows_of(m), &f.zero(), &f.one()) })
}

/// `m^n = 0`, cross-checked against the characteristic polynomial.
///
/// # Panics
/// If the two tests disagree, which would mean the arithmetic is broken.
pub fn is_nilpotent(m: &Mat) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let mut power = Mat::identity(m.field(), n);
    let mut by_power = n == 0;
    for _ in 0..n {
        power = &power * m;
        if power.is_zero() {
            by_power = true;
            break;
        }
    }
    let by_poly = char_poly(m)?.is_nilpotent_poly();
    assert_eq!(by_power, by_poly, "nilpotency tests disagree on {m:?}");
    Ok(by_power)
}

fn check_pair(a: &Mat, b: &Mat, k: usize) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    Ok(())
}

/// `d/ds c_k(a + s·b)` at `s = 0`, computed by running Berkowitz over F[s]/(s²).
pub fn ck_derivative(a: &Mat, b: &Mat, k: usize) -> Result<Scalar> {
    check_pair(a, b, k)?;
    let f = a.field();
    let n = a.rows();
    let rows: Vec<Vec<DualScalar>> =
        (0..n).map(|i| (0..n).map(|j| DualScalar::new(a[(i, j)], b[(i, j)])).collect()).collect();
    let coeffs = berkowitz(&rows, &DualScalar::constant(f.zero()), &DualScalar::constant(f.one()));
    Ok(coeffs.get(k).map_or(f.zero(), |c| c.slope))
}

/// `−Σ_{i<k} c_{k−1−i}(a) · tr(aⁱ b)`.
pub fn ck_derivative_trace_formula(a: &Mat, b: &Mat, k: usize) -> Result<Scalar> {
    check_pair(a, b, k)?;
    let cp = char_poly(a)?;
    let mut acc = a.field().zero();
    let mut power = Mat::identity(a.field(), a.rows());
    for i in 0..k {
        acc += cp.c(k - 1 - i) * (&power * b).trace();
        power = &power * a;
    }
    Ok(-acc)
}
