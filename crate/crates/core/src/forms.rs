//! Symmetric, alternating and Hermitian forms given by Gram matrices.
//!
//! The bilinear forms are `b(x, y) = xᵀ S y`; the Hermitian ones are
//! `b(x, y) = x* S y`, conjugate-linear in the first argument.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::budget::SearchBudget;
use crate::enumerate::{projective_point_count, projective_points};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{kernel_basis, Mat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Symmetric,
    Alternating,
    Hermitian,
}

impl FormKind {
    pub fn name(self) -> &'static str {
        match self {
            FormKind::Symmetric => "symmetric",
            FormKind::Alternating => "alternating",
            FormKind::Hermitian => "hermitian",
        }
    }
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "symmetric" | "sym" | "s" => Ok(FormKind::Symmetric),
            "alternating" | "alt" | "a" => Ok(FormKind::Alternating),
            "hermitian" | "herm" | "h" => Ok(FormKind::Hermitian),
            other => Err(Error::Parse(format!("unknown kind `{other}`"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    kind: FormKind,
    gram: Mat,
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form({}, {}, [{}])", self.kind, self.gram.field(), self.gram)
    }
}

/// The non-degenerate form induced on `V / Rad(b)`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub form: Form,
    /// r×n: coordinates of the class of a vector, in the basis given by `lift`.
    pub projection: Mat,
    /// n×r: chosen representatives of a basis of the quotient.
    pub lift: Mat,
    /// n×(n−r): basis of the radical.
    pub radical: Mat,
}

/// A Witt decomposition.
///
/// For a non-degenerate form the columns of `basis` are `x_1..x_ν | g_1..g_p | y_1..y_ν`
/// and `basis† S basis` is the canonical Gram `[[0,0,I],[0,P,0],[εI,0,0]]`.
/// For a degenerate form the radical is appended as the last `n − r` columns and
/// `nu` counts it, so the hyperbolic part has size `nu − (n − r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WittData {
    pub nu: usize,
    pub basis: Mat,
    pub residual: Mat,
    pub rank: usize,
}

impl WittData {
    pub fn hyperbolic_rank(&self) -> usize {
        self.nu - (self.basis.cols() - self.rank)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nu": self.nu,
            "basis": self.basis.to_json(),
            "residual": self.residual.to_json(),
            "rank": self.rank,
        })
    }
}

/// `S_{ν,P,Q} = [[0,0,I_ν],[0,P,0],[εI_ν,0,Q]]`.
pub fn canonical_gram(field: Field, nu: usize, p: &Mat, q: Option<&Mat>, epsilon: Scalar) -> Mat {
    let pn = p.rows();
    let id = Mat::identity(field, nu);
    let eid = id.scale(epsilon);
    Mat::from_blocks(
        field,
        &[nu, pn, nu],
        &[nu, pn, nu],
        &[&[None, None, Some(&id)], &[None, Some(p), None], &[Some(&eid), None, q]],
    )
    .expect("canonical Gram blocks are consistent")
}

impl Form {
    pub fn new(kind: FormKind, gram: Mat) -> Result<Form> {
        if !gram.is_square() {
            return Err(Error::NotSquare(gram.rows(), gram.cols()));
        }
        let ok = match kind {
            FormKind::Symmetric => gram.is_symmetric(),
            FormKind::Alternating => gram.is_alternating(),
            FormKind::Hermitian => {
                if !gram.field().is_extension() {
                    return Err(Error::KindMismatch("hermitian forms need a degree-2 field".into()));
                }
                gram.is_hermitian()
            }
        };
        if !ok {
            return Err(Error::KindMismatch(format!("Gram matrix is not {kind}")));
        }
        Ok(Form { kind, gram })
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn field(&self) -> Field {
        self.gram.field()
    }

    pub fn n(&self) -> usize {
        self.gram.rows()
    }

    /// `ε`: −1 for alternating forms, +1 otherwise.
    pub fn epsilon(&self) -> Scalar {
        match self.kind {
            FormKind::Alternating => -self.field().one(),
            _ => self.field().one(),
        }
    }

    /// Transpose for bilinear forms, conjugate transpose for Hermitian ones.
    pub fn adjoint(&self, m: &Mat) -> Mat {
        match self.kind {
            FormKind::Hermitian => m.conj_transpose(),
            _ => m.transpose(),
        }
    }

    fn adj_scalar(&self, s: Scalar) -> Scalar {
        match self.kind {
            FormKind::Hermitian => s.conj(),
            _ => s,
        }
    }

    /// The row vector `x† S`, i.e. the functional `z ↦ b(x, z)`.
    pub fn row_functional(&self, x: &[Scalar]) -> Vec<Scalar> {
        let n = self.n();
        (0..n)
            .map(|j| {
                let mut acc = self.field().zero();
                for (i, &xi) in x.iter().enumerate() {
                    acc += self.adj_scalar(xi) * self.gram[(i, j)];
                }
                acc
            })
            .collect()
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let row = self.row_functional(x);
        let mut acc = self.field().zero();
        for (a, &b) in row.iter().zip(y) {
            acc += *a * b;
        }
        acc
    }

    /// Gram matrix of the restriction to the columns of `basis`.
    pub fn gram_in(&self, basis: &Mat) -> Mat {
        &(&self.adjoint(basis) * &self.gram) * basis
    }

    /// The form with Gram `basis† S basis`, same kind.
    pub fn restrict(&self, basis: &Mat) -> Form {
        Form { kind: self.kind, gram: self.gram_in(basis) }
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank() == self.n()
    }

    pub fn is_totally_singular(&self, basis: &Mat) -> bool {
        self.gram_in(basis).is_zero()
    }

    /// Basis of `X^⊥ = {y : b(x, y) = 0 for all x ∈ X}` for `X` spanned by the columns of `basis`.
    pub fn orthogonal(&self, basis: &Mat) -> Mat {
        kernel_basis(&(&self.adjoint(basis) * &self.gram))
    }

    pub fn radical(&self) -> Mat {
        kernel_basis(&self.gram)
    }

    /// Induced form on a complement of the radical chosen by greedy completion with
    /// standard basis vectors.
    pub fn quotient_form(&self) -> Quotient {
        let field = self.field();
        let n = self.n();
        let radical = self.radical();
        let lift = radical.extend_with(&Mat::identity(field, n));
        let full = Mat::hstack(field, n, &[&radical, &lift]).expect("same row count");
        let inv = full.inverse().expect("radical plus complement is a basis");
        let projection = inv.submatrix(radical.cols(), n, 0, n);
        Quotient { form: self.restrict(&lift), projection, lift, radical }
    }

    /// First isotropic projective point, with the default budget.
    pub fn find_isotropic(&self) -> Result<Option<Vec<Scalar>>> {
        self.find_isotropic_with(&SearchBudget::default())
    }

    /// Exhaustive search over projective points in enumeration order. A degenerate
    /// form returns its first radical vector without searching.
    pub fn find_isotropic_with(&self, budget: &SearchBudget) -> Result<Option<Vec<Scalar>>> {
        let rad = self.radical();
        if rad.cols() > 0 {
            return Ok(Some(rad.col(0)));
        }
        budget.check_points("isotropic search", projective_point_count(self.field().order(), self.n()))?;
        Ok(projective_points(self.field(), self.n()).find(|x| self.eval(x, x).is_zero()))
    }

    pub fn witt_index(&self) -> Result<usize> {
        Ok(self.witt_decompose_general(&SearchBudget::default())?.nu)
    }

    pub fn witt_decompose(&self) -> Result<WittData> {
        self.witt_decompose_with(&SearchBudget::default())
    }

    /// Peels hyperbolic pairs off a non-degenerate form.
    pub fn witt_decompose_with(&self, budget: &SearchBudget) -> Result<WittData> {
        let n = self.n();
        let rank = self.rank();
        if rank != n {
            return Err(Error::Degenerate { rank, n });
        }
        let field = self.field();
        let half = field.from_int(2).inv().expect("odd characteristic");
        let mut xs: Vec<Vec<Scalar>> = Vec::new();
        let mut ys: Vec<Vec<Scalar>> = Vec::new();
        let mut w = Mat::identity(field, n);
        loop {
            let local = self.restrict(&w);
            let m = w.cols();
            let Some(xb) = local.find_isotropic_with(budget)? else {
                break;
            };
            let fx = local.row_functional(&xb);
            let j = (0..m).find(|&j| !fx[j].is_zero()).expect("non-degenerate local form");
            let mut yb = vec![field.zero(); m];
            yb[j] = fx[j].inv().expect("non-zero");
            if self.kind != FormKind::Alternating {
                let c = local.eval(&yb, &yb) * half;
                for (yi, &xi) in yb.iter_mut().zip(&xb) {
                    *yi -= c * xi;
                }
            }
            let fy = local.row_functional(&yb);
            xs.push(w.mul_vec(&xb));
            ys.push(w.mul_vec(&yb));
            let rows = Mat::from_rows(field, vec![fx, fy])?;
            w = &w * &kernel_basis(&rows);
        }
        let nu = xs.len();
        let residual = self.gram_in(&w);
        let xm = Mat::from_cols(field, n, &xs);
        let ym = Mat::from_cols(field, n, &ys);
        let basis = Mat::hstack(field, n, &[&xm, &w, &ym])?;
        let data = WittData { nu, basis, residual, rank };
        let expect = canonical_gram(field, nu, &data.residual, None, self.epsilon());
        if self.gram_in(&data.basis) != expect {
            return Err(Error::Internal("Witt decomposition congruence failed".into()));
        }
        Ok(data)
    }

    /// Witt decomposition of the quotient, lifted, with the radical appended.
    pub fn witt_decompose_general(&self, budget: &SearchBudget) -> Result<WittData> {
        if self.is_nondegenerate() {
            return self.witt_decompose_with(budget);
        }
        let q = self.quotient_form();
        let inner = q.form.witt_decompose_with(budget)?;
        let field = self.field();
        let lifted = &q.lift * &inner.basis;
        let basis = Mat::hstack(field, self.n(), &[&lifted, &q.radical])?;
        Ok(WittData { nu: inner.nu + q.radical.cols(), basis, residual: inner.residual, rank: inner.rank })
    }

    pub fn to_json(&self) -> Value {
        let field = self.field();
        json!({
            "kind": self.kind,
            "p": field.characteristic(),
            "degree": field.degree(),
            "gram": self.gram.to_json(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Form> {
        let get_u64 = |key: &str| {
            value.get(key).and_then(Value::as_u64).ok_or_else(|| Error::Parse(format!("form JSON needs integer `{key}`")))
        };
        let kind: FormKind = value
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("form JSON needs `kind`".into()))?
            .parse()?;
        let field = Field::new(get_u64("p")?, get_u64("degree")? as u32)?;
        let gram = Mat::from_json(field, value.get("gram").ok_or_else(|| Error::Parse("form JSON needs `gram`".into()))?)?;
        Form::new(kind, gram)
    }
}
