use super::{is_b_alternating, is_b_symmetric, scalar_field, check_size};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::forms::{Form, FormKind};
use crate::linalg::{is_zero_vec, Mat};
use crate::subspace::flatten;

fn outer(x: &[Scalar], row: &[Scalar]) -> Mat {
    let field = x[0].field();
    Mat::from_fn(field, x.len(), row.len(), |i, j| x[i] * row[j])
}

fn check_vectors(f: &Form, x: &[Scalar], y: &[Scalar]) -> Result<()> {
    if x.len() != f.n() || y.len() != f.n() || f.n() == 0 {
        return Err(Error::DimensionMismatch("tensor factors must be vectors of the form's dimension".into()));
    }
    Ok(())
}

fn tensor(f: &Form, x: &[Scalar], y: &[Scalar], sign: Scalar) -> Mat {
    &outer(x, &f.row_functional(y)) + &outer(y, &f.row_functional(x)).scale(sign)
}

/// `x ⊗_b y : z ↦ b(y, z) x + b(x, z) y`.
pub fn sym_tensor(x: &[Scalar], y: &[Scalar], f: &Form) -> Result<Mat> {
    if f.kind() == FormKind::Hermitian {
        return Err(Error::KindMismatch("use herm_tensor for Hermitian forms".into()));
    }
    check_vectors(f, x, y)?;
    Ok(tensor(f, x, y, f.field().one()))
}

/// `x ∧_b y : z ↦ b(y, z) x − b(x, z) y`.
pub fn alt_tensor(x: &[Scalar], y: &[Scalar], f: &Form) -> Result<Mat> {
    if f.kind() == FormKind::Hermitian {
        return Err(Error::KindMismatch("alternating tensors need a bilinear form".into()));
    }
    check_vectors(f, x, y)?;
    Ok(tensor(f, x, y, -f.field().one()))
}

/// The b-Hermitian tensor `z ↦ b(y, z) x + b(x, z) y`.
pub fn herm_tensor(x: &[Scalar], y: &[Scalar], f: &Form) -> Result<Mat> {
    if f.kind() != FormKind::Hermitian {
        return Err(Error::KindMismatch("herm_tensor needs a Hermitian form".into()));
    }
    check_vectors(f, x, y)?;
    Ok(tensor(f, x, y, f.field().one()))
}

/// Finds `y ∈ {x}^⊥` with `u = x ⊗_b y` (or `x ∧_b y` when `u` is b-alternating).
///
/// Requires `b(x, x) = 0`, `u(x) = 0` and `u({x}^⊥) ⊆ Fx`.
pub fn tensor_recognize(u: &Mat, x: &[Scalar], f: &Form) -> Result<Vec<Scalar>> {
    check_size(u, f)?;
    let field = f.field();
    let n = f.n();
    if x.len() != n || is_zero_vec(x) {
        return Err(Error::Precondition("x must be a non-zero vector".into()));
    }
    if !f.eval(x, x).is_zero() {
        return Err(Error::Precondition("x must be isotropic".into()));
    }
    let (kind, sign) = match f.kind() {
        FormKind::Hermitian => {
            if !super::is_b_hermitian(u, f)? {
                return Err(Error::Precondition("u is not b-Hermitian".into()));
            }
            (FormKind::Hermitian, field.one())
        }
        _ if is_b_symmetric(u, f)? => (FormKind::Symmetric, field.one()),
        _ if is_b_alternating(u, f)? => (FormKind::Alternating, -field.one()),
        _ => return Err(Error::Precondition("u is neither b-symmetric nor b-alternating".into())),
    };
    if !is_zero_vec(&u.mul_vec(x)) {
        return Err(Error::Precondition("u(x) must vanish".into()));
    }
    let xm = Mat::column(field, x);
    let images = u * &f.orthogonal(&xm);
    if !xm.col_space_contains(&images) {
        return Err(Error::Precondition("u must map {x}^⊥ into Fx".into()));
    }
    if u.is_zero() {
        return Ok(vec![field.zero(); n]);
    }
    // y = Σ c_k v_k over the scalar field; unknowns c_k
    let scalars = scalar_field(field, kind);
    let mut gens = Vec::new();
    for i in 0..n {
        let mut e = vec![field.zero(); n];
        e[i] = field.one();
        if scalars != field {
            let t = field.generator().expect("extension field");
            gens.push(e.iter().map(|&s| s * t).collect::<Vec<_>>());
            gens.insert(gens.len() - 1, e);
        } else {
            gens.push(e);
        }
    }
    let fx = f.row_functional(x);
    let column = |t: &Mat, pairing: Scalar| {
        let mut c = flatten(t, scalars);
        c.extend(flatten(&Mat::column(field, &[pairing]), scalars));
        c
    };
    let cols: Vec<Vec<Scalar>> = gens
        .iter()
        .map(|v| {
            let pairing = fx.iter().zip(v).fold(field.zero(), |acc, (a, b)| acc + *a * *b);
            column(&tensor(f, x, v, sign), pairing)
        })
        .collect();
    let rhs = column(u, field.zero());
    let system = Mat::from_cols(scalars, rhs.len(), &cols);
    let sol = system
        .solve(&Mat::column(scalars, &rhs))
        .ok_or_else(|| Error::Precondition("u is not a b-tensor with x (a rank-one b-alternating u is impossible)".into()))?;
    let mut y = vec![field.zero(); n];
    for (k, v) in gens.iter().enumerate() {
        let c = sol[(k, 0)].embed(field);
        for (yi, vi) in y.iter_mut().zip(v) {
            *yi += c * *vi;
        }
    }
    if tensor(f, x, &y, sign) != *u || !f.eval(x, &y).is_zero() {
        return Err(Error::Internal("tensor reconstruction failed".into()));
    }
    Ok(y)
}
