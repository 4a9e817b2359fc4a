//! Partially complete b-singular flags, adapted bases and stable flags.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::forms::{canonical_gram, Form};
use crate::linalg::{is_nilpotent, kernel_basis, Mat};
use crate::nilspaces::is_structured;

/// `F_i` is spanned by the first `i` columns of `basis`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Flag {
    basis: Mat,
}

impl std::fmt::Debug for Flag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Flag[{}]", self.basis)
    }
}

impl Flag {
    pub fn new(basis: Mat) -> Result<Flag> {
        if basis.rank() != basis.cols() {
            return Err(Error::InvalidInput("flag basis columns must be independent".into()));
        }
        Ok(Flag { basis })
    }

    pub fn empty(field: Field, n: usize) -> Flag {
        Flag { basis: Mat::zeros(field, n, 0) }
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// Basis of `F_i`.
    pub fn subspace(&self, i: usize) -> Mat {
        self.basis.col_range(0, i)
    }

    /// Canonical keys of `F_1, …, F_p`; two flags are equal as chains iff their keys agree.
    pub fn key(&self) -> Vec<Mat> {
        (1..=self.len()).map(|i| self.subspace(i).col_space_key()).collect()
    }

    pub fn same_chain(&self, other: &Flag) -> bool {
        self.key() == other.key()
    }

    pub fn is_b_singular(&self, form: &Form) -> bool {
        form.is_totally_singular(&self.basis)
    }

    pub fn is_maximal_singular(&self, form: &Form) -> Result<bool> {
        Ok(self.is_b_singular(form) && self.len() == form.witt_index()?)
    }

    /// `u(F_i) ⊆ F_i` for every `i`.
    pub fn is_stabilized_by(&self, u: &Mat) -> bool {
        (1..=self.len()).all(|i| {
            let fi = self.subspace(i);
            fi.col_space_contains(&(u * &fi))
        })
    }

    pub fn to_json(&self) -> Value {
        Value::Array((1..=self.len()).map(|i| self.subspace(i).to_json()).collect())
    }

    pub fn from_json(field: Field, value: &Value) -> Result<Flag> {
        let items = value.as_array().ok_or_else(|| Error::Parse("flag must be a list of matrices".into()))?;
        let mats = items.iter().map(|v| Mat::from_json(field, v)).collect::<Result<Vec<_>>>()?;
        let Some(last) = mats.last() else {
            return Err(Error::Parse("empty flag JSON carries no ambient dimension; use [] only with context".into()));
        };
        let flag = Flag::new(last.clone())?;
        for (i, m) in mats.iter().enumerate() {
            if m.cols() != i + 1 || m.rows() != last.rows() || m.col_space_key() != flag.subspace(i + 1).col_space_key() {
                return Err(Error::InvalidInput(format!("flag member {} is not nested correctly", i + 1)));
            }
        }
        Ok(flag)
    }
}

/// A basis `e_1..e_ν | g_1..g_p | f_1..f_ν` adapted to a maximal singular flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub basis: Mat,
    pub nu: usize,
    pub p_block: usize,
    pub p: Mat,
    pub q: Mat,
    pub strong: bool,
}

impl AdaptedBasis {
    pub fn gram(&self, epsilon: Scalar) -> Mat {
        canonical_gram(self.basis.field(), self.nu, &self.p, Some(&self.q), epsilon)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "basis": self.basis.to_json(),
            "nu": self.nu,
            "P": self.p.to_json(),
            "Q": self.q.to_json(),
            "strong": self.strong,
        })
    }
}

fn require_nondegenerate(form: &Form) -> Result<()> {
    let rank = form.rank();
    if rank != form.n() {
        return Err(Error::Degenerate { rank, n: form.n() });
    }
    Ok(())
}

/// The first `ν` vectors of the Witt decomposition, as a flag.
pub fn maximal_singular_flag(form: &Form) -> Result<Flag> {
    require_nondegenerate(form)?;
    let w = form.witt_decompose()?;
    Flag::new(w.basis.col_range(0, w.nu))
}

pub fn adapted_basis(form: &Form, flag: &Flag) -> Result<AdaptedBasis> {
    require_nondegenerate(form)?;
    if flag.ambient_dim() != form.n() {
        return Err(Error::DimensionMismatch("flag and form live in different spaces".into()));
    }
    if !flag.is_maximal_singular(form)? {
        return Err(Error::Precondition("flag is not a maximal b-singular flag".into()));
    }
    let field = form.field();
    let n = form.n();
    let nu = flag.len();
    let e = flag.basis().clone();
    let g = e.extend_with(&form.orthogonal(&e));
    let h = e.extend_with(&form.orthogonal(&g));
    let m = &(&form.adjoint(&e) * form.gram()) * &h;
    let minv = m.inverse().ok_or_else(|| Error::Internal("pairing of F_ν with H is singular".into()))?;
    let f = &h * &minv;
    let basis = Mat::hstack(field, n, &[&e, &g, &f])?;
    let out = AdaptedBasis { p_block: g.cols(), p: form.gram_in(&g), q: form.gram_in(&f), basis, nu, strong: false };
    check_adapted(form, &out)?;
    Ok(out)
}

/// Replaces `f_l` by `f_l − (ε/2) Σ_i Q_il e_i`, which makes `span(f)` totally singular.
pub fn strongly_adapted_basis(form: &Form, flag: &Flag) -> Result<AdaptedBasis> {
    let ab = adapted_basis(form, flag)?;
    strengthen(form, ab)
}

pub fn strengthen(form: &Form, ab: AdaptedBasis) -> Result<AdaptedBasis> {
    let field = form.field();
    let n = form.n();
    let nu = ab.nu;
    let e = ab.basis.col_range(0, nu);
    let g = ab.basis.col_range(nu, nu + ab.p_block);
    let f = ab.basis.col_range(nu + ab.p_block, n);
    let c = form.epsilon() * field.from_int(2).inv().expect("odd characteristic");
    let f2 = &f - &(&e * &ab.q).scale(c);
    let basis = Mat::hstack(field, n, &[&e, &g, &f2])?;
    let out = AdaptedBasis { basis, q: Mat::zeros(field, nu, nu), strong: true, ..ab };
    check_adapted(form, &out)?;
    Ok(out)
}

fn check_adapted(form: &Form, ab: &AdaptedBasis) -> Result<()> {
    if form.gram_in(&ab.basis) != ab.gram(form.epsilon()) || ab.basis.rank() != form.n() {
        return Err(Error::Internal("adapted basis does not realize S_{ν,P,Q}".into()));
    }
    if ab.strong && !ab.q.is_zero() {
        return Err(Error::Internal("strongly adapted basis with Q ≠ 0".into()));
    }
    Ok(())
}

/// One step of the stable-flag recursion: a vector `x ∈ Ker u ∩ Im u`, a
/// complement `zrest` of `Fx` inside `{x}^⊥`, and the maps induced there.
#[derive(Clone, Debug)]
pub struct QuotientStep {
    pub x: Vec<Scalar>,
    pub zrest: Mat,
    pub form: Form,
    pub u: Mat,
}

pub fn quotient_step(u: &Mat, form: &Form) -> Result<Option<QuotientStep>> {
    if u.is_zero() {
        return Ok(None);
    }
    let field = form.field();
    let n = form.n();
    let image = u.col_space_key().transpose();
    let both = kernel_basis(u).intersect_col_spaces(&image);
    if both.cols() == 0 {
        return Err(Error::Precondition("Ker u ∩ Im u is zero; u is not nilpotent".into()));
    }
    let x = both.col(0);
    let xm = Mat::column(field, &x);
    let zrest = xm.extend_with(&form.orthogonal(&xm));
    let frame = Mat::hstack(field, n, &[&xm, &zrest])?;
    let images = u * &zrest;
    let coords = frame
        .solve(&images)
        .ok_or_else(|| Error::Internal("u does not preserve {x}^⊥".into()))?;
    let ubar = coords.submatrix(1, frame.cols(), 0, zrest.cols());
    Ok(Some(QuotientStep { x, form: form.restrict(&zrest), zrest, u: ubar }))
}

fn stable_rec(u: &Mat, form: &Form) -> Result<Mat> {
    let Some(step) = quotient_step(u, form)? else {
        return Ok(maximal_singular_flag(form)?.basis().clone());
    };
    let inner = stable_rec(&step.u, &step.form)?;
    let field = form.field();
    Mat::hstack(field, form.n(), &[&Mat::column(field, &step.x), &(&step.zrest * &inner)])
}

/// A maximal b-singular flag stabilized by the nilpotent structured endomorphism `u`.
pub fn stable_flag_for(u: &Mat, form: &Form) -> Result<Flag> {
    require_nondegenerate(form)?;
    if u.rows() != form.n() || !u.is_square() {
        return Err(Error::DimensionMismatch("endomorphism and form sizes differ".into()));
    }
    if !is_structured(u, form)? {
        return Err(Error::Precondition("u is not b-symmetric, b-alternating or b-Hermitian".into()));
    }
    if !is_nilpotent(u)? {
        return Err(Error::Precondition("u is not nilpotent".into()));
    }
    let flag = Flag::new(stable_rec(u, form)?)?;
    if !flag.is_maximal_singular(form)? || !flag.is_stabilized_by(u) {
        return Err(Error::Internal("stable flag postcondition failed".into()));
    }
    Ok(flag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::FormKind;

    fn hyperbolic(f: Field, nu: usize, kind: FormKind) -> Form {
        let id = Mat::identity(f, nu);
        let low = if kind == FormKind::Alternating { -&id } else { id.clone() };
        let g = Mat::from_blocks(f, &[nu, nu], &[nu, nu], &[&[None, Some(&id)], &[Some(&low), None]]).unwrap();
        Form::new(kind, g).unwrap()
    }

    fn diag(f: Field, d: &[i64]) -> Form {
        let entries: Vec<_> = d.iter().map(|&v| f.from_int(v)).collect();
        Form::new(FormKind::Symmetric, Mat::diag(f, &entries)).unwrap()
    }

    #[test]
    fn maximal_flag_examples() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(maximal_singular_flag(&diag(f, &[1, 1])).unwrap().len(), 0);
        let k2 = hyperbolic(f, 1, FormKind::Alternating);
        let fl = maximal_singular_flag(&k2).unwrap();
        assert_eq!(fl.basis(), &Mat::from_ints(f, &[&[1], &[0]]));
        let h4 = hyperbolic(f, 2, FormKind::Symmetric);
        let fl = maximal_singular_flag(&h4).unwrap();
        assert_eq!(fl.basis(), &Mat::identity(f, 4).col_range(0, 2));
        assert!(fl.is_maximal_singular(&h4).unwrap());
        assert!(maximal_singular_flag(&diag(f, &[1, 0])).is_err());
    }

    #[test]
    fn adapted_examples() {
        let f = Field::new(5, 1).unwrap();
        let form = diag(f, &[1, 2]);
        let ab = adapted_basis(&form, &Flag::empty(f, 2)).unwrap();
        assert_eq!((ab.nu, &ab.p, ab.q.rows()), (0, form.gram(), 0));

        let k2 = hyperbolic(f, 1, FormKind::Alternating);
        let flag = Flag::new(Mat::from_ints(f, &[&[1], &[0]])).unwrap();
        let ab = adapted_basis(&k2, &flag).unwrap();
        assert_eq!(ab.basis, Mat::identity(f, 2));
        assert_eq!((ab.p_block, ab.q.is_zero()), (0, true));

        let form = diag(f, &[1, -1, 1]);
        let flag = maximal_singular_flag(&form).unwrap();
        let ab = adapted_basis(&form, &flag).unwrap();
        assert_eq!((ab.nu, ab.p_block), (1, 1));
        assert!(!ab.p[(0, 0)].is_zero());
        assert_eq!(form.gram_in(&ab.basis), ab.gram(form.epsilon()));

        let bad = Flag::new(Mat::from_ints(f, &[&[1], &[0], &[0]])).unwrap();
        assert!(adapted_basis(&form, &bad).is_err());
    }

    #[test]
    fn strong_correction_clears_q() {
        use crate::enumerate::projective_points;
        for q in ["3", "5", "9"] {
            let f = Field::parse(q).unwrap();
            let mut saw_nonzero_q = false;
            // standard basis vectors are pairwise non-orthogonal or anisotropic here,
            // so greedy complements are rarely singular
            let forms = [
                diag(f, &[1, 1, 1, 1]),
                Form::new(
                    FormKind::Alternating,
                    Mat::from_ints(f, &[&[0, 1, 1, 1], &[-1, 0, 1, 1], &[-1, -1, 0, 1], &[-1, -1, -1, 0]]),
                )
                .unwrap(),
            ];
            for form in forms {
                let pts: Vec<_> = projective_points(f, 4).filter(|x| form.eval(x, x).is_zero()).take(30).collect();
                let mut tried = 0;
                'outer: for x in &pts {
                    for y in &pts {
                        let Ok(flag) = Flag::new(Mat::from_cols(f, 4, &[x.clone(), y.clone()])) else { continue };
                        if !flag.is_b_singular(&form) {
                            continue;
                        }
                        let ab = adapted_basis(&form, &flag).unwrap();
                        saw_nonzero_q |= !ab.q.is_zero();
                        let sb = strengthen(&form, ab).unwrap();
                        assert!(sb.q.is_zero());
                        assert_eq!(form.gram_in(&sb.basis), canonical_gram(f, sb.nu, &sb.p, None, form.epsilon()));
                        tried += 1;
                        if tried > 40 {
                            break 'outer;
                        }
                    }
                }
            }
            assert!(saw_nonzero_q, "no Q ≠ 0 case exercised over GF({q})");
        }
    }

    #[test]
    fn hermitian_strongly_adapted() {
        let f = Field::new(3, 2).unwrap();
        let t = f.generator().unwrap();
        let id = Mat::identity(f, 2);
        let h = Mat::from_blocks(f, &[2, 2], &[2, 2], &[&[None, Some(&id)], &[Some(&id), None]]).unwrap();
        let form = Form::new(FormKind::Hermitian, h).unwrap();
        let flag = Flag::new(Mat::from_rows(f, vec![
            vec![f.one(), f.zero()],
            vec![f.zero(), f.one()],
            vec![t, f.zero()],
            vec![f.zero(), f.zero()],
        ]).unwrap()).unwrap();
        assert!(flag.is_maximal_singular(&form).unwrap());
        let ab = strongly_adapted_basis(&form, &flag).unwrap();
        assert!(ab.strong && ab.q.is_zero());
    }

    #[test]
    fn stable_flag_of_zero_is_maximal_flag() {
        let f = Field::new(3, 1).unwrap();
        let form = hyperbolic(f, 2, FormKind::Symmetric);
        let fl = stable_flag_for(&Mat::zeros(f, 4, 4), &form).unwrap();
        assert!(fl.same_chain(&maximal_singular_flag(&form).unwrap()));
        let aniso = diag(f, &[1, 1]);
        assert_eq!(stable_flag_for(&Mat::zeros(f, 2, 2), &aniso).unwrap().len(), 0);
    }

    #[test]
    fn stable_flag_rejects_bad_input() {
        let f = Field::new(3, 1).unwrap();
        let form = hyperbolic(f, 1, FormKind::Symmetric);
        // b-symmetric but not nilpotent
        assert!(stable_flag_for(&Mat::identity(f, 2), &form).is_err());
        // nilpotent but neither b-symmetric nor b-alternating
        let n = Mat::from_ints(f, &[&[1, 1], &[-1, -1]]);
        assert!(n.pow(2).is_zero());
        assert!(stable_flag_for(&n, &form).is_err());
    }

    #[test]
    fn quotient_step_lowers_witt_index() {
        let f = Field::new(3, 1).unwrap();
        let form = hyperbolic(f, 2, FormKind::Symmetric);
        // u = [[N, C],[0, Nᵀ]] with C symmetric
        let u = Mat::from_ints(f, &[&[0, 1, 0, 1], &[0, 0, 1, 0], &[0, 0, 0, 0], &[0, 0, 1, 0]]);
        let step = quotient_step(&u, &form).unwrap().unwrap();
        assert!(u.mul_vec(&step.x).iter().all(|s| s.is_zero()));
        assert_eq!(step.form.witt_index().unwrap(), 1);
        let fl = stable_flag_for(&u, &form).unwrap();
        assert!(fl.is_stabilized_by(&u));
    }

    #[test]
    fn flag_json_round_trip() {
        let f = Field::new(5, 1).unwrap();
        let form = hyperbolic(f, 2, FormKind::Alternating);
        let fl = maximal_singular_flag(&form).unwrap();
        assert_eq!(Flag::from_json(f, &fl.to_json()).unwrap(), fl);
        let bad = json!([[[1], [0], [0], [0]], [[0, 1], [1, 0], [0, 0], [0, 0]]]);
        assert!(Flag::from_json(f, &bad).is_err());
    }
}
