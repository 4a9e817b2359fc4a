use super::{check_pairing, is_of_kind, scalar_field};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::flags::{adapted_basis, maximal_singular_flag, strengthen, AdaptedBasis, Flag};
use crate::forms::{Form, FormKind};
use crate::linalg::{is_nilpotent, Mat};
use crate::subspace::MatSubspace;

/// `ν(n−ν)`, `ν(n−ν−1)` or `ν(2n−2ν−1)` according to `kind`.
pub fn theorem_bound(kind: FormKind, n: usize, nu: usize) -> usize {
    match kind {
        FormKind::Symmetric => nu * (n - nu),
        FormKind::Alternating => nu * (n - nu).saturating_sub(1),
        FormKind::Hermitian => nu * (2 * n - 2 * nu).saturating_sub(1),
    }
}

/// `C(n−r, 2) + r(n−r) + (ν−n+r)·d` where `d` is `n−ν` (symmetric) or `n−ν−1` (alternating).
/// Here `ν` is the Witt index of the possibly degenerate form.
pub fn general_formula(kind: FormKind, n: usize, r: usize, nu: usize) -> usize {
    let rad = n - r;
    let nubar = nu - rad;
    rad * rad.saturating_sub(1) / 2 + r * rad + theorem_bound(kind, r, nubar)
}

fn scalar_units(field: Field, scalars: Field) -> Vec<Scalar> {
    if field == scalars {
        vec![field.one()]
    } else {
        vec![field.one(), field.generator().expect("extension field")]
    }
}

fn adjoint(kind: FormKind, m: &Mat) -> Mat {
    match kind {
        FormKind::Hermitian => m.conj_transpose(),
        _ => m.transpose(),
    }
}

/// Spanning set of WS (`kind = symmetric`), WA (`alternating`) or WH (`hermitian`)
/// written in the coordinates of `ab`:
/// `[[A, s(PC)†, E − sεQA†], [0, 0, C], [0, 0, sA†]]` with `s = ε, −ε, 1` respectively,
/// `A` strictly upper triangular and `E` symmetric, alternating or Hermitian.
pub fn block_model(form: &Form, ab: &AdaptedBasis, kind: FormKind) -> Result<Vec<Mat>> {
    check_pairing(form, kind)?;
    let field = form.field();
    let units = scalar_units(field, scalar_field(field, kind));
    let (nu, p) = (ab.nu, ab.p_block);
    let eps = form.epsilon();
    let s = match kind {
        FormKind::Symmetric => eps,
        FormKind::Alternating => -eps,
        FormKind::Hermitian => field.one(),
    };
    let assemble = |a: &Mat, c: &Mat, e: &Mat| -> Mat {
        let pc = adjoint(kind, &(&ab.p * c)).scale(s);
        let corner = e - &(&ab.q * &adjoint(kind, a)).scale(s * eps);
        let low = adjoint(kind, a).scale(s);
        Mat::from_blocks(
            field,
            &[nu, p, nu],
            &[nu, p, nu],
            &[&[Some(a), Some(&pc), Some(&corner)], &[None, None, Some(c)], &[None, None, Some(&low)]],
        )
        .expect("block sizes are consistent")
    };
    let za = Mat::zeros(field, nu, nu);
    let zc = Mat::zeros(field, p, nu);
    let mut out = Vec::new();
    for i in 0..nu {
        for j in i + 1..nu {
            for &l in &units {
                out.push(assemble(&Mat::unit(field, nu, nu, i, j).scale(l), &zc, &za));
            }
        }
    }
    for k in 0..p {
        for j in 0..nu {
            for &l in &units {
                out.push(assemble(&za, &Mat::unit(field, p, nu, k, j).scale(l), &za));
            }
        }
    }
    for i in 0..nu {
        for j in i..nu {
            let eij = Mat::unit(field, nu, nu, i, j);
            let eji = Mat::unit(field, nu, nu, j, i);
            match kind {
                FormKind::Symmetric => {
                    for &l in &units {
                        out.push(assemble(&za, &zc, &(&eij + &eji).scale(l)));
                    }
                }
                FormKind::Alternating if i < j => {
                    for &l in &units {
                        out.push(assemble(&za, &zc, &(&eij - &eji).scale(l)));
                    }
                }
                FormKind::Alternating => {}
                FormKind::Hermitian if i == j => out.push(assemble(&za, &zc, &eij)),
                FormKind::Hermitian => {
                    for &l in &units {
                        out.push(assemble(&za, &zc, &(&eij.scale(l) + &eji.scale(l.conj()))));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn conjugate_all(basis: &Mat, mats: &[Mat]) -> Result<Vec<Mat>> {
    let inv = basis.inverse().ok_or_else(|| Error::Internal("change of basis is singular".into()))?;
    Ok(mats.iter().map(|m| &(basis * m) * &inv).collect())
}

fn verify_elements(form: &Form, kind: FormKind, space: &MatSubspace, flag: Option<&Flag>) -> Result<()> {
    for m in space.basis() {
        if !is_of_kind(&m, form, kind)? {
            return Err(Error::Internal(format!("constructed element is not b-{kind}")));
        }
        if !is_nilpotent(&m)? {
            return Err(Error::Internal("constructed element is not nilpotent".into()));
        }
        if let Some(fl) = flag {
            if !fl.is_stabilized_by(&m) {
                return Err(Error::Internal("constructed element does not stabilize the flag".into()));
            }
        }
    }
    Ok(())
}

/// The space of nilpotent `kind` endomorphisms stabilizing a maximal singular flag,
/// built through a strongly adapted basis (`strong`) or a plain adapted basis.
pub fn max_space_with(form: &Form, flag: &Flag, kind: FormKind, strong: bool) -> Result<MatSubspace> {
    check_pairing(form, kind)?;
    let mut ab = adapted_basis(form, flag)?;
    if strong {
        ab = strengthen(form, ab)?;
    }
    let mats = conjugate_all(&ab.basis, &block_model(form, &ab, kind)?)?;
    let field = form.field();
    let space = MatSubspace::span(field, scalar_field(field, kind), form.n(), &mats)?;
    let expect = theorem_bound(kind, form.n(), ab.nu);
    if space.k_dim() != expect {
        return Err(Error::Internal(format!("constructed dimension {} differs from {expect}", space.k_dim())));
    }
    verify_elements(form, kind, &space, Some(flag))?;
    Ok(space)
}

pub fn max_space(form: &Form, flag: &Flag, kind: FormKind) -> Result<MatSubspace> {
    max_space_with(form, flag, kind, true)
}

fn require_kind(form: &Form, allowed: &[FormKind], what: &str) -> Result<()> {
    if !allowed.contains(&form.kind()) {
        return Err(Error::KindMismatch(format!("{what} needs a {} form", allowed.iter().map(|k| k.name()).collect::<Vec<_>>().join(" or "))));
    }
    Ok(())
}

/// WS_{b,F}: nilpotent b-symmetric endomorphisms stabilizing `flag`, dimension `ν(n−ν)`.
pub fn ws_space(form: &Form, flag: &Flag) -> Result<MatSubspace> {
    require_kind(form, &[FormKind::Symmetric, FormKind::Alternating], "ws_space")?;
    max_space(form, flag, FormKind::Symmetric)
}

/// WA_{b,F}: nilpotent b-alternating endomorphisms stabilizing `flag`, dimension `ν(n−ν−1)`.
pub fn wa_space(form: &Form, flag: &Flag) -> Result<MatSubspace> {
    require_kind(form, &[FormKind::Symmetric, FormKind::Alternating], "wa_space")?;
    max_space(form, flag, FormKind::Alternating)
}

/// WH_{b,F}: nilpotent b-Hermitian endomorphisms stabilizing `flag`, K-dimension `ν(2n−2ν−1)`.
pub fn wh_space(form: &Form, flag: &Flag) -> Result<MatSubspace> {
    require_kind(form, &[FormKind::Hermitian], "wh_space")?;
    max_space(form, flag, FormKind::Hermitian)
}

/// The assembled space of a possibly degenerate form together with the basis it was built in.
#[derive(Clone, Debug)]
pub struct GeneralSpace {
    pub space: MatSubspace,
    /// Columns: the radical (kernel order), then the lifted strongly adapted basis of the quotient.
    pub basis: Mat,
    pub n: usize,
    pub r: usize,
    pub nu: usize,
    pub formula: usize,
}

/// Nilpotent structured space for a possibly degenerate bilinear form: strictly upper
/// triangular on the radical, every map `V/Rad(b) → Rad(b)`, and the WS/WA space of the
/// induced non-degenerate form.
pub fn general_max_space(form: &Form, kind: FormKind) -> Result<GeneralSpace> {
    require_kind(form, &[FormKind::Symmetric, FormKind::Alternating], "general_max_space")?;
    if kind == FormKind::Hermitian {
        return Err(Error::KindMismatch("general_max_space builds b-symmetric or b-alternating spaces".into()));
    }
    let field = form.field();
    let n = form.n();
    let quot = form.quotient_form();
    let rad = quot.radical.cols();
    let r = n - rad;
    let qflag = maximal_singular_flag(&quot.form)?;
    let ab = strengthen(&quot.form, adapted_basis(&quot.form, &qflag)?)?;
    let inner = block_model(&quot.form, &ab, kind)?;
    let basis = Mat::hstack(field, n, &[&quot.radical, &(&quot.lift * &ab.basis)])?;
    let mut mats = Vec::new();
    for i in 0..rad {
        for j in i + 1..rad {
            mats.push(Mat::unit(field, n, n, i, j));
        }
    }
    for i in 0..rad {
        for j in rad..n {
            mats.push(Mat::unit(field, n, n, i, j));
        }
    }
    let zr = Mat::zeros(field, rad, rad);
    for w in &inner {
        mats.push(Mat::from_blocks(field, &[rad, r], &[rad, r], &[&[Some(&zr), None], &[None, Some(w)]])?);
    }
    let mats = conjugate_all(&basis, &mats)?;
    let space = MatSubspace::span(field, field, n, &mats)?;
    let nu = rad + ab.nu;
    let formula = general_formula(kind, n, r, nu);
    if space.k_dim() != formula {
        return Err(Error::Internal(format!("assembled dimension {} differs from {formula}", space.k_dim())));
    }
    verify_elements(form, kind, &space, Some(&Flag::new(quot.radical.clone())?))?;
    Ok(GeneralSpace { space, basis, n, r, nu, formula })
}
