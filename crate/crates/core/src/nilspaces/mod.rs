//! Structured endomorphisms, b-tensors, and the maximal nilpotent spaces built from flags.

mod construct;
mod stability;
mod tensors;

pub use construct::{
    block_model, general_formula, general_max_space, max_space, max_space_with, theorem_bound, wa_space, wh_space, ws_space,
    GeneralSpace,
};
pub use stability::{cube_stability_check, square_stability_check};
pub use tensors::{alt_tensor, herm_tensor, sym_tensor, tensor_recognize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::forms::{Form, FormKind};
use crate::linalg::{kernel_basis, Mat};
use crate::subspace::{flatten, MatSubspace};

fn check_size(m: &Mat, f: &Form) -> Result<()> {
    if !m.is_square() || m.rows() != f.n() || m.field() != f.field() {
        return Err(Error::DimensionMismatch(format!("{}x{} endomorphism for a form on dimension {}", m.rows(), m.cols(), f.n())));
    }
    Ok(())
}

fn require_bilinear(f: &Form) -> Result<()> {
    if f.kind() == FormKind::Hermitian {
        return Err(Error::KindMismatch("this predicate needs a symmetric or alternating form".into()));
    }
    Ok(())
}

/// `S·m` symmetric.
pub fn is_b_symmetric(m: &Mat, f: &Form) -> Result<bool> {
    require_bilinear(f)?;
    check_size(m, f)?;
    Ok((f.gram() * m).is_symmetric())
}

/// `S·m` alternating.
pub fn is_b_alternating(m: &Mat, f: &Form) -> Result<bool> {
    require_bilinear(f)?;
    check_size(m, f)?;
    Ok((f.gram() * m).is_alternating())
}

/// `H·m` Hermitian.
pub fn is_b_hermitian(m: &Mat, f: &Form) -> Result<bool> {
    if f.kind() != FormKind::Hermitian {
        return Err(Error::KindMismatch("b-Hermitian endomorphisms need a Hermitian form".into()));
    }
    check_size(m, f)?;
    Ok((f.gram() * m).is_hermitian())
}

/// Membership in S_b (`kind = symmetric`), A_b (`alternating`) or H_b (`hermitian`).
pub fn is_of_kind(m: &Mat, f: &Form, kind: FormKind) -> Result<bool> {
    match kind {
        FormKind::Symmetric => is_b_symmetric(m, f),
        FormKind::Alternating => is_b_alternating(m, f),
        FormKind::Hermitian => is_b_hermitian(m, f),
    }
}

/// b-symmetric or b-alternating for a bilinear form, b-Hermitian for a Hermitian one.
pub fn is_structured(m: &Mat, f: &Form) -> Result<bool> {
    match f.kind() {
        FormKind::Hermitian => is_b_hermitian(m, f),
        _ => Ok(is_b_symmetric(m, f)? || is_b_alternating(m, f)?),
    }
}

/// Checks that an endomorphism kind can be paired with the form.
pub fn check_pairing(f: &Form, kind: FormKind) -> Result<()> {
    let ok = match kind {
        FormKind::Hermitian => f.kind() == FormKind::Hermitian,
        _ => f.kind() != FormKind::Hermitian,
    };
    if !ok {
        return Err(Error::KindMismatch(format!("{kind} endomorphisms cannot be paired with a {} form", f.kind())));
    }
    Ok(())
}

/// The field over which spaces of `kind` endomorphisms are vector spaces.
pub fn scalar_field(field: Field, kind: FormKind) -> Field {
    match kind {
        FormKind::Hermitian => field.base(),
        _ => field,
    }
}

/// `E_ij` (and `t·E_ij` over the base field), row-major.
pub(crate) fn unit_basis(field: Field, scalars: Field, n: usize) -> Vec<Mat> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let e = Mat::unit(field, n, n, i, j);
            if scalars != field {
                let t = field.generator().expect("extension field");
                out.push(e.clone());
                out.push(e.scale(t));
            } else {
                out.push(e);
            }
        }
    }
    out
}

/// The whole of S_b, A_b or H_b, computed as a kernel.
pub fn structured_ambient(f: &Form, kind: FormKind) -> Result<MatSubspace> {
    check_pairing(f, kind)?;
    let field = f.field();
    let scalars = scalar_field(field, kind);
    let n = f.n();
    let units = unit_basis(field, scalars, n);
    let defect = |m: &Mat| -> Mat {
        let sm = f.gram() * m;
        match kind {
            FormKind::Symmetric => &sm - &sm.transpose(),
            FormKind::Alternating => &sm + &sm.transpose(),
            FormKind::Hermitian => &sm - &sm.conj_transpose(),
        }
    };
    let cols: Vec<Vec<_>> = units.iter().map(|m| flatten(&defect(m), scalars)).collect();
    let system = Mat::from_cols(scalars, n * n * if scalars == field { 1 } else { 2 }, &cols);
    let ker = kernel_basis(&system);
    let mats: Vec<Mat> = ker
        .columns()
        .iter()
        .map(|c| {
            let mut acc = Mat::zeros(field, n, n);
            for (coef, u) in c.iter().zip(&units) {
                if !coef.is_zero() {
                    acc = &acc + &u.scale(coef.embed(field));
                }
            }
            acc
        })
        .collect();
    MatSubspace::span(field, scalars, n, &mats)
}
