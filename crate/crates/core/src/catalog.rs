//! Named forms, so runs need no external files.
//!
//! | name | form |
//! |---|---|
//! | `hyperbolic:n` | symmetric, ones on the anti-diagonal |
//! | `Kn:n` | alternating `[[0, I], [-I, 0]]`, `n` even |
//! | `diag:a,b,...` | symmetric diagonal |
//! | `hyperbolic-hermitian:n` | Hermitian, ones on the anti-diagonal |
//! | `hdiag:a,b,...` | Hermitian diagonal, entries in the base field |
//! | `gram:ROWS` | inline Gram `a,b;c,d`, kind inferred |
//! | `gram-sym:`, `gram-alt:`, `gram-herm:` | inline Gram with explicit kind |

use crate::error::{Error, Result};
use crate::field::Field;
use crate::forms::{Form, FormKind};
use crate::linalg::Mat;

fn dim(arg: &str, name: &str) -> Result<usize> {
    let n: usize = arg.trim().parse().map_err(|_| Error::Parse(format!("{name} needs a dimension, got '{arg}'")))?;
    if n == 0 {
        return Err(Error::InvalidInput(format!("{name} needs a positive dimension")));
    }
    Ok(n)
}

fn anti_diagonal(field: Field, n: usize) -> Mat {
    Mat::from_fn(field, n, n, |i, j| if i + j + 1 == n { field.one() } else { field.zero() })
}

fn diagonal(field: Field, arg: &str) -> Result<Mat> {
    let entries = arg.split(',').map(|e| field.parse_scalar(e)).collect::<Result<Vec<_>>>()?;
    if entries.is_empty() {
        return Err(Error::InvalidInput("empty diagonal".into()));
    }
    Ok(Mat::diag(field, &entries))
}

fn infer_kind(g: &Mat) -> Result<FormKind> {
    if g.is_symmetric() {
        Ok(FormKind::Symmetric)
    } else if g.is_alternating() {
        Ok(FormKind::Alternating)
    } else if g.field().is_extension() && g.is_hermitian() {
        Ok(FormKind::Hermitian)
    } else {
        Err(Error::InvalidInput("Gram matrix is neither symmetric, alternating nor Hermitian".into()))
    }
}

/// Resolves a form name over `field`.
pub fn named_form(field: Field, name: &str) -> Result<Form> {
    let name = name.trim();
    let (head, arg) = name.split_once(':').ok_or_else(|| Error::Parse(format!("form '{name}' must look like NAME:ARGS")))?;
    match head.trim() {
        "hyperbolic" => Form::new(FormKind::Symmetric, anti_diagonal(field, dim(arg, head)?)),
        "hyperbolic-hermitian" => Form::new(FormKind::Hermitian, anti_diagonal(field, dim(arg, head)?)),
        "Kn" | "kn" | "K" => {
            let n = dim(arg, head)?;
            if n % 2 == 1 {
                return Err(Error::InvalidInput(format!("K_n needs even n, got {n}")));
            }
            let m = n / 2;
            let id = Mat::identity(field, m);
            Form::new(FormKind::Alternating, Mat::from_blocks(field, &[m, m], &[m, m], &[&[None, Some(&id)], &[Some(&-&id), None]])?)
        }
        "diag" => Form::new(FormKind::Symmetric, diagonal(field, arg)?),
        "hdiag" => Form::new(FormKind::Hermitian, diagonal(field, arg)?),
        "gram" => {
            let g = Mat::parse_text(field, arg)?;
            Form::new(infer_kind(&g)?, g)
        }
        "gram-sym" => Form::new(FormKind::Symmetric, Mat::parse_text(field, arg)?),
        "gram-alt" => Form::new(FormKind::Alternating, Mat::parse_text(field, arg)?),
        "gram-herm" => Form::new(FormKind::Hermitian, Mat::parse_text(field, arg)?),
        other => Err(Error::Parse(format!("unknown form name '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        let f = Field::new(5, 1).unwrap();
        let h = named_form(f, "hyperbolic:4").unwrap();
        assert_eq!((h.kind(), h.witt_index().unwrap()), (FormKind::Symmetric, 2));
        let k = named_form(f, "Kn:4").unwrap();
        assert_eq!((k.kind(), k.witt_index().unwrap()), (FormKind::Alternating, 2));
        let d = named_form(f, "diag:1,-1,0").unwrap();
        assert_eq!(d.rank(), 2);
        assert_eq!(named_form(f, "gram:0,1;-1,0").unwrap().kind(), FormKind::Alternating);
        assert_eq!(named_form(f, "gram:1,2;2,1").unwrap().kind(), FormKind::Symmetric);
        let g = Field::new(3, 2).unwrap();
        let hh = named_form(g, "hyperbolic-hermitian:2").unwrap();
        assert_eq!((hh.kind(), hh.witt_index().unwrap()), (FormKind::Hermitian, 1));
        assert_eq!(named_form(g, "hdiag:1,1,1").unwrap().kind(), FormKind::Hermitian);
    }

    #[test]
    fn bad_names_are_rejected() {
        let f = Field::new(3, 1).unwrap();
        for bad in ["hyperbolic", "Kn:3", "diag:", "nope:2", "gram:1,2;3,4", "hdiag:1,1", "hyperbolic:0"] {
            assert!(named_form(f, bad).is_err(), "{bad}");
        }
    }
}
