use rayon::prelude::*;

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::forms::{Form, FormKind};
use crate::subspace::MatSubspace;

fn power_stability(s: &MatSubspace, f: &Form, k: u32, budget: &SearchBudget) -> Result<bool> {
    if f.kind() == FormKind::Hermitian {
        return Err(Error::KindMismatch("power stability is checked for bilinear forms".into()));
    }
    if s.n() != f.n() {
        return Err(Error::DimensionMismatch("space and form sizes differ".into()));
    }
    let total = s.cardinality();
    budget.check_points("power stability enumeration", total)?;
    Ok(budget.install(|| (0..total as u64).into_par_iter().all(|i| s.contains(&s.element(i).pow(k)))))
}

/// Exhaustively checks `u² ∈ s` for every `u ∈ s`.
pub fn square_stability_check(s: &MatSubspace, f: &Form, budget: &SearchBudget) -> Result<bool> {
    power_stability(s, f, 2, budget)
}

/// Exhaustively checks `u³ ∈ s`. Informational over GF(3).
pub fn cube_stability_check(s: &MatSubspace, f: &Form, budget: &SearchBudget) -> Result<bool> {
    power_stability(s, f, 3, budget)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::linalg::Mat;
    use crate::flags::maximal_singular_flag;
    use crate::nilspaces::{wa_space, ws_space};

    fn hyperbolic(f: Field, nu: usize, kind: FormKind) -> Form {
        let id = Mat::identity(f, nu);
        let low = if kind == FormKind::Alternating { -&id } else { id.clone() };
        let g = Mat::from_blocks(f, &[nu, nu], &[nu, nu], &[&[None, Some(&id)], &[Some(&low), None]]).unwrap();
        Form::new(kind, g).unwrap()
    }

    #[test]
    fn constructed_spaces_are_square_stable() {
        let f = Field::new(3, 1).unwrap();
        let b = SearchBudget::default();
        let sym = hyperbolic(f, 2, FormKind::Symmetric);
        let ws = ws_space(&sym, &maximal_singular_flag(&sym).unwrap()).unwrap();
        assert!(square_stability_check(&ws, &sym, &b).unwrap());
        let alt = hyperbolic(f, 2, FormKind::Alternating);
        let wa = wa_space(&alt, &maximal_singular_flag(&alt).unwrap()).unwrap();
        assert!(square_stability_check(&wa, &alt, &b).unwrap());
        let zero = MatSubspace::zero(f, f, 4);
        assert!(square_stability_check(&zero, &sym, &b).unwrap());
    }

    #[test]
    fn corrupted_space_is_detected() {
        let f = Field::new(3, 1).unwrap();
        let b = SearchBudget::default();
        let sym = hyperbolic(f, 2, FormKind::Symmetric);
        let ws = ws_space(&sym, &maximal_singular_flag(&sym).unwrap()).unwrap();
        let mut basis = ws.basis();
        // the first canonical generator has top-left block E_12; make it E_12 + E_21
        assert_eq!(basis[0][(0, 1)], f.one());
        basis[0] = &basis[0] + &Mat::unit(f, 4, 4, 1, 0);
        let bad = MatSubspace::span(f, f, 4, &basis).unwrap();
        assert!(!square_stability_check(&bad, &sym, &b).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let f = Field::new(3, 1).unwrap();
        let sym = hyperbolic(f, 2, FormKind::Symmetric);
        let ws = ws_space(&sym, &maximal_singular_flag(&sym).unwrap()).unwrap();
        let tiny = SearchBudget::new(10, 10, 1).unwrap();
        assert!(square_stability_check(&ws, &sym, &tiny).unwrap_err().is_budget());
    }
}
