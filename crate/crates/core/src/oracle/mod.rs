//! Brute-force verification at desk scale.

mod census;

pub use census::{
    enumerate_max_flags, enumerate_nilpotent_subspaces, probe_conjectures, verify_bound_and_classify, CensusLabel,
    CensusReport, Enumeration, CENSUS_SCHEMA_VERSION,
};

use rand::Rng;
use rayon::prelude::*;

use crate::budget::SearchBudget;
use crate::enumerate::projective_points;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::forms::{Form, FormKind};
use crate::linalg::{is_nilpotent, is_zero_vec, Mat};
use crate::nilspaces::{alt_tensor, herm_tensor, is_b_symmetric, sym_tensor, tensor_recognize};
use crate::subspace::MatSubspace;

/// Checks `tr(a^k b) = 0` given that `λa + μb` is nilpotent for the supplied pairs.
///
/// Hypothesis violations (too few pairs, dependent pairs, a non-nilpotent combination)
/// are errors; `Ok(false)` means the hypotheses held and the conclusion failed.
pub fn verify_trace_lemma(a: &Mat, b: &Mat, k: usize, pairs: &[(Scalar, Scalar)]) -> Result<bool> {
    if !a.is_square() || a.rows() != b.rows() || !b.is_square() {
        return Err(Error::DimensionMismatch("a and b must be square of the same size".into()));
    }
    if pairs.len() < k + 2 {
        return Err(Error::Precondition(format!("need at least {} pairs, got {}", k + 2, pairs.len())));
    }
    for (i, &(l1, m1)) in pairs.iter().enumerate() {
        if l1.is_zero() && m1.is_zero() {
            return Err(Error::Precondition("the zero pair is not allowed".into()));
        }
        for &(l2, m2) in &pairs[i + 1..] {
            if (l1 * m2 - l2 * m1).is_zero() {
                return Err(Error::Precondition("pairs are not pairwise linearly independent".into()));
            }
        }
        if !is_nilpotent(&(&a.scale(l1) + &b.scale(m1)))? {
            return Err(Error::Precondition(format!("{l1}·a + {m1}·b is not nilpotent")));
        }
    }
    Ok((&a.pow(k as u32) * b).trace().is_zero())
}

/// Two matrices and the pairs `(λ, μ)` for which `λa + μb` is nilpotent.
pub type TraceInstance = (Mat, Mat, Vec<(Scalar, Scalar)>);

/// A random instance: `a = P N₁ P⁻¹`, `b = P N₂ P⁻¹` with `N₁, N₂` strictly upper
/// triangular, and `k + 2` pairwise independent pairs taken from the projective line.
pub fn random_trace_instance<R: Rng + ?Sized>(field: Field, n: usize, k: usize, rng: &mut R) -> Result<TraceInstance> {
    let lines = field.order() as usize + 1;
    if k + 2 > lines {
        return Err(Error::Precondition(format!("GF({}) has only {lines} projective pairs, {} needed", field.order(), k + 2)));
    }
    let upper = |rng: &mut R| Mat::from_fn(field, n, n, |i, j| if j > i { field.random(rng) } else { field.zero() });
    let p = Mat::random_invertible(field, n, rng);
    let pinv = p.inverse().expect("invertible");
    let a = &(&p * &upper(rng)) * &pinv;
    let b = &(&p * &upper(rng)) * &pinv;
    let mut pts: Vec<(Scalar, Scalar)> = projective_points(field, 2).map(|v| (v[0], v[1])).collect();
    // Fisher–Yates on the first k + 2 slots
    for i in 0..k + 2 {
        let j = rng.random_range(i..pts.len());
        pts.swap(i, j);
    }
    pts.truncate(k + 2);
    Ok((a, b, pts))
}

/// Every element of `s` is nilpotent. Enumerates all `|K|^k_dim` elements.
pub fn exhaustive_nilpotent(s: &MatSubspace, budget: &SearchBudget) -> Result<bool> {
    let total = s.cardinality();
    budget.check_points("exhaustive nilpotency", total)?;
    let flags: Vec<bool> = budget.install(|| (0..total as u64).into_par_iter().map(|i| is_nilpotent(&s.element(i))).collect::<Result<_>>())?;
    Ok(flags.into_iter().all(|b| b))
}

/// Outcome of the tensor orthogonality sweep over a space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorSweep {
    /// Elements of the space recognized as tensors `x ⊗ y` / `x ∧ y`.
    pub tensors_found: usize,
    /// `(u, tensor)` pairs checked.
    pub pairs_checked: usize,
    pub failures: usize,
}

/// For every element `v` of `s` and every isotropic projective `x` with `v = x ⊗ y`
/// (resp. `x ∧ y`), checks that the reconstruction round-trips and that
/// `b(u(x), y) = 0` (resp. `Tr(b(y, u(x))) = 0`) for every basis element `u`.
pub fn tensor_orthogonality_sweep(s: &MatSubspace, form: &Form, budget: &SearchBudget) -> Result<TensorSweep> {
    let field = form.field();
    let n = form.n();
    let points: Vec<Vec<Scalar>> = projective_points(field, n).filter(|x| form.eval(x, x).is_zero()).collect();
    budget.check_points("tensor sweep", s.cardinality().saturating_mul(points.len() as u128))?;
    let basis = s.basis();
    let mut sweep = TensorSweep::default();
    for idx in 1..s.cardinality() as u64 {
        let v = s.element(idx);
        for x in &points {
            if !is_zero_vec(&v.mul_vec(x)) {
                continue;
            }
            let Ok(y) = tensor_recognize(&v, x, form) else { continue };
            let rebuilt = match form.kind() {
                FormKind::Hermitian => herm_tensor(x, &y, form)?,
                _ if is_b_symmetric(&v, form)? => sym_tensor(x, &y, form)?,
                _ => alt_tensor(x, &y, form)?,
            };
            sweep.tensors_found += 1;
            if rebuilt != v {
                sweep.failures += 1;
            }
            for u in &basis {
                let ux = u.mul_vec(x);
                let ok = match form.kind() {
                    FormKind::Hermitian => form.eval(&y, &ux).tr_rel()?.is_zero(),
                    _ => form.eval(&ux, &y).is_zero(),
                };
                sweep.pairs_checked += 1;
                if !ok {
                    sweep.failures += 1;
                }
            }
        }
    }
    Ok(sweep)
}

/// For a nilpotent space `v` of the critical dimension, every nilpotent structured
/// candidate trace-orthogonal to `v` must lie in `v`. Returns how many candidates were
/// trace-orthogonal, or an error naming a counterexample.
pub fn double_orthogonality_check(space: &MatSubspace, candidates: &[Mat]) -> Result<usize> {
    let basis = space.basis();
    let mut orthogonal = 0;
    for c in candidates {
        if !is_nilpotent(c)? {
            continue;
        }
        if basis.iter().all(|u| (u * c).trace().is_zero()) {
            orthogonal += 1;
            if !space.contains(c) {
                return Err(Error::Internal(format!("trace-orthogonal nilpotent [{c}] lies outside the space")));
            }
        }
    }
    Ok(orthogonal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flags::maximal_singular_flag;
    use crate::nilspaces::{wa_space, wh_space, ws_space};
    use rand::SeedableRng;

    fn k_form(f: Field, nu: usize) -> Form {
        let id = Mat::identity(f, nu);
        let g = Mat::from_blocks(f, &[nu, nu], &[nu, nu], &[&[None, Some(&id)], &[Some(&-&id), None]]).unwrap();
        Form::new(FormKind::Alternating, g).unwrap()
    }

    #[test]
    fn trace_lemma_examples() {
        let f = Field::new(7, 1).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let a = Mat::from_ints(f, &[&[0, 1, 2], &[0, 0, 3], &[0, 0, 0]]);
        let b = Mat::from_ints(f, &[&[0, 4, 5], &[0, 0, 6], &[0, 0, 0]]);
        let pairs: Vec<_> = projective_points(f, 2).map(|v| (v[0], v[1])).collect();
        for k in 0..4 {
            assert!(verify_trace_lemma(&a, &b, k, &pairs[..k + 2]).unwrap());
        }
        for _ in 0..50 {
            let (a, b, pairs) = random_trace_instance(f, 4, 3, &mut rng).unwrap();
            assert!(verify_trace_lemma(&a, &b, 3, &pairs).unwrap());
        }
    }

    #[test]
    fn trace_lemma_hypotheses_are_checked() {
        let f = Field::new(5, 1).unwrap();
        let a = Mat::from_ints(f, &[&[0, 1], &[0, 0]]);
        let b = Mat::from_ints(f, &[&[0, 0], &[1, 0]]);
        let one = f.one();
        let zero = f.zero();
        // a + b is not nilpotent
        assert!(verify_trace_lemma(&a, &b, 0, &[(one, zero), (one, one)]).is_err());
        // dependent pairs
        assert!(verify_trace_lemma(&a, &a, 0, &[(one, zero), (f.from_int(2), zero)]).is_err());
        // too few pairs
        assert!(verify_trace_lemma(&a, &a, 1, &[(one, zero), (zero, one)]).is_err());
        assert!(random_trace_instance(Field::new(3, 1).unwrap(), 3, 3, &mut rand_chacha::ChaCha8Rng::seed_from_u64(0)).is_err());
    }

    #[test]
    fn exhaustive_nilpotency_examples() {
        let f = Field::new(3, 1).unwrap();
        let b = SearchBudget::default();
        let k4 = k_form(f, 2);
        let ws = ws_space(&k4, &maximal_singular_flag(&k4).unwrap()).unwrap();
        assert_eq!(ws.cardinality(), 81);
        assert!(exhaustive_nilpotent(&ws, &b).unwrap());
        assert!(!exhaustive_nilpotent(&MatSubspace::span(f, f, 3, &[Mat::identity(f, 3)]).unwrap(), &b).unwrap());
        let e = MatSubspace::span(f, f, 2, &[Mat::unit(f, 2, 2, 0, 1), Mat::unit(f, 2, 2, 1, 0)]).unwrap();
        assert!(!exhaustive_nilpotent(&e, &b).unwrap());
        assert!(exhaustive_nilpotent(&ws, &SearchBudget::new(10, 10, 1).unwrap()).unwrap_err().is_budget());
    }

    #[test]
    fn tensor_orthogonality_on_constructed_spaces() {
        let b = SearchBudget::default();
        let f = Field::new(3, 1).unwrap();
        let k4 = k_form(f, 2);
        let flag = maximal_singular_flag(&k4).unwrap();
        for s in [ws_space(&k4, &flag).unwrap(), wa_space(&k4, &flag).unwrap()] {
            let sweep = tensor_orthogonality_sweep(&s, &k4, &b).unwrap();
            assert!(sweep.tensors_found > 0);
            assert_eq!(sweep.failures, 0);
        }
        let g = Field::new(3, 2).unwrap();
        let id = Mat::identity(g, 1);
        let h = Form::new(FormKind::Hermitian, Mat::from_blocks(g, &[1, 1], &[1, 1], &[&[None, Some(&id)], &[Some(&id), None]]).unwrap()).unwrap();
        let wh = wh_space(&h, &maximal_singular_flag(&h).unwrap()).unwrap();
        let sweep = tensor_orthogonality_sweep(&wh, &h, &b).unwrap();
        assert!(sweep.tensors_found > 0);
        assert_eq!(sweep.failures, 0);
    }
}
