//! The desk-scale acceptance suite: ten exact checks, each reported as pass or fail.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::budget::SearchBudget;
use crate::catalog::named_form;
use crate::enumerate::projective_points;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::flags::{maximal_singular_flag, stable_flag_for, Flag};
use crate::forms::{Form, FormKind};
use crate::linalg::{ck_derivative, ck_derivative_trace_formula, is_nilpotent, is_zero_vec, Mat};
use crate::nilspaces::{
    alt_tensor, cube_stability_check, general_max_space, herm_tensor, is_of_kind, max_space, square_stability_check,
    sym_tensor, tensor_recognize,
};
use crate::oracle::{
    enumerate_nilpotent_subspaces, exhaustive_nilpotent, probe_conjectures, random_trace_instance,
    tensor_orthogonality_sweep, verify_bound_and_classify, verify_trace_lemma, CensusReport,
};
use crate::subspace::MatSubspace;

pub const CRITERIA: [&str; 10] = [
    "construction dimensions",
    "exhaustive nilpotency",
    "bound censuses",
    "classification censuses",
    "degenerate forms",
    "trace identities",
    "stable flags",
    "square stability",
    "tensor suite",
    "conjecture probes",
];

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub millis: u128,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] criterion {}: {} ({})", self.id, self.name, self.detail)
    }
}

fn field(q: &str) -> Field {
    Field::parse(q).expect("built-in field")
}

fn form(q: &str, name: &str) -> Form {
    named_form(field(q), name).expect("built-in form")
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Internal(what()))
    }
}

fn non_square(f: Field) -> Scalar {
    f.elements().find(|a| !a.is_zero() && !f.elements().any(|b| b * b == *a)).expect("odd q has non-squares")
}

/// Non-degenerate forms of the construction sweep, each with the kinds to build.
pub fn construction_sweep() -> Vec<(Form, Vec<FormKind>)> {
    let both = vec![FormKind::Symmetric, FormKind::Alternating];
    let mut out = Vec::new();
    for q in ["3", "5"] {
        let f = field(q);
        let c = non_square(f);
        for n in 1..=6 {
            let ones = vec![f.one(); n];
            let mut twisted = ones.clone();
            twisted[n - 1] = c;
            for d in [ones, twisted] {
                out.push((Form::new(FormKind::Symmetric, Mat::diag(f, &d)).expect("diagonal"), both.clone()));
            }
            out.push((form(q, &format!("hyperbolic:{n}")), both.clone()));
            if n % 2 == 0 {
                out.push((form(q, &format!("Kn:{n}")), both.clone()));
            }
        }
    }
    for n in 1..=4 {
        out.push((form("9", &format!("hyperbolic-hermitian:{n}")), vec![FormKind::Hermitian]));
        out.push((form("9", &format!("hdiag:{}", vec!["1"; n].join(","))), vec![FormKind::Hermitian]));
    }
    out
}

fn expected_dim(kind: FormKind, n: usize, nu: usize) -> usize {
    match kind {
        FormKind::Symmetric => nu * (n - nu),
        FormKind::Alternating => nu * (n - nu).saturating_sub(1),
        FormKind::Hermitian => nu * (2 * n - 2 * nu).saturating_sub(1),
    }
}

fn check_space(form: &Form, flag: &Flag, kind: FormKind, s: &MatSubspace) -> Result<()> {
    let nu = form.witt_index()?;
    ensure(flag.len() == nu && flag.is_maximal_singular(form)?, || "flag is not maximal singular".into())?;
    let want = expected_dim(kind, form.n(), nu);
    ensure(s.k_dim() == want, || format!("{kind} space for {} has dimension {}, expected {want}", form.gram(), s.k_dim()))?;
    for m in s.basis() {
        ensure(is_of_kind(&m, form, kind)?, || format!("[{m}] is not b-{kind}"))?;
        ensure(is_nilpotent(&m)?, || format!("[{m}] is not nilpotent"))?;
        ensure(flag.is_stabilized_by(&m), || format!("[{m}] does not stabilize the flag"))?;
    }
    Ok(())
}

/// Constructed spaces of the sweep with their forms and flags.
pub fn constructed_spaces() -> Result<Vec<(Form, Flag, FormKind, MatSubspace)>> {
    let mut out = Vec::new();
    for (f, kinds) in construction_sweep() {
        let flag = maximal_singular_flag(&f)?;
        for kind in kinds {
            let s = max_space(&f, &flag, kind)?;
            out.push((f.clone(), flag.clone(), kind, s));
        }
    }
    Ok(out)
}

fn c1() -> Result<String> {
    let spaces = constructed_spaces()?;
    for (f, flag, kind, s) in &spaces {
        check_space(f, flag, *kind, s)?;
    }
    Ok(format!("{} spaces", spaces.len()))
}

fn c2(budget: &SearchBudget) -> Result<String> {
    let mut checked = 0;
    let mut elements = 0u128;
    for (f, _, kind, s) in constructed_spaces()? {
        if f.field().characteristic() != 3 || s.k_dim() > 9 {
            continue;
        }
        ensure(exhaustive_nilpotent(&s, budget)?, || format!("{kind} space for [{}] has a non-nilpotent element", f.gram()))?;
        checked += 1;
        elements += s.cardinality();
    }
    Ok(format!("{checked} spaces, {elements} elements"))
}

/// Forms and kinds of the bound and classification censuses over GF(3).
pub fn census_jobs() -> Vec<(Form, FormKind)> {
    let mut jobs = Vec::new();
    for name in ["diag:1", "diag:-1", "diag:1,1", "diag:1,-1", "hyperbolic:2", "diag:1,1,1", "diag:1,-1,1", "hyperbolic:3"] {
        jobs.push((form("3", name), FormKind::Symmetric));
    }
    jobs.push((form("3", "Kn:2"), FormKind::Alternating));
    jobs.push((form("3", "Kn:4"), FormKind::Alternating));
    jobs
}

/// Runs the census jobs once; criteria 3 and 4 read the same reports.
pub fn census_reports(budget: &SearchBudget) -> Result<Vec<CensusReport>> {
    census_jobs().iter().map(|(f, kind)| verify_bound_and_classify(f, *kind, budget)).collect()
}

fn c3(reports: &[CensusReport]) -> Result<String> {
    for r in reports {
        ensure(r.bound_holds(), || format!("{} nilpotent subspaces of dimension {} for n={} {}", r.nilpotent_above_bound, r.bound_claimed + 1, r.n, r.kind))?;
        ensure(r.max_found == r.bound_claimed, || format!("max found {} but bound {}", r.max_found, r.bound_claimed))?;
        ensure(r.soundness_rechecked, || "a census survivor failed the exhaustive re-check".into())?;
    }
    let listed: Vec<String> = reports.iter().map(|r| format!("n={} ν={} bound {}", r.n, r.nu, r.bound_claimed)).collect();
    Ok(format!("{} censuses: {}", reports.len(), listed.join("; ")))
}

fn c4(reports: &[CensusReport]) -> Result<String> {
    let mut spaces = 0;
    for r in reports {
        ensure(r.all_match_flag && r.classification_asserted, || format!("unmatched maximal space for n={} {}", r.n, r.kind))?;
        ensure(r.flag_spaces_in_census == r.distinct_flag_spaces, || "a flag space is missing from the census".into())?;
        ensure(r.double_ortho_violations == 0, || "double orthogonality failed".into())?;
        spaces += r.count_max_spaces;
    }
    Ok(format!("{spaces} maximal spaces matched to flags"))
}

fn binom2(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

fn c5() -> Result<String> {
    let mut parts = Vec::new();
    for (name, kind) in [
        ("diag:1,-1,0", FormKind::Symmetric),
        ("diag:1,-1,0", FormKind::Alternating),
        ("diag:1,0,0", FormKind::Symmetric),
        ("diag:1,0,0", FormKind::Alternating),
        ("gram-alt:0,1,0;-1,0,0;0,0,0", FormKind::Alternating),
        ("gram-alt:0,1,0;-1,0,0;0,0,0", FormKind::Symmetric),
    ] {
        let f = form("5", name);
        let g = general_max_space(&f, kind)?;
        let (n, r, nu) = (f.n(), f.rank(), g.nu);
        let tail = match kind {
            FormKind::Symmetric => (nu + r - n) * (n - nu),
            _ => (nu + r - n) * (n - nu).saturating_sub(1),
        };
        let want = binom2(n - r) + r * (n - r) + tail;
        ensure(g.space.k_dim() == want, || format!("{name} {kind}: dimension {} expected {want}", g.space.k_dim()))?;
        for m in g.space.basis() {
            ensure(is_of_kind(&m, &f, kind)? && is_nilpotent(&m)?, || format!("{name} {kind}: bad element [{m}]"))?;
        }
        ensure(exhaustive_nilpotent(&g.space, &SearchBudget::default())?, || format!("{name} {kind}: not nilpotent"))?;
        parts.push(format!("{name} {kind} {want}"));
    }
    Ok(parts.join("; "))
}

fn c6() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let fields: Vec<Field> = ["3", "5", "7", "9"].iter().map(|q| field(q)).collect();
    for i in 0..1000 {
        let f = fields[i % fields.len()];
        let n = rng.random_range(1..=5);
        let kmax = 3.min(f.order() as usize - 1);
        let k = rng.random_range(0..=kmax);
        let (a, b, pairs) = random_trace_instance(f, n, k, &mut rng)?;
        ensure(verify_trace_lemma(&a, &b, k, &pairs)?, || format!("tr(a^{k} b) ≠ 0 for a=[{a}], b=[{b}]"))?;
    }
    for i in 0..500 {
        let f = fields[i % fields.len()];
        let n = rng.random_range(1..=5);
        let k = rng.random_range(1..=n);
        let a = Mat::random(f, n, n, &mut rng);
        let b = Mat::random(f, n, n, &mut rng);
        ensure(ck_derivative(&a, &b, k)? == ck_derivative_trace_formula(&a, &b, k)?, || format!("derivative mismatch for a=[{a}], b=[{b}], k={k}"))?;
    }
    Ok("1000 trace instances, 500 derivative checks".into())
}

fn c7() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases = [
        ("3", "hyperbolic:4", FormKind::Symmetric),
        ("3", "Kn:4", FormKind::Alternating),
        ("5", "diag:1,1,1,1,1", FormKind::Symmetric),
        ("5", "Kn:6", FormKind::Symmetric),
        ("9", "hyperbolic-hermitian:3", FormKind::Hermitian),
        ("9", "hdiag:1,1,1,1", FormKind::Hermitian),
    ];
    let spaces: Vec<(Form, MatSubspace)> = cases
        .iter()
        .map(|(q, name, kind)| {
            let f = form(q, name);
            let s = max_space(&f, &maximal_singular_flag(&f)?, *kind)?;
            Ok((f, s))
        })
        .collect::<Result<_>>()?;
    for i in 0..200 {
        let (f, s) = &spaces[i % spaces.len()];
        let coeffs: Vec<Scalar> = (0..s.k_dim()).map(|_| s.scalars().random(&mut rng)).collect();
        let u = s.combine(&coeffs);
        let flag = stable_flag_for(&u, f)?;
        ensure(flag.is_maximal_singular(f)? && flag.is_stabilized_by(&u), || format!("no stable flag for [{u}]"))?;
    }
    Ok("200 random elements".into())
}

fn c8(budget: &SearchBudget) -> Result<String> {
    let h = form("3", "hyperbolic:4");
    let k = form("3", "Kn:4");
    let ws = max_space(&h, &maximal_singular_flag(&h)?, FormKind::Symmetric)?;
    let wa = max_space(&k, &maximal_singular_flag(&k)?, FormKind::Alternating)?;
    ensure(ws.k_dim() <= 9 && wa.k_dim() <= 9, || "spaces too large".into())?;
    ensure(square_stability_check(&ws, &h, budget)?, || "ws not square-stable".into())?;
    ensure(square_stability_check(&wa, &k, budget)?, || "wa not square-stable".into())?;
    let cubes = cube_stability_check(&ws, &h, budget)? && cube_stability_check(&wa, &k, budget)?;
    Ok(format!("squares stable; cubes over GF(3) {} (informational)", if cubes { "stable" } else { "not stable" }))
}

type TensorBuilder = fn(&[Scalar], &[Scalar], &Form) -> Result<Mat>;

fn round_trip(f: &Form, rng: &mut ChaCha8Rng) -> Result<usize> {
    let field = f.field();
    let n = f.n();
    let points: Vec<Vec<Scalar>> = projective_points(field, n).filter(|x| f.eval(x, x).is_zero()).collect();
    let mut done = 0;
    for x in points.iter().take(12) {
        let perp = f.orthogonal(&Mat::column(field, x));
        for _ in 0..4 {
            let c: Vec<Scalar> = (0..perp.cols()).map(|_| field.random(rng)).collect();
            let y = perp.mul_vec(&c);
            let builders: Vec<TensorBuilder> = match f.kind() {
                FormKind::Hermitian => vec![herm_tensor],
                _ => vec![sym_tensor, alt_tensor],
            };
            for build in builders {
                let t = build(x, &y, f)?;
                let y2 = tensor_recognize(&t, x, f)?;
                ensure(build(x, &y2, f)? == t, || format!("tensor round trip failed for x={x:?}"))?;
                ensure(is_zero_vec(&t.mul_vec(x)), || "tensor does not kill x".into())?;
                done += 1;
            }
        }
    }
    Ok(done)
}

fn c9(budget: &SearchBudget) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut found = 0;
    let mut pairs = 0;
    let mut trips = 0;
    let cases = [
        ("3", "hyperbolic:4", FormKind::Symmetric),
        ("3", "hyperbolic:4", FormKind::Alternating),
        ("3", "Kn:4", FormKind::Alternating),
        ("3", "Kn:4", FormKind::Symmetric),
        ("3", "diag:1,-1,1", FormKind::Symmetric),
        ("9", "hyperbolic-hermitian:2", FormKind::Hermitian),
        ("9", "hyperbolic-hermitian:3", FormKind::Hermitian),
        ("9", "hdiag:1,1,1,1", FormKind::Hermitian),
    ];
    for (q, name, kind) in cases {
        let f = form(q, name);
        let s = max_space(&f, &maximal_singular_flag(&f)?, kind)?;
        let sweep = tensor_orthogonality_sweep(&s, &f, budget)?;
        ensure(sweep.failures == 0, || format!("{name} {kind}: {} tensor failures", sweep.failures))?;
        ensure(sweep.tensors_found > 0, || format!("{name} {kind}: no tensors found"))?;
        found += sweep.tensors_found;
        pairs += sweep.pairs_checked;
        trips += round_trip(&f, &mut rng)?;
    }
    Ok(format!("{found} tensors, {pairs} orthogonality pairs, {trips} round trips"))
}

fn c10(budget: &SearchBudget) -> Result<String> {
    let mut parts = Vec::new();
    for name in ["Kn:2", "diag:1,-1"] {
        let r = probe_conjectures(&form("3", name), budget)?;
        ensure(r.bound_holds() && r.max_found <= r.bound_claimed, || format!("{name}: bound violated"))?;
        parts.push(format!("{name} {} bound {} found {} spaces {} all_match_flag {}", r.kind, r.bound_claimed, r.max_found, r.count_max_spaces, r.all_match_flag));
    }
    Ok(parts.join("; "))
}

fn finish(id: usize, start: Instant, r: Result<String>) -> CriterionResult {
    let (passed, detail) = match r {
        Ok(d) => (true, d),
        Err(e) => (false, e.to_string()),
    };
    CriterionResult { id, name: CRITERIA[id - 1], passed, detail, millis: start.elapsed().as_millis() }
}

/// Runs one criterion (1 to 10).
pub fn run_criterion(id: usize, budget: &SearchBudget) -> Result<CriterionResult> {
    let start = Instant::now();
    let r = match id {
        1 => c1(),
        2 => c2(budget),
        3 => census_reports(budget).and_then(|r| c3(&r)),
        4 => census_reports(budget).and_then(|r| c4(&r)),
        5 => c5(),
        6 => c6(),
        7 => c7(),
        8 => c8(budget),
        9 => c9(budget),
        10 => c10(budget),
        _ => return Err(Error::InvalidInput(format!("no criterion {id}"))),
    };
    Ok(finish(id, start, r))
}

/// Runs all ten, sharing the census reports between criteria 3 and 4.
pub fn run_all(budget: &SearchBudget) -> Vec<CriterionResult> {
    let mut out = Vec::new();
    for id in [1, 2] {
        out.push(run_criterion(id, budget).expect("valid id"));
    }
    let start = Instant::now();
    let reports = census_reports(budget);
    match &reports {
        Ok(r) => {
            out.push(finish(3, start, c3(r)));
            out.push(finish(4, Instant::now(), c4(r)));
        }
        Err(e) => {
            out.push(finish(3, start, Err(Error::Internal(e.to_string()))));
            out.push(finish(4, start, Err(Error::Internal(e.to_string()))));
        }
    }
    for id in 5..=10 {
        out.push(run_criterion(id, budget).expect("valid id"));
    }
    out
}

/// Extra check for criterion 3: the d = bound+1 enumeration on its own, for K_4 under A_b.
pub fn k4_above_bound(budget: &SearchBudget) -> Result<u128> {
    let e = enumerate_nilpotent_subspaces(&form("3", "Kn:4"), FormKind::Alternating, 3, budget)?;
    ensure(e.spaces.is_empty(), || format!("{} nilpotent 3-dimensional subspaces of A_b", e.spaces.len()))?;
    Ok(e.visited)
}
