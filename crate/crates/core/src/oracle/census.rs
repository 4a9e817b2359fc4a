use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::exhaustive_nilpotent;
use crate::budget::SearchBudget;
use crate::enumerate::{echelon_patterns, gaussian_binomial, projective_point_count, projective_points};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::flags::Flag;
use crate::forms::{Form, FormKind};
use crate::linalg::{is_nilpotent, Mat};
use crate::nilspaces::{check_pairing, max_space, structured_ambient, theorem_bound};
use crate::subspace::MatSubspace;

pub const CENSUS_SCHEMA_VERSION: u32 = 1;

/// All nilpotent subspaces of one dimension, plus the visit count.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub d: usize,
    pub ambient_dim: usize,
    /// Number of d-dimensional subspaces of the ambient space.
    pub candidates: u128,
    pub visited: u128,
    pub spaces: Vec<MatSubspace>,
}

/// Every d-dimensional nilpotent K-subspace of S_b, A_b or H_b, in canonical order.
///
/// A candidate is nilpotent iff all its projective points are; candidates are the
/// row spaces of reduced echelon matrices over the ambient basis.
pub fn enumerate_nilpotent_subspaces(form: &Form, kind: FormKind, d: usize, budget: &SearchBudget) -> Result<Enumeration> {
    let ambient = structured_ambient(form, kind)?;
    let k = ambient.k_dim();
    let field = form.field();
    let scalars = ambient.scalars();
    let q = scalars.order();
    let candidates = gaussian_binomial(k, d, q);
    budget.check_subspaces(&format!("{d}-dimensional subspaces of a {k}-dimensional space over GF({q})"), candidates)?;
    budget.check_points("nilpotency tests", candidates.saturating_mul(projective_point_count(q, d)))?;

    let amb = ambient.basis();
    let combos: Vec<Vec<Scalar>> = projective_points(scalars, d).collect();
    let n = form.n();
    let tasks: Vec<(usize, u64)> = echelon_patterns(k, d)
        .iter()
        .enumerate()
        .flat_map(|(i, p)| (0..p.count(q) as u64).map(move |j| (i, j)))
        .collect();
    let patterns = echelon_patterns(k, d);

    let found: Vec<Option<MatSubspace>> = budget.install(|| {
        tasks
            .par_iter()
            .map(|&(pi, idx)| -> Result<Option<MatSubspace>> {
                let r = patterns[pi].matrix(scalars, k, idx);
                let gens: Vec<Mat> = (0..d)
                    .map(|i| {
                        let mut acc = Mat::zeros(field, n, n);
                        for (j, b) in amb.iter().enumerate() {
                            let c = r[(i, j)];
                            if !c.is_zero() {
                                acc = &acc + &b.scale(c.embed(field));
                            }
                        }
                        acc
                    })
                    .collect();
                for c in &combos {
                    let mut m = Mat::zeros(field, n, n);
                    for (ci, g) in c.iter().zip(&gens) {
                        if !ci.is_zero() {
                            m = &m + &g.scale(ci.embed(field));
                        }
                    }
                    if !is_nilpotent(&m)? {
                        return Ok(None);
                    }
                }
                Ok(Some(MatSubspace::span(field, scalars, n, &gens)?))
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let visited = found.len() as u128;
    if visited != candidates {
        return Err(Error::Internal(format!("visited {visited} subspaces, expected {candidates}")));
    }
    let mut spaces: Vec<MatSubspace> = found.into_iter().flatten().collect();
    if spaces.iter().any(|s| s.k_dim() != d) {
        return Err(Error::Internal("an echelon candidate had the wrong dimension".into()));
    }
    spaces.sort_by_cached_key(MatSubspace::sort_key);
    Ok(Enumeration { d, ambient_dim: k, candidates, visited, spaces })
}

/// Every maximal b-singular complete flag, deduplicated by its chain of subspaces.
pub fn enumerate_max_flags(form: &Form, budget: &SearchBudget) -> Result<Vec<Flag>> {
    if !form.is_nondegenerate() {
        return Err(Error::Degenerate { rank: form.rank(), n: form.n() });
    }
    let field = form.field();
    let n = form.n();
    let nu = form.witt_index()?;
    budget.check_points("isotropic point search", projective_point_count(field.order(), n))?;
    let points: Vec<Vec<Scalar>> = projective_points(field, n).filter(|x| form.eval(x, x).is_zero()).collect();
    let mut level = vec![Mat::zeros(field, n, 0)];
    for _ in 0..nu {
        budget.check_points("flag extension", (level.len() as u128).saturating_mul(points.len() as u128))?;
        let mut next = Vec::new();
        for (pi, prefix) in level.iter().enumerate() {
            let mut seen = HashSet::new();
            for x in &points {
                if prefix.spans(x) || prefix.columns().iter().any(|c| !form.eval(c, x).is_zero()) {
                    continue;
                }
                let mut cols = prefix.columns();
                cols.push(x.clone());
                let ext = Mat::from_cols(field, n, &cols);
                if seen.insert((pi, ext.col_space_key())) {
                    next.push(ext);
                }
            }
        }
        level = next;
    }
    level.into_iter().map(Flag::new).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CensusLabel {
    #[serde(rename = "THEOREM")]
    Theorem,
    #[serde(rename = "CONJECTURE-PROBE")]
    ConjectureProbe,
}

impl std::fmt::Display for CensusLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CensusLabel::Theorem => "THEOREM",
            CensusLabel::ConjectureProbe => "CONJECTURE-PROBE",
        })
    }
}

/// Result of a full census. Flat so it serializes to one CSV row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub schema_version: u32,
    pub label: CensusLabel,
    pub q: u64,
    pub p: u32,
    pub degree: u32,
    pub n: usize,
    pub form_kind: FormKind,
    pub kind: FormKind,
    pub nu: usize,
    pub ambient_dim: usize,
    pub bound_claimed: usize,
    pub candidates_above_bound: String,
    pub nilpotent_above_bound: usize,
    pub candidates_at_bound: String,
    pub max_found: usize,
    pub count_max_spaces: usize,
    pub flags_enumerated: usize,
    pub distinct_flag_spaces: usize,
    pub flag_spaces_in_census: usize,
    pub all_match_flag: bool,
    pub classification_asserted: bool,
    pub soundness_rechecked: bool,
    pub double_ortho_orthogonal: usize,
    pub double_ortho_violations: usize,
    pub budget_point_evals: String,
    pub budget_subspaces: String,
    pub workers: usize,
}

impl CensusReport {
    /// No nilpotent subspace above the bound.
    pub fn bound_holds(&self) -> bool {
        self.nilpotent_above_bound == 0
    }

    /// Every assertion that applies to this census held.
    pub fn passed(&self) -> bool {
        self.bound_holds()
            && self.max_found == self.bound_claimed
            && self.soundness_rechecked
            && self.flag_spaces_in_census == self.distinct_flag_spaces
            && (!self.classification_asserted || self.all_match_flag)
            && self.double_ortho_violations == 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["passed"] = self.passed().into();
        v
    }

    /// Header plus one row per report, stable column order.
    pub fn to_csv(reports: &[CensusReport]) -> Result<String> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.write_record(Self::csv_header()).map_err(|e| Error::Internal(e.to_string()))?;
        for r in reports {
            w.serialize(r).map_err(|e| Error::Internal(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn csv_header() -> Vec<&'static str> {
        vec![
            "schema_version",
            "label",
            "q",
            "p",
            "degree",
            "n",
            "form_kind",
            "kind",
            "nu",
            "ambient_dim",
            "bound_claimed",
            "candidates_above_bound",
            "nilpotent_above_bound",
            "candidates_at_bound",
            "max_found",
            "count_max_spaces",
            "flags_enumerated",
            "distinct_flag_spaces",
            "flag_spaces_in_census",
            "all_match_flag",
            "classification_asserted",
            "soundness_rechecked",
            "double_ortho_orthogonal",
            "double_ortho_violations",
            "budget_point_evals",
            "budget_subspaces",
            "workers",
        ]
    }
}

fn matching_pair(form: FormKind, kind: FormKind) -> bool {
    form == kind
}

/// Bound and classification census for one form and kind.
pub fn verify_bound_and_classify(form: &Form, kind: FormKind, budget: &SearchBudget) -> Result<CensusReport> {
    let label = if matching_pair(form.kind(), kind) { CensusLabel::Theorem } else { CensusLabel::ConjectureProbe };
    census(form, kind, label, budget)
}

/// The census for the open pairings: S_b under an alternating form, A_b under a symmetric one.
pub fn probe_conjectures(form: &Form, budget: &SearchBudget) -> Result<CensusReport> {
    let kind = match form.kind() {
        FormKind::Alternating => FormKind::Symmetric,
        FormKind::Symmetric => FormKind::Alternating,
        FormKind::Hermitian => return Err(Error::KindMismatch("probes need a symmetric or alternating form".into())),
    };
    census(form, kind, CensusLabel::ConjectureProbe, budget)
}

fn census(form: &Form, kind: FormKind, label: CensusLabel, budget: &SearchBudget) -> Result<CensusReport> {
    check_pairing(form, kind)?;
    if !form.is_nondegenerate() {
        return Err(Error::Degenerate { rank: form.rank(), n: form.n() });
    }
    let field = form.field();
    let n = form.n();
    let nu = form.witt_index()?;
    let bound = theorem_bound(kind, n, nu);

    let above = enumerate_nilpotent_subspaces(form, kind, bound + 1, budget)?;
    let at = enumerate_nilpotent_subspaces(form, kind, bound, budget)?;
    let max_found = if !above.spaces.is_empty() {
        bound + 1
    } else if !at.spaces.is_empty() {
        bound
    } else {
        let mut d = bound;
        loop {
            d -= 1;
            if d == 0 || !enumerate_nilpotent_subspaces(form, kind, d, budget)?.spaces.is_empty() {
                break d;
            }
        }
    };

    let mut soundness = true;
    for s in above.spaces.iter().chain(&at.spaces) {
        soundness &= exhaustive_nilpotent(s, budget)?;
    }

    let flags = enumerate_max_flags(form, budget)?;
    let flag_spaces: HashSet<MatSubspace> = flags.iter().map(|fl| max_space(form, fl, kind)).collect::<Result<_>>()?;
    let census_set: HashSet<&MatSubspace> = at.spaces.iter().collect();
    let flag_spaces_in_census = flag_spaces.iter().filter(|s| census_set.contains(s)).count();
    let all_match_flag = max_found == bound && at.spaces.iter().all(|s| flag_spaces.contains(s));
    let classification_asserted = label == CensusLabel::Theorem && (kind != FormKind::Hermitian || field.order() > 4);

    let (mut orthogonal, mut violations) = (0, 0);
    if label == CensusLabel::Theorem && max_found == bound {
        let siblings: Vec<Mat> = at.spaces.iter().flat_map(|s| s.basis()).collect();
        for space in at.spaces.iter().take(8) {
            let basis = space.basis();
            for c in &siblings {
                if basis.iter().all(|u| (u * c).trace().is_zero()) && is_nilpotent(c)? {
                    orthogonal += 1;
                    if !space.contains(c) {
                        violations += 1;
                    }
                }
            }
        }
    }

    Ok(CensusReport {
        schema_version: CENSUS_SCHEMA_VERSION,
        label,
        q: field.order(),
        p: field.characteristic(),
        degree: field.degree(),
        n,
        form_kind: form.kind(),
        kind,
        nu,
        ambient_dim: at.ambient_dim,
        bound_claimed: bound,
        candidates_above_bound: above.candidates.to_string(),
        nilpotent_above_bound: above.spaces.len(),
        candidates_at_bound: at.candidates.to_string(),
        max_found,
        count_max_spaces: if max_found == bound { at.spaces.len() } else { above.spaces.len() },
        flags_enumerated: flags.len(),
        distinct_flag_spaces: flag_spaces.len(),
        flag_spaces_in_census,
        all_match_flag,
        classification_asserted,
        soundness_rechecked: soundness,
        double_ortho_orthogonal: orthogonal,
        double_ortho_violations: violations,
        budget_point_evals: budget.max_point_evals.to_string(),
        budget_subspaces: budget.max_subspaces.to_string(),
        workers: budget.workers,
    })
}
