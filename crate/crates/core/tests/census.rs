use nilspace::oracle::{enumerate_max_flags, enumerate_nilpotent_subspaces, probe_conjectures, verify_bound_and_classify, CensusLabel, CensusReport};
use nilspace::{named_form, Field, FormKind, SearchBudget};

fn gf(q: &str) -> Field {
    Field::parse(q).unwrap()
}

#[test]
fn hyperbolic_plane_lines() {
    let b = SearchBudget::default();
    let h = named_form(gf("3"), "hyperbolic:2").unwrap();
    assert!(enumerate_nilpotent_subspaces(&h, FormKind::Symmetric, 2, &b).unwrap().spaces.is_empty());
    let lines = enumerate_nilpotent_subspaces(&h, FormKind::Symmetric, 1, &b).unwrap();
    assert_eq!((lines.candidates, lines.visited, lines.spaces.len()), (13, 13, 2));
    for s in &lines.spaces {
        assert!(nilspace::oracle::exhaustive_nilpotent(s, &b).unwrap());
    }
}

#[test]
fn diag_census_counts() {
    let b = SearchBudget::default();
    let f = named_form(gf("3"), "diag:1,-1,1").unwrap();
    let above = enumerate_nilpotent_subspaces(&f, FormKind::Symmetric, 3, &b).unwrap();
    assert_eq!((above.candidates, above.spaces.len()), (33880, 0));
    let r = verify_bound_and_classify(&f, FormKind::Symmetric, &b).unwrap();
    assert_eq!((r.nu, r.bound_claimed, r.max_found, r.candidates_at_bound.as_str()), (1, 2, 2, "11011"));
    assert_eq!((r.flags_enumerated, r.distinct_flag_spaces, r.count_max_spaces), (4, 4, 4));
    assert!(r.all_match_flag && r.classification_asserted && r.passed());
    assert!(r.double_ortho_orthogonal > 0);
}

#[test]
fn hermitian_census() {
    let b = SearchBudget::default();
    let f = named_form(gf("9"), "hyperbolic-hermitian:2").unwrap();
    let r = verify_bound_and_classify(&f, FormKind::Hermitian, &b).unwrap();
    assert_eq!((r.ambient_dim, r.bound_claimed, r.candidates_above_bound.as_str()), (4, 1, "130"));
    assert_eq!(r.flags_enumerated, 4);
    assert!(r.classification_asserted && r.all_match_flag && r.passed());
    let d = named_form(gf("9"), "hdiag:1,1").unwrap();
    assert!(verify_bound_and_classify(&d, FormKind::Hermitian, &b).unwrap().passed());
}

#[test]
fn flags_of_k4() {
    let b = SearchBudget::default();
    let flags = enumerate_max_flags(&named_form(gf("3"), "Kn:4").unwrap(), &b).unwrap();
    assert_eq!(flags.len(), 160);
    let tops: std::collections::HashSet<_> = flags.iter().map(|f| f.basis().col_space_key()).collect();
    assert_eq!(tops.len(), 40);
}

#[test]
fn probes_are_labelled_and_budgeted() {
    let b = SearchBudget::default();
    let r = probe_conjectures(&named_form(gf("3"), "Kn:2").unwrap(), &b).unwrap();
    assert_eq!(r.label, CensusLabel::ConjectureProbe);
    assert_eq!(serde_json::to_value(&r).unwrap()["label"], "CONJECTURE-PROBE");
    assert!(r.bound_holds());
    let err = probe_conjectures(&named_form(gf("3"), "Kn:4").unwrap(), &b).unwrap_err();
    assert!(err.is_budget());
    assert!(probe_conjectures(&named_form(gf("9"), "hdiag:1,1").unwrap(), &b).is_err());
    let tiny = SearchBudget::new(1_000_000, 5, 1).unwrap();
    assert!(verify_bound_and_classify(&named_form(gf("3"), "diag:1,-1,1").unwrap(), FormKind::Symmetric, &tiny).unwrap_err().is_budget());
}

#[test]
fn census_is_worker_independent() {
    let f = named_form(gf("3"), "diag:1,1,1").unwrap();
    let one = verify_bound_and_classify(&f, FormKind::Symmetric, &SearchBudget::new(10_000_000, 1_000_000, 1).unwrap()).unwrap();
    let four = verify_bound_and_classify(&f, FormKind::Symmetric, &SearchBudget::new(10_000_000, 1_000_000, 4).unwrap()).unwrap();
    let strip = |r: &CensusReport| CensusReport { workers: 0, ..r.clone() };
    assert_eq!(strip(&one), strip(&four));
    let e1 = enumerate_nilpotent_subspaces(&f, FormKind::Symmetric, 2, &SearchBudget::new(10_000_000, 1_000_000, 1).unwrap()).unwrap();
    let e4 = enumerate_nilpotent_subspaces(&f, FormKind::Symmetric, 2, &SearchBudget::new(10_000_000, 1_000_000, 4).unwrap()).unwrap();
    assert_eq!(e1.spaces, e4.spaces);
}
