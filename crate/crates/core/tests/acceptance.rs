use nilspace::acceptance::{census_reports, k4_above_bound, run_criterion, CRITERIA};
use nilspace::SearchBudget;

fn check(id: usize) {
    let r = run_criterion(id, &SearchBudget::default()).unwrap();
    println!("{r} [{} ms]", r.millis);
    assert!(r.passed, "{r}");
}

#[test]
fn criterion_01_construction_dimensions() {
    check(1);
}

#[test]
fn criterion_02_exhaustive_nilpotency() {
    check(2);
}

#[test]
fn criterion_03_bound_censuses() {
    check(3);
    assert_eq!(k4_above_bound(&SearchBudget::default()).unwrap(), 33880);
}

#[test]
fn criterion_04_classification_censuses() {
    check(4);
    let reports = census_reports(&SearchBudget::default()).unwrap();
    let by_name: Vec<(usize, usize, usize, usize)> =
        reports.iter().map(|r| (r.n, r.nu, r.bound_claimed, r.count_max_spaces)).collect();
    // diag(1,-1,1): 4 isotropic lines, one space per line
    assert!(by_name.contains(&(3, 1, 2, 4)));
    // K_4 under A_b: 40 Lagrangians
    let k4 = reports.iter().find(|r| r.n == 4).unwrap();
    assert_eq!((k4.flags_enumerated, k4.bound_claimed), (160, 2));
    assert!(k4.passed());
}

#[test]
fn criterion_05_degenerate_forms() {
    check(5);
}

#[test]
fn criterion_06_trace_identities() {
    check(6);
}

#[test]
fn criterion_07_stable_flags() {
    check(7);
}

#[test]
fn criterion_08_square_stability() {
    check(8);
}

#[test]
fn criterion_09_tensor_suite() {
    check(9);
}

#[test]
fn criterion_10_conjecture_probes() {
    check(10);
}

#[test]
fn criteria_are_numbered() {
    assert_eq!(CRITERIA.len(), 10);
}
