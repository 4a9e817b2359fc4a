//! Job descriptions, their execution, and CSV tables over many jobs.

use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use nilspace::acceptance::{run_all, CriterionResult};
use nilspace::flags::{maximal_singular_flag, stable_flag_for, strongly_adapted_basis};
use nilspace::nilspaces::{
    cube_stability_check, general_formula, general_max_space, is_of_kind, max_space, max_space_with,
    square_stability_check, theorem_bound,
};
use nilspace::oracle::{
    enumerate_nilpotent_subspaces, exhaustive_nilpotent, probe_conjectures, tensor_orthogonality_sweep, verify_bound_and_classify,
    CensusReport,
};
use nilspace::{named_form, Error, Field, Form, FormKind, SearchBudget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Construct,
    Verify,
    Census,
    Probe,
    Selftest,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

/// One unit of work. Optional fields fall back to defaults when resolved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: Command,
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(default)]
    pub form: Option<String>,
    #[serde(default)]
    pub kind: Option<FormKind>,
    #[serde(default)]
    pub dim: Option<usize>,
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default)]
    pub budget: Option<u64>,
    #[serde(default)]
    pub subspace_budget: Option<u64>,
    #[serde(default)]
    pub workers: Option<usize>,
}

fn default_field() -> String {
    "3".into()
}

impl JobSpec {
    pub fn new(command: Command, field: &str, form: Option<&str>) -> JobSpec {
        JobSpec {
            command,
            field: field.into(),
            form: form.map(Into::into),
            kind: None,
            dim: None,
            format: OutputFormat::Json,
            budget: None,
            subspace_budget: None,
            workers: None,
        }
    }

    pub fn with_kind(mut self, kind: FormKind) -> JobSpec {
        self.kind = Some(kind);
        self
    }
}

/// Exit status; the discriminant is the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Passed = 0,
    AssertionFailed = 1,
    BudgetRefused = 2,
    BadInput = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn of_error(e: &Error) -> Status {
        match e {
            Error::BudgetExceeded { .. } => Status::BudgetRefused,
            Error::Internal(_) => Status::AssertionFailed,
            _ => Status::BadInput,
        }
    }

    fn worst(self, other: Status) -> Status {
        if other.code() > self.code() {
            other
        } else {
            self
        }
    }
}

/// The fully resolved job, echoed into every report.
#[derive(Clone, Debug, Serialize)]
pub struct ResolvedJob {
    pub command: Command,
    pub field: Value,
    pub form: Option<String>,
    pub kind: Option<FormKind>,
    pub dim: Option<usize>,
    pub format: OutputFormat,
    pub budget: SearchBudget,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub report: Value,
    pub csv: String,
    pub text: String,
}

impl Outcome {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(&self.report).expect("report serializes") + "\n",
            OutputFormat::Csv => self.csv.clone(),
            OutputFormat::Text => self.text.clone(),
        }
    }
}

pub fn resolve_budget(job: &JobSpec) -> Result<SearchBudget, Error> {
    let d = SearchBudget::default();
    SearchBudget::new(
        job.budget.map_or(d.max_point_evals, u128::from),
        job.subspace_budget.map_or(d.max_subspaces, u128::from),
        job.workers.unwrap_or(d.workers),
    )
}

fn resolve(job: &JobSpec) -> Result<(ResolvedJob, Field, Option<Form>), Error> {
    let field = Field::parse(&job.field)?;
    let budget = resolve_budget(job)?;
    let form = job.form.as_deref().map(|name| named_form(field, name)).transpose()?;
    let kind = match (&form, job.kind) {
        (_, Some(k)) => Some(k),
        (Some(f), None) => Some(f.kind()),
        (None, None) => None,
    };
    let resolved = ResolvedJob {
        command: job.command,
        field: json!({"p": field.characteristic(), "degree": field.degree(), "q": field.order()}),
        form: job.form.clone(),
        kind,
        dim: job.dim,
        format: job.format,
        budget,
    };
    Ok((resolved, field, form))
}

fn need_form(form: &Option<Form>) -> Result<&Form, Error> {
    form.as_ref().ok_or_else(|| Error::InvalidInput("this command needs --form".into()))
}

/// Expression of the dimension formula for a form of rank `r` on `n` dimensions.
pub fn formula_expression(kind: FormKind, degenerate: bool) -> &'static str {
    match (kind, degenerate) {
        (FormKind::Symmetric, false) => "ν(n−ν)",
        (FormKind::Alternating, false) => "ν(n−ν−1)",
        (FormKind::Hermitian, _) => "ν(2n−2ν−1)",
        (FormKind::Symmetric, true) => "C(n−r,2)+r(n−r)+(ν−n+r)(n−ν)",
        (FormKind::Alternating, true) => "C(n−r,2)+r(n−r)+(ν−n+r)(n−ν−1)",
    }
}

/// `(n, r, ν)` of a form; ν counts the radical for degenerate forms.
fn invariants(form: &Form, budget: &SearchBudget) -> Result<(usize, usize, usize), Error> {
    let w = form.witt_decompose_general(budget)?;
    Ok((form.n(), form.rank(), w.nu))
}

fn form_summary(form: &Form, budget: &SearchBudget) -> Result<Value, Error> {
    let (n, r, nu) = invariants(form, budget)?;
    Ok(json!({"n": n, "r": r, "nu": nu, "kind": form.kind(), "gram": form.gram().to_json()}))
}

fn claimed(form: &Form, kind: FormKind, budget: &SearchBudget) -> Result<(usize, &'static str), Error> {
    let (n, r, nu) = invariants(form, budget)?;
    let degenerate = r < n;
    let value = if degenerate { general_formula(kind, n, r, nu) } else { theorem_bound(kind, n, nu) };
    Ok((value, formula_expression(kind, degenerate)))
}

fn csv_of<T: Serialize>(rows: &[T], header: &[&str]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.serialize(r).expect("flat rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

#[derive(Serialize)]
struct ConstructRow<'a> {
    q: u64,
    n: usize,
    r: usize,
    nu: usize,
    kind: FormKind,
    formula: &'a str,
    claimed: usize,
    k_dim: usize,
}

fn construct(resolved: &ResolvedJob, form: &Form, kind: FormKind) -> Result<Outcome, Error> {
    let b = &resolved.budget;
    let (n, r, nu) = invariants(form, b)?;
    let (value, expr) = claimed(form, kind, b)?;
    let (space, extra) = if r == n {
        let flag = maximal_singular_flag(form)?;
        let s = max_space(form, &flag, kind)?;
        (s, json!({"flag": flag.to_json()}))
    } else {
        let g = general_max_space(form, kind)?;
        (g.space, json!({"basis": g.basis.to_json()}))
    };
    let status = if space.k_dim() == value { Status::Passed } else { Status::AssertionFailed };
    let report = json!({
        "job": resolved,
        "form": form_summary(form, b)?,
        "formula": {"expression": expr, "value": value},
        "k_dim": space.k_dim(),
        "space": space.to_json(),
        "construction": extra,
        "status": status,
    });
    let row = ConstructRow { q: form.field().order(), n, r, nu, kind, formula: expr, claimed: value, k_dim: space.k_dim() };
    let csv = csv_of(&[row], &["q", "n", "r", "nu", "kind", "formula", "claimed", "k_dim"]);
    let text = format!(
        "{kind} space over GF({}) for n={n} r={r} ν={nu}\nformula {expr} = {value}\nconstructed k_dim {}\nbasis:\n{}\n",
        form.field().order(),
        space.k_dim(),
        space.basis().iter().map(|m| format!("  {m}")).collect::<Vec<_>>().join("\n")
    );
    Ok(Outcome { status, report, csv, text })
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: &'static str,
    pub detail: String,
}

fn check(name: &'static str, r: Result<(bool, String), Error>) -> Check {
    match r {
        Ok((true, d)) => Check { name, status: "pass", detail: d },
        Ok((false, d)) => Check { name, status: "fail", detail: d },
        Err(e @ Error::BudgetExceeded { .. }) => Check { name, status: "skipped", detail: e.to_string() },
        Err(e) => Check { name, status: "fail", detail: e.to_string() },
    }
}

fn verify_checks(form: &Form, kind: FormKind, budget: &SearchBudget) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check(
        "witt decomposition",
        form.witt_decompose_general(budget).map(|w| (true, format!("ν={} rank={}", w.nu, w.rank))),
    ));
    if !form.is_nondegenerate() {
        out.push(check(
            "general construction",
            general_max_space(form, kind).and_then(|g| {
                let mut ok = g.space.k_dim() == g.formula;
                for m in g.space.basis() {
                    ok &= is_of_kind(&m, form, kind)?;
                }
                let nilpotent = exhaustive_nilpotent(&g.space, budget)?;
                Ok((ok && nilpotent, format!("k_dim {} formula {}", g.space.k_dim(), g.formula)))
            }),
        ));
        return out;
    }
    let flag = match maximal_singular_flag(form) {
        Ok(f) => f,
        Err(e) => {
            out.push(check("maximal singular flag", Err(e)));
            return out;
        }
    };
    out.push(check("maximal singular flag", flag.is_maximal_singular(form).map(|ok| (ok, format!("length {}", flag.len())))));
    out.push(check(
        "strongly adapted basis",
        strongly_adapted_basis(form, &flag).map(|ab| {
            let ok = form.gram_in(&ab.basis) == ab.gram(form.epsilon()) && ab.q.is_zero();
            (ok, format!("ν={} p={}", ab.nu, ab.p_block))
        }),
    ));
    let space = match max_space(form, &flag, kind) {
        Ok(s) => s,
        Err(e) => {
            out.push(check("construction", Err(e)));
            return out;
        }
    };
    out.push(check(
        "construction",
        max_space_with(form, &flag, kind, false).map(|plain| {
            let want = theorem_bound(kind, form.n(), flag.len());
            (space.k_dim() == want && plain == space, format!("k_dim {} formula {} = {want}", space.k_dim(), formula_expression(kind, false)))
        }),
    ));
    out.push(check(
        "exhaustive nilpotency",
        exhaustive_nilpotent(&space, budget).map(|ok| (ok, format!("{} elements", space.cardinality()))),
    ));
    if kind == form.kind() && kind != FormKind::Hermitian {
        out.push(check("square stability", square_stability_check(&space, form, budget).map(|ok| (ok, String::new()))));
        let asserted = form.field().order() > 3;
        let cube = check("cube stability", cube_stability_check(&space, form, budget).map(|ok| (ok || !asserted, if asserted { String::new() } else { format!("informational over GF(3): {ok}") })));
        out.push(cube);
    }
    if kind == form.kind() {
        out.push(check(
            "tensor orthogonality",
            tensor_orthogonality_sweep(&space, form, budget).map(|s| (s.failures == 0, format!("{} tensors, {} pairs", s.tensors_found, s.pairs_checked))),
        ));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    out.push(check(
        "stable flags",
        (|| {
            for _ in 0..20 {
                let c: Vec<_> = (0..space.k_dim()).map(|_| space.scalars().random(&mut rng)).collect();
                let u = space.combine(&c);
                let fl = stable_flag_for(&u, form)?;
                if !(fl.is_maximal_singular(form)? && fl.is_stabilized_by(&u) && is_of_kind(&u, form, kind)?) {
                    return Ok((false, format!("element [{u}]")));
                }
            }
            Ok((true, "20 random elements".into()))
        })(),
    ));
    out
}

fn verify(resolved: &ResolvedJob, form: &Form, kind: FormKind) -> Result<Outcome, Error> {
    let b = &resolved.budget;
    let (value, expr) = claimed(form, kind, b)?;
    let checks = verify_checks(form, kind, b);
    let status = if checks.iter().all(|c| c.status != "fail") { Status::Passed } else { Status::AssertionFailed };
    let report = json!({
        "job": resolved,
        "form": form_summary(form, b)?,
        "formula": {"expression": expr, "value": value},
        "checks": checks,
        "status": status,
    });
    let csv = csv_of(&checks, &["name", "status", "detail"]);
    let mut text = format!("formula {expr} = {value}\n");
    for c in &checks {
        text += &format!("[{}] {}: {}\n", c.status.to_uppercase(), c.name, c.detail);
    }
    Ok(Outcome { status, report, csv, text })
}

fn census_outcome(resolved: &ResolvedJob, form: &Form, r: CensusReport, status: Status) -> Result<Outcome, Error> {
    let (value, expr) = claimed(form, r.kind, &resolved.budget)?;
    let report = json!({
        "job": resolved,
        "form": form_summary(form, &resolved.budget)?,
        "formula": {"expression": expr, "value": value},
        "census": r.to_json(),
        "status": status,
    });
    let csv = CensusReport::to_csv(std::slice::from_ref(&r))?;
    let text = format!(
        "{} census over GF({}) n={} ν={} kind={}\nbound {expr} = {}\nnilpotent subspaces of dimension {}: {}\nmaximum found {} ({} spaces)\nflags {} distinct flag spaces {} all_match_flag {}\n",
        r.label, r.q, r.n, r.nu, r.kind, r.bound_claimed, r.bound_claimed + 1, r.nilpotent_above_bound, r.max_found, r.count_max_spaces,
        r.flags_enumerated, r.distinct_flag_spaces, r.all_match_flag
    );
    Ok(Outcome { status, report, csv, text })
}

#[derive(Serialize)]
struct EnumRow {
    d: usize,
    ambient_dim: usize,
    candidates: String,
    visited: String,
    nilpotent: usize,
    bound: usize,
}

fn census_at_dim(resolved: &ResolvedJob, form: &Form, kind: FormKind, d: usize) -> Result<Outcome, Error> {
    let b = &resolved.budget;
    let e = enumerate_nilpotent_subspaces(form, kind, d, b)?;
    let (bound, expr) = claimed(form, kind, b)?;
    let status = if d > bound && !e.spaces.is_empty() { Status::AssertionFailed } else { Status::Passed };
    let row = EnumRow { d, ambient_dim: e.ambient_dim, candidates: e.candidates.to_string(), visited: e.visited.to_string(), nilpotent: e.spaces.len(), bound };
    let report = json!({
        "job": resolved,
        "form": form_summary(form, b)?,
        "formula": {"expression": expr, "value": bound},
        "enumeration": &row,
        "spaces": e.spaces.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
        "status": status,
    });
    let csv = csv_of(&[&row], &["d", "ambient_dim", "candidates", "visited", "nilpotent", "bound"]);
    let text = format!("{} nilpotent subspaces of dimension {d} among {} candidates (bound {expr} = {bound})\n", e.spaces.len(), e.candidates);
    Ok(Outcome { status, report, csv, text })
}

fn selftest(resolved: &ResolvedJob) -> Outcome {
    let results: Vec<CriterionResult> = run_all(&resolved.budget);
    let status = if results.iter().all(|r| r.passed) { Status::Passed } else { Status::AssertionFailed };
    let report = json!({"job": resolved, "criteria": results, "status": status});
    let csv = csv_of(&results.iter().map(|r| (r.id, r.name, r.passed, &r.detail)).collect::<Vec<_>>(), &["id", "name", "passed", "detail"]);
    let text = results.iter().map(|r| format!("{r}\n")).collect();
    Outcome { status, report, csv, text }
}

fn dispatch(job: &JobSpec) -> Result<Outcome, (Option<Box<ResolvedJob>>, Error)> {
    let (resolved, _, form) = resolve(job).map_err(|e| (None, e))?;
    let wrap = |e: Error| (Some(Box::new(resolved.clone())), e);
    if job.command == Command::Selftest {
        return Ok(selftest(&resolved));
    }
    let form = need_form(&form).map_err(wrap)?;
    let kind = resolved.kind.unwrap_or(form.kind());
    match job.command {
        Command::Construct => construct(&resolved, form, kind),
        Command::Verify => verify(&resolved, form, kind),
        Command::Census => match job.dim {
            Some(d) => census_at_dim(&resolved, form, kind, d),
            None => verify_bound_and_classify(form, kind, &resolved.budget).and_then(|r| {
                let s = if r.passed() { Status::Passed } else { Status::AssertionFailed };
                census_outcome(&resolved, form, r, s)
            }),
        },
        Command::Probe => probe_conjectures(form, &resolved.budget).and_then(|r| {
            let s = if r.bound_holds() && r.max_found <= r.bound_claimed { Status::Passed } else { Status::AssertionFailed };
            census_outcome(&resolved, form, r, s)
        }),
        Command::Selftest => unreachable!(),
    }
    .map_err(wrap)
}

/// Runs one job. Errors become reports too, with the matching status.
pub fn run(job: &JobSpec) -> Outcome {
    match dispatch(job) {
        Ok(o) => o,
        Err((resolved, e)) => {
            let status = Status::of_error(&e);
            let echo = match resolved {
                Some(r) => serde_json::to_value(*r).expect("job serializes"),
                None => serde_json::to_value(job).expect("job serializes"),
            };
            let report = json!({"job": echo, "error": e.to_string(), "status": status});
            Outcome { status, csv: format!("status,error\n{},\"{}\"\n", status.code(), e.to_string().replace('"', "'")), text: format!("error: {e}\n"), report }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub q: String,
    pub n: String,
    pub r: String,
    pub nu: String,
    pub form: String,
    pub kind: String,
    pub formula: String,
    pub claimed: String,
    pub constructed: String,
    pub census: String,
    pub status: String,
    pub error: String,
}

pub const TABLE_HEADER: [&str; 12] = ["q", "n", "r", "nu", "form", "kind", "formula", "claimed", "constructed", "census", "status", "error"];

fn table_row(job: &JobSpec) -> TableRow {
    let mut row = TableRow { form: job.form.clone().unwrap_or_default(), ..Default::default() };
    let mut inner = || -> Result<(), Error> {
        let (resolved, field, form) = resolve(job)?;
        row.q = field.order().to_string();
        let form = need_form(&form)?;
        let kind = resolved.kind.unwrap_or(form.kind());
        row.kind = kind.to_string();
        let (n, r, nu) = invariants(form, &resolved.budget)?;
        (row.n, row.r, row.nu) = (n.to_string(), r.to_string(), nu.to_string());
        let (value, expr) = claimed(form, kind, &resolved.budget)?;
        row.formula = expr.into();
        row.claimed = value.to_string();
        let o = construct(&resolved, form, kind)?;
        row.constructed = o.report["k_dim"].to_string();
        row.census = if job.command == Command::Census {
            match verify_bound_and_classify(form, kind, &resolved.budget) {
                Ok(c) if c.passed() => "pass".into(),
                Ok(_) => "fail".into(),
                Err(e) if e.is_budget() => "budget".into(),
                Err(e) => return Err(e),
            }
        } else {
            "not run".into()
        };
        Ok(())
    };
    match inner() {
        Ok(()) => {
            let ok = row.claimed == row.constructed && row.census != "fail";
            row.status = if ok { "ok" } else { "fail" }.into();
        }
        Err(e) => {
            row.status = "error".into();
            row.error = e.to_string();
        }
    }
    row
}

/// One row per job, in job order. The status is nonzero if any row failed.
pub fn table(jobs: &[JobSpec]) -> (Status, String) {
    let rows: Vec<TableRow> = jobs.iter().map(table_row).collect();
    let status = rows.iter().fold(Status::Passed, |s, r| s.worst(if r.status == "ok" { Status::Passed } else { Status::AssertionFailed }));
    (status, csv_of(&rows, &TABLE_HEADER))
}

fn non_square(f: Field) -> i64 {
    (1..f.order() as i64).find(|&a| !f.elements().any(|b| b * b == f.from_int(a))).expect("odd q")
}

/// Built-in job lists: `diag` (q ∈ {3,5}, diagonal forms n ≤ 4, both kinds) and
/// `degenerate` (the same plus forms with a radical).
pub fn sweep(name: &str) -> Result<Vec<JobSpec>, Error> {
    let mut jobs = Vec::new();
    for q in ["3", "5"] {
        let c = non_square(Field::parse(q)?);
        for n in 1..=4 {
            let ones = vec!["1".to_string(); n];
            let mut twisted = ones.clone();
            twisted[n - 1] = c.to_string();
            let mut forms = vec![ones, twisted];
            if name == "degenerate" {
                let mut rad = vec!["1".to_string(); n];
                rad[n - 1] = "0".into();
                forms.push(rad);
                if n >= 2 {
                    forms.push((0..n).map(|i| if i == 0 { "1" } else { "0" }.to_string()).collect());
                }
            } else if name != "diag" {
                return Err(Error::InvalidInput(format!("unknown sweep '{name}' (diag, degenerate)")));
            }
            forms.dedup();
            for d in forms {
                for kind in [FormKind::Symmetric, FormKind::Alternating] {
                    jobs.push(JobSpec::new(Command::Construct, q, Some(&format!("diag:{}", d.join(",")))).with_kind(kind));
                }
            }
        }
    }
    Ok(jobs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_is_header_only() {
        let (status, csv) = table(&[]);
        assert_eq!(status, Status::Passed);
        assert_eq!(csv, TABLE_HEADER.join(",") + "\n");
    }

    #[test]
    fn sweeps_construct_the_claimed_dimension() {
        for name in ["diag", "degenerate"] {
            let (status, csv) = table(&sweep(name).unwrap());
            assert_eq!(status, Status::Passed, "{csv}");
        }
        let (_, csv) = table(&sweep("degenerate").unwrap());
        assert!(csv.contains("C(n−r,2)+r(n−r)+(ν−n+r)(n−ν)"));
        assert!(sweep("other").is_err());
    }

    #[test]
    fn failing_rows_are_annotated() {
        let jobs = vec![
            JobSpec::new(Command::Construct, "5", Some("hyperbolic:2")),
            JobSpec::new(Command::Construct, "5", Some("nonsense:2")),
        ];
        let (status, csv) = table(&jobs);
        assert_eq!(status, Status::AssertionFailed);
        let rows: Vec<&str> = csv.lines().collect();
        assert!(rows[1].contains(",ok,"));
        assert!(rows[2].contains(",error,") && rows[2].contains("unknown form name"));
    }

    #[test]
    fn job_specs_parse_with_defaults() {
        let job: JobSpec = serde_json::from_str(r#"{"command":"construct","form":"Kn:4"}"#).unwrap();
        assert_eq!(job, JobSpec::new(Command::Construct, "3", Some("Kn:4")));
        let job: JobSpec = serde_json::from_str(r#"{"command":"census","field":"3,2","form":"hdiag:1,1","kind":"hermitian","budget":100}"#).unwrap();
        assert_eq!((job.kind, job.budget), (Some(FormKind::Hermitian), Some(100)));
    }

    #[test]
    fn reports_echo_job_and_invariants() {
        let o = run(&JobSpec::new(Command::Construct, "5", Some("hyperbolic:4")).with_kind(FormKind::Symmetric));
        assert_eq!(o.status, Status::Passed);
        assert_eq!(o.report["k_dim"], 4);
        assert_eq!(o.report["form"]["nu"], 2);
        assert_eq!(o.report["formula"]["expression"], "ν(n−ν)");
        assert_eq!(o.report["job"]["field"]["q"], 5);
        let d = run(&JobSpec::new(Command::Construct, "5", Some("diag:1,-1,0")));
        assert_eq!((d.report["k_dim"].as_u64(), d.report["form"]["r"].as_u64()), (Some(3), Some(2)));
    }

    #[test]
    fn statuses_are_distinct() {
        let bad = run(&JobSpec::new(Command::Construct, "3", Some("Kn:3")));
        assert_eq!(bad.status, Status::BadInput);
        let missing = run(&JobSpec::new(Command::Verify, "3", None));
        assert_eq!(missing.status, Status::BadInput);
        let over = run(&JobSpec::new(Command::Probe, "3", Some("Kn:4")));
        assert_eq!(over.status, Status::BudgetRefused);
        assert_eq!([Status::Passed, Status::AssertionFailed, Status::BudgetRefused, Status::BadInput].map(Status::code), [0, 1, 2, 3]);
    }

    #[test]
    fn identical_jobs_give_identical_reports() {
        let mut job = JobSpec::new(Command::Census, "3", Some("diag:1,-1,1"));
        job.workers = Some(2);
        let a = run(&job).render(OutputFormat::Json);
        let b = run(&job).render(OutputFormat::Json);
        assert_eq!(a, b);
        let v = run(&JobSpec::new(Command::Verify, "9", Some("hyperbolic-hermitian:2")));
        assert_eq!(v.status, Status::Passed);
    }
}
