//! Python bindings: fields, forms, spaces of matrices, constructions and censuses.

use pyo3::create_exception;
use pyo3::exceptions::{PyAssertionError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use nilspace::acceptance::run_all;
use nilspace::flags::{maximal_singular_flag, stable_flag_for};
use nilspace::linalg::is_nilpotent as nilpotent;
use nilspace::nilspaces::{general_max_space as general_space, max_space as flag_space, theorem_bound as bound};
use nilspace::oracle::{exhaustive_nilpotent, probe_conjectures, verify_bound_and_classify};
use nilspace::{named_form, Error, Field, Form, FormKind, Mat, MatSubspace, SearchBudget};

create_exception!(nilspace, BudgetExceeded, PyRuntimeError);

fn err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        Error::Internal(_) => PyAssertionError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn mat_from_py(field: Field, rows: &Bound<'_, PyAny>) -> PyResult<Mat> {
    let rows: Vec<Vec<Bound<'_, PyAny>>> = rows.extract()?;
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|x| field.parse_scalar(&x.str()?.to_string()).map_err(err)).collect::<PyResult<Vec<_>>>())
        .collect::<PyResult<Vec<_>>>()?;
    if parsed.is_empty() {
        return Ok(Mat::zeros(field, 0, 0));
    }
    Mat::from_rows(field, parsed).map_err(err)
}

fn mat_to_py(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|s| s.to_string()).collect()).collect()
}

fn kind_of(text: Option<&str>, form: &Form) -> PyResult<FormKind> {
    match text {
        Some(t) => t.parse::<FormKind>().map_err(err),
        None => Ok(form.kind()),
    }
}

fn budget_of(points: Option<u64>, subspaces: Option<u64>, workers: Option<usize>) -> PyResult<SearchBudget> {
    let d = SearchBudget::default();
    SearchBudget::new(points.map_or(d.max_point_evals, u128::from), subspaces.map_or(d.max_subspaces, u128::from), workers.unwrap_or(d.workers))
        .map_err(err)
}

/// GF(p) or GF(p²), given as an order ("3", "9") or as "p,deg".
#[pyclass(name = "Field", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyField {
    inner: Field,
}

#[pymethods]
impl PyField {
    #[new]
    fn new(spec: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyField { inner: Field::parse(&spec.str()?.to_string()).map_err(err)? })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.characteristic()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("Field({})", self.inner)
    }
}

#[pyclass(name = "Form", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyForm {
    inner: Form,
}

#[pymethods]
impl PyForm {
    /// `Form(field, kind, gram)` with `gram` a list of rows of integers or scalar strings.
    #[new]
    fn new(field: &PyField, kind: &str, gram: &Bound<'_, PyAny>) -> PyResult<Self> {
        let kind = kind.parse::<FormKind>().map_err(err)?;
        Ok(PyForm { inner: Form::new(kind, mat_from_py(field.inner, gram)?).map_err(err)? })
    }

    /// A built-in form such as `hyperbolic:4`, `Kn:2` or `diag:1,-1,1`.
    #[staticmethod]
    fn named(field: &PyField, name: &str) -> PyResult<Self> {
        Ok(PyForm { inner: named_form(field.inner, name).map_err(err)? })
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind().name()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField { inner: self.inner.field() }
    }

    #[getter]
    fn gram(&self) -> Vec<Vec<String>> {
        mat_to_py(self.inner.gram())
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn is_nondegenerate(&self) -> bool {
        self.inner.is_nondegenerate()
    }

    /// Witt index; for a degenerate form it includes the radical.
    fn witt_index(&self) -> PyResult<usize> {
        Ok(self.inner.witt_decompose_general(&SearchBudget::default()).map_err(err)?.nu)
    }

    fn witt_decompose<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let w = self.inner.witt_decompose_general(&SearchBudget::default()).map_err(err)?;
        json_to_py(py, &w.to_json())
    }

    /// Basis of a maximal totally singular flag, one column per step.
    fn maximal_flag(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(mat_to_py(maximal_singular_flag(&self.inner).map_err(err)?.basis()))
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_to_py(py, &self.inner.to_json())
    }

    fn __repr__(&self) -> String {
        format!("Form({}, n={}, over {})", self.inner.kind(), self.inner.n(), self.inner.field())
    }
}

/// A space of n×n matrices with its canonical echelon basis.
#[pyclass(name = "Subspace", frozen)]
struct PySubspace {
    inner: MatSubspace,
}

#[pymethods]
impl PySubspace {
    #[getter]
    fn k_dim(&self) -> usize {
        self.inner.k_dim()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn cardinality(&self) -> u128 {
        self.inner.cardinality()
    }

    fn basis(&self) -> Vec<Vec<Vec<String>>> {
        self.inner.basis().iter().map(mat_to_py).collect()
    }

    fn contains(&self, m: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.inner.contains(&mat_from_py(self.inner.field(), m)?))
    }

    /// Checks every element, within the point budget.
    #[pyo3(signature = (budget = None))]
    fn is_nilpotent(&self, budget: Option<u64>) -> PyResult<bool> {
        exhaustive_nilpotent(&self.inner, &budget_of(budget, None, None)?).map_err(err)
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_to_py(py, &self.inner.to_json())
    }

    fn __eq__(&self, other: &PySubspace) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// The maximal nilpotent space attached to a maximal singular flag of a non-degenerate form.
#[pyfunction]
#[pyo3(signature = (form, kind = None))]
fn max_space(form: &PyForm, kind: Option<&str>) -> PyResult<PySubspace> {
    let kind = kind_of(kind, &form.inner)?;
    let flag = maximal_singular_flag(&form.inner).map_err(err)?;
    Ok(PySubspace { inner: flag_space(&form.inner, &flag, kind).map_err(err)? })
}

/// The space for a possibly degenerate bilinear form, with `(n, r, nu, formula)`.
#[pyfunction]
#[pyo3(signature = (form, kind = None))]
fn general_max_space(form: &PyForm, kind: Option<&str>) -> PyResult<(PySubspace, (usize, usize, usize, usize))> {
    let kind = kind_of(kind, &form.inner)?;
    let g = general_space(&form.inner, kind).map_err(err)?;
    Ok((PySubspace { inner: g.space }, (g.n, g.r, g.nu, g.formula)))
}

#[pyfunction]
fn theorem_bound(kind: &str, n: usize, nu: usize) -> PyResult<usize> {
    if nu > n {
        return Err(PyValueError::new_err("nu cannot exceed n"));
    }
    Ok(bound(kind.parse::<FormKind>().map_err(err)?, n, nu))
}

#[pyfunction]
fn is_nilpotent(field: &PyField, m: &Bound<'_, PyAny>) -> PyResult<bool> {
    nilpotent(&mat_from_py(field.inner, m)?).map_err(err)
}

/// A maximal singular flag stabilized by the nilpotent structured matrix `m`.
#[pyfunction]
fn stable_flag(form: &PyForm, m: &Bound<'_, PyAny>) -> PyResult<Vec<Vec<String>>> {
    let u = mat_from_py(form.inner.field(), m)?;
    Ok(mat_to_py(stable_flag_for(&u, &form.inner).map_err(err)?.basis()))
}

#[pyfunction]
#[pyo3(signature = (form, kind = None, budget = None, subspace_budget = None, workers = None))]
fn census<'py>(
    py: Python<'py>,
    form: &PyForm,
    kind: Option<&str>,
    budget: Option<u64>,
    subspace_budget: Option<u64>,
    workers: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let kind = kind_of(kind, &form.inner)?;
    let b = budget_of(budget, subspace_budget, workers)?;
    let r = py.detach(|| verify_bound_and_classify(&form.inner, kind, &b)).map_err(err)?;
    json_to_py(py, &r.to_json())
}

#[pyfunction]
#[pyo3(signature = (form, budget = None, subspace_budget = None, workers = None))]
fn probe<'py>(py: Python<'py>, form: &PyForm, budget: Option<u64>, subspace_budget: Option<u64>, workers: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    let b = budget_of(budget, subspace_budget, workers)?;
    let r = py.detach(|| probe_conjectures(&form.inner, &b)).map_err(err)?;
    json_to_py(py, &r.to_json())
}

/// Runs the acceptance suite; one dict per criterion.
#[pyfunction]
fn selftest<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
    let results = py.detach(|| run_all(&SearchBudget::default()));
    json_to_py(py, &serde_json::to_value(results).expect("results serialize"))
}

#[pymodule]
#[pyo3(name = "nilspace")]
fn nilspace_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyForm>()?;
    m.add_class::<PySubspace>()?;
    m.add_function(wrap_pyfunction!(max_space, m)?)?;
    m.add_function(wrap_pyfunction!(general_max_space, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_bound, m)?)?;
    m.add_function(wrap_pyfunction!(is_nilpotent, m)?)?;
    m.add_function(wrap_pyfunction!(stable_flag, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(probe, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    Ok(())
}
