//! Python bindings. Rationals cross the boundary as `int`, `str` ("-3/2")
//! or anything whose `str()` is such a string, e.g. `fractions.Fraction`.

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

use sl2cohom::sweep::{self, OraclePolicy, SweepConfig};
use sl2cohom::{self as core, CohomError, Rational};

fn to_py_err(e: CohomError) -> PyErr {
    match e {
        CohomError::Io(_) => PyOSError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text = obj.str()?.to_string();
    text.parse().map_err(to_py_err)
}

fn rationals(objs: &[Bound<'_, PyAny>]) -> PyResult<Vec<Rational>> {
    objs.iter().map(rational).collect()
}

/// Weight data `(λ₁,…,λₙ; μ)` of a module of n-ary differential operators.
#[pyclass(name = "Weights", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyWeights {
    inner: core::Weights,
}

#[pymethods]
impl PyWeights {
    #[new]
    fn new(lambdas: Vec<Bound<'_, PyAny>>, mu: Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyWeights {
            inner: core::Weights::new(rationals(&lambdas)?, rational(&mu)?),
        })
    }

    /// Singular weights with `−2λ = t` and `δ = k`.
    #[staticmethod]
    fn singular(t: Vec<u64>, k: u64) -> Self {
        PyWeights {
            inner: core::Weights::from_t_vector(&t, k),
        }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn lambdas(&self) -> Vec<String> {
        self.inner.lambdas().iter().map(ToString::to_string).collect()
    }

    #[getter]
    fn mu(&self) -> String {
        self.inner.mu().to_string()
    }

    #[getter]
    fn delta(&self) -> String {
        self.inner.delta().to_string()
    }

    #[getter]
    fn case(&self) -> String {
        core::classify(&self.inner).to_string()
    }

    fn __repr__(&self) -> String {
        format!("Weights({})", self.inner)
    }
}

/// One `dim H²` value with the method and case that produced it.
#[pyclass(name = "CohomResult", frozen)]
struct PyCohomResult {
    inner: core::CohomResult,
}

#[pymethods]
impl PyCohomResult {
    #[getter]
    fn dim(&self) -> Option<u64> {
        self.inner.dim
    }

    #[getter]
    fn method(&self) -> String {
        self.inner.method.to_string()
    }

    #[getter]
    fn case(&self) -> String {
        self.inner.case.clone()
    }

    #[getter]
    fn alpha_max(&self) -> Option<u32> {
        self.inner.alpha_max
    }

    #[getter]
    fn stable(&self) -> bool {
        self.inner.stable
    }

    #[getter]
    fn note(&self) -> Option<String> {
        self.inner.note.clone()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        let dim = self
            .inner
            .dim
            .map_or_else(|| "unsupported".to_string(), |d| d.to_string());
        format!(
            "CohomResult(method={}, dim={dim}, case={})",
            self.inner.method, self.inner.case
        )
    }
}

/// `dim H²` by `method` in {"system", "closed", "summary", "oracle"}.
#[pyfunction]
#[pyo3(signature = (weights, method = "system", alpha_max = None))]
fn dim_h2(weights: &PyWeights, method: &str, alpha_max: Option<u32>) -> PyResult<PyCohomResult> {
    let w = &weights.inner;
    let method: core::Method = method.parse().map_err(PyValueError::new_err)?;
    let inner = match method {
        core::Method::System => core::dim_h2_via_system(w),
        core::Method::Closed => core::closed_form_result(w),
        core::Method::Summary => core::summary_result(w),
        core::Method::Oracle => {
            core::brute_force_h2(w, alpha_max.unwrap_or_else(|| core::default_alpha_max(w))).map_err(to_py_err)?
        }
    };
    Ok(PyCohomResult { inner })
}

/// The system matrix for `(n, k, λ)` as rows of rational strings.
#[pyfunction]
fn build_system(n: usize, k: u64, lambdas: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<Vec<String>>> {
    let sys = core::build_system(n, k, &rationals(&lambdas)?).map_err(to_py_err)?;
    Ok((0..sys.matrix.rows())
        .map(|r| sys.matrix.row(r).iter().map(ToString::to_string).collect())
        .collect())
}

/// Exact rank of a matrix given as rows of rationals.
#[pyfunction]
fn rank(rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let parsed = rows.iter().map(|r| rationals(r)).collect::<PyResult<Vec<_>>>()?;
    let m = core::RationalMatrix::from_rows(parsed, cols).map_err(to_py_err)?;
    Ok(m.rank())
}

/// Cocycle basis as a JSON list of `{"A","B","C"}` operator families.
#[pyfunction]
fn cocycle_basis(weights: &PyWeights) -> PyResult<String> {
    let basis = core::cocycle_basis(&weights.inner).map_err(to_py_err)?;
    serde_json::to_string(&basis).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// `Γ_m^k = C(m+k−1, k)`.
#[pyfunction]
fn gamma(m: u64, k: i64) -> u64 {
    core::gamma(m, k)
}

fn policy(oracle: &str) -> PyResult<OraclePolicy> {
    match oracle {
        "auto" => Ok(OraclePolicy::Auto),
        "on" => Ok(OraclePolicy::Always),
        "off" => Ok(OraclePolicy::Never),
        other => Err(PyValueError::new_err(format!(
            "oracle must be auto, on or off, not {other:?}"
        ))),
    }
}

/// Sweep report as CSV text.
#[pyfunction]
#[pyo3(signature = (n, k_max, oracle = "auto"))]
fn table(py: Python<'_>, n: usize, k_max: u64, oracle: &str) -> PyResult<String> {
    let cfg = SweepConfig {
        n,
        k_max,
        oracle: policy(oracle)?,
        ..Default::default()
    };
    let rows = py.detach(|| sweep::run_sweep(&cfg)).map_err(to_py_err)?;
    let mut buf = Vec::new();
    sweep::write_csv(&rows, &mut buf).map_err(to_py_err)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// `(exit_code, report_text)` for a verification sweep.
#[pyfunction]
#[pyo3(signature = (n, k_max, oracle = "auto", inject_fault = false))]
fn verify(py: Python<'_>, n: usize, k_max: u64, oracle: &str, inject_fault: bool) -> PyResult<(i32, String)> {
    let cfg = SweepConfig {
        n,
        k_max,
        oracle: policy(oracle)?,
        alpha_max: None,
        perturbation: inject_fault.then(core::Perturbation::default),
    };
    let report = py.detach(|| sweep::verify(&cfg)).map_err(to_py_err)?;
    let mut buf = Vec::new();
    report.write_text(&mut buf).map_err(to_py_err)?;
    Ok((report.exit_code(), String::from_utf8(buf).expect("report is utf-8")))
}

#[pymodule]
#[pyo3(name = "sl2cohom")]
fn sl2cohom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWeights>()?;
    m.add_class::<PyCohomResult>()?;
    m.add_function(wrap_pyfunction!(dim_h2, m)?)?;
    m.add_function(wrap_pyfunction!(build_system, m)?)?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(cocycle_basis, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
