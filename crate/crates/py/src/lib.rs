//! Python bindings. Reports come back as plain dictionaries.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use quivkit::ar::{tau_power, verify_kernel_translation, verify_tev_triangle};
use quivkit::io::{representation_from_json, representation_to_json};
use quivkit::kronecker::{self, make_indec, IndecLabel, Param, TableOptions};
use quivkit::rep::{self, direct_sum};
use quivkit::{Error, Field};

fn err(e: Error) -> PyErr {
    match e {
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn field(name: &str) -> PyResult<Field> {
    name.parse().map_err(err)
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn label(f: Field, text: &str) -> PyResult<IndecLabel> {
    IndecLabel::parse_quiet(f, text).map_err(err)
}

fn lambdas(f: Field, text: &str) -> PyResult<Vec<Param>> {
    if text.trim() == "all" {
        return Param::all(f).ok_or_else(|| PyValueError::new_err("`all` needs a prime field"));
    }
    text.split(',').filter(|t| !t.trim().is_empty()).map(|t| Param::parse(f, t).map(|(p, _)| p).map_err(err)).collect()
}

/// A finite-dimensional representation with exact entries.
#[pyclass(name = "Representation", module = "quivkit", frozen, from_py_object)]
#[derive(Clone)]
struct PyRepresentation(rep::Representation);

#[pymethods]
impl PyRepresentation {
    /// Direct sum of Kronecker indecomposables given by labels such as `P2`, `I0`, `R3@-1/2`.
    #[new]
    #[pyo3(signature = (labels, field = "q"))]
    fn new(labels: Vec<String>, field: &str) -> PyResult<Self> {
        let f = self::field(field)?;
        let parts = labels.iter().map(|l| make_indec(f, &label(f, l)?).map_err(err)).collect::<PyResult<Vec<_>>>()?;
        if parts.is_empty() {
            return Ok(Self(rep::Representation::zero(kronecker::kronecker_quiver(), f)));
        }
        Ok(Self(direct_sum(&parts).map_err(err)?.sum))
    }

    #[staticmethod]
    #[pyo3(signature = (text, field = None))]
    fn from_json(text: &str, field: Option<&str>) -> PyResult<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        let f = field.map(self::field).transpose()?;
        Ok(Self(representation_from_json(&v, f).map_err(err)?))
    }

    fn to_json(&self) -> String {
        representation_to_json(&self.0).to_string()
    }

    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.0.dims().to_vec()
    }

    #[getter]
    fn field(&self) -> String {
        self.0.field().to_string()
    }

    #[getter]
    fn total_dim(&self) -> usize {
        self.0.total_dim()
    }

    /// Arrow matrices as nested lists of exact scalar strings, keyed by arrow name.
    fn maps(&self) -> Vec<(String, Vec<Vec<String>>)> {
        self.0.quiver().arrows().iter().zip(self.0.maps()).map(|(a, m)| (a.name.clone(), m.to_strings())).collect()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Representation(dims={:?}, field={})", self.0.dims(), self.0.field())
    }
}

/// Canonical form of a label, e.g. `R2@7` over `gf:5` becomes `R2@2`.
#[pyfunction]
#[pyo3(signature = (text, field = "q"))]
fn parse_label(text: &str, field: &str) -> PyResult<String> {
    Ok(label(self::field(field)?, text)?.to_string())
}

/// Kronecker indecomposable labels of index at most `max_index` with the given parameters.
#[pyfunction]
#[pyo3(signature = (max_index, lambdas = "0,1,inf", field = "q"))]
fn labels(max_index: usize, lambdas: &str, field: &str) -> PyResult<Vec<String>> {
    let f = self::field(field)?;
    Ok(kronecker::labels_up_to(max_index, &self::lambdas(f, lambdas)?).iter().map(|l| l.to_string()).collect())
}

#[pyfunction]
fn hom_dim(m: &PyRepresentation, n: &PyRepresentation) -> PyResult<usize> {
    rep::hom_dim(&m.0, &n.0).map_err(err)
}

/// Kernel of the evaluation map `M ⊗ Hom(M, N) → N`.
#[pyfunction]
fn ev_kernel(m: &PyRepresentation, n: &PyRepresentation) -> PyResult<PyRepresentation> {
    Ok(PyRepresentation(rep::ev_kernel(&m.0, &n.0).map_err(err)?.0))
}

/// `τ^power M`; negative powers use the inverse translate.
#[pyfunction]
#[pyo3(signature = (m, power = 1))]
fn tau(m: &PyRepresentation, power: i64) -> PyResult<PyRepresentation> {
    Ok(PyRepresentation(tau_power(&m.0, power).map_err(err)?))
}

/// Summands and multiplicities, as `[{"label": ..., "multiplicity": ...}, ...]`.
#[pyfunction]
fn decompose(py: Python<'_>, m: &PyRepresentation) -> PyResult<Py<PyAny>> {
    to_py(py, &kronecker::decompose(&m.0).map_err(err)?)
}

#[pyfunction]
fn iso_test(m: &PyRepresentation, n: &PyRepresentation) -> PyResult<bool> {
    Ok(kronecker::iso_test(&m.0, &n.0).map_err(err)?.isomorphic)
}

#[pyfunction]
#[pyo3(signature = (m, n, generators = Vec::new(), budget = 200))]
fn bongartz(
    py: Python<'_>,
    m: &PyRepresentation,
    n: &PyRepresentation,
    generators: Vec<PyRepresentation>,
    budget: usize,
) -> PyResult<Py<PyAny>> {
    let gens: Vec<_> = generators.into_iter().map(|g| g.0).collect();
    to_py(py, &kronecker::bongartz_test(&m.0, &n.0, &gens, budget).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (max_m = 4, max_n = 4, lambdas = "0,1,inf", field = "q", certify = false, jobs = 1))]
fn verify_table(
    py: Python<'_>,
    max_m: usize,
    max_n: usize,
    lambdas: &str,
    field: &str,
    certify: bool,
    jobs: usize,
) -> PyResult<Py<PyAny>> {
    let f = self::field(field)?;
    let opts = TableOptions { field: f, max_m, max_n, lambdas: self::lambdas(f, lambdas)?, jobs, certify, seed: 0 };
    let report = py.detach(|| kronecker::verify_pattern_table(&opts)).map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
fn kernel_translation(py: Python<'_>, m: &PyRepresentation, n: &PyRepresentation, k: i64) -> PyResult<Py<PyAny>> {
    to_py(py, &verify_kernel_translation(&m.0, &n.0, k).map_err(err)?)
}

#[pyfunction]
fn translated_triangle(py: Python<'_>, m: &PyRepresentation, n: &PyRepresentation) -> PyResult<Py<PyAny>> {
    to_py(py, &verify_tev_triangle(&m.0, &n.0).map_err(err)?)
}

#[pyfunction]
fn additivity_split(py: Python<'_>, ms: Vec<PyRepresentation>, ns: Vec<PyRepresentation>) -> PyResult<Py<PyAny>> {
    let ms: Vec<_> = ms.into_iter().map(|m| m.0).collect();
    let ns: Vec<_> = ns.into_iter().map(|n| n.0).collect();
    to_py(py, &rep::ev_additivity_split(&ms, &ns).map_err(err)?)
}

#[pymodule]
#[pyo3(name = "quivkit")]
fn quivkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRepresentation>()?;
    m.add_function(wrap_pyfunction!(parse_label, m)?)?;
    m.add_function(wrap_pyfunction!(labels, m)?)?;
    m.add_function(wrap_pyfunction!(hom_dim, m)?)?;
    m.add_function(wrap_pyfunction!(ev_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(tau, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(iso_test, m)?)?;
    m.add_function(wrap_pyfunction!(bongartz, m)?)?;
    m.add_function(wrap_pyfunction!(verify_table, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_translation, m)?)?;
    m.add_function(wrap_pyfunction!(translated_triangle, m)?)?;
    m.add_function(wrap_pyfunction!(additivity_split, m)?)?;
    Ok(())
}
