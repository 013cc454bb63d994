//! Python bindings: permutations, statistics, shuffles and the bounded checks.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyTuple;

use shufflecheck as core;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A sequence of distinct integers, built from `"2413"`, `"12,9,40"` or a
/// list of ints.
#[pyclass(name = "Permutation", module = "shufflecheck", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPermutation {
    inner: core::Permutation,
}

#[pymethods]
impl PyPermutation {
    #[new]
    fn new(value: &Bound<'_, PyAny>) -> PyResult<Self> {
        let inner = if let Ok(text) = value.extract::<String>() {
            text.parse().map_err(value_error)?
        } else {
            let entries: Vec<i64> = value.extract()?;
            core::Permutation::new(entries).map_err(value_error)?
        };
        Ok(Self { inner })
    }

    #[getter]
    fn entries(&self) -> Vec<i64> {
        self.inner.entries().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation('{}')", self.inner)
    }

    fn standardize(&self) -> Self {
        Self {
            inner: self.inner.standardize(),
        }
    }

    fn equivalent(&self, other: &Self) -> bool {
        self.inner.equivalent(&other.inner)
    }

    fn is_disjoint(&self, other: &Self) -> bool {
        self.inner.is_disjoint(&other.inner)
    }

    /// 1-based descent positions.
    fn descent_set(&self) -> Vec<usize> {
        self.inner.descent_set().positions().to_vec()
    }

    /// 1-based inversion pairs.
    fn inversion_set(&self) -> Vec<(usize, usize)> {
        self.inner.inversion_set().pairs().to_vec()
    }
}

fn perm_arg(value: &Bound<'_, PyAny>) -> PyResult<core::Permutation> {
    if let Ok(p) = value.extract::<PyPermutation>() {
        return Ok(p.inner);
    }
    Ok(PyPermutation::new(value)?.inner)
}

fn to_python<'py>(py: Python<'py>, v: &core::StatValue) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        core::StatValue::Int(i) => i.into_pyobject(py)?.into_any(),
        core::StatValue::IntSet(items) => PyTuple::new(py, items)?.into_any(),
        core::StatValue::PairSet(items) => PyTuple::new(py, items)?.into_any(),
    })
}

fn lookup(name: &str) -> PyResult<core::Statistic> {
    core::registry_lookup(name).map_err(value_error)
}

/// Value of a built-in statistic: an int, a tuple of positions, or a tuple
/// of position pairs.
#[pyfunction]
fn stat<'py>(py: Python<'py>, name: &str, perm: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let v = lookup(name)?.eval(&perm_arg(perm)?).map_err(value_error)?;
    to_python(py, &v)
}

/// Canonical text of a statistic value, e.g. `"{2}"`.
#[pyfunction]
fn stat_str(name: &str, perm: &Bound<'_, PyAny>) -> PyResult<String> {
    let v = lookup(name)?.eval(&perm_arg(perm)?).map_err(value_error)?;
    Ok(v.to_string())
}

/// Sorted shuffles of two disjoint permutations, as strings.
#[pyfunction]
#[pyo3(signature = (sigma, phi, left = false))]
fn shuffle(sigma: &Bound<'_, PyAny>, phi: &Bound<'_, PyAny>, left: bool) -> PyResult<Vec<String>> {
    let (a, b) = (perm_arg(sigma)?, perm_arg(phi)?);
    let set = if left {
        core::left_shuffle(&a, &b)
    } else {
        core::shuffle(&a, &b)
    }
    .map_err(value_error)?;
    Ok(set.sorted().iter().map(|p| p.to_string()).collect())
}

/// The multiset of a statistic over `sigma ⧢ phi`, as text like `"{{-1,1,1}}"`.
#[pyfunction]
#[pyo3(signature = (name, sigma, phi, left = false))]
fn value_multiset(
    name: &str,
    sigma: &Bound<'_, PyAny>,
    phi: &Bound<'_, PyAny>,
    left: bool,
) -> PyResult<String> {
    let st = lookup(name)?;
    let (_, ms) = core::pair_summary(&st, &perm_arg(sigma)?, &perm_arg(phi)?, left)
        .map_err(value_error)?;
    Ok(ms.to_string())
}

fn json_to_python<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// Runs a bounded check and returns the report as a dict. `mode` is
/// `"shuffle"`, `"left"` or `"descent"`.
#[pyfunction]
#[pyo3(signature = (name, mode = "shuffle", bound = 6, jobs = None, hard_cap = core::DEFAULT_HARD_CAP))]
fn check<'py>(
    py: Python<'py>,
    name: &str,
    mode: &str,
    bound: usize,
    jobs: Option<usize>,
    hard_cap: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let st = lookup(name)?;
    let mode: core::Mode = mode.parse().map_err(PyValueError::new_err)?;
    let cfg = core::CheckConfig { hard_cap, jobs };
    let report = py
        .detach(|| core::check(&st, mode, bound, &cfg))
        .map_err(value_error)?;
    json_to_python(py, &serde_json::to_string(&report).map_err(value_error)?)
}

/// True iff every row of the embedded `psi` table recomputes exactly.
#[pyfunction]
fn verify_table1() -> PyResult<bool> {
    Ok(core::verify_table1().map_err(value_error)?.matches())
}

/// Every claim of the counterexample as a list of dicts.
#[pyfunction]
#[pyo3(signature = (jobs = None))]
fn reproduce<'py>(py: Python<'py>, jobs: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    let cfg = core::CheckConfig {
        jobs,
        ..Default::default()
    };
    let claims = py.detach(|| core::run_claims(&cfg)).map_err(value_error)?;
    json_to_python(py, &serde_json::to_string(&claims).map_err(value_error)?)
}

#[pymodule]
#[pyo3(name = "shufflecheck")]
fn shufflecheck_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_function(wrap_pyfunction!(stat, m)?)?;
    m.add_function(wrap_pyfunction!(stat_str, m)?)?;
    m.add_function(wrap_pyfunction!(shuffle, m)?)?;
    m.add_function(wrap_pyfunction!(value_multiset, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(verify_table1, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce, m)?)?;
    m.add("STATISTICS", core::BUILTIN_NAMES.to_vec())?;
    Ok(())
}
