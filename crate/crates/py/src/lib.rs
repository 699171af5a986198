//! Python bindings. Permutation arguments accept a `Permutation`, a list of
//! ints, or a string in inline notation.

use std::time::Duration;

use apcrucial::constructions as cons;
use apcrucial::search::{self, SearchConfig, SearchError, SearchKind};
use apcrucial::{Direction, Error, Permutation};
use pyo3::create_exception;
use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

create_exception!(apcrucial, BudgetExhaustedError, PyRuntimeError);

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn core_error(e: Error) -> PyErr {
    value_error(e)
}

fn search_error(py: Python<'_>, e: SearchError) -> PyErr {
    match e {
        SearchError::BudgetExhausted { partial } => {
            let msg = format!("search budget exhausted at n = {}", partial.n);
            let partial = serde_json::to_value(&partial).ok().and_then(|v| to_py(py, &v).ok());
            BudgetExhaustedError::new_err((msg, partial))
        }
        SearchError::InvalidParameters(msg) => PyValueError::new_err(msg),
    }
}

/// serde_json value to plain Python objects.
fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any().unbind(),
        Value::Number(n) => match n.as_u64() {
            Some(u) => u.into_pyobject(py)?.into_any().unbind(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any().unbind(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any().unbind(),
        Value::Array(xs) => {
            let items = xs.iter().map(|x| to_py(py, x)).collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_any().unbind()
        }
        Value::Object(map) => {
            let d = PyDict::new(py);
            for (k, x) in map {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any().unbind()
        }
    })
}

fn serialize<T: serde::Serialize>(py: Python<'_>, x: &T) -> PyResult<Py<PyAny>> {
    to_py(py, &serde_json::to_value(x).map_err(value_error)?)
}

#[pyclass(name = "Permutation", module = "apcrucial", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyPermutation {
    inner: Permutation,
}

impl From<Permutation> for PyPermutation {
    fn from(inner: Permutation) -> Self {
        PyPermutation { inner }
    }
}

#[derive(FromPyObject)]
enum PermArg {
    Perm(PyPermutation),
    Text(String),
    List(Vec<u32>),
}

impl PermArg {
    fn into_perm(self) -> PyResult<Permutation> {
        match self {
            PermArg::Perm(p) => Ok(p.inner),
            PermArg::Text(s) => s.parse().map_err(value_error),
            PermArg::List(v) => Permutation::new(v).map_err(core_error),
        }
    }
}

#[pymethods]
impl PyPermutation {
    #[new]
    fn new(elems: PermArg) -> PyResult<Self> {
        Ok(elems.into_perm()?.into())
    }

    /// Parses inline notation such as "4(13)1(10)".
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse::<Permutation>().map(Into::into).map_err(value_error)
    }

    fn to_list(&self) -> Vec<u32> {
        self.inner.as_slice().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __getitem__(&self, i: isize) -> PyResult<u32> {
        let n = self.inner.len() as isize;
        let j = if i < 0 { i + n } else { i };
        if j < 0 || j >= n {
            return Err(PyIndexError::new_err("permutation index out of range"));
        }
        Ok(self.inner[j as usize])
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation('{}')", self.inner)
    }

    fn reverse(&self) -> Self {
        self.inner.reverse().into()
    }

    fn complement(&self) -> Self {
        self.inner.complement().into()
    }

    fn reverse_complement(&self) -> Self {
        self.inner.reverse_complement().into()
    }

    fn extend_right(&self, x: u32) -> PyResult<Self> {
        self.inner.extend_right(x).map(Into::into).map_err(core_error)
    }

    fn extend_left(&self, x: u32) -> PyResult<Self> {
        self.inner.extend_left(x).map(Into::into).map_err(core_error)
    }

    fn extensions_right(&self) -> Vec<Self> {
        self.inner.extensions_right().into_iter().map(Into::into).collect()
    }

    fn extensions_left(&self) -> Vec<Self> {
        self.inner.extensions_left().into_iter().map(Into::into).collect()
    }
}

#[pyfunction]
fn parse_notation(text: &str) -> PyResult<PyPermutation> {
    PyPermutation::parse(text)
}

#[pyfunction]
fn format_notation(p: PermArg) -> PyResult<String> {
    Ok(p.into_perm()?.to_string())
}

#[pyfunction]
fn reduce(seq: Vec<i64>) -> PyResult<PyPermutation> {
    apcrucial::reduce(&seq).map(Into::into).map_err(core_error)
}

#[pyfunction]
fn is_anti_monotone(p: PermArg, k: usize, l: usize) -> PyResult<bool> {
    Ok(apcrucial::is_anti_monotone(&p.into_perm()?, k, l))
}

#[pyfunction]
fn is_crucial(p: PermArg, k: usize, l: usize) -> PyResult<bool> {
    Ok(apcrucial::is_crucial(&p.into_perm()?, k, l))
}

#[pyfunction]
fn is_left_crucial(p: PermArg, k: usize, l: usize) -> PyResult<bool> {
    Ok(apcrucial::is_left_crucial(&p.into_perm()?, k, l))
}

#[pyfunction]
fn is_bicrucial(p: PermArg, k: usize, l: usize) -> PyResult<bool> {
    Ok(apcrucial::is_bicrucial(&p.into_perm()?, k, l))
}

/// Verdict as a dict: kind, violation, survivors and witness chains.
#[pyfunction]
fn classify(py: Python<'_>, p: PermArg, k: usize, l: usize) -> PyResult<Py<PyAny>> {
    serialize(py, &apcrucial::classify(&p.into_perm()?, k, l))
}

/// `(start, diff)` pairs of arithmetic occurrences of length `m`.
#[pyfunction]
#[pyo3(signature = (p, m, direction = "up"))]
fn arithmetic_occurrences(p: PermArg, m: usize, direction: &str) -> PyResult<Vec<(usize, usize)>> {
    let dir = match direction {
        "up" => Direction::Up,
        "down" => Direction::Down,
        other => return Err(PyValueError::new_err(format!("direction must be 'up' or 'down', not {other:?}"))),
    };
    if m == 0 {
        return Err(PyValueError::new_err("m must be positive"));
    }
    Ok(apcrucial::arithmetic_occurrences(&p.into_perm()?, dir, m)
        .into_iter()
        .map(|o| (o.start, o.diff))
        .collect())
}

#[pyfunction]
fn minimal_length_formula(k: usize, l: usize) -> PyResult<usize> {
    cons::minimal_length_formula(k, l).map_err(core_error)
}

#[pyfunction]
fn anti_monotone_33(n: usize) -> PyPermutation {
    cons::anti_monotone_33(n).into()
}

#[pyfunction]
fn shuffle_down(p: PermArg, t: PermArg) -> PyResult<PyPermutation> {
    cons::shuffle_down(&p.into_perm()?, &t.into_perm()?).map(Into::into).map_err(core_error)
}

#[pyfunction]
fn shuffle_down_odd(p: PermArg, t: PermArg) -> PyResult<PyPermutation> {
    cons::shuffle_down_odd(&p.into_perm()?, &t.into_perm()?).map(Into::into).map_err(core_error)
}

#[pyfunction]
#[pyo3(signature = (k, l, n, base = None))]
fn construct_figure1(k: usize, l: usize, n: usize, base: Option<PermArg>) -> PyResult<PyPermutation> {
    let base = base.map(PermArg::into_perm).transpose()?;
    cons::construct_figure1(k, l, n, base.as_ref()).map(Into::into).map_err(core_error)
}

#[pyfunction]
fn construct_crucial(k: usize, l: usize, n: usize) -> PyResult<PyPermutation> {
    cons::construct_crucial(k, l, n).map(Into::into).map_err(core_error)
}

#[pyfunction]
fn construct_crucial_44() -> PyResult<PyPermutation> {
    cons::construct_crucial_44().map(Into::into).map_err(core_error)
}

#[pyfunction]
fn construct_crucial_4l(l: usize) -> PyResult<PyPermutation> {
    cons::construct_crucial_4l(l).map(Into::into).map_err(core_error)
}

#[pyfunction]
fn construct_crucial_3l(l: usize) -> PyResult<PyPermutation> {
    cons::construct_crucial_3l(l).map(Into::into).map_err(core_error)
}

#[pyfunction]
fn construct_bicrucial_3l(l: usize) -> PyResult<PyPermutation> {
    cons::construct_bicrucial_3l(l).map(Into::into).map_err(core_error)
}

fn filler(t: Option<PermArg>, len: usize) -> PyResult<Permutation> {
    t.map_or_else(|| Ok(cons::anti_monotone_33(len)), PermArg::into_perm)
}

/// Filler `t` defaults to `anti_monotone_33` of the needed length.
#[pyfunction]
#[pyo3(signature = (c, k, l, t = None))]
fn double_odd(c: PermArg, k: usize, l: usize, t: Option<PermArg>) -> PyResult<PyPermutation> {
    let c = c.into_perm()?;
    let t = filler(t, c.len() + 1)?;
    cons::double_odd(&c, &t, k, l).map(Into::into).map_err(core_error)
}

#[pyfunction]
#[pyo3(signature = (c, k, l, t = None))]
fn double_even(c: PermArg, k: usize, l: usize, t: Option<PermArg>) -> PyResult<PyPermutation> {
    let c = c.into_perm()?;
    let t = filler(t, c.len())?;
    cons::double_even(&c, &t, k, l).map(Into::into).map_err(core_error)
}

#[pyfunction]
fn make_bicrucial(w: PermArg, k: usize, l: usize) -> PyResult<PyPermutation> {
    cons::make_bicrucial(&w.into_perm()?, k, l).map(Into::into).map_err(core_error)
}

#[pyfunction]
#[pyo3(signature = (b, k, l, t = None))]
fn extend_bicrucial_odd(b: PermArg, k: usize, l: usize, t: Option<PermArg>) -> PyResult<PyPermutation> {
    let b = b.into_perm()?;
    let t = filler(t, b.len() + 1)?;
    cons::extend_bicrucial_odd(&b, &t, k, l).map(Into::into).map_err(core_error)
}

fn config(max_nodes: Option<u64>, max_time: Option<f64>, threads: usize) -> PyResult<SearchConfig> {
    let mut c = SearchConfig { threads, ..SearchConfig::default() };
    c.budget.max_nodes = max_nodes;
    c.budget.max_time = max_time.map(Duration::try_from_secs_f64).transpose().map_err(value_error)?;
    Ok(c)
}

/// Exhaustive search at length `n`; returns the record as a dict.
#[pyfunction(name = "search")]
#[pyo3(signature = (k, l, n, kind = "crucial", count = false, max_nodes = None, max_time = None, threads = 0))]
#[allow(clippy::too_many_arguments)]
fn search_py(
    py: Python<'_>,
    k: usize,
    l: usize,
    n: usize,
    kind: &str,
    count: bool,
    max_nodes: Option<u64>,
    max_time: Option<f64>,
    threads: usize,
) -> PyResult<Py<PyAny>> {
    let kind: SearchKind = kind.parse().map_err(PyValueError::new_err)?;
    let cfg = config(max_nodes, max_time, threads)?;
    let rec = py
        .detach(|| search::search(k, l, n, kind, count, &cfg))
        .map_err(|e| search_error(py, e))?;
    serialize(py, &rec)
}

fn minimal(py: Python<'_>, k: usize, l: usize, bicrucial: bool, max_nodes: Option<u64>) -> PyResult<Option<usize>> {
    let cfg = config(max_nodes, None, 0)?;
    let scan = py.detach(|| {
        if bicrucial {
            search::find_minimal_bicrucial(k, l, &cfg)
        } else {
            search::find_minimal_crucial(k, l, &cfg)
        }
    });
    match scan {
        Ok(m) => Ok(m.minimal),
        Err(search::ScanError::Exhausted(ex)) => Err(search_error(py, SearchError::BudgetExhausted { partial: ex.partial })),
        Err(search::ScanError::Invalid(msg)) => Err(PyValueError::new_err(msg)),
    }
}

#[pyfunction]
#[pyo3(signature = (k, l, max_nodes = None))]
fn find_minimal_crucial(py: Python<'_>, k: usize, l: usize, max_nodes: Option<u64>) -> PyResult<Option<usize>> {
    minimal(py, k, l, false, max_nodes)
}

#[pyfunction]
#[pyo3(signature = (k, l, max_nodes = None))]
fn find_minimal_bicrucial(py: Python<'_>, k: usize, l: usize, max_nodes: Option<u64>) -> PyResult<Option<usize>> {
    minimal(py, k, l, true, max_nodes)
}

/// List of `{name, source, passed, detail}` dicts.
#[pyfunction]
fn verify_paper_facts(py: Python<'_>) -> PyResult<Py<PyAny>> {
    let facts = py.detach(|| search::verify_paper_facts(&SearchConfig::default()));
    serialize(py, &facts)
}

#[pymodule(name = "apcrucial")]
pub fn apcrucial_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add("BudgetExhaustedError", m.py().get_type::<BudgetExhaustedError>())?;
    m.add_function(wrap_pyfunction!(parse_notation, m)?)?;
    m.add_function(wrap_pyfunction!(format_notation, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(is_anti_monotone, m)?)?;
    m.add_function(wrap_pyfunction!(is_crucial, m)?)?;
    m.add_function(wrap_pyfunction!(is_left_crucial, m)?)?;
    m.add_function(wrap_pyfunction!(is_bicrucial, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(arithmetic_occurrences, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_length_formula, m)?)?;
    m.add_function(wrap_pyfunction!(anti_monotone_33, m)?)?;
    m.add_function(wrap_pyfunction!(shuffle_down, m)?)?;
    m.add_function(wrap_pyfunction!(shuffle_down_odd, m)?)?;
    m.add_function(wrap_pyfunction!(construct_figure1, m)?)?;
    m.add_function(wrap_pyfunction!(construct_crucial, m)?)?;
    m.add_function(wrap_pyfunction!(construct_crucial_44, m)?)?;
    m.add_function(wrap_pyfunction!(construct_crucial_4l, m)?)?;
    m.add_function(wrap_pyfunction!(construct_crucial_3l, m)?)?;
    m.add_function(wrap_pyfunction!(construct_bicrucial_3l, m)?)?;
    m.add_function(wrap_pyfunction!(double_odd, m)?)?;
    m.add_function(wrap_pyfunction!(double_even, m)?)?;
    m.add_function(wrap_pyfunction!(make_bicrucial, m)?)?;
    m.add_function(wrap_pyfunction!(extend_bicrucial_odd, m)?)?;
    m.add_function(wrap_pyfunction!(search_py, m)?)?;
    m.add_function(wrap_pyfunction!(find_minimal_crucial, m)?)?;
    m.add_function(wrap_pyfunction!(find_minimal_bicrucial, m)?)?;
    m.add_function(wrap_pyfunction!(verify_paper_facts, m)?)?;
    Ok(())
}
