//! Python bindings: `import twodist_py`.
//!
//! Exact rationals cross the boundary as `fractions.Fraction`. Errors from
//! the library become `ValueError`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use twodist::density::format_rational;
use twodist::testkit::ListMode;
use twodist::{Rational, Variant};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn variant(s: &str) -> PyResult<Variant> {
    s.parse().map_err(value_err)
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((format_rational(r),))
}

fn lists_from(g: &twodist::Graph, lists: Option<Vec<Vec<u32>>>) -> PyResult<twodist::ListAssignment> {
    match lists {
        Some(l) => twodist::ListAssignment::from_lists(l).map_err(value_err),
        None => Ok(twodist::ListAssignment::uniform(g.n(), g.max_degree().unwrap_or(0) + 3)),
    }
}

/// A simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: twodist::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: twodist::Graph::from_edges(n, &edges).map_err(value_err)? })
    }

    /// Parses the `p`/`e` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: twodist::io::parse_graph(text).map_err(value_err)?.graph })
    }

    fn to_text(&self) -> String {
        twodist::io::write_graph(&self.inner, &[])
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        self.check(v)?;
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.check(v)?;
        Ok(self.inner.degree(v))
    }

    fn max_degree(&self) -> PyResult<usize> {
        self.inner.max_degree().map_err(value_err)
    }

    fn girth(&self) -> Option<usize> {
        self.inner.girth()
    }

    fn square(&self) -> PyGraph {
        PyGraph { inner: self.inner.square() }
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

impl PyGraph {
    fn check(&self, v: usize) -> PyResult<()> {
        if v < self.inner.n() {
            Ok(())
        } else {
            Err(value_err(format!("vertex {v} out of range for {} vertices", self.inner.n())))
        }
    }
}

/// `(mad, witness)` with `mad` a `Fraction`.
#[pyfunction]
fn mad_exact<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<(Bound<'py, PyAny>, Vec<usize>)> {
    let m = twodist::mad_exact(&g.inner).map_err(value_err)?;
    Ok((fraction(py, &m.value)?, m.witness))
}

/// Colors `g` from `lists` (default `{1..Δ+3}`); returns one color per vertex.
#[pyfunction]
#[pyo3(signature = (g, lists=None, variant="t1"))]
fn color_two_distance(g: &PyGraph, lists: Option<Vec<Vec<u32>>>, variant: &str) -> PyResult<Vec<u32>> {
    let lists = lists_from(&g.inner, lists)?;
    let out = twodist::color_two_distance(&g.inner, &lists, self::variant(variant)?, Default::default())
        .map_err(value_err)?;
    Ok(out.coloring.as_slice().iter().map(|c| c.expect("colorer returns total colorings")).collect())
}

/// True if `colors` is a 2-distance coloring, respecting `lists` if given.
#[pyfunction]
#[pyo3(signature = (g, colors, lists=None))]
fn validate_coloring(g: &PyGraph, colors: Vec<u32>, lists: Option<Vec<Vec<u32>>>) -> PyResult<bool> {
    let lists = lists.map(twodist::ListAssignment::from_lists).transpose().map_err(value_err)?;
    let c = twodist::Coloring::from_colors(colors);
    Ok(twodist::validate_coloring(&g.inner, &c, lists.as_ref()).map_err(value_err)?.is_valid())
}

/// First configuration of the variant as a dict, or `None`.
#[pyfunction]
#[pyo3(signature = (g, variant="t1", delta=None))]
fn find_configuration<'py>(
    py: Python<'py>,
    g: &PyGraph,
    variant: &str,
    delta: Option<usize>,
) -> PyResult<Option<Bound<'py, PyDict>>> {
    let delta = delta.unwrap_or_else(|| g.inner.max_degree().unwrap_or(0));
    twodist::find_configuration(&g.inner, self::variant(variant)?, delta).map(|c| config_dict(py, &c)).transpose()
}

fn config_dict<'py>(py: Python<'py>, c: &twodist::Configuration) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("kind", c.kind.name())?;
    let w = PyDict::new(py);
    for (name, v) in &c.witnesses {
        w.set_item(*name, *v)?;
    }
    d.set_item("witnesses", w)?;
    d.set_item("shared", c.shared)?;
    Ok(d)
}

/// Discharging ledger and negative vertices as a dict.
#[pyfunction]
#[pyo3(signature = (g, variant="t1", delta=None))]
fn audit<'py>(py: Python<'py>, g: &PyGraph, variant: &str, delta: Option<usize>) -> PyResult<Bound<'py, PyDict>> {
    let delta = delta.unwrap_or_else(|| g.inner.max_degree().unwrap_or(0));
    let r = twodist::discharge::audit(&g.inner, self::variant(variant)?, delta);
    let d = PyDict::new(py);
    let fr = |v: &[Rational]| v.iter().map(|x| fraction(py, x)).collect::<PyResult<Vec<_>>>();
    d.set_item("mu", fr(&r.ledger.mu)?)?;
    d.set_item("mu_star", fr(&r.ledger.mu_star)?)?;
    let transfers = r
        .ledger
        .transfers
        .iter()
        .map(|t| Ok((t.rule.to_string(), t.from, t.to, fraction(py, &t.amount)?)))
        .collect::<PyResult<Vec<_>>>()?;
    d.set_item("transfers", transfers)?;
    d.set_item("negative", r.negative.clone())?;
    d.set_item("explanation", r.explanation.as_ref().map(|c| config_dict(py, c)).transpose()?)?;
    Ok(d)
}

/// Exact 2-distance chromatic number.
#[pyfunction]
#[pyo3(signature = (g, cap=twodist::oracle::DEFAULT_CAP))]
fn chi2(g: &PyGraph, cap: usize) -> PyResult<usize> {
    twodist::oracle::chi2(&g.inner, cap).map_err(value_err)
}

/// Random graph meeting the hypotheses of `variant`.
#[pyfunction]
#[pyo3(signature = (n, variant="t1", seed=0))]
fn gen_sparse(n: usize, variant: &str, seed: u64) -> PyResult<PyGraph> {
    let g = twodist::testkit::gen_sparse(n, self::variant(variant)?, seed).map_err(value_err)?;
    Ok(PyGraph { inner: g })
}

/// Lists of `k` colors: mode is `uniform`, `shifted` or `random`.
#[pyfunction]
#[pyo3(signature = (g, k, mode="random", seed=0))]
fn gen_lists(g: &PyGraph, k: usize, mode: &str, seed: u64) -> PyResult<Vec<Vec<u32>>> {
    if k == 0 {
        return Err(value_err("k must be positive"));
    }
    let mode: ListMode = mode.parse().map_err(value_err)?;
    let l = twodist::testkit::gen_lists(&g.inner, k, mode, seed);
    Ok((0..l.len()).map(|v| l.list(v).to_vec()).collect())
}

#[pymodule]
fn twodist_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(mad_exact, m)?)?;
    m.add_function(wrap_pyfunction!(color_two_distance, m)?)?;
    m.add_function(wrap_pyfunction!(validate_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(find_configuration, m)?)?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    m.add_function(wrap_pyfunction!(chi2, m)?)?;
    m.add_function(wrap_pyfunction!(gen_sparse, m)?)?;
    m.add_function(wrap_pyfunction!(gen_lists, m)?)?;
    Ok(())
}
