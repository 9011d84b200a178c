//! Python bindings. Structured results cross the boundary as JSON and come
//! back to Python as plain dicts and lists.

use std::time::Duration;

use pyo3::exceptions::{PyTimeoutError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use alliance_core::alliance::{is_global_offensive_r_alliance, is_offensive_r_alliance};
use alliance_core::bench::{run_corpus, CorpusSpec};
use alliance_core::bounds::{bounds_report, laplacian_spectral_radius, BoundsOptions, SPECTRAL_TOL};
use alliance_core::graph::io;
use alliance_core::reduction::{build_gadget, verify_gadget_equivalence, GadgetKind, ReductionOptions};
use alliance_core::solve::{self, Problem, SolveOptions};
use alliance_core::witness;
use alliance_core::{generate, Error, Family, VertexSet};

fn err(e: Error) -> PyErr {
    match e {
        Error::Timeout => PyTimeoutError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Graph", module = "alliance", frozen)]
struct PyGraph {
    inner: alliance_core::Graph,
}

impl PyGraph {
    fn set(&self, vertices: Vec<usize>) -> PyResult<VertexSet> {
        VertexSet::from_indices(self.inner.n(), vertices).map_err(err)
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: alliance_core::Graph::from_edge_list(n, &edges).map_err(err)? })
    }

    /// Parses edge-list or DIMACS text.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: io::parse(text).map_err(err)?.graph })
    }

    /// Builds a named family, e.g. `"petersen"` or `"random_regular:10,3,7"`.
    #[staticmethod]
    fn family(spec: &str) -> PyResult<Self> {
        let fam: Family = spec.parse().map_err(err)?;
        Ok(PyGraph { inner: generate(&fam).map_err(err)? })
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
        self.inner.edges().collect()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.degree(v))
    }

    fn min_degree(&self) -> usize {
        self.inner.min_degree()
    }

    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn line_graph(&self) -> PyResult<PyGraph> {
        Ok(PyGraph { inner: self.inner.line_graph().map_err(err)?.0 })
    }

    fn to_edge_list(&self) -> String {
        io::to_edge_list(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// Checks an offensive (or, with `global_`, global offensive) r-alliance.
#[pyfunction]
#[pyo3(signature = (g, vertices, r, global_ = false))]
fn check_alliance<'py>(py: Python<'py>, g: &PyGraph, vertices: Vec<usize>, r: i64, global_: bool) -> PyResult<Bound<'py, PyAny>> {
    let s = g.set(vertices)?;
    let rep = if global_ { is_global_offensive_r_alliance(&g.inner, &s, r) } else { is_offensive_r_alliance(&g.inner, &s, r) };
    to_py(py, &rep.map_err(err)?)
}

/// Exact minimum. `problem` is one of `offensive`, `global`, `dominating`,
/// `k_dominating`, `vertex_cover`, `independent`.
#[pyfunction]
#[pyo3(name = "solve", signature = (g, problem, r = None, k = 1, timeout = None))]
fn solve_exact<'py>(
    py: Python<'py>,
    g: &PyGraph,
    problem: &str,
    r: Option<i64>,
    k: usize,
    timeout: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let mut opts = SolveOptions::default();
    if let Some(t) = timeout {
        opts = opts.with_timeout(Duration::from_secs_f64(t));
    }
    let need_r = || r.ok_or_else(|| PyValueError::new_err("r is required for alliance problems"));
    let res = match problem {
        "offensive" => solve::minimize(&g.inner, Problem::Offensive { r: need_r()? }, &opts),
        "global" => solve::minimize(&g.inner, Problem::GlobalOffensive { r: need_r()? }, &opts),
        "dominating" => solve::min_dominating(&g.inner, &opts),
        "k_dominating" => solve::min_k_dominating(&g.inner, k, &opts),
        "vertex_cover" => solve::min_vertex_cover(&g.inner, &opts),
        "independent" => solve::independence_number(&g.inner, &opts),
        other => return Err(PyValueError::new_err(format!("unknown problem `{other}`"))),
    };
    to_py(py, &res.map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (g, r, skip_exact = false))]
fn bounds<'py>(py: Python<'py>, g: &PyGraph, r: i64, skip_exact: bool) -> PyResult<Bound<'py, PyAny>> {
    let opts = BoundsOptions { skip_exact, ..BoundsOptions::default() };
    to_py(py, &bounds_report(&g.inner, r, &opts).map_err(err)?)
}

/// Largest Laplacian eigenvalue.
#[pyfunction]
fn mu_star(g: &PyGraph) -> PyResult<f64> {
    Ok(laplacian_spectral_radius(&g.inner, SPECTRAL_TOL).map_err(err)?.mu_star)
}

/// `construction` is `degree`, `cut` (needs `dominating`, an r-dominating
/// set) or `independent`.
#[pyfunction]
#[pyo3(signature = (g, r, construction = "degree", dominating = None))]
fn construct<'py>(
    py: Python<'py>,
    g: &PyGraph,
    r: i64,
    construction: &str,
    dominating: Option<Vec<usize>>,
) -> PyResult<Bound<'py, PyAny>> {
    let cert = match construction {
        "degree" => witness::thm31_witness(&g.inner, r),
        "independent" => witness::independent_complement_witness(&g.inner, r),
        "cut" => {
            let h = dominating.ok_or_else(|| PyValueError::new_err("the cut construction needs `dominating`"))?;
            witness::thm32_witness(&g.inner, r, &g.set(h)?)
        }
        other => return Err(PyValueError::new_err(format!("unknown construction `{other}`"))),
    };
    to_py(py, &cert.map_err(err)?)
}

/// Builds a gadget; returns `(graph, labels)` with labels indexed by vertex.
#[pyfunction]
#[pyo3(signature = (g, kind, r, budget = 64))]
fn reduce(g: &PyGraph, kind: &str, r: i64, budget: usize) -> PyResult<(PyGraph, Vec<String>)> {
    let kind: GadgetKind = kind.parse().map_err(err)?;
    let art = build_gadget(&g.inner, kind, r, &ReductionOptions { budget, ..ReductionOptions::default() }).map_err(err)?;
    let labels = art.labels.iter().map(|t| t.to_string()).collect();
    Ok((PyGraph { inner: art.gprime }, labels))
}

/// Compares the gadget optimum with the predicted size.
#[pyfunction]
#[pyo3(signature = (g, kind, r, budget = 64))]
fn verify_gadget<'py>(py: Python<'py>, g: &PyGraph, kind: &str, r: i64, budget: usize) -> PyResult<Bound<'py, PyAny>> {
    let kind: GadgetKind = kind.parse().map_err(err)?;
    let art = build_gadget(&g.inner, kind, r, &ReductionOptions { budget, ..ReductionOptions::default() }).map_err(err)?;
    to_py(py, &verify_gadget_equivalence(&art, &SolveOptions::default()).map_err(err)?)
}

/// Runs a corpus; the standard one when `families` is empty.
#[pyfunction]
#[pyo3(name = "bench", signature = (families = Vec::new(), seed = 0, workers = 1))]
fn run_bench<'py>(py: Python<'py>, families: Vec<String>, seed: u64, workers: usize) -> PyResult<Bound<'py, PyAny>> {
    let mut spec = if families.is_empty() {
        CorpusSpec::standard()
    } else {
        let names: Vec<&str> = families.iter().map(String::as_str).collect();
        CorpusSpec::new(&names).map_err(err)?
    };
    spec.seed = seed;
    spec.workers = workers;
    let report = py.detach(|| run_corpus(&spec)).map_err(err)?;
    to_py(py, &report)
}

#[pymodule]
fn alliance(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(check_alliance, m)?)?;
    m.add_function(wrap_pyfunction!(solve_exact, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(mu_star, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(verify_gadget, m)?)?;
    m.add_function(wrap_pyfunction!(run_bench, m)?)?;
    Ok(())
}
