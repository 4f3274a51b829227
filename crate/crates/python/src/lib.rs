//! Python bindings: drawings, the solvers, the oracle and SVG output.

use std::collections::{BTreeMap, HashMap};

use casing::arrangement::Arrangement;
use casing::crossing_graph::{Casing, ObjectiveReport};
use casing::exact::{format_rational, parse_rational};
use casing::fixtures::generate_fixture;
use casing::geometry::{tunnel_length as exact_tunnel_length, validate_drawing, Drawing, SinAngle};
use casing::io::{parse_casing, parse_drawing, serialize_casing, serialize_drawing, CasingDocument};
use casing::objective::{Model, Objective, ObjectiveValue};
use casing::oracle::{enumerate_optimal_casing, OracleCaps};
use casing::solve::{solve as solve_exact, SolveError, SolveOptions};
use casing::svg::{render_svg as render, SvgStyle};
use casing::switches::{full_report, switch_lower_bound};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(casing_py, OpenProblemError, PyException, "No algorithm is known for this model and objective.");
create_exception!(casing_py, BudgetExceededError, PyException, "A search budget or oracle cap was exceeded.");

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A validated straight-line drawing with its crossings.
#[pyclass(name = "Drawing", module = "casing_py")]
pub struct PyDrawing {
    drawing: Drawing,
    arr: Arrangement,
}

impl PyDrawing {
    fn wrap(drawing: Drawing) -> PyResult<Self> {
        let arr = Arrangement::build(&drawing).map_err(value_error)?;
        Ok(PyDrawing { drawing, arr })
    }
}

#[pymethods]
impl PyDrawing {
    /// Parses a drawing document (JSON text); raises ValueError when it is
    /// malformed or fails validation.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        PyDrawing::wrap(parse_drawing(text).map_err(value_error)?)
    }

    /// A named fixture such as "grid", "triangle" or "random-segments".
    #[staticmethod]
    #[pyo3(signature = (name, params=None, seed=1))]
    fn fixture(name: &str, params: Option<HashMap<String, String>>, seed: u64) -> PyResult<Self> {
        let params: BTreeMap<String, String> = params.unwrap_or_default().into_iter().collect();
        PyDrawing::wrap(generate_fixture(name, &params, seed).map_err(value_error)?)
    }

    fn to_json(&self) -> String {
        serialize_drawing(&self.drawing)
    }

    #[getter]
    fn num_vertices(&self) -> usize {
        self.drawing.num_vertices()
    }

    #[getter]
    fn num_edges(&self) -> usize {
        self.drawing.num_edges()
    }

    #[getter]
    fn num_crossings(&self) -> usize {
        self.arr.num_crossings()
    }

    #[getter]
    fn casing_width(&self) -> String {
        format_rational(self.drawing.casing_width())
    }

    /// `(edge_a, edge_b, x, y, tunnel_length)` per crossing, ids and exact
    /// values as strings.
    fn crossings(&self) -> Vec<(u64, u64, String, String, String)> {
        let edges = self.drawing.edges();
        self.arr
            .crossings()
            .iter()
            .map(|c| {
                (
                    edges[c.edge_a].id,
                    edges[c.edge_b].id,
                    format_rational(&c.point.x),
                    format_rational(&c.point.y),
                    c.tunnel.to_string(),
                )
            })
            .collect()
    }

    /// Validation warnings (errors cannot occur on a constructed drawing).
    fn warnings(&self) -> Vec<String> {
        validate_drawing(&self.drawing, None).warnings.iter().map(|w| w.to_string()).collect()
    }

    /// Lower bound on the total number of switches of any casing.
    fn switch_lower_bound(&self) -> usize {
        switch_lower_bound(&self.arr)
    }

    fn __repr__(&self) -> String {
        format!(
            "Drawing(vertices={}, edges={}, crossings={})",
            self.drawing.num_vertices(),
            self.drawing.num_edges(),
            self.arr.num_crossings()
        )
    }
}

/// An optimal (or, when `optimal` is false, bounding) casing.
#[pyclass(name = "Solution", module = "casing_py", get_all)]
pub struct PySolution {
    model: String,
    objective: String,
    /// Exact value as text, e.g. "3", "sqrt(2)" or "unbounded".
    value: String,
    value_approx: f64,
    optimal: bool,
    total_switches: usize,
    max_switches: usize,
    max_tunnels: usize,
    switch_lower_bound: Option<usize>,
    /// `(edge_a, edge_b, top)` edge ids per crossing.
    tops: Vec<(u64, u64, u64)>,
    /// Bottom-first edge ids for stacking solutions.
    order: Option<Vec<u64>>,
    casing_json: String,
}

#[pymethods]
impl PySolution {
    fn __repr__(&self) -> String {
        format!("Solution({} {}: {})", self.model, self.objective, self.value)
    }
}

fn make_solution(
    arr: &Arrangement,
    model: Model,
    objective: Objective,
    casing: &Casing,
    report: &ObjectiveReport,
    value: &ObjectiveValue,
    optimal: bool,
    order: Option<&[usize]>,
) -> PySolution {
    let mut doc = CasingDocument::new(arr, casing).with_provenance(model, objective).with_metrics(report);
    doc.value = Some(value.to_string());
    let edges = arr.drawing().edges();
    PySolution {
        model: model.name().into(),
        objective: objective.name().into(),
        value: value.to_string(),
        value_approx: value.to_f64(),
        optimal,
        total_switches: report.total_switches,
        max_switches: report.max_switches,
        max_tunnels: report.max_tunnels,
        switch_lower_bound: report.switch_lower_bound,
        tops: doc.crossings.iter().map(|r| (r.crossing.edge_a, r.crossing.edge_b, r.top)).collect(),
        order: order.map(|o| o.iter().map(|&e| edges[e].id).collect()),
        casing_json: serialize_casing(&doc),
    }
}

fn parse_pair(model: &str, objective: &str) -> PyResult<(Model, Objective)> {
    Ok((model.parse().map_err(value_error)?, objective.parse().map_err(value_error)?))
}

/// Solves `objective` ("min-total-switches", "min-max-tunnels",
/// "min-max-tunnel-length", "max-min-tunnel-distance") in `model`
/// ("stacking" or "weaving").
#[pyfunction]
#[pyo3(signature = (drawing, model, objective, exact_budget=2_000_000, allow_heuristic=false))]
fn solve(
    drawing: &PyDrawing,
    model: &str,
    objective: &str,
    exact_budget: u64,
    allow_heuristic: bool,
) -> PyResult<PySolution> {
    let (m, o) = parse_pair(model, objective)?;
    let s = solve_exact(&drawing.arr, m, o, SolveOptions { exact_budget, allow_heuristic }).map_err(|e| match e {
        SolveError::OpenProblem { .. } => OpenProblemError::new_err(e.to_string()),
        SolveError::Budget(_) => BudgetExceededError::new_err(e.to_string()),
    })?;
    Ok(make_solution(&drawing.arr, m, o, &s.casing, &s.report, &s.value, s.optimal, s.order.as_deref()))
}

/// Exhaustive optimum; any model and objective, small inputs only.
#[pyfunction]
#[pyo3(signature = (drawing, model, objective, max_crossings=16, max_edges=7))]
fn oracle(drawing: &PyDrawing, model: &str, objective: &str, max_crossings: usize, max_edges: usize) -> PyResult<PySolution> {
    let (m, o) = parse_pair(model, objective)?;
    let r = enumerate_optimal_casing(&drawing.arr, m, o, OracleCaps { max_crossings, max_edges })
        .map_err(|e| BudgetExceededError::new_err(e.to_string()))?;
    let report = full_report(&drawing.arr, &r.witness).map_err(value_error)?;
    let order = r.order.as_ref().map(|o| o.bottom_first.as_slice());
    Ok(make_solution(&drawing.arr, m, o, &r.witness, &report, &r.value, true, order))
}

/// SVG text for `drawing` under the casing document `casing_json`.
#[pyfunction]
#[pyo3(signature = (drawing, casing_json, margin=None))]
fn render_svg(drawing: &PyDrawing, casing_json: &str, margin: Option<f64>) -> PyResult<String> {
    let casing = parse_casing(casing_json).and_then(|d| d.to_casing(&drawing.arr)).map_err(value_error)?;
    let style = SvgStyle { casing_margin: margin, ..SvgStyle::default() };
    render(&drawing.arr, &casing, &style).map_err(value_error)
}

/// Exact `w / sin(alpha)` from `w` and `sin(alpha)^2` given as decimal or
/// `p/q` strings; returns `(exact text, float)`.
#[pyfunction]
fn tunnel_length(w: &str, sin_sq: &str) -> PyResult<(String, f64)> {
    let w = parse_rational(w).map_err(value_error)?;
    let s = SinAngle::from_sin_sq(parse_rational(sin_sq).map_err(value_error)?).map_err(value_error)?;
    let t = exact_tunnel_length(&w, &s);
    Ok((t.to_string(), t.to_f64()))
}

#[pymodule]
pub fn casing_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDrawing>()?;
    m.add_class::<PySolution>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(render_svg, m)?)?;
    m.add_function(wrap_pyfunction!(tunnel_length, m)?)?;
    m.add("OpenProblemError", m.py().get_type::<OpenProblemError>())?;
    m.add("BudgetExceededError", m.py().get_type::<BudgetExceededError>())?;
    Ok(())
}
