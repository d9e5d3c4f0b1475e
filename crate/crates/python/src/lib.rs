//! Python bindings for spaces, operators and assignments, plus the
//! exhaustive verifier.

use std::str::FromStr;
use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use epispace::assignments::{extract, is_compatible, is_faithful, synthesize};
use epispace::format::{
    parse_assignment, parse_operator, parse_space, write_assignment, write_operator, write_space,
};
use epispace::modelcheck::{class_counts, verify_claims, EnumerationScope, VerifyConfig};
use epispace::postulates::{check, classify, CheckResult, PostulateId, Witness};
use epispace::{fixtures, Error, EpistemicSpace, Signature, StateId, WorldSet};

create_exception!(epispace, ScaleExceeded, PyException, "An enumeration bound was exceeded.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::ScaleExceeded { .. } => ScaleExceeded::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Like [`to_py`], naming states instead of indexing them.
fn to_py_in(space: &EpistemicSpace, e: Error) -> PyErr {
    let name = |s: StateId| space.state_name(s).to_string();
    match e {
        Error::NotAPreorder { state, detail } => {
            PyValueError::new_err(format!("relation read off at {} is not a total preorder: {detail}", name(state)))
        }
        Error::ConstraintViolation { state, detail } => {
            PyValueError::new_err(format!("assignment read off at {} violates a constraint: {detail}", name(state)))
        }
        Error::UnhostedTarget { state, input, target } => PyValueError::new_err(format!(
            "no state carries {} needed at ({}, {})",
            space.signature().render_set(target),
            name(state),
            space.signature().render_set(input)
        )),
        other => to_py(other),
    }
}

fn worlds(space: &EpistemicSpace, set: WorldSet) -> Vec<String> {
    set.iter().map(|w| space.signature().render_world(w)).collect()
}

fn parse_set(space: &EpistemicSpace, items: &[String]) -> PyResult<WorldSet> {
    space
        .signature()
        .parse_worlds(items.iter().map(String::as_str))
        .map_err(to_py)
}

#[pyclass(name = "Space", module = "epispace", frozen)]
struct PySpace {
    inner: Arc<EpistemicSpace>,
}

impl PySpace {
    fn state(&self, name: &str) -> PyResult<StateId> {
        self.inner
            .state_by_name(name)
            .ok_or_else(|| PyKeyError::new_err(format!("unknown state `{name}`")))
    }
}

#[pymethods]
impl PySpace {
    /// `states` pairs each state name with its models, written like `a-b`.
    #[new]
    fn new(name: &str, atoms: Vec<String>, states: Vec<(String, Vec<String>)>) -> PyResult<Self> {
        let sig = Signature::new(atoms).map_err(to_py)?;
        let mut parsed = Vec::with_capacity(states.len());
        for (state, models) in states {
            let set = sig.parse_worlds(models.iter().map(String::as_str)).map_err(to_py)?;
            parsed.push((state, set));
        }
        let inner = EpistemicSpace::new(name, sig, parsed).map_err(to_py)?;
        Ok(PySpace { inner: Arc::new(inner) })
    }

    #[staticmethod]
    fn parse(text: &str, name: &str) -> PyResult<Self> {
        let inner = parse_space(text, name).map_err(to_py)?;
        Ok(PySpace { inner: Arc::new(inner) })
    }

    fn to_text(&self) -> String {
        write_space(&self.inner)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn atoms(&self) -> Vec<String> {
        self.inner.signature().atoms().to_vec()
    }

    #[getter]
    fn states(&self) -> Vec<String> {
        self.inner.states().map(|s| self.inner.state_name(s).to_string()).collect()
    }

    fn beliefs(&self, state: &str) -> PyResult<Vec<String>> {
        Ok(worlds(&self.inner, self.inner.beliefs(self.state(state)?)))
    }

    /// Models of a formula over this space's signature.
    fn models(&self, formula: &str) -> PyResult<Vec<String>> {
        let f = epispace::parse(formula, self.inner.signature()).map_err(to_py)?;
        Ok(worlds(&self.inner, epispace::models(&f, self.inner.signature())))
    }

    #[getter]
    fn globally_consistent(&self) -> bool {
        self.inner.is_globally_consistent()
    }

    /// Operator, assignment and faithful assignment counts.
    fn scope<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let s = EnumerationScope::of(&self.inner);
        let d = PyDict::new(py);
        d.set_item("operator_count", s.operator_count)?;
        d.set_item("assignment_count", s.assignment_count)?;
        d.set_item("faithful_assignment_count", s.faithful_assignment_count)?;
        Ok(d)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Space({:?}, {} states)", self.inner.name(), self.inner.len())
    }
}

#[pyclass(name = "Operator", module = "epispace", frozen)]
struct PyOperator {
    inner: epispace::SemanticOperator,
}

fn witness_dict<'py>(py: Python<'py>, space: &EpistemicSpace, w: &Witness) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("state", space.state_name(w.state()))?;
    match *w {
        Witness::Input { input, .. } => {
            d.set_item("kind", "input")?;
            d.set_item("input", worlds(space, input))?;
        }
        Witness::InputPair { first, second, .. } => {
            d.set_item("kind", "input_pair")?;
            d.set_item("first", worlds(space, first))?;
            d.set_item("second", worlds(space, second))?;
        }
        Witness::Faithfulness { first, second, .. } => {
            d.set_item("kind", "faithfulness")?;
            d.set_item("first", space.signature().render_world(first))?;
            d.set_item("second", space.signature().render_world(second))?;
        }
        Witness::Compatibility { input, expected, actual, .. } => {
            d.set_item("kind", "compatibility")?;
            d.set_item("input", worlds(space, input))?;
            d.set_item("expected", worlds(space, expected))?;
            d.set_item("actual", worlds(space, actual))?;
        }
    }
    Ok(d)
}

fn result_dict<'py>(py: Python<'py>, space: &EpistemicSpace, r: &CheckResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("subject", r.subject.to_string())?;
    d.set_item("verdict", r.verdict.name())?;
    d.set_item("holds", r.holds())?;
    match &r.witness {
        Some(w) => d.set_item("witness", witness_dict(py, space, w)?)?,
        None => d.set_item("witness", py.None())?,
    }
    Ok(d)
}

#[pymethods]
impl PyOperator {
    /// `table` lists target state names row by row: states in order, inputs
    /// by ascending model mask.
    #[new]
    fn new(space: &PySpace, table: Vec<String>) -> PyResult<Self> {
        let table = table
            .iter()
            .map(|t| space.state(t))
            .collect::<PyResult<Vec<_>>>()?;
        let inner = epispace::SemanticOperator::new(space.inner.clone(), table).map_err(to_py)?;
        Ok(PyOperator { inner })
    }

    #[staticmethod]
    fn parse(space: &PySpace, text: &str) -> PyResult<Self> {
        let inner = parse_operator(text, &space.inner).map_err(to_py)?;
        Ok(PyOperator { inner })
    }

    fn to_text(&self) -> String {
        write_operator(&self.inner)
    }

    fn to_dot(&self) -> String {
        epispace::dot::to_dot(&self.inner)
    }

    #[getter]
    fn space(&self) -> PySpace {
        PySpace { inner: self.inner.space_arc().clone() }
    }

    #[getter]
    fn table(&self) -> Vec<String> {
        let sp = self.inner.space();
        self.inner.table().iter().map(|s| sp.state_name(*s).to_string()).collect()
    }

    /// Name of the state reached by revising `state` with `formula`.
    fn apply(&self, state: &str, formula: &str) -> PyResult<String> {
        let sp = self.inner.space();
        let s = sp
            .state_by_name(state)
            .ok_or_else(|| PyKeyError::new_err(format!("unknown state `{state}`")))?;
        let f = epispace::parse(formula, sp.signature()).map_err(to_py)?;
        Ok(sp.state_name(self.inner.apply(s, &f)).to_string())
    }

    fn check<'py>(&self, py: Python<'py>, postulate: &str) -> PyResult<Bound<'py, PyDict>> {
        let p = PostulateId::from_str(postulate).map_err(to_py)?;
        let r = check(&self.inner, p).map_err(to_py)?;
        result_dict(py, self.inner.space(), &r)
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let m = classify(&self.inner).map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("agm", m.agm)?;
        d.set_item("cl", m.cl)?;
        d.set_item("ecl", m.ecl)?;
        Ok(d)
    }

    fn extract(&self) -> PyResult<PyAssignment> {
        let inner = extract(&self.inner).map_err(|e| to_py_in(self.inner.space(), e))?;
        Ok(PyAssignment { space: self.inner.space_arc().clone(), inner })
    }

    /// Same resulting belief sets on every cell.
    fn equivalent(&self, other: &PyOperator) -> bool {
        self.inner.equivalent(&other.inner)
    }

    /// Identical tables over spaces with the same belief sets.
    fn __eq__(&self, other: &PyOperator) -> bool {
        self.inner.space().belief_sets() == other.inner.space().belief_sets()
            && self.inner.table() == other.inner.table()
    }
}

#[pyclass(name = "Assignment", module = "epispace", frozen)]
struct PyAssignment {
    space: Arc<EpistemicSpace>,
    inner: epispace::Assignment,
}

#[pymethods]
impl PyAssignment {
    #[staticmethod]
    fn parse(space: &PySpace, text: &str) -> PyResult<Self> {
        let inner = parse_assignment(text, &space.inner).map_err(to_py)?;
        Ok(PyAssignment { space: space.inner.clone(), inner })
    }

    fn to_text(&self) -> String {
        write_assignment(&self.space, &self.inner)
    }

    /// Per state: flag, credible worlds and preorder layers, lowest first.
    fn entries<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        self.space
            .states()
            .map(|s| {
                let e = self.inner.get(s);
                let d = PyDict::new(py);
                d.set_item("state", self.space.state_name(s))?;
                d.set_item("flag", e.flag.name())?;
                d.set_item("credible", worlds(&self.space, e.credible))?;
                let layers: Vec<_> = e.order.layers().iter().map(|l| worlds(&self.space, *l)).collect();
                d.set_item("layers", layers)?;
                Ok(d)
            })
            .collect()
    }

    fn is_faithful<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        result_dict(py, &self.space, &is_faithful(&self.space, &self.inner))
    }

    fn is_compatible<'py>(&self, py: Python<'py>, op: &PyOperator) -> PyResult<Bound<'py, PyDict>> {
        result_dict(py, &self.space, &is_compatible(&self.space, &self.inner, &op.inner))
    }

    fn synthesize(&self) -> PyResult<PyOperator> {
        let inner = synthesize(&self.space, &self.inner).map_err(|e| to_py_in(&self.space, e))?;
        Ok(PyOperator { inner })
    }

    /// Target worlds of the compatible operator at one cell.
    fn target(&self, state: &str, input: Vec<String>) -> PyResult<Vec<String>> {
        let s = self
            .space
            .state_by_name(state)
            .ok_or_else(|| PyKeyError::new_err(format!("unknown state `{state}`")))?;
        let input = parse_set(&self.space, &input)?;
        let t = epispace::assignments::compatible_target(&self.space, &self.inner, s, input);
        Ok(worlds(&self.space, t))
    }

    fn __eq__(&self, other: &PyAssignment) -> bool {
        self.inner == other.inner
    }
}

#[pyfunction]
fn example1() -> (PySpace, PyOperator) {
    let (sp, op) = fixtures::build_example1();
    (PySpace { inner: sp }, PyOperator { inner: op })
}

#[pyfunction]
fn example2() -> (PySpace, PyOperator, PyAssignment) {
    let (sp, op) = fixtures::build_example2();
    let a = fixtures::example2_assignment(&sp);
    (PySpace { inner: sp.clone() }, PyOperator { inner: op }, PyAssignment { space: sp, inner: a })
}

/// AGM, CL and ECL counts over every operator on the space.
#[pyfunction]
#[pyo3(signature = (space, max_ops = epispace::modelcheck::DEFAULT_MAX_OPERATORS))]
fn count_classes<'py>(py: Python<'py>, space: &PySpace, max_ops: u128) -> PyResult<Bound<'py, PyDict>> {
    let inner = space.inner.clone();
    let c = py.detach(move || class_counts(&inner, max_ops, true)).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("operators", c.operators)?;
    d.set_item("agm", c.agm)?;
    d.set_item("cl", c.cl)?;
    d.set_item("ecl", c.ecl)?;
    Ok(d)
}

/// Runs the claim verifier; returns class counts and one verdict per claim.
#[pyfunction]
#[pyo3(signature = (space, max_ops = None, samples = 100_000, seed = 0x5eed))]
fn verify<'py>(
    py: Python<'py>,
    space: &PySpace,
    max_ops: Option<u128>,
    samples: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let mut config = VerifyConfig::from_env().map_err(to_py)?;
    if let Some(m) = max_ops {
        config.max_operators = m;
    }
    config.samples = samples;
    config.seed = seed;
    let inner = space.inner.clone();
    let r = py.detach(move || verify_claims(&inner, &config)).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("space", &r.space)?;
    d.set_item("exhaustive", r.exhaustive)?;
    d.set_item("operators_checked", r.operators_checked)?;
    d.set_item("agm", r.agm)?;
    d.set_item("cl", r.cl)?;
    d.set_item("ecl", r.ecl)?;
    d.set_item("agm_and_cl", r.agm_and_cl)?;
    let claims = PyDict::new(py);
    for c in &r.claims {
        claims.set_item(c.claim.name(), c.verdict.name())?;
    }
    d.set_item("claims", claims)?;
    d.set_item("refuted", r.refuted())?;
    Ok(d)
}

#[pymodule]
#[pyo3(name = "epispace")]
pub fn epispace_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpace>()?;
    m.add_class::<PyOperator>()?;
    m.add_class::<PyAssignment>()?;
    m.add_function(wrap_pyfunction!(example1, m)?)?;
    m.add_function(wrap_pyfunction!(example2, m)?)?;
    m.add_function(wrap_pyfunction!(count_classes, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("ScaleExceeded", m.py().get_type::<ScaleExceeded>())?;
    Ok(())
}
