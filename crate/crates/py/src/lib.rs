//! Python bindings for the omnilie toolkit: the omni-Lie algebra types
//! and operations, D-structure analysis, C-algebra axiom checking, and
//! the Courant-side checks.
//!
//! Rationals cross the boundary as strings `"p/q"` (plain integers are
//! accepted on input); reports come back as plain dicts.

use omnilie::calgebra;
use omnilie::courant;
use omnilie::dstruct;
use omnilie::io;
use omnilie::liealg;
use omnilie::linalg::{Rat, RatMat, RatVec};
use omnilie::omni;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};
use serde_json::Value;

fn to_rat(obj: &Bound<'_, PyAny>) -> PyResult<Rat> {
    if let Ok(i) = obj.extract::<i64>() {
        return Ok(omnilie::linalg::rat_int(i));
    }
    let s: String = obj.extract().map_err(|_| {
        PyValueError::new_err("rational entries must be integers or strings like \"p/q\"")
    })?;
    io::parse_rat(&s, "python argument").map_err(|e| PyValueError::new_err(e.to_string()))
}

fn to_rat_vec(items: Vec<Bound<'_, PyAny>>) -> PyResult<RatVec> {
    items.iter().map(to_rat).collect()
}

fn to_rat_mat(rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<RatMat> {
    let parsed: PyResult<Vec<RatVec>> = rows.into_iter().map(to_rat_vec).collect();
    let parsed = parsed?;
    let width = parsed.first().map_or(0, Vec::len);
    if parsed.iter().any(|r| r.len() != width) {
        return Err(PyValueError::new_err("matrix rows must all have the same length"));
    }
    Ok(RatMat::from_rows(parsed))
}

fn strings(v: &[Rat]) -> Vec<String> {
    io::vec_strings(v)
}

fn value_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any()
            }
        }
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(value_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, val) in map {
                dict.set_item(k, value_to_py(py, val)?)?;
            }
            dict.into_any()
        }
    })
}

/// An element `(a, v)` of `gl(n) x Q^n`.
#[pyclass(eq, from_py_object, name = "OmniElement")]
#[derive(Clone, PartialEq)]
struct PyOmniElement {
    inner: omni::OmniElement,
}

#[pymethods]
impl PyOmniElement {
    #[new]
    fn new(a: Vec<Vec<Bound<'_, PyAny>>>, v: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let a = to_rat_mat(a)?;
        let v = to_rat_vec(v)?;
        if !a.is_square() || a.rows() != v.len() {
            return Err(PyValueError::new_err(
                "expected an n x n matrix together with an n-vector",
            ));
        }
        Ok(PyOmniElement { inner: omni::OmniElement::new(a, v) })
    }

    #[staticmethod]
    fn zero(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("n must be positive"));
        }
        Ok(PyOmniElement { inner: omni::OmniElement::zero(n) })
    }

    #[getter]
    fn a(&self) -> Vec<Vec<String>> {
        io::mat_strings(self.inner.matrix())
    }

    #[getter]
    fn v(&self) -> Vec<String> {
        strings(self.inner.vector())
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.dim()
    }

    fn add(&self, other: &PyOmniElement) -> PyResult<Self> {
        check_dims(self.inner.dim(), other.inner.dim())?;
        Ok(PyOmniElement { inner: self.inner.add(&other.inner) })
    }

    fn neg(&self) -> Self {
        PyOmniElement { inner: self.inner.neg() }
    }

    fn scale(&self, c: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyOmniElement { inner: self.inner.scale(&to_rat(c)?) })
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __repr__(&self) -> String {
        format!("OmniElement(a={:?}, v={:?})", self.a(), self.v())
    }
}

fn check_dims(a: usize, b: usize) -> PyResult<()> {
    if a != b {
        return Err(PyValueError::new_err(format!("dimension mismatch: {a} vs {b}")));
    }
    Ok(())
}

/// A bilinear operation on `Q^n` given by structure constants.
#[pyclass(eq, from_py_object, name = "BilinearOp")]
#[derive(Clone, PartialEq)]
struct PyBilinearOp {
    inner: liealg::BilinearOp,
}

impl PyBilinearOp {
    fn require_skew(&self) -> PyResult<()> {
        if let Some((i, j, k)) = self.inner.skew_violation() {
            return Err(PyValueError::new_err(format!(
                "operation is not skew (violation at ({}, {}, {}))",
                i + 1,
                j + 1,
                k + 1
            )));
        }
        Ok(())
    }
}

#[pymethods]
impl PyBilinearOp {
    /// Build from 1-based sparse entries `(i, j, k, value)` meaning
    /// `B(e_i, e_j) += value * e_k`.
    #[new]
    fn new(n: usize, entries: Vec<(usize, usize, usize, Bound<'_, PyAny>)>) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("n must be positive"));
        }
        let mut op = liealg::BilinearOp::zero(n);
        for (i, j, k, val) in entries {
            if [i, j, k].iter().any(|&x| x == 0 || x > n) {
                return Err(PyValueError::new_err(format!(
                    "indices are 1-based and bounded by n={n}, got ({i}, {j}, {k})"
                )));
            }
            op.set(i - 1, j - 1, k - 1, to_rat(&val)?);
        }
        Ok(PyBilinearOp { inner: op })
    }

    /// Named catalog entry: abelian(n), heisenberg3, so3, sl2, affine1,
    /// or nonlie3.
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        liealg::catalog(name)
            .map(|inner| PyBilinearOp { inner })
            .ok_or_else(|| PyValueError::new_err(format!("unknown catalog name {name:?}")))
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn is_skew(&self) -> bool {
        self.inner.is_skew()
    }

    fn is_lie(&self) -> PyResult<bool> {
        self.require_skew()?;
        Ok(self.inner.is_lie())
    }

    /// Cyclic Jacobi sum on the 1-based basis triple `(i, j, k)`.
    fn jacobi_defect(&self, i: usize, j: usize, k: usize) -> PyResult<Vec<String>> {
        self.require_skew()?;
        let n = self.inner.n();
        if [i, j, k].iter().any(|&x| x == 0 || x > n) {
            return Err(PyValueError::new_err("indices are 1-based and bounded by n"));
        }
        Ok(strings(&self.inner.jacobi_defect(i - 1, j - 1, k - 1)))
    }

    fn ad_matrix(&self, v: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<Vec<String>>> {
        let v = to_rat_vec(v)?;
        check_dims(v.len(), self.inner.n())?;
        Ok(io::mat_strings(&self.inner.ad_matrix(&v)))
    }

    fn apply(&self, u: Vec<Bound<'_, PyAny>>, w: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
        let (u, w) = (to_rat_vec(u)?, to_rat_vec(w)?);
        check_dims(u.len(), self.inner.n())?;
        check_dims(w.len(), self.inner.n())?;
        Ok(strings(&self.inner.apply(&u, &w)))
    }

    /// The graph of the adjoint operator inside `gl(n) x Q^n`.
    fn graph(&self) -> PyOmniSubspace {
        PyOmniSubspace { inner: liealg::graph_subspace(&self.inner) }
    }

    fn __repr__(&self) -> String {
        format!("BilinearOp(n={})", self.inner.n())
    }
}

/// A canonical subspace of `gl(n) x Q^n`.
#[pyclass(eq, from_py_object, name = "OmniSubspace")]
#[derive(Clone, PartialEq)]
struct PyOmniSubspace {
    inner: omni::OmniSubspace,
}

#[pymethods]
impl PyOmniSubspace {
    /// Canonical span of a list of elements.
    #[staticmethod]
    fn span(n: usize, elements: Vec<PyOmniElement>) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("n must be positive"));
        }
        for e in &elements {
            check_dims(e.inner.dim(), n)?;
        }
        let inner: Vec<omni::OmniElement> = elements.into_iter().map(|e| e.inner).collect();
        Ok(PyOmniSubspace { inner: omni::OmniSubspace::from_elements(n, &inner) })
    }

    /// `gl(n) (+) {0}`.
    #[staticmethod]
    fn horizontal(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("n must be positive"));
        }
        Ok(PyOmniSubspace { inner: omni::OmniSubspace::horizontal(n) })
    }

    /// `{0} (+) Q^n`.
    #[staticmethod]
    fn vertical(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("n must be positive"));
        }
        Ok(PyOmniSubspace { inner: omni::OmniSubspace::vertical(n) })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn basis(&self) -> Vec<PyOmniElement> {
        self.inner.basis_elements().into_iter().map(|inner| PyOmniElement { inner }).collect()
    }

    fn contains(&self, e: &PyOmniElement) -> PyResult<bool> {
        check_dims(e.inner.dim(), self.inner.n())?;
        Ok(self.inner.contains(&e.inner))
    }

    fn is_isotropic(&self) -> bool {
        dstruct::is_isotropic(&self.inner)
    }

    fn orthogonal(&self) -> Self {
        PyOmniSubspace { inner: dstruct::omni_orthogonal(&self.inner) }
    }

    /// Full verdict record: isotropy, maximality (`"yes"`, `"no"`, or
    /// `"undetermined"`), bracket closure, the D-structure verdict, and
    /// any witnesses.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let cls = dstruct::classify(&self.inner);
        value_to_py(py, &classification_value(&cls, self.inner.dim()))
    }

    /// Recover the bilinear operation whose adjoint graph this is, or
    /// `None` when the projection onto `Q^n` is not bijective.
    fn recover_bilinear(&self) -> Option<PyBilinearOp> {
        dstruct::recover_bilinear(&self.inner).map(|inner| PyBilinearOp { inner })
    }

    fn __repr__(&self) -> String {
        format!("OmniSubspace(n={}, dim={})", self.inner.n(), self.inner.dim())
    }
}

fn element_value(e: &omni::OmniElement) -> Value {
    serde_json::to_value(io::OmniElementJson::from_element(e)).expect("element serializes")
}

fn classification_value(cls: &dstruct::Classification, dim: usize) -> Value {
    use dstruct::Maximality;
    let maximal = match &cls.maximality {
        None => Value::Null,
        Some(Maximality::Maximal) => Value::String("yes".into()),
        Some(Maximality::NotMaximal { .. }) => Value::String("no".into()),
        Some(Maximality::Undetermined { .. }) => Value::String("undetermined".into()),
    };
    let mut witnesses = serde_json::Map::new();
    match &cls.maximality {
        Some(Maximality::NotMaximal { witness }) => {
            witnesses.insert("isotropic_extension".into(), element_value(witness));
        }
        Some(Maximality::Undetermined { reason }) => {
            witnesses.insert("undetermined_reason".into(), Value::String(reason.clone()));
        }
        _ => {}
    }
    if let Some(fail) = &cls.closure_failure {
        witnesses.insert(
            "closure_failure".into(),
            serde_json::json!({
                "left": element_value(&fail.left),
                "right": element_value(&fail.right),
                "escape": element_value(&fail.escape),
            }),
        );
    }
    serde_json::json!({
        "dim": dim,
        "isotropic": cls.isotropic,
        "maximal": maximal,
        "closed": cls.closed(),
        "d_structure": cls.is_d_structure,
        "witnesses": witnesses,
    })
}

/// `[[e1, e2]] = ([a1, a2], (a1 v2 - a2 v1)/2)`.
#[pyfunction]
fn omni_bracket(e1: &PyOmniElement, e2: &PyOmniElement) -> PyResult<PyOmniElement> {
    check_dims(e1.inner.dim(), e2.inner.dim())?;
    Ok(PyOmniElement { inner: omni::omni_bracket(&e1.inner, &e2.inner) })
}

/// `<e1, e2> = (a1 v2 + a2 v1)/2`, a vector of rational strings.
#[pyfunction]
fn omni_pairing(e1: &PyOmniElement, e2: &PyOmniElement) -> PyResult<Vec<String>> {
    check_dims(e1.inner.dim(), e2.inner.dim())?;
    Ok(strings(&omni::omni_pairing(&e1.inner, &e2.inner)))
}

/// The Cartan 3-form `(<[[e1,e2]],e3> + cyclic)/3`.
#[pyfunction]
fn cartan_form(e1: &PyOmniElement, e2: &PyOmniElement, e3: &PyOmniElement) -> PyResult<Vec<String>> {
    check_dims(e1.inner.dim(), e2.inner.dim())?;
    check_dims(e2.inner.dim(), e3.inner.dim())?;
    Ok(strings(&omni::cartan_form(&e1.inner, &e2.inner, &e3.inner)))
}

/// The jacobiator `[[ [[e1,e2]], e3 ]] + cyclic`; always `(0, cartan_form)`.
#[pyfunction]
fn jacobiator(e1: &PyOmniElement, e2: &PyOmniElement, e3: &PyOmniElement) -> PyResult<PyOmniElement> {
    check_dims(e1.inner.dim(), e2.inner.dim())?;
    check_dims(e2.inner.dim(), e3.inner.dim())?;
    Ok(PyOmniElement { inner: omni::jacobiator(&e1.inner, &e2.inner, &e3.inner) })
}

/// Dimension of the space of linear maps `gl(n) -> Q^n` with isotropic
/// graph (always zero).
#[pyfunction]
fn isotropic_graph_dimension(n: usize) -> PyResult<usize> {
    if n == 0 {
        return Err(PyValueError::new_err("n must be positive"));
    }
    Ok(dstruct::isotropic_graph_space(n).dim())
}

/// Deterministic D-structure search; returns a dict with `found`,
/// `undetermined` (lists of OmniSubspace) and the `partial` flag.
#[pyfunction]
#[pyo3(signature = (n, strategy = "all", seed = 0, budget = 10_000))]
fn search_d_structures<'py>(
    py: Python<'py>,
    n: usize,
    strategy: &str,
    seed: u64,
    budget: usize,
) -> PyResult<Bound<'py, PyDict>> {
    if n == 0 {
        return Err(PyValueError::new_err("n must be positive"));
    }
    let strategy = dstruct::SearchStrategy::parse(strategy).ok_or_else(|| {
        PyValueError::new_err("strategy must be one of: exhaustive, graph, greedy, all")
    })?;
    if matches!(strategy, dstruct::SearchStrategy::Exhaustive | dstruct::SearchStrategy::All) && n > 4 {
        return Err(PyValueError::new_err("exhaustive search supports n <= 4"));
    }
    let outcome = dstruct::search_d_structures(n, strategy, seed, budget);
    let dict = PyDict::new(py);
    let found: Vec<PyOmniSubspace> =
        outcome.found.into_iter().map(|inner| PyOmniSubspace { inner }).collect();
    let undetermined: Vec<PyOmniSubspace> =
        outcome.undetermined.into_iter().map(|inner| PyOmniSubspace { inner }).collect();
    dict.set_item("found", found)?;
    dict.set_item("undetermined", undetermined)?;
    dict.set_item("partial", outcome.partial)?;
    Ok(dict)
}

/// Build the omni-Lie C-algebra instance of dimension `n`, validate it,
/// and check axioms 0-5. Returns a dict report.
#[pyfunction]
fn check_omni_instance<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
    if n == 0 {
        return Err(PyValueError::new_err("n must be positive"));
    }
    let c = calgebra::build_omni_instance(n);
    let validation = calgebra::validate_instance(&c);
    let axioms = calgebra::check_axioms(&c);
    let report = serde_json::json!({
        "dimA": c.dim_a,
        "dimE": c.dim_e,
        "valid": validation.ok(),
        "all_axioms_pass": axioms.all_pass(),
        "axioms": axioms.results.iter().map(|r| serde_json::json!({
            "axiom": r.axiom,
            "pass": r.pass(),
            "checked": r.checked,
        })).collect::<Vec<_>>(),
    });
    value_to_py(py, &report)
}

/// Gradient of an `A`-element on the omni instance; always `(0, f)`.
#[pyfunction]
fn omni_instance_gradient(n: usize, f: Vec<Bound<'_, PyAny>>) -> PyResult<PyOmniElement> {
    if n == 0 {
        return Err(PyValueError::new_err("n must be positive"));
    }
    let f = to_rat_vec(f)?;
    check_dims(f.len(), n)?;
    let c = calgebra::build_omni_instance(n);
    let g = calgebra::gradient(&c, &f)
        .ok_or_else(|| PyValueError::new_err("gradient undefined"))?;
    Ok(PyOmniElement { inner: omni::OmniElement::from_flat(n, &g) })
}

/// Sample the Courant-bracket axioms on seeded random polynomial
/// sections; returns a dict report.
#[pyfunction]
#[pyo3(signature = (nvars, degree_bound = 2, trials = 25, seed = 0))]
fn courant_axioms_check<'py>(
    py: Python<'py>,
    nvars: usize,
    degree_bound: u32,
    trials: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    if nvars == 0 {
        return Err(PyValueError::new_err("nvars must be positive"));
    }
    let report = courant::axioms_sample_check(
        nvars,
        degree_bound,
        trials,
        seed,
        courant::BracketVariant::Full,
    );
    let value = serde_json::json!({
        "nvars": report.nvars,
        "degree_bound": report.degree_bound,
        "trials": report.trials,
        "seed": report.seed,
        "completed_trials": report.completed_trials,
        "all_pass": report.all_pass(),
        "failure": report.failure.as_ref().map(|f| serde_json::json!({
            "axiom": f.axiom,
            "trial": f.trial,
            "detail": f.detail,
        })),
    });
    value_to_py(py, &value)
}

/// Check a Dirac candidate given as the JSON text of a candidate file
/// (kind bivector, two-form, or foliation). Returns a dict report.
#[pyfunction]
fn dirac_check_json<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    let parsed: io::DiracCandidateJson =
        serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let candidate = parsed.to_candidate().map_err(|e| PyValueError::new_err(e.to_string()))?;
    let report = courant::dirac_check(&candidate);
    let failures = |v: &[(usize, usize, String)]| -> Vec<Value> {
        v.iter()
            .map(|(i, j, r)| serde_json::json!({ "i": i, "j": j, "residual": r }))
            .collect()
    };
    let value = serde_json::json!({
        "kind": report.kind,
        "nvars": report.nvars,
        "generators": report.generator_count,
        "isotropy_failures": failures(&report.isotropy_failures),
        "closure_failures": failures(&report.closure_failures),
        "two_form_closed": report.two_form_closed,
        "passes": report.passes,
    });
    value_to_py(py, &value)
}

/// True iff linearization intertwines the Courant bracket/pairing with
/// the omni bracket/pairing on every basis pair of `gl(n) x Q^n`.
#[pyfunction]
fn linearize_intertwines(n: usize) -> PyResult<bool> {
    if n == 0 {
        return Err(PyValueError::new_err("n must be positive"));
    }
    let d = n * n + n;
    for s in 0..d {
        for t in 0..d {
            let e1 = omni::OmniElement::from_flat(n, &omnilie::linalg::vec_unit(d, s));
            let e2 = omni::OmniElement::from_flat(n, &omnilie::linalg::vec_unit(d, t));
            if !courant::linearize_roundtrip(&e1, &e2).all_match() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[pymodule]
fn omnilie_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOmniElement>()?;
    m.add_class::<PyBilinearOp>()?;
    m.add_class::<PyOmniSubspace>()?;
    m.add_function(wrap_pyfunction!(omni_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(omni_pairing, m)?)?;
    m.add_function(wrap_pyfunction!(cartan_form, m)?)?;
    m.add_function(wrap_pyfunction!(jacobiator, m)?)?;
    m.add_function(wrap_pyfunction!(isotropic_graph_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(search_d_structures, m)?)?;
    m.add_function(wrap_pyfunction!(check_omni_instance, m)?)?;
    m.add_function(wrap_pyfunction!(omni_instance_gradient, m)?)?;
    m.add_function(wrap_pyfunction!(courant_axioms_check, m)?)?;
    m.add_function(wrap_pyfunction!(dirac_check_json, m)?)?;
    m.add_function(wrap_pyfunction!(linearize_intertwines, m)?)?;
    Ok(())
}
