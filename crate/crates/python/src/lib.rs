//! Python bindings: tree-pair elements of F, vacuum coefficients, Gram
//! matrices, the limit experiments and the acceptance suite.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use wysiwyg::thompson::rewrite::multiply_by_rewriting;
use wysiwyg::thompson::FElement;
use wysiwyg::wysiwyg::{min_eigenvalue, Engine};
use wysiwyg::{Error, Tree, Vacuum};

fn err(e: Error) -> PyErr {
    if e.is_cap() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn mode(s: &str) -> PyResult<Vacuum> {
    match s {
        "psi" => Ok(Vacuum::Psi),
        "omega" => Ok(Vacuum::Omega),
        _ => Err(PyValueError::new_err(format!("unknown mode {s:?}, expected 'psi' or 'omega'"))),
    }
}

/// An element of Thompson's group F as a reduced tree pair.
#[pyclass(name = "Element", frozen, from_py_object, module = "wysiwyg_py")]
#[derive(Clone)]
struct PyElement(FElement);

#[pymethods]
impl PyElement {
    /// Parses a tree pair `"top/bottom"` or a word such as `"A^2 B^-1"`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyElement).map_err(err)
    }

    #[staticmethod]
    fn identity() -> Self {
        PyElement(FElement::identity())
    }

    #[staticmethod]
    fn a() -> Self {
        PyElement(FElement::a())
    }

    #[staticmethod]
    fn b() -> Self {
        PyElement(FElement::b())
    }

    #[staticmethod]
    fn d() -> Self {
        PyElement(FElement::d())
    }

    #[staticmethod]
    fn a_power(n: i64) -> Self {
        PyElement(FElement::a_power(n))
    }

    #[getter]
    fn top(&self) -> String {
        self.0.top().to_string()
    }

    #[getter]
    fn bottom(&self) -> String {
        self.0.bottom().to_string()
    }

    fn leaf_count(&self) -> usize {
        self.0.leaf_count()
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    fn inverse(&self) -> Self {
        PyElement(self.0.inverse())
    }

    /// The shift into the right half of the interval.
    fn shift(&self) -> Self {
        PyElement(self.0.shift())
    }

    fn pow(&self, n: i64) -> Self {
        PyElement(self.0.pow(n))
    }

    /// The product computed by rewriting strand diagrams instead of grafting.
    fn multiply_by_rewriting(&self, other: &PyElement) -> Self {
        PyElement(multiply_by_rewriting(&self.0, &other.0))
    }

    /// Breakpoints of the PL homeomorphism as `(x, y)` pairs of rational strings.
    fn breakpoints(&self) -> Vec<(String, String)> {
        self.0
            .to_pl()
            .points()
            .iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect()
    }

    fn __mul__(&self, other: &PyElement) -> Self {
        PyElement(self.0.multiply(&other.0))
    }

    fn __eq__(&self, other: &PyElement) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element('{}')", self.0)
    }
}

/// `⟨gξ, ξ⟩` for the vacuum of `mode`, as an exact rational function in δ.
#[pyfunction]
#[pyo3(signature = (g, mode = "psi"))]
fn coeff_exact(g: &PyElement, mode: &str) -> PyResult<String> {
    let m = self::mode(mode)?;
    Engine::exact().coeff(m, &g.0).map(|s| s.to_string()).map_err(err)
}

/// `⟨gξ, ξ⟩` at a numeric δ.
#[pyfunction]
#[pyo3(signature = (g, delta, mode = "psi"))]
fn coeff(g: &PyElement, delta: f64, mode: &str) -> PyResult<f64> {
    let m = self::mode(mode)?;
    Engine::numeric(delta).coeff(m, &g.0).map(|s| s.to_f64(delta)).map_err(err)
}

/// Gram matrix `⟨g_i ξ, g_j ξ⟩` at a numeric δ.
#[pyfunction]
#[pyo3(signature = (elements, delta, mode = "psi"))]
fn gram(elements: Vec<PyElement>, delta: f64, mode: &str) -> PyResult<Vec<Vec<f64>>> {
    let m = self::mode(mode)?;
    let els: Vec<FElement> = elements.into_iter().map(|e| e.0).collect();
    let g = Engine::numeric(delta).gram(m, &els).map_err(err)?;
    Ok(g.iter().map(|r| r.iter().map(|s| s.to_f64(delta)).collect()).collect())
}

/// Smallest eigenvalue of the Gram matrix of `elements` at δ.
#[pyfunction]
#[pyo3(signature = (elements, delta, mode = "psi"))]
fn gram_min_eigenvalue(elements: Vec<PyElement>, delta: f64, mode: &str) -> PyResult<f64> {
    let m = self::mode(mode)?;
    let els: Vec<FElement> = elements.into_iter().map(|e| e.0).collect();
    let g = Engine::exact().gram(m, &els).map_err(err)?;
    Ok(min_eigenvalue(&g, delta))
}

/// Exact `⟨Aⁿξ, ξ⟩` for `n = 1..n_max`.
#[pyfunction]
#[pyo3(signature = (n_max, mode = "omega"))]
fn an_decay(n_max: usize, mode: &str) -> PyResult<Vec<String>> {
    let m = self::mode(mode)?;
    let t = Engine::exact().decay_table(m, n_max).map_err(err)?;
    Ok(t.into_iter().map(|(_, v, _)| v.to_string()).collect())
}

/// Smallest `N` from which `⟨AⁿgΨ, hΨ⟩ = ⟨gΨ,Ψ⟩⟨Ψ,hΨ⟩` holds up to `n_max`.
#[pyfunction]
fn lemma43_threshold(g: &PyElement, h: &PyElement, n_max: usize) -> PyResult<Option<usize>> {
    Ok(Engine::exact().lemma43_threshold(&g.0, &h.0, n_max).map_err(err)?.n)
}

/// Smallest `N` from which `⟨σⁿ(g)ξ, ξ⟩ = ⟨gΩ,Ω⟩⟨ξ,ξ⟩`, with `ξ` the Ψ vacuum on `tree`.
#[pyfunction]
#[pyo3(signature = (g, n_max, tree = "((.,.),(.,.))"))]
fn sigma_limit(g: &PyElement, n_max: usize, tree: &str) -> PyResult<Option<usize>> {
    let t: Tree = tree.parse().map_err(err)?;
    let e = Engine::exact();
    let xi = e.vacuum_on(Vacuum::Psi, &t).map_err(err)?;
    Ok(e.sigma_limit_check(&g.0, &xi, &xi, n_max).map_err(err)?.n)
}

/// Runs the acceptance suite: `(id, name, passed, detail)` per criterion.
#[pyfunction]
fn verify(py: Python<'_>) -> Vec<(u32, String, bool, String)> {
    py.detach(|| {
        wysiwyg::verify::run_all()
            .into_iter()
            .map(|r| (r.id, r.name.to_string(), r.passed, r.detail))
            .collect()
    })
}

#[pymodule]
fn wysiwyg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyElement>()?;
    m.add_function(wrap_pyfunction!(coeff_exact, m)?)?;
    m.add_function(wrap_pyfunction!(coeff, m)?)?;
    m.add_function(wrap_pyfunction!(gram, m)?)?;
    m.add_function(wrap_pyfunction!(gram_min_eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(an_decay, m)?)?;
    m.add_function(wrap_pyfunction!(lemma43_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_limit, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
