//! Python bindings: polynomials, Gröbner bases, the Poisson bracket, formal Darboux
//! coordinates and the scenario runner.

use std::path::PathBuf;

use num_bigint::BigInt;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use chevalley_core::darboux::{darboux_normalize, FormalTwoForm};
use chevalley_core::groebner::{
    buchberger, hilbert_series_of_basis, krull_dimension_of_basis, GbCache, GbOptions, GroebnerBasis as CoreBasis,
    Ideal,
};
use chevalley_core::poisson;
use chevalley_core::poly::{MonomialOrder, Poly as CorePoly, PolyRing, Ring};
use chevalley_core::scenario::{list_corpus, run_scenario, Flag, Report as CoreReport, RunOptions, Scenario};

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn ring_of(variables: Vec<String>) -> PyResult<Ring> {
    PolyRing::new(&variables).map_err(value_error)
}

fn parse_order(order: &str) -> PyResult<MonomialOrder> {
    match order {
        "lex" => Ok(MonomialOrder::Lex),
        "grevlex" => Ok(MonomialOrder::GrevLex),
        other => other
            .strip_prefix("block(")
            .and_then(|s| s.strip_suffix(')'))
            .and_then(|k| k.parse().ok())
            .map(MonomialOrder::Block)
            .ok_or_else(|| value_error(format!("unknown order `{other}`; use lex, grevlex or block(k)"))),
    }
}

/// A polynomial with rational coefficients in named variables.
#[pyclass(frozen, skip_from_py_object, module = "chevalley")]
#[derive(Clone)]
struct Poly {
    inner: CorePoly,
}

impl Poly {
    fn wrap(inner: CorePoly) -> Self {
        Poly { inner }
    }
}

#[pymethods]
impl Poly {
    #[new]
    fn new(text: &str, variables: Vec<String>) -> PyResult<Self> {
        let ring = ring_of(variables)?;
        CorePoly::parse(text, &ring).map(Poly::wrap).map_err(value_error)
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.ring().names().to_vec()
    }

    fn __add__(&self, other: &Poly) -> PyResult<Poly> {
        self.inner.checked_add(&other.inner).map(Poly::wrap).map_err(value_error)
    }

    fn __sub__(&self, other: &Poly) -> PyResult<Poly> {
        self.inner.checked_sub(&other.inner).map(Poly::wrap).map_err(value_error)
    }

    fn __mul__(&self, other: &Poly) -> PyResult<Poly> {
        self.inner.checked_mul(&other.inner).map(Poly::wrap).map_err(value_error)
    }

    fn __neg__(&self) -> Poly {
        Poly::wrap(self.inner.neg())
    }

    fn __pow__(&self, exponent: u32, _modulo: Option<u32>) -> Poly {
        Poly::wrap(self.inner.pow(exponent))
    }

    fn __eq__(&self, other: &Poly) -> bool {
        self.inner.same_ring(&other.inner) && self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}', {:?})", self.inner.to_text(), self.inner.ring().names())
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn total_degree(&self) -> Option<u32> {
        self.inner.total_degree()
    }

    fn homogeneous_part(&self, degree: u32) -> Poly {
        Poly::wrap(self.inner.homogeneous_part(degree))
    }

    /// Partial derivative with respect to the named variable.
    fn derivative(&self, variable: &str) -> PyResult<Poly> {
        let i = self
            .inner
            .ring()
            .index_of(variable)
            .ok_or_else(|| PyKeyError::new_err(variable.to_string()))?;
        Ok(Poly::wrap(self.inner.partial_derivative(i)))
    }
}

/// A reduced Gröbner basis.
#[pyclass(frozen, module = "chevalley")]
struct GroebnerBasis {
    inner: CoreBasis,
}

#[pymethods]
impl GroebnerBasis {
    #[new]
    #[pyo3(signature = (generators, variables, order = "grevlex", max_steps = None, max_seconds = None))]
    fn new(
        generators: Vec<String>,
        variables: Vec<String>,
        order: &str,
        max_steps: Option<u64>,
        max_seconds: Option<f64>,
    ) -> PyResult<Self> {
        let ring = ring_of(variables)?;
        let ideal = Ideal::parse(&generators, &ring).map_err(value_error)?;
        let mut opts = GbOptions::default();
        opts.max_steps = max_steps.unwrap_or(opts.max_steps);
        opts.max_seconds = max_seconds.unwrap_or(opts.max_seconds);
        let inner = buchberger(&ideal, parse_order(order)?, &opts).map_err(value_error)?;
        Ok(GroebnerBasis { inner })
    }

    fn basis(&self) -> Vec<Poly> {
        self.inner.basis().iter().cloned().map(Poly::wrap).collect()
    }

    fn normal_form(&self, p: &Poly) -> PyResult<Poly> {
        self.check_ring(p)?;
        Ok(Poly::wrap(self.inner.normal_form(&p.inner)))
    }

    fn contains(&self, p: &Poly) -> PyResult<bool> {
        self.check_ring(p)?;
        Ok(self.inner.contains(&p.inner))
    }

    /// The Hilbert series of the quotient as a rational function in `t`.
    fn hilbert_series(&self) -> PyResult<String> {
        Ok(hilbert_series_of_basis(&self.inner).map_err(value_error)?.reduced().to_string())
    }

    /// Dimensions of the graded pieces of the quotient in degrees `0..=upto`.
    fn hilbert_function(&self, upto: usize) -> PyResult<Vec<BigInt>> {
        Ok(hilbert_series_of_basis(&self.inner).map_err(value_error)?.expand(upto))
    }

    fn krull_dimension(&self) -> PyResult<usize> {
        krull_dimension_of_basis(&self.inner).map_err(value_error)
    }

    fn __len__(&self) -> usize {
        self.inner.basis().len()
    }
}

impl GroebnerBasis {
    fn check_ring(&self, p: &Poly) -> PyResult<()> {
        if p.inner.ring() == self.inner.ring() {
            Ok(())
        } else {
            Err(value_error("polynomial lives in a different ring"))
        }
    }
}

/// `{f, g}` on a ring whose variables are `x_1..x_n, y_1..y_n` in that order.
#[pyfunction]
fn bracket(f: &Poly, g: &Poly) -> PyResult<Poly> {
    poisson::bracket(&f.inner, &g.inner).map(Poly::wrap).map_err(value_error)
}

/// Formal Darboux coordinates for `Σ w_ab dz_a∧dz_b`, given as `(left, right, coefficient)`
/// entries; returns the coordinates `ξ` and the degree through which they are certified.
#[pyfunction]
#[pyo3(signature = (variables, entries, truncation = 5))]
fn darboux(variables: Vec<String>, entries: Vec<(String, String, String)>, truncation: u32) -> PyResult<(Vec<Poly>, u32)> {
    let ring = ring_of(variables)?;
    let index = |name: &str| ring.index_of(name).ok_or_else(|| PyKeyError::new_err(name.to_string()));
    let mut upper = Vec::new();
    for (left, right, coefficient) in &entries {
        let p = CorePoly::parse(coefficient, &ring).map_err(value_error)?;
        upper.push(((index(left)?, index(right)?), p));
    }
    let form = FormalTwoForm::from_upper(&ring, &upper, truncation).map_err(value_error)?;
    let result = darboux_normalize(&form).map_err(value_error)?;
    Ok((result.change.xi.into_iter().map(Poly::wrap).collect(), result.verified_through))
}

/// The outcome of running a scenario.
#[pyclass(frozen, module = "chevalley")]
struct Report {
    inner: CoreReport,
}

#[pymethods]
impl Report {
    #[getter]
    fn label(&self) -> &str {
        &self.inner.label
    }

    #[getter]
    fn verdict(&self) -> &'static str {
        self.inner.verdict.name()
    }

    #[getter]
    fn consistent_through(&self) -> Option<u32> {
        self.inner.consistent_through
    }

    /// `(check, status)` pairs in run order.
    fn checks(&self) -> Vec<(&'static str, &'static str)> {
        self.inner.checks.iter().map(|c| (c.check.name(), c.status.name())).collect()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Report('{}', {})", self.inner.label, self.inner.verdict_line())
    }
}

/// Bundled scenarios as `(label, summary, enabled)`, optionally only those declaring `flag`.
#[pyfunction]
#[pyo3(signature = (flag = None))]
fn list_scenarios(flag: Option<&str>) -> PyResult<Vec<(String, String, bool)>> {
    let flag = match flag {
        None => None,
        Some(f) => Some(Flag::parse(f).ok_or_else(|| value_error(format!("unknown flag `{f}`")))?),
    };
    Ok(list_corpus(flag).into_iter().map(|s| (s.label, s.summary, s.enabled)).collect())
}

/// Run a bundled scenario by label, or a scenario file by path.
#[pyfunction]
#[pyo3(signature = (target, degree_bound = None, budget_steps = None, budget_seconds = None, cache_dir = None))]
fn run(
    py: Python<'_>,
    target: &str,
    degree_bound: Option<u32>,
    budget_steps: Option<u64>,
    budget_seconds: Option<f64>,
    cache_dir: Option<PathBuf>,
) -> PyResult<Report> {
    let scenario = Scenario::load_any(target).map_err(value_error)?;
    let options = RunOptions {
        cache: cache_dir.map(GbCache::new),
        degree_bound,
        budget_steps,
        budget_seconds,
    };
    let inner = py.detach(|| run_scenario(&scenario, &options));
    Ok(Report { inner })
}

#[pymodule]
fn chevalley(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Poly>()?;
    m.add_class::<GroebnerBasis>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(bracket, m)?)?;
    m.add_function(wrap_pyfunction!(darboux, m)?)?;
    m.add_function(wrap_pyfunction!(list_scenarios, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
