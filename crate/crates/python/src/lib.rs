//! Python module `cuspidal`. Rationals cross the boundary as
//! `fractions.Fraction`, matrices and indices as small frozen classes.

use num_bigint::BigInt;
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cuspidal_core::eisenstein::{self, EisIndex};
use cuspidal_core::periods::{self, DedekindMode, GammaElement};
use cuspidal_core::report::{self, Format, SweepSpec, TableKind};
use cuspidal_core::{characters, cusps, CuspRep, Error, LevelShape, QuadExt, Rational};

type CuspValues = Vec<((u64, u64, u64, u64), PyQuadExt)>;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((q.numer().clone(), q.denom().clone()))
}

/// `rat + irr·g` with `g² = disc`.
#[pyclass(name = "QuadExt", skip_from_py_object, frozen, eq)]
#[derive(Clone, PartialEq)]
struct PyQuadExt(QuadExt);

#[pymethods]
impl PyQuadExt {
    #[getter]
    fn rat<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.rat)
    }

    #[getter]
    fn irr<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.irr)
    }

    #[getter]
    fn disc(&self) -> i64 {
        self.0.disc
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __repr__(&self) -> String {
        format!("QuadExt({})", self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyclass(name = "LevelShape", skip_from_py_object, frozen, eq, hash)]
#[derive(Clone, PartialEq, Hash)]
struct PyLevelShape(LevelShape);

#[pymethods]
impl PyLevelShape {
    #[new]
    #[pyo3(signature = (d, c = 1))]
    fn new(d: u64, c: u64) -> PyResult<Self> {
        LevelShape::new(d, c).map(Self).map_err(err)
    }

    #[getter(D)]
    fn d(&self) -> u64 {
        self.0.d
    }

    #[getter(C)]
    fn c(&self) -> u64 {
        self.0.c
    }

    fn level(&self) -> u64 {
        self.0.level()
    }

    /// `(r, s, t, x, width)` for every cusp representative.
    fn cusps(&self) -> Vec<(u64, u64, u64, u64, u64)> {
        cusps::enumerate_cusps(&self.0)
            .into_iter()
            .map(|c| (c.r, c.s, c.t, c.x, c.width()))
            .collect()
    }

    /// The quadratic eigenbasis indices on this level.
    fn indices(&self) -> Vec<PyEisIndex> {
        eisenstein::enumerate_h(&self.0).into_iter().map(PyEisIndex).collect()
    }

    fn __repr__(&self) -> String {
        format!("LevelShape(D={}, C={})", self.0.d, self.0.c)
    }
}

#[pyclass(name = "EisIndex", skip_from_py_object, frozen, eq)]
#[derive(Clone, PartialEq)]
struct PyEisIndex(EisIndex);

#[pymethods]
impl PyEisIndex {
    #[new]
    #[pyo3(signature = (shape, m, l, f = 1))]
    fn new(shape: &PyLevelShape, m: u64, l: u64, f: u64) -> PyResult<Self> {
        let psi = characters::quad_char(f).map_err(err)?;
        EisIndex::new(shape.0, m, l, psi).map(Self).map_err(err)
    }

    #[getter(M)]
    fn m(&self) -> u64 {
        self.0.m
    }

    #[getter(L)]
    fn l(&self) -> u64 {
        self.0.l
    }

    #[getter]
    fn f(&self) -> u64 {
        self.0.f()
    }

    #[getter]
    fn shape(&self) -> PyLevelShape {
        PyLevelShape(self.0.shape)
    }

    /// Coefficients `a_0, …, a_terms`.
    fn qexp(&self, terms: usize) -> PyResult<Vec<PyQuadExt>> {
        let s = eisenstein::eis_qexp(&self.0, terms).map_err(err)?;
        Ok(s.coeffs().iter().cloned().map(PyQuadExt).collect())
    }

    fn eigenvalue(&self, ell: u64) -> PyQuadExt {
        PyQuadExt(eisenstein::eigenvalue(&self.0, ell))
    }

    #[pyo3(signature = (terms, primes = vec![2, 3, 5, 7, 11, 13]))]
    fn verify_eigenform(&self, terms: usize, primes: Vec<u64>) -> PyResult<bool> {
        Ok(eisenstein::verify_eigenform(&self.0, terms, &primes).map_err(err)?.is_ok())
    }

    fn constant_term(&self, r: u64, s: u64, t: u64, x: u64) -> PyResult<PyQuadExt> {
        eisenstein::constant_term(&self.0, &CuspRep::new(r, s, t, x))
            .map(PyQuadExt)
            .map_err(err)
    }

    /// `((r, s, t, x), a₀)` at every cusp.
    fn constant_terms(&self) -> PyResult<CuspValues> {
        let t = eisenstein::constant_term_table(&self.0).map_err(err)?;
        Ok(t.entries
            .into_iter()
            .map(|(c, v)| ((c.r, c.s, c.t, c.x), PyQuadExt(v)))
            .collect())
    }

    /// `(order, inverted primes)`.
    fn cuspidal_order(&self) -> PyResult<(BigInt, Vec<u64>)> {
        let o = eisenstein::cuspidal_order(&self.0).map_err(err)?;
        Ok((o.order, o.inverted))
    }

    fn __repr__(&self) -> String {
        format!("EisIndex({})", self.0)
    }
}

#[pyclass(name = "GammaElement", skip_from_py_object, frozen, eq, hash)]
#[derive(Clone, PartialEq, Hash)]
struct PyGamma(GammaElement);

#[pymethods]
impl PyGamma {
    #[new]
    fn new(a: i64, b: i64, c: i64, d: i64) -> PyResult<Self> {
        GammaElement::new(a, b, c, d).map(Self).map_err(err)
    }

    #[getter]
    fn entries(&self) -> (i64, i64, i64, i64) {
        (self.0.a, self.0.b, self.0.c, self.0.d)
    }

    fn is_in_gamma0(&self, level: u64) -> bool {
        self.0.is_in_gamma0(level)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.mul(&other.0).map(Self).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("GammaElement{}", self.0)
    }
}

#[pyfunction]
#[pyo3(signature = (h, k, mode = "fast"))]
fn dedekind_sum<'py>(py: Python<'py>, h: i64, k: u64, mode: &str) -> PyResult<Bound<'py, PyAny>> {
    let mode: DedekindMode = mode.parse().map_err(err)?;
    fraction(py, &periods::dedekind_sum(h, k, mode).map_err(err)?)
}

#[pyfunction]
fn rademacher_phi<'py>(py: Python<'py>, g: &PyGamma) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &periods::rademacher_phi(&g.0))
}

#[pyfunction]
fn xi<'py>(py: Python<'py>, m: u64, shape: &PyLevelShape, g: &PyGamma) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &periods::xi(m, &shape.0, &g.0).map_err(err)?)
}

#[pyfunction]
fn two_part_check(m: u64, shape: &PyLevelShape, g: &PyGamma) -> PyResult<bool> {
    periods::two_part_check(m, &shape.0, &g.0).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (m, shape, g, terms = 2000))]
fn numeric_period(m: u64, shape: &PyLevelShape, g: &PyGamma, terms: usize) -> PyResult<Complex64> {
    periods::numeric_period(m, &shape.0, &g.0, terms).map_err(err)
}

#[pyfunction]
fn random_gamma0(n: u64, height: u64, seed: u64) -> PyGamma {
    PyGamma(periods::random_gamma0(n, height, &mut ChaCha8Rng::seed_from_u64(seed)))
}

#[pyfunction]
fn order_nml(m: u64, l: u64, shape: &PyLevelShape) -> PyResult<u64> {
    eisenstein::order_nml(m, l, &shape.0).map_err(err)
}

#[pyfunction]
fn eisenstein_dimension(n: u64) -> u64 {
    eisenstein::eisenstein_dimension(n)
}

#[pyfunction]
fn cusp_count(n: u64) -> u64 {
    cusps::cusp_count(n)
}

/// A cusps, constants or orders table rendered as JSON or CSV.
#[pyfunction]
#[pyo3(signature = (kind, shape, format = "json"))]
fn emit_table(kind: &str, shape: &PyLevelShape, format: &str) -> PyResult<String> {
    let kind: TableKind = kind.parse().map_err(err)?;
    let format: Format = format.parse().map_err(err)?;
    let t = report::emit_table(kind, &shape.0, None).map_err(err)?;
    t.render(format).map_err(err)
}

/// Runs a sweep given its JSON spec; returns the records as JSON.
#[pyfunction]
#[pyo3(signature = (spec_json, jobs = 0))]
fn run_sweep(py: Python<'_>, spec_json: &str, jobs: usize) -> PyResult<String> {
    let spec: SweepSpec = serde_json::from_str(spec_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let out = py.detach(|| report::run_sweep(&spec, None, jobs)).map_err(err)?;
    serde_json::to_string(&out.records).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn cuspidal(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuadExt>()?;
    m.add_class::<PyLevelShape>()?;
    m.add_class::<PyEisIndex>()?;
    m.add_class::<PyGamma>()?;
    m.add_function(wrap_pyfunction!(dedekind_sum, m)?)?;
    m.add_function(wrap_pyfunction!(rademacher_phi, m)?)?;
    m.add_function(wrap_pyfunction!(xi, m)?)?;
    m.add_function(wrap_pyfunction!(two_part_check, m)?)?;
    m.add_function(wrap_pyfunction!(numeric_period, m)?)?;
    m.add_function(wrap_pyfunction!(random_gamma0, m)?)?;
    m.add_function(wrap_pyfunction!(order_nml, m)?)?;
    m.add_function(wrap_pyfunction!(eisenstein_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(cusp_count, m)?)?;
    m.add_function(wrap_pyfunction!(emit_table, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    m.add("SCHEMA_VERSION", report::SCHEMA_VERSION)?;
    Ok(())
}
