//! Python bindings: arithmetic functions, sieves, sublinear summatory
//! functions, step-function integrals and the claim runners.

use pyo3::exceptions::{PyOSError, PyOverflowError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use liouville_core::arith::{self, ArithKind, Sieve};
use liouville_core::cli::verify::{run_suite, Suite};
use liouville_core::dirichlet::{conv_with_q, lambda_conv_q_closed};
use liouville_core::experiments::{
    self as exp, pair_integral, run_zeta_check, ASpec, ClaimOutput, GridSpec,
};
use liouville_core::summatory::{self, SummatoryCache};
use liouville_core::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Domain(_) | Error::Hypothesis(_) | Error::Contract(_) | Error::Format { .. } => {
            PyValueError::new_err(e.to_string())
        }
        Error::Capacity { .. } | Error::Overflow(_) => PyOverflowError::new_err(e.to_string()),
        Error::Io(_) => PyOSError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn kind(name: &str) -> PyResult<ArithKind> {
    match name {
        "lambda" | "liouville" => Ok(ArithKind::Liouville),
        "mobius" | "mu" => Ok(ArithKind::Mobius),
        _ => Err(PyValueError::new_err(format!(
            "unknown function {name:?}; expected \"lambda\" or \"mobius\""
        ))),
    }
}

/// λ(n).
#[pyfunction(name = "liouville")]
fn liouville_value(n: u64) -> PyResult<i8> {
    arith::liouville(n).map_err(py_err)
}

/// μ(n).
#[pyfunction]
fn mobius(n: u64) -> PyResult<i8> {
    arith::mobius(n).map_err(py_err)
}

/// Values of λ or μ on [lo, hi].
#[pyfunction]
#[pyo3(signature = (lo, hi, r#fn = "lambda"))]
fn sieve(lo: u64, hi: u64, r#fn: &str) -> PyResult<Vec<i8>> {
    let table = Sieve::new(kind(r#fn)?).block(lo, hi).map_err(py_err)?;
    Ok(table.into_values())
}

/// (λ ∗ q)(n) from its closed form.
#[pyfunction]
fn lambda_conv_q(n: u64) -> PyResult<i8> {
    lambda_conv_q_closed(n).map_err(py_err)
}

/// L(x) by sieving [1, x].
#[pyfunction]
fn l_sieved(x: u64) -> PyResult<i64> {
    summatory::l_sieved(x).map_err(py_err)
}

/// M(x) by sieving [1, x].
#[pyfunction]
fn m_sieved(x: u64) -> PyResult<i64> {
    summatory::m_sieved(x).map_err(py_err)
}

/// L(x) or M(x) by the sublinear recursion with a fresh cache.
#[pyfunction]
#[pyo3(signature = (x, r#fn = "lambda"))]
fn summatory_sublinear(x: u64, r#fn: &str) -> PyResult<i64> {
    let cache = SummatoryCache::for_target(kind(r#fn)?, x).map_err(py_err)?;
    cache.get(x).map_err(py_err)
}

/// Reusable sublinear summatory evaluator for L or M.
#[pyclass(name = "SummatoryCache", frozen)]
struct PySummatoryCache {
    inner: SummatoryCache,
}

#[pymethods]
impl PySummatoryCache {
    /// Cache sized for arguments up to `x_max`.
    #[new]
    #[pyo3(signature = (x_max, r#fn = "lambda"))]
    fn new(x_max: u64, r#fn: &str) -> PyResult<Self> {
        let inner = SummatoryCache::for_target(kind(r#fn)?, x_max).map_err(py_err)?;
        Ok(Self { inner })
    }

    fn get(&self, x: u64) -> PyResult<i64> {
        self.inner.get(x).map_err(py_err)
    }

    #[getter]
    fn threshold(&self) -> u64 {
        self.inner.threshold()
    }

    fn __len__(&self) -> usize {
        self.inner.memo_len()
    }
}

/// ζ(s) for real s > 1.
#[pyfunction]
fn zeta_real(s: f64) -> PyResult<f64> {
    exp::zeta_real(s).map_err(py_err)
}

/// ζ(2s)/ζ(s) against the truncated integral; returns a dict.
#[pyfunction]
#[pyo3(signature = (s = 2.0, x_max = 100_000))]
fn zeta_check(py: Python<'_>, s: f64, x_max: u64) -> PyResult<Py<PyDict>> {
    let c = run_zeta_check(s, x_max).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("s", c.s)?;
    d.set_item("x_max", c.x_max)?;
    d.set_item("lhs", c.lhs)?;
    d.set_item("rhs", c.rhs)?;
    d.set_item("tail_bound", c.tail_bound)?;
    d.set_item("passed", c.passed())?;
    Ok(d.unbind())
}

/// `∫_1^{√x} h(⌊x/t⌋) L(t)/t² dt` with `h = q ∗ a` for a named `a`.
#[pyfunction]
#[pyo3(signature = (x, a = "square"))]
fn integrate_pair(x: u64, a: &str) -> PyResult<f64> {
    let spec = ASpec::parse(a).map_err(py_err)?;
    let h = conv_with_q(&spec.table(x).map_err(py_err)?).map_err(py_err)?;
    let l = Sieve::new(ArithKind::Liouville)
        .prefix_sums(arith::isqrt(x))
        .map_err(py_err)?;
    pair_integral(x, &h, &l).map_err(py_err)
}

/// Runs an exact-identity suite; returns `(passed, summary)`.
#[pyfunction]
#[pyo3(signature = (suite, n_max = None, seed = 0))]
fn verify(suite: &str, n_max: Option<u64>, seed: u64) -> PyResult<(bool, String)> {
    let suite = match suite {
        "identity" => Suite::Identity,
        "conv-closed-form" => Suite::ConvClosedForm,
        "hyperbola" => Suite::Hyperbola,
        "abel" => Suite::Abel,
        "remark2" => Suite::Remark2,
        _ => return Err(PyValueError::new_err(format!("unknown suite {suite:?}"))),
    };
    let out =
        run_suite(suite, n_max.unwrap_or_else(|| suite.default_n_max()), seed).map_err(py_err)?;
    Ok((out.passed(), out.summary()))
}

fn output_to_dict(py: Python<'_>, out: &ClaimOutput) -> PyResult<Py<PyDict>> {
    let reports = PyList::empty(py);
    for r in &out.reports {
        let d = PyDict::new(py);
        d.set_item("claim", r.claim.label())?;
        d.set_item("x", r.x)?;
        d.set_item("raw", r.raw)?;
        d.set_item("scale", r.scale.to_string())?;
        d.set_item("scaled", r.scaled)?;
        d.set_item("tier", r.tier.label())?;
        reports.append(d)?;
    }
    let fits = PyDict::new(py);
    for (claim, f) in &out.fits {
        let d = PyDict::new(py);
        d.set_item("slope", f.slope)?;
        d.set_item("intercept", f.intercept)?;
        d.set_item("r2", f.r2)?;
        d.set_item("n_points", f.n_points)?;
        d.set_item("dropped_zeros", f.dropped_zeros)?;
        fits.set_item(claim.label(), d)?;
    }
    let failures = PyList::empty(py);
    for f in &out.failures {
        failures.append((f.claim.label(), f.x, f.detail.as_str()))?;
    }
    let d = PyDict::new(py);
    d.set_item("reports", reports)?;
    d.set_item("fits", fits)?;
    d.set_item("failures", failures)?;
    d.set_item("passed", out.passed())?;
    Ok(d.unbind())
}

/// Runs a grid claim and returns `{reports, fits, failures, passed}`.
#[pyfunction]
#[pyo3(signature = (claim, grid = "1e3:1e6", a = "square"))]
fn run_claim(py: Python<'_>, claim: &str, grid: &str, a: &str) -> PyResult<Py<PyDict>> {
    let grid = GridSpec::parse(grid).map_err(py_err)?;
    let spec = || ASpec::parse(a).map_err(py_err);
    let out = match claim {
        "m" => exp::run_claim_m(&grid),
        "en1" => exp::run_claim_en1(&grid),
        "lemma-a" => exp::run_lemma_a(&grid),
        "lemma-b" => exp::run_lemma_b_residual(&grid),
        "lemma-c" => exp::run_lemma_c(&grid),
        "lemma-d" => exp::run_lemma_d(&grid),
        "thm2" => exp::run_theorem2(&spec()?, &grid),
        "mobius" => exp::run_mobius_variant(&spec()?, &grid),
        "remark1" => exp::run_remark1_sum(&grid),
        "remark2" => exp::run_remark2(&grid),
        _ => return Err(PyValueError::new_err(format!("unknown claim {claim:?}"))),
    }
    .map_err(py_err)?;
    output_to_dict(py, &out)
}

#[pymodule]
#[pyo3(name = "liouville")]
pub fn liouville_mod(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(liouville_value, m)?)?;
    m.add_function(wrap_pyfunction!(mobius, m)?)?;
    m.add_function(wrap_pyfunction!(sieve, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_conv_q, m)?)?;
    m.add_function(wrap_pyfunction!(l_sieved, m)?)?;
    m.add_function(wrap_pyfunction!(m_sieved, m)?)?;
    m.add_function(wrap_pyfunction!(summatory_sublinear, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_real, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_check, m)?)?;
    m.add_function(wrap_pyfunction!(integrate_pair, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(run_claim, m)?)?;
    m.add_class::<PySummatoryCache>()?;
    Ok(())
}
