use arbiter_core::market::Chain;
use arbiter_core::report::{self, Suite};
use arbiter_core::semigroup::semigroup;
use arbiter_core::synthesis::{self, classify, formulas, TargetExponents};
use arbiter_core::RateEnsemble;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: arbiter_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Number of distinct products of the discrepancy matrices.
#[pyfunction]
fn semigroup_size() -> usize {
    semigroup().len()
}

/// Discrepancy triple of six principal log-rates.
#[pyfunction]
fn discrepancies(log_rates: [f64; 6]) -> PyResult<[f64; 3]> {
    Ok(RateEnsemble::numeric(log_rates).map_err(err)?.discrepancies().values)
}

/// Applies `chain` (1-based arbitrage numbers) to numeric log-rates and
/// returns every visited state.
#[pyfunction]
#[pyo3(signature = (log_rates, chain, steps=None))]
fn run_chain(log_rates: [f64; 6], chain: Vec<usize>, steps: Option<usize>) -> PyResult<Vec<[f64; 6]>> {
    let r = RateEnsemble::numeric(log_rates).map_err(err)?;
    let c = Chain::finite(chain);
    let n = steps.unwrap_or(c.len());
    let traj = r.apply_chain(&c, n).map_err(err)?;
    Ok(traj.iter().map(RateEnsemble::log_rates).collect())
}

/// Exact α-exponents along a chain from perturbed start `start`.
#[pyfunction]
#[pyo3(signature = (start, chain, periodic=false, steps=None))]
fn run_lattice(start: usize, chain: Vec<usize>, periodic: bool, steps: Option<usize>) -> PyResult<Vec<[i64; 6]>> {
    let r = synthesis::standard_start(start, synthesis::DEFAULT_ALPHA).map_err(err)?;
    let c = if periodic { Chain::periodic(chain) } else { Chain::finite(chain) };
    let n = steps.unwrap_or(c.len());
    let traj = r.apply_chain(&c, n).map_err(err)?;
    Ok(traj.iter().map(|s| s.coeffs().expect("lattice").map(|x| x.a())).collect())
}

/// Chain from start `start` to exponents (n1, n2, n3).
#[pyfunction]
#[pyo3(signature = (n1, n2, n3, start=1, method="bfs"))]
fn synthesize<'py>(py: Python<'py>, n1: i64, n2: i64, n3: i64, start: usize, method: &str) -> PyResult<Bound<'py, PyDict>> {
    let res = formulas::synthesize(start, TargetExponents::new(n1, n2, n3), method).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("chain", res.chain)?;
    d.set_item("length", res.length)?;
    d.set_item("bound", res.bound)?;
    d.set_item("method", res.method)?;
    d.set_item("deviation", res.deviation)?;
    d.set_item("note", res.note)?;
    Ok(d)
}

/// The six lattice step multipliers for integer discrepancy weights.
#[pyfunction]
fn commensurate_steps(k: [i64; 3]) -> PyResult<Vec<i64>> {
    let spec = classify::reachability_classification(&classify::DeclaredDiscrepancy::Commensurate { gamma: 1.0, k })
        .map_err(err)?;
    match spec {
        classify::LatticeSpec::Lattice { multipliers, .. } => Ok(multipliers),
        other => Err(PyValueError::new_err(format!("not a lattice case: {other:?}"))),
    }
}

/// Runs a verification suite; returns (name, status, details) triples.
#[pyfunction]
#[pyo3(signature = (suite="core"))]
fn verify(py: Python<'_>, suite: &str) -> PyResult<Vec<(String, String, String)>> {
    let suite: Suite = suite.parse().map_err(err)?;
    let rep = py.detach(|| report::run_suite(suite)).map_err(err)?;
    Ok(rep.checks.into_iter().map(|c| (c.name, c.status.to_string(), c.details)).collect())
}

#[pymodule]
fn arbiter(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(semigroup_size, m)?)?;
    m.add_function(wrap_pyfunction!(discrepancies, m)?)?;
    m.add_function(wrap_pyfunction!(run_chain, m)?)?;
    m.add_function(wrap_pyfunction!(run_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize, m)?)?;
    m.add_function(wrap_pyfunction!(commensurate_steps, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
