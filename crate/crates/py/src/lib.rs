//! Python bindings. Complex numbers cross as Python `complex`; Grassmann
//! elements cross as lists of `(monomial, coefficient)` pairs in canonical
//! order, with `"1"` for the body.

use std::path::PathBuf;

use osp22::coherent::{coherent_closed, series_modes as modes_needed, CoherentParams, SERIES_TOL};
use osp22::config::RunConfig;
use osp22::generators::GeneratorName;
use osp22::grassmann::GrassmannElement;
use osp22::harness::{Suite, VerificationReport};
use osp22::symbols::{self, Convention};
use osp22::{Complex64, Error};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Numeric { .. } | Error::Calibration(_) | Error::Io(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn terms(g: &GrassmannElement) -> Vec<(String, Complex64)> {
    g.to_terms()
        .into_iter()
        .map(|t| {
            let name = if t.monomial.is_empty() { "1".to_string() } else { t.monomial };
            (name, Complex64::new(t.re, t.im))
        })
        .collect()
}

fn params(z: Complex64, alpha: Complex64) -> PyResult<CoherentParams> {
    CoherentParams::new(z, alpha).map_err(to_py)
}

/// Runs a suite and returns `(passed, report_json)`.
#[pyfunction]
#[pyo3(signature = (suite, nmax=None, nodes=None, seed=None, config=None))]
fn verify(
    py: Python<'_>,
    suite: &str,
    nmax: Option<usize>,
    nodes: Option<usize>,
    seed: Option<u64>,
    config: Option<PathBuf>,
) -> PyResult<(bool, String)> {
    let suite: Suite = suite.parse().map_err(to_py)?;
    let mut cfg = RunConfig::load(config.as_deref()).map_err(to_py)?;
    if let Some(n) = nmax {
        cfg.nmax = n;
    }
    if let Some(n) = nodes {
        cfg.nodes = n;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let report = py.detach(|| VerificationReport::run(suite, &cfg)).map_err(to_py)?;
    Ok((report.pass(), report.to_json().map_err(to_py)?))
}

/// `(x, ψ_z(x, t), φ_z(x, t))` at each x.
#[pyfunction]
#[pyo3(signature = (z, t, xs, alpha=Complex64::new(0.0, 0.0)))]
fn profile(z: Complex64, t: f64, xs: Vec<f64>, alpha: Complex64) -> PyResult<Vec<(f64, Complex64, Complex64)>> {
    let closed = coherent_closed(&params(z, alpha)?, t).map_err(to_py)?;
    Ok(xs.into_iter().map(|x| (x, closed.psi(x), closed.phi(x))).collect())
}

/// The Grassmann-valued normalization `(Ψ|Ψ)` of the closed form.
#[pyfunction]
#[pyo3(signature = (z, alpha, t=0.0, nodes=200))]
fn super_norm(z: Complex64, alpha: Complex64, t: f64, nodes: usize) -> PyResult<Vec<(String, Complex64)>> {
    let closed = coherent_closed(&params(z, alpha)?, t).map_err(to_py)?;
    Ok(terms(&closed.super_norm(nodes).map_err(to_py)?))
}

/// Berezin symbol of a generator (`"K0"`, `"K+"`, `"V-"`, ...) at `(z, α)`.
#[pyfunction]
#[pyo3(signature = (generator, z, alpha=Complex64::new(0.0, 0.0), cap=osp22::coherent::SERIES_CAP))]
fn symbol(generator: &str, z: Complex64, alpha: Complex64, cap: usize) -> PyResult<Vec<(String, Complex64)>> {
    let name: GeneratorName = generator.parse().map_err(to_py)?;
    Ok(terms(&symbols::generator_symbol(name, &params(z, alpha)?, cap).map_err(to_py)?))
}

/// Closed-form symbol under `"identity"` or `"conjugate"` reading.
#[pyfunction]
#[pyo3(signature = (generator, z, alpha=Complex64::new(0.0, 0.0), convention="conjugate"))]
fn closed_form_symbol(
    generator: &str,
    z: Complex64,
    alpha: Complex64,
    convention: &str,
) -> PyResult<Vec<(String, Complex64)>> {
    let name: GeneratorName = generator.parse().map_err(to_py)?;
    let convention = match convention {
        "identity" => Convention::Identity,
        "conjugate" => Convention::Conjugate,
        other => return Err(PyValueError::new_err(format!("unknown convention {other:?}"))),
    };
    Ok(terms(&symbols::closed_form_symbol(name, &params(z, alpha)?, convention).map_err(to_py)?))
}

/// `(t, S(xθ), S(pθ))` as coefficients of `ᾱ_gen`.
#[pyfunction]
#[pyo3(signature = (z, alpha, times, nodes=200))]
fn trajectory(z: Complex64, alpha: Complex64, times: Vec<f64>, nodes: usize) -> PyResult<Vec<(f64, Complex64, Complex64)>> {
    let points = symbols::trajectory(&params(z, alpha)?, &times, osp22::coherent::SERIES_CAP, nodes).map_err(to_py)?;
    Ok(points.into_iter().map(|p| (p.t, p.x_theta, p.p_theta)).collect())
}

/// Modes per sector the exponential series needs at `z`.
#[pyfunction]
#[pyo3(signature = (z, cap=osp22::coherent::SERIES_CAP))]
fn series_modes(z: Complex64, cap: usize) -> PyResult<usize> {
    Ok(modes_needed(z, cap, SERIES_TOL).map_err(to_py)?.0)
}

#[pymodule]
#[pyo3(name = "_native")]
fn native(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(profile, m)?)?;
    m.add_function(wrap_pyfunction!(super_norm, m)?)?;
    m.add_function(wrap_pyfunction!(symbol, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(trajectory, m)?)?;
    m.add_function(wrap_pyfunction!(series_modes, m)?)?;
    m.add("SUITES", ["grassmann", "basis", "superspace", "algebra", "coherent", "all"])?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_name_the_body() {
        let alg = osp22::grassmann::GeneratorSet::standard();
        let g = GrassmannElement::scalar(&alg, Complex64::new(2.0, 0.0))
            .add(&GrassmannElement::generator(&alg, osp22::grassmann::ALPHA))
            .unwrap();
        let t = terms(&g);
        assert_eq!(t[0], ("1".to_string(), Complex64::new(2.0, 0.0)));
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn errors_map_by_kind() {
        Python::initialize();
        Python::attach(|py| {
            assert!(to_py(Error::Domain("x".into())).is_instance_of::<PyValueError>(py));
            assert!(to_py(Error::Calibration("x".into())).is_instance_of::<PyRuntimeError>(py));
        });
    }
}
