//! Python bindings for `dimer_exciton`.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use dimer_exciton::analysis::{self, EtaEstimate};
use dimer_exciton::dynamics::{self, Basis, DensityMatrix, EvolutionParams, OneExcitationState};
use dimer_exciton::{decay, exciton, BathSpec, Error, ExcitonFrame, RateSet};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NoSolution { .. } | Error::NoMinimum { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Bare dimer: site energies, coupling and reorganization energy in cm⁻¹,
/// asymmetry `|η| e^{iθ}`.
#[pyclass(name = "DimerParams", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDimerParams {
    inner: exciton::DimerParams,
}

#[pymethods]
impl PyDimerParams {
    #[new]
    #[pyo3(signature = (omega1, omega2, j12, lambda1, eta_abs, theta=0.0))]
    fn new(
        omega1: f64,
        omega2: f64,
        j12: f64,
        lambda1: f64,
        eta_abs: f64,
        theta: f64,
    ) -> PyResult<Self> {
        let inner = exciton::DimerParams::new(omega1, omega2, j12, lambda1, eta_abs, theta)
            .map_err(to_py)?;
        Ok(PyDimerParams { inner })
    }

    /// Same dimer with a different asymmetry.
    fn with_eta(&self, eta_abs: f64, theta: f64) -> PyResult<Self> {
        let inner = self.inner.with_eta(eta_abs, theta);
        inner.validate().map_err(to_py)?;
        Ok(PyDimerParams { inner })
    }

    #[getter]
    fn omega1(&self) -> f64 {
        self.inner.omega1
    }
    #[getter]
    fn omega2(&self) -> f64 {
        self.inner.omega2
    }
    #[getter]
    fn j12(&self) -> f64 {
        self.inner.j12
    }
    #[getter]
    fn lambda1(&self) -> f64 {
        self.inner.lambda1
    }
    #[getter]
    fn eta_abs(&self) -> f64 {
        self.inner.eta_abs
    }
    #[getter]
    fn theta(&self) -> f64 {
        self.inner.theta
    }

    /// `1/α` of this dimer.
    fn inverse_alpha(&self) -> f64 {
        decay::inverse_attenuation(&self.inner)
    }

    /// Exciton frame and decay rates as a dict.
    #[pyo3(signature = (temperature=300.0, gamma_d=0.02))]
    fn transform<'py>(
        &self,
        py: Python<'py>,
        temperature: f64,
        gamma_d: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let frame = ExcitonFrame::new(&self.inner).map_err(to_py)?;
        let bath = BathSpec::new(temperature, gamma_d).map_err(to_py)?;
        let rates = RateSet::new(&self.inner, &bath).map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("phi0", frame.phi0)?;
        d.set_item("omega1p", frame.omega1p)?;
        d.set_item("omega2p", frame.omega2p)?;
        d.set_item("omega_plus", frame.omega_plus)?;
        d.set_item("omega_minus", frame.omega_minus)?;
        d.set_item("omega0", frame.omega0)?;
        d.set_item("inverted", frame.inverted)?;
        d.set_item("nbar0", rates.nbar0)?;
        d.set_item("alpha", rates.alpha)?;
        d.set_item("inverse_alpha", rates.inverse_alpha)?;
        d.set_item("gamma", rates.gamma)?;
        d.set_item("lifetime", rates.lifetime.unwrap_or(f64::INFINITY))?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!(
            "DimerParams(omega1={}, omega2={}, j12={}, lambda1={}, eta_abs={}, theta={})",
            p.omega1, p.omega2, p.j12, p.lambda1, p.eta_abs, p.theta
        )
    }
}

#[pyfunction]
fn bose_occupation(omega0: f64, temperature: f64) -> PyResult<f64> {
    decay::bose_occupation(omega0, temperature).map_err(to_py)
}

/// `α` from a helix of pitch `a` (Å) and sound velocity `v` (m/s).
#[pyfunction]
fn helix_attenuation(a_angstrom: f64, v_m_per_s: f64, j12: f64) -> PyResult<f64> {
    decay::helix_attenuation(a_angstrom, v_m_per_s, j12).map_err(to_py)
}

/// `(|η|, 1/α)` pairs along `eta_grid` at fixed `theta`.
#[pyfunction]
fn sweep_inverse_alpha(
    params: PyRef<'_, PyDimerParams>,
    theta: f64,
    eta_grid: Vec<f64>,
) -> PyResult<Vec<(f64, f64)>> {
    Ok(
        analysis::sweep_inverse_alpha(&params.inner, theta, &eta_grid)
            .map_err(to_py)?
            .points,
    )
}

/// `(|η|_min, (1/α)_min)` at fixed `theta`.
#[pyfunction]
fn find_alpha_minimum(params: PyRef<'_, PyDimerParams>, theta: f64) -> PyResult<(f64, f64)> {
    analysis::find_alpha_minimum(&params.inner, theta).map_err(to_py)
}

fn estimate_dict<'py>(py: Python<'py>, e: &EtaEstimate) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("target_ratio", e.target_ratio)?;
    d.set_item("theta", e.theta)?;
    d.set_item("eta_abs", e.eta_abs)?;
    d.set_item("lambda2", e.lambda2)?;
    d.set_item("lambda2_unphysical", e.lambda2_unphysical)?;
    d.set_item("all_roots", e.all_roots.clone())?;
    Ok(d)
}

/// Smallest `|η|` with `1/α = target_ratio`. Raises `RuntimeError` when the
/// target is below the curve minimum.
#[pyfunction]
fn estimate_eta<'py>(
    py: Python<'py>,
    params: PyRef<'_, PyDimerParams>,
    theta: f64,
    target_ratio: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let e = analysis::estimate_eta(&params.inner, theta, target_ratio).map_err(to_py)?;
    estimate_dict(py, &e)
}

#[pyfunction]
fn estimate_eta_limit(gap0: f64, j12: f64, target_ratio: f64) -> PyResult<f64> {
    analysis::estimate_eta_limit(gap0, j12, target_ratio).map_err(to_py)
}

fn parse_basis(basis: &str) -> PyResult<Basis> {
    match basis {
        "site" => Ok(Basis::Site),
        "exciton" => Ok(Basis::Exciton),
        other => Err(PyValueError::new_err(format!(
            "unknown basis {other:?} (site | exciton)"
        ))),
    }
}

fn matrix_from_rows(rows: &[Vec<Complex64>]) -> PyResult<DensityMatrix> {
    if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
        return Err(PyValueError::new_err("density matrix must be 3x3"));
    }
    Ok(DensityMatrix::from_fn(|i, j| rows[i][j]))
}

fn matrix_to_rows(m: &DensityMatrix) -> Vec<Vec<Complex64>> {
    (0..3)
        .map(|i| (0..3).map(|j| m[(i, j)]).collect())
        .collect()
}

/// Evolves a 3×3 density matrix (index 0 = vacuum) to each of `times` (fs).
/// `method` is `"analytic"` or `"numeric"` (RK4 with step `dt`).
#[pyfunction]
#[pyo3(signature = (rho, times, gamma, nbar0, omega_plus, omega_minus, phi0, basis="site", method="analytic", dt=dynamics::DEFAULT_DT))]
#[allow(clippy::too_many_arguments)]
fn evolve(
    rho: Vec<Vec<Complex64>>,
    times: Vec<f64>,
    gamma: f64,
    nbar0: f64,
    omega_plus: f64,
    omega_minus: f64,
    phi0: f64,
    basis: &str,
    method: &str,
    dt: f64,
) -> PyResult<Vec<Vec<Vec<Complex64>>>> {
    let p = EvolutionParams::new(gamma, nbar0, omega_plus, omega_minus, phi0).map_err(to_py)?;
    let state =
        OneExcitationState::new(parse_basis(basis)?, matrix_from_rows(&rho)?).map_err(to_py)?;
    let states = match method {
        "analytic" => dynamics::analytic_trajectory(&state, &times, &p),
        "numeric" => dynamics::numeric_trajectory(&state, &times, dt, &p),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown method {other:?} (analytic | numeric)"
            )))
        }
    }
    .map_err(to_py)?;
    Ok(states.iter().map(|s| matrix_to_rows(&s.rho)).collect())
}

#[pymodule]
pub fn dimer_exciton_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDimerParams>()?;
    m.add_function(wrap_pyfunction!(bose_occupation, m)?)?;
    m.add_function(wrap_pyfunction!(helix_attenuation, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_inverse_alpha, m)?)?;
    m.add_function(wrap_pyfunction!(find_alpha_minimum, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_eta, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_eta_limit, m)?)?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    Ok(())
}
