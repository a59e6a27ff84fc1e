//! Fixed-step RK4 integration of the master equation.

use nalgebra::SVector;
use num_complex::Complex64;

use super::generator::{LindbladGenerator, Superoperator};
use super::state::{hermitize, Basis, DensityMatrix, OneExcitationState};
use super::EvolutionParams;
use crate::error::{Error, Result};
use crate::units::wavenumber_to_angular;

/// Default step, fs.
pub const DEFAULT_DT: f64 = 0.01;

type Vec9 = SVector<Complex64, 9>;

/// Largest admissible step: a tenth of the shortest time scale among the
/// relaxation time `1/(γ(1+2n̄₀))` and the periods of `ω₊`, `ω₋` and `ω₀`.
pub fn max_step(p: &EvolutionParams) -> f64 {
    let fastest_phase = [p.omega_plus, p.omega_minus, p.omega0()]
        .iter()
        .map(|w| wavenumber_to_angular(w.abs()))
        .fold(0.0, f64::max);
    let fastest = p.relaxation_rate().max(fastest_phase);
    0.1 / fastest
}

struct Stepper {
    generator: Superoperator,
}

impl Stepper {
    fn new(p: &EvolutionParams) -> Self {
        Stepper {
            generator: LindbladGenerator::new(p).superoperator(),
        }
    }

    fn step(&self, v: &Vec9, h: f64) -> Vec9 {
        let g = &self.generator;
        let hc = Complex64::new(h, 0.0);
        let half = Complex64::new(0.5 * h, 0.0);
        let k1 = g * v;
        let k2 = g * (v + k1 * half);
        let k3 = g * (v + k2 * half);
        let k4 = g * (v + k3 * hc);
        let v =
            v + (k1 + (k2 + k3) * Complex64::new(2.0, 0.0) + k4) * (hc / Complex64::new(6.0, 0.0));
        vectorize(&hermitize(&unvectorize(&v)))
    }

    /// Advances `v` by `t`, in the fewest equal steps not longer than `dt`.
    fn advance(&self, v: Vec9, t: f64, dt: f64) -> Vec9 {
        if t == 0.0 {
            return v;
        }
        let n = (t / dt).ceil().max(1.0) as usize;
        let h = t / n as f64;
        (0..n).fold(v, |v, _| self.step(&v, h))
    }
}

fn vectorize(rho: &DensityMatrix) -> Vec9 {
    Vec9::from_iterator(rho.iter().copied())
}

fn unvectorize(v: &Vec9) -> DensityMatrix {
    DensityMatrix::from_iterator(v.iter().copied())
}

fn check_step(dt: f64, p: &EvolutionParams) -> Result<()> {
    let max_dt = max_step(p);
    if !(dt > 0.0) || dt > max_dt {
        return Err(Error::StepSize { dt, max_dt });
    }
    Ok(())
}

/// Integrates `∂ρ/∂t = −Kρ` from 0 to `t` with classical RK4, step at most
/// `dt`. The result is returned in the input's basis.
pub fn numeric_evolve(
    rho0: &OneExcitationState,
    t: f64,
    dt: f64,
    p: &EvolutionParams,
) -> Result<OneExcitationState> {
    Ok(numeric_trajectory(rho0, &[t], dt, p)?.remove(0))
}

/// Numeric states at each of `times`, which must be non-decreasing. The
/// integration is carried forward from one output time to the next.
pub fn numeric_trajectory(
    rho0: &OneExcitationState,
    times: &[f64],
    dt: f64,
    p: &EvolutionParams,
) -> Result<Vec<OneExcitationState>> {
    p.validate()?;
    check_step(dt, p)?;
    if times.iter().any(|t| !(*t >= 0.0) || !t.is_finite()) {
        return Err(Error::Domain(
            "evolution times must be finite and >= 0".into(),
        ));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain(
            "evolution times must be non-decreasing".into(),
        ));
    }
    let basis = rho0.basis;
    let stepper = Stepper::new(p);
    let mut v = vectorize(&rho0.to_exciton_basis(p.phi0).rho);
    let mut now = 0.0;
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        v = stepper.advance(v, t - now, dt);
        now = t;
        let state = OneExcitationState {
            basis: Basis::Exciton,
            rho: unvectorize(&v),
        };
        out.push(state.in_basis(basis, p.phi0));
    }
    Ok(out)
}
