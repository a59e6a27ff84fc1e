//! Closed-form solution of the exciton master equation.

use num_complex::Complex64;

use super::state::{Basis, DensityMatrix, OneExcitationState};
use super::EvolutionParams;
use crate::error::{Error, Result};
use crate::units::wavenumber_to_angular;

/// Evolves `rho0` for a time `t` (fs).
///
/// The solution is evaluated in the exciton basis; a site-basis input is
/// converted with `p.phi0` and the result returned in the input's basis.
///
/// ```text
/// ρ₀₀(t) = ρ₀₀(0)
/// ρ₀₁(t) = ρ₀₁(0) e^{−γ(1+n̄₀)t/2} e^{iω₊t}
/// ρ₀₂(t) = ρ₀₂(0) e^{−γn̄₀t/2} e^{iω₋t}
/// ρ₁₁(t) = ρ₁₁(0) e^{−Γt} + n̄₀(1−ρ₀₀)/(1+2n̄₀) · (1 − e^{−Γt}),  Γ = γ(1+2n̄₀)
/// ρ₂₂(t) = 1 − ρ₀₀ − ρ₁₁(t)
/// ρ₁₂(t) = ρ₁₂(0) e^{−Γt/2} e^{−iω₀t}
/// ```
pub fn analytic_evolve(
    rho0: &OneExcitationState,
    t: f64,
    p: &EvolutionParams,
) -> Result<OneExcitationState> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!(
            "evolution time must be finite and >= 0, got {t} fs"
        )));
    }
    p.validate()?;
    let input_basis = rho0.basis;
    let r = rho0.to_exciton_basis(p.phi0).rho;

    let (g, n) = (p.gamma, p.nbar0);
    let big_gamma = p.relaxation_rate();
    let w_plus = wavenumber_to_angular(p.omega_plus);
    let w_minus = wavenumber_to_angular(p.omega_minus);
    let w0 = wavenumber_to_angular(p.omega0());

    let decay_phase = |rate: f64, w: f64| Complex64::from_polar((-rate * t).exp(), w * t);

    let r00 = r[(0, 0)].re;
    let r01 = r[(0, 1)] * decay_phase(0.5 * g * (1.0 + n), w_plus);
    let r02 = r[(0, 2)] * decay_phase(0.5 * g * n, w_minus);
    let relaxed = -(-big_gamma * t).exp_m1();
    let r11 = r[(1, 1)].re * (-big_gamma * t).exp() + n * (1.0 - r00) / (1.0 + 2.0 * n) * relaxed;
    let r22 = 1.0 - r00 - r11;
    let r12 = r[(1, 2)] * decay_phase(0.5 * big_gamma, -w0);

    let c = |x: f64| Complex64::new(x, 0.0);
    let rho = DensityMatrix::new(
        c(r00),
        r01,
        r02,
        r01.conj(),
        c(r11),
        r12,
        r02.conj(),
        r12.conj(),
        c(r22),
    );
    Ok(OneExcitationState {
        basis: Basis::Exciton,
        rho,
    }
    .in_basis(input_basis, p.phi0))
}

/// Analytic states at each of `times`.
pub fn analytic_trajectory(
    rho0: &OneExcitationState,
    times: &[f64],
    p: &EvolutionParams,
) -> Result<Vec<OneExcitationState>> {
    times.iter().map(|&t| analytic_evolve(rho0, t, p)).collect()
}
