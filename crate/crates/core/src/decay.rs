//! Thermal occupation, attenuation factor and collective decay constant.
//!
//! The collective exciton decay constant is the site dephasing rate scaled
//! down by the attenuation factor,
//!
//! ```text
//! γ = α·γ_d,    α = (|η| J₁₂ / ω₀)²
//! ```
//!
//! where `ω₀` is the exciton resonance. `γ_d` is taken as an input rather
//! than evaluated from a spectral density.

use std::io::Read;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exciton::{renormalized_gap, resonance, DimerParams, ExcitonFrame};
use crate::units::{thermal_energy, transit_time_fs, wavenumber_to_angular};

/// One discrete bath mode for the frequency-shift sums.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct Mode {
    /// Mode frequency, cm⁻¹.
    #[serde(rename = "omega_k_cm1")]
    pub omega_k: f64,
    /// Squared coupling `|V_k|²`, cm⁻².
    #[serde(rename = "V2_k_cm2")]
    pub v2_k: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BathSpec {
    /// Bath temperature, K.
    pub temperature: f64,
    /// Site dephasing rate, fs⁻¹.
    pub gamma_d: f64,
    pub modes: Vec<Mode>,
}

impl BathSpec {
    pub fn new(temperature: f64, gamma_d: f64) -> Result<Self> {
        let b = BathSpec {
            temperature,
            gamma_d,
            modes: Vec::new(),
        };
        b.validate()?;
        Ok(b)
    }

    pub fn with_modes(mut self, modes: Vec<Mode>) -> Result<Self> {
        validate_modes(&modes)?;
        self.modes = modes;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.temperature > 0.0) || !self.temperature.is_finite() {
            return Err(Error::invalid("temperature", "must be positive and finite"));
        }
        if !(self.gamma_d >= 0.0) || !self.gamma_d.is_finite() {
            return Err(Error::invalid("gamma_d", "must be non-negative and finite"));
        }
        validate_modes(&self.modes)
    }
}

fn validate_modes(modes: &[Mode]) -> Result<()> {
    for (i, m) in modes.iter().enumerate() {
        if !(m.omega_k > 0.0) || !m.omega_k.is_finite() {
            return Err(Error::ModeList(format!("mode {i}: omega_k must be > 0")));
        }
        if !(m.v2_k >= 0.0) || !m.v2_k.is_finite() {
            return Err(Error::ModeList(format!("mode {i}: V2_k must be >= 0")));
        }
    }
    Ok(())
}

/// Output of the decay model for one dimer in one bath.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSet {
    pub alpha: f64,
    /// Collective decay constant, fs⁻¹.
    pub gamma: f64,
    /// Thermal occupation at the exciton resonance.
    pub nbar0: f64,
    /// `1/γ` in fs; `None` when `γ = 0`.
    pub lifetime: Option<f64>,
    /// `1/α`; infinite when `α = 0`.
    pub inverse_alpha: f64,
}

impl RateSet {
    pub fn new(p: &DimerParams, bath: &BathSpec) -> Result<Self> {
        let frame = ExcitonFrame::new(p)?;
        let alpha = attenuation_factor(p);
        let gamma = decay_constant(alpha, bath.gamma_d);
        Ok(RateSet {
            alpha,
            gamma,
            nbar0: bose_occupation(frame.omega0, bath.temperature)?,
            lifetime: (gamma > 0.0).then(|| 1.0 / gamma),
            inverse_alpha: 1.0 / alpha,
        })
    }
}

/// Bose–Einstein occupation `1/(exp(ω₀/kT) − 1)`; zero at `T = 0`.
pub fn bose_occupation(omega0: f64, temperature: f64) -> Result<f64> {
    if !(omega0 > 0.0) {
        return Err(Error::Domain(format!(
            "resonance frequency must be positive, got {omega0} cm^-1"
        )));
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    let kt = thermal_energy(temperature)?;
    Ok(1.0 / (omega0 / kt).exp_m1())
}

/// `α = (|η| J₁₂ / ω₀)²`.
pub fn attenuation_factor(p: &DimerParams) -> f64 {
    if p.eta_abs == 0.0 || p.j12 == 0.0 {
        return 0.0;
    }
    let omega0 = resonance(renormalized_gap(p), p.j12);
    (p.eta_abs * p.j12 / omega0).powi(2)
}

/// `1/α = (ω₀ / (|η| J₁₂))²`; infinite when `α = 0`.
pub fn inverse_attenuation(p: &DimerParams) -> f64 {
    let omega0 = resonance(renormalized_gap(p), p.j12);
    (omega0 / (p.eta_abs * p.j12)).powi(2)
}

/// `γ = α·γ_d`.
pub fn decay_constant(alpha: f64, gamma_d: f64) -> f64 {
    alpha * gamma_d
}

/// Weak-coupling limit `1/α → ((ω₁−ω₂)/J₁₂)² / |η|²`, valid when both
/// `λ₁` and `J₁₂` are small against the bare gap.
pub fn limit_inverse_alpha(eta_abs: f64, gap0: f64, j12: f64) -> Result<f64> {
    if eta_abs == 0.0 {
        return Err(Error::Domain("|eta| must be nonzero".into()));
    }
    if j12 == 0.0 {
        return Err(Error::Domain("J12 must be nonzero".into()));
    }
    Ok((gap0 / j12).powi(2) / (eta_abs * eta_abs))
}

/// Attenuation for a regular lattice in the long-wavelength limit,
/// `α = (a·J₁₂/v)²` with `J₁₂` taken as an angular frequency.
///
/// `a` in ångström, `v` in m/s, `J₁₂` in cm⁻¹.
pub fn helix_attenuation(a_angstrom: f64, v_m_per_s: f64, j12: f64) -> Result<f64> {
    if !(a_angstrom > 0.0) {
        return Err(Error::invalid("a", "lattice spacing must be > 0"));
    }
    if !(v_m_per_s > 0.0) {
        return Err(Error::invalid("v", "sound speed must be > 0"));
    }
    Ok((transit_time_fs(a_angstrom, v_m_per_s) * wavenumber_to_angular(j12)).powi(2))
}

/// Reorganization energy of site 2 inferred from the asymmetry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lambda2 {
    /// cm⁻¹
    pub value: f64,
    /// Negative result. `λ₁(1 + |η|(2cos θ + |η|)) = λ₁|1 + η|²`, so this only
    /// fires through round-off near `η = −1`.
    pub unphysical: bool,
}

/// `λ₂ = λ₁(1 + |η|(2cos θ + |η|))`.
pub fn lambda2_from_eta(lambda1: f64, eta_abs: f64, theta: f64) -> Lambda2 {
    let value = lambda1 * (1.0 + eta_abs * (2.0 * theta.cos() + eta_abs));
    Lambda2 {
        value,
        unphysical: value < 0.0,
    }
}

/// Bath-induced shifts of the exciton energies, cm⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Renormalization {
    pub delta_plus: f64,
    pub delta_minus: f64,
}

impl Renormalization {
    /// `(ω̄₊, ω̄₋) = (ω₊ − δω₊, ω₋ − δω₋)`.
    pub fn apply(&self, omega_plus: f64, omega_minus: f64) -> (f64, f64) {
        (omega_plus - self.delta_plus, omega_minus - self.delta_minus)
    }
}

/// Discrete principal-value sums
///
/// ```text
/// δω₊ =  Σ_k |V_k|² (n̄_k + 1) / (ω_k − ω₀)
/// δω₋ = −Σ_k |V_k|² n̄_k / (ω_k − ω₀)
/// ```
///
/// `T = 0` is accepted and gives `n̄_k = 0`.
pub fn frequency_renormalization(
    modes: &[Mode],
    omega0: f64,
    temperature: f64,
) -> Result<Renormalization> {
    validate_modes(modes)?;
    if !(temperature >= 0.0) {
        return Err(Error::Domain("temperature must be >= 0".into()));
    }
    let mut shift = Renormalization::default();
    for m in modes {
        let detuning = m.omega_k - omega0;
        if detuning.abs() <= 1e-12 * omega0.abs() {
            return Err(Error::ResonantMode {
                omega_k: m.omega_k,
                omega0,
            });
        }
        let nbar = bose_occupation(m.omega_k, temperature)?;
        shift.delta_plus += m.v2_k * (nbar + 1.0) / detuning;
        shift.delta_minus -= m.v2_k * nbar / detuning;
    }
    Ok(shift)
}

/// Parses a two-column mode list with header `omega_k_cm1,V2_k_cm2`.
pub fn parse_modes<R: Read>(reader: R) -> Result<Vec<Mode>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| Error::ModeList(e.to_string()))?
        .clone();
    if headers.len() != 2 || &headers[0] != "omega_k_cm1" || &headers[1] != "V2_k_cm2" {
        return Err(Error::ModeList(format!(
            "expected header `omega_k_cm1,V2_k_cm2`, got `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let modes = rdr
        .deserialize()
        .collect::<std::result::Result<Vec<Mode>, _>>()
        .map_err(|e| Error::ModeList(e.to_string()))?;
    validate_modes(&modes)?;
    Ok(modes)
}

pub fn read_modes(path: &Path) -> Result<Vec<Mode>> {
    let file = std::fs::File::open(path)?;
    parse_modes(file)
}
