//! Constants and unit conversions.
//!
//! Internal conventions: energies and frequencies in wavenumbers (cm⁻¹),
//! times in femtoseconds, rates in fs⁻¹, temperature in kelvin, lattice
//! spacings in ångström and sound speeds in m/s. Phase factors `e^{iωt}` are
//! evaluated with the angular frequency `ω[rad/fs] = 2πc·ω[cm⁻¹]`.

use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Speed of light in cm/fs.
pub const SPEED_OF_LIGHT_CM_PER_FS: f64 = 2.997_924_58e-5;

/// Boltzmann constant over `hc`, in cm⁻¹/K.
pub const BOLTZMANN_CM_PER_K: f64 = 0.695_034_80;

/// One ångström in metres.
pub const ANGSTROM_M: f64 = 1e-10;

/// One femtosecond in seconds.
pub const FEMTOSECOND_S: f64 = 1e-15;

/// `2πc` in rad·cm/fs: multiply a wavenumber to get an angular frequency.
pub const ANGULAR_PER_WAVENUMBER: f64 = TAU * SPEED_OF_LIGHT_CM_PER_FS;

/// Converts a wavenumber (cm⁻¹) to an angular frequency (rad/fs).
pub fn wavenumber_to_angular(x: f64) -> f64 {
    ANGULAR_PER_WAVENUMBER * x
}

/// Converts an angular frequency (rad/fs) back to a wavenumber (cm⁻¹).
pub fn angular_to_wavenumber(w: f64) -> f64 {
    w / ANGULAR_PER_WAVENUMBER
}

/// `k_B T` in cm⁻¹.
pub fn thermal_energy(temperature: f64) -> Result<f64> {
    if !(temperature > 0.0) || !temperature.is_finite() {
        return Err(Error::Domain(format!(
            "temperature must be positive and finite, got {temperature} K"
        )));
    }
    Ok(BOLTZMANN_CM_PER_K * temperature)
}

/// Lattice transit time `a/v` in fs, for `a` in ångström and `v` in m/s.
pub fn transit_time_fs(a_angstrom: f64, v_m_per_s: f64) -> f64 {
    a_angstrom * ANGSTROM_M / v_m_per_s / FEMTOSECOND_S
}
