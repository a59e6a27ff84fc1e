//! Reduced dynamics of the dimer's one-excitation subspace.
//!
//! The exciton density matrix obeys `∂ρ/∂t = −Kρ` with
//!
//! ```text
//! Kρ = i[H'₀, ρ]
//!      − ½γn̄₀     (2L₊ρL₋ − L₋L₊ρ − ρL₋L₊)
//!      − ½γ(n̄₀+1) (2L₋ρL₊ − L₊L₋ρ − ρL₊L₋)
//! ```
//!
//! where `H'₀ = diag(0, ω₊, ω₋)`, `L₊ = |e₁⟩⟨e₂|` and `L₋ = |e₂⟩⟨e₁|`. The
//! closed-form solution lives in [`analytic`]; [`numeric`] integrates the same
//! generator with fixed-step RK4 as an independent check.
//!
//! The vacuum coherences rotate with the exciton energies `ω₊` and `ω₋`.

pub mod analytic;
pub mod generator;
pub mod numeric;
pub mod state;

pub use analytic::{analytic_evolve, analytic_trajectory};
pub use generator::LindbladGenerator;
pub use numeric::{max_step, numeric_evolve, numeric_trajectory, DEFAULT_DT};
pub use state::{Basis, DensityMatrix, OneExcitationState, COMPONENT_COLUMNS};

use crate::decay::{RateSet, Renormalization};
use crate::error::{Error, Result};
use crate::exciton::ExcitonFrame;

/// Parameters of the exciton master equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionParams {
    /// Collective decay constant, fs⁻¹.
    pub gamma: f64,
    pub nbar0: f64,
    /// Upper exciton energy, cm⁻¹.
    pub omega_plus: f64,
    /// Lower exciton energy, cm⁻¹.
    pub omega_minus: f64,
    /// Mixing angle, used only for site-basis conversion. Built from a frame
    /// this is [`ExcitonFrame::eigenvector_angle`].
    pub phi0: f64,
}

impl EvolutionParams {
    pub fn new(
        gamma: f64,
        nbar0: f64,
        omega_plus: f64,
        omega_minus: f64,
        phi0: f64,
    ) -> Result<Self> {
        let p = EvolutionParams {
            gamma,
            nbar0,
            omega_plus,
            omega_minus,
            phi0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn from_model(frame: &ExcitonFrame, rates: &RateSet) -> Self {
        EvolutionParams {
            gamma: rates.gamma,
            nbar0: rates.nbar0,
            omega_plus: frame.omega_plus,
            omega_minus: frame.omega_minus,
            phi0: frame.eigenvector_angle(),
        }
    }

    /// Replaces `ω±` with the bath-shifted `ω̄± = ω± − δω±`.
    pub fn renormalized(self, shift: &Renormalization) -> Self {
        let (omega_plus, omega_minus) = shift.apply(self.omega_plus, self.omega_minus);
        EvolutionParams {
            omega_plus,
            omega_minus,
            ..self
        }
    }

    /// `ω₀ = ω₊ − ω₋`, cm⁻¹.
    pub fn omega0(&self) -> f64 {
        self.omega_plus - self.omega_minus
    }

    /// Population relaxation rate `γ(1 + 2n̄₀)`, fs⁻¹.
    pub fn relaxation_rate(&self) -> f64 {
        self.gamma * (1.0 + 2.0 * self.nbar0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma >= 0.0) || !self.gamma.is_finite() {
            return Err(Error::invalid("gamma", "must be non-negative and finite"));
        }
        if !(self.nbar0 >= 0.0) || !self.nbar0.is_finite() {
            return Err(Error::invalid("nbar0", "must be non-negative and finite"));
        }
        for (name, v) in [
            ("omega_plus", self.omega_plus),
            ("omega_minus", self.omega_minus),
            ("phi0", self.phi0),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(name, "must be finite"));
            }
        }
        Ok(())
    }
}
