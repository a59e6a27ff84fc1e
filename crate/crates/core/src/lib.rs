//! Collective relaxation of a phonon-coupled oscillator dimer.
//!
//! A pair of adjacent coupled oscillators, each dressed by its own phonon
//! cloud, acts as a composite unit whose one-excitation subspace relaxes like
//! a two-level system. The exciton decay constant is the single-site dephasing
//! rate multiplied by an attenuation factor `α = (|η| J₁₂/ω₀)²`.
//!
//! Modules:
//! - [`units`]: constants and conversions (cm⁻¹, fs, K)
//! - [`exciton`], [`su2`]: renormalized dimer, mixing angle, exciton energies
//! - [`decay`]: thermal occupation, `α`, `γ`, helix estimate, frequency shifts
//! - [`dynamics`]: closed-form and RK4 solutions of the master equation
//! - [`analysis`]: `1/α` sweeps, minima and inverse `|η|` estimates
//! - [`cli`]: configuration and subcommands of the `dimer-exciton` binary

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod decay;
pub mod dynamics;
pub mod error;
pub mod exciton;
pub mod optimize;
pub mod su2;
pub mod units;

pub use analysis::{
    estimate_eta, estimate_eta_limit, find_alpha_minimum, sweep_inverse_alpha, EtaEstimate,
    SweepResult,
};
pub use decay::{
    attenuation_factor, bose_occupation, decay_constant, frequency_renormalization,
    helix_attenuation, lambda2_from_eta, limit_inverse_alpha, BathSpec, Mode, RateSet,
    Renormalization,
};
pub use dynamics::{
    analytic_evolve, numeric_evolve, Basis, EvolutionParams, LindbladGenerator, OneExcitationState,
};
pub use error::{Error, Result};
pub use exciton::{
    basis_map, exciton_frequencies, mixing_angle, renormalized_gap, DimerParams, ExcitonFrame,
};
pub use su2::su2_identity_check;
