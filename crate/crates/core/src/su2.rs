//! Checks of the SU(2) rotation identities on the one-excitation subspace.
//!
//! On `{|1⟩, |2⟩}` the Schwinger generators reduce to `L₀ = I/2` and
//! `Lᵢ = σᵢ/2`, and the rotation is `U_φ = exp(−iφL₂)`.

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::Result;
use crate::exciton::{exciton_frequencies, mixing_angle};

type CMat2 = Matrix2<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const HALF: Complex64 = Complex64::new(0.5, 0.0);

fn l0() -> CMat2 {
    CMat2::new(HALF, ZERO, ZERO, HALF)
}

fn l1() -> CMat2 {
    CMat2::new(ZERO, HALF, HALF, ZERO)
}

fn l2() -> CMat2 {
    CMat2::new(
        ZERO,
        Complex64::new(0.0, -0.5),
        Complex64::new(0.0, 0.5),
        ZERO,
    )
}

fn l3() -> CMat2 {
    CMat2::new(HALF, ZERO, ZERO, -HALF)
}

/// `exp(−iφL₂)` via `cos(φ/2)·I − i·sin(φ/2)·σ₂`.
pub fn rotation(phi: f64) -> CMat2 {
    let (s, c) = (0.5 * phi).sin_cos();
    let identity = CMat2::identity();
    let sigma2 = l2() * Complex64::new(2.0, 0.0);
    identity * Complex64::new(c, 0.0) - sigma2 * Complex64::new(0.0, s)
}

fn conjugate(u: &CMat2, m: &CMat2) -> CMat2 {
    u * m * u.adjoint()
}

fn max_abs(m: &CMat2) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Max-norm residuals of the rotation identities at one angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Residuals {
    /// `U L₁ U† − (L₁ cos φ − L₃ sin φ)`
    pub l1: f64,
    /// `U L₃ U† − (L₁ sin φ + L₃ cos φ)`
    pub l3: f64,
    /// Largest of `U L₀ U† − L₀` and `U L₂ U† − L₂`.
    pub invariants: f64,
}

impl Su2Residuals {
    pub fn max(&self) -> f64 {
        self.l1.max(self.l3).max(self.invariants)
    }
}

pub fn su2_identity_check(phi: f64) -> Su2Residuals {
    let u = rotation(phi);
    let (s, c) = phi.sin_cos();
    let (s, c) = (Complex64::new(s, 0.0), Complex64::new(c, 0.0));
    let l1_expected = l1() * c - l3() * s;
    let l3_expected = l1() * s + l3() * c;
    Su2Residuals {
        l1: max_abs(&(conjugate(&u, &l1()) - l1_expected)),
        l3: max_abs(&(conjugate(&u, &l3()) - l3_expected)),
        invariants: max_abs(&(conjugate(&u, &l0()) - l0()))
            .max(max_abs(&(conjugate(&u, &l2()) - l2()))),
    }
}

/// Result of rotating `(ω'₁+ω'₂)L₀ + (ω'₁−ω'₂)L₃ + 2J₁₂L₁` through `φ₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalizationCheck {
    pub phi0: f64,
    /// Largest off-diagonal magnitude of the rotated Hamiltonian.
    pub off_diagonal: f64,
    /// Diagonal entries of the rotated Hamiltonian.
    pub diagonal: (f64, f64),
    /// `(ω₊, ω₋)` from the closed form, for comparison. With `ω'₁ < ω'₂`
    /// the diagonal holds them in the opposite order.
    pub expected: (f64, f64),
}

impl DiagonalizationCheck {
    /// Largest relative deviation of the diagonal from `(ω₊, ω₋)`.
    pub fn diagonal_residual(&self) -> f64 {
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(f64::MIN_POSITIVE);
        rel(self.diagonal.0, self.expected.0).max(rel(self.diagonal.1, self.expected.1))
    }
}

pub fn diagonalization_check(omega1p: f64, omega2p: f64, j12: f64) -> Result<DiagonalizationCheck> {
    let phi0 = mixing_angle(omega1p - omega2p, j12)?;
    let h = l0() * Complex64::new(omega1p + omega2p, 0.0)
        + l3() * Complex64::new(omega1p - omega2p, 0.0)
        + l1() * Complex64::new(2.0 * j12, 0.0);
    let d = conjugate(&rotation(phi0), &h);
    Ok(DiagonalizationCheck {
        phi0,
        off_diagonal: d[(0, 1)].norm().max(d[(1, 0)].norm()),
        diagonal: (d[(0, 0)].re, d[(1, 1)].re),
        expected: exciton_frequencies(omega1p, omega2p, j12),
    })
}
