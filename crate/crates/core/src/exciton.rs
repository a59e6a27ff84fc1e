//! Dimer parameters, the diagonalizing rotation and the exciton frame.
//!
//! The dimer Hamiltonian in the one-excitation site basis `{|1⟩, |2⟩}` is
//!
//! ```text
//! H'₀ = [ ω'₁   J₁₂ ]
//!       [ J₁₂   ω'₂ ]
//! ```
//!
//! with phonon-renormalized site energies `ω'ₘ = ωₘ − 2λₘ`. It is diagonalized
//! by a rotation through `φ₀/2`, giving the exciton energies `ω₊ ≥ ω₋` and the
//! resonance `ω₀ = ω₊ − ω₋`.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::Matrix2;

use crate::decay::lambda2_from_eta;
use crate::error::{Error, Result};

/// Physical input of the dimer model.
///
/// Site 1 is the higher-energy site. The site asymmetry `η = |η|e^{iθ}` is
/// stored in polar form; only `|η|` and `cos θ` enter any formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimerParams {
    /// Bare energy of site 1, cm⁻¹.
    pub omega1: f64,
    /// Bare energy of site 2, cm⁻¹.
    pub omega2: f64,
    /// Intersite coupling, cm⁻¹. Sign is kept; only `J₁₂²` enters rates.
    pub j12: f64,
    /// Reorganization energy of site 1, cm⁻¹.
    pub lambda1: f64,
    /// Magnitude of the site asymmetry.
    pub eta_abs: f64,
    /// Phase of the site asymmetry, radians in `[0, π]`.
    pub theta: f64,
}

impl DimerParams {
    pub fn new(
        omega1: f64,
        omega2: f64,
        j12: f64,
        lambda1: f64,
        eta_abs: f64,
        theta: f64,
    ) -> Result<Self> {
        let p = DimerParams {
            omega1,
            omega2,
            j12,
            lambda1,
            eta_abs,
            theta,
        };
        p.validate()?;
        Ok(p)
    }

    /// Builds parameters from a Cartesian complex asymmetry `η = re + i·im`.
    pub fn from_complex_eta(
        omega1: f64,
        omega2: f64,
        j12: f64,
        lambda1: f64,
        eta_re: f64,
        eta_im: f64,
    ) -> Result<Self> {
        let eta_abs = eta_re.hypot(eta_im);
        let theta = if eta_abs > 0.0 {
            (eta_re / eta_abs).clamp(-1.0, 1.0).acos()
        } else {
            0.0
        };
        Self::new(omega1, omega2, j12, lambda1, eta_abs, theta)
    }

    /// Copy with a different asymmetry.
    pub fn with_eta(&self, eta_abs: f64, theta: f64) -> Self {
        DimerParams {
            eta_abs,
            theta,
            ..*self
        }
    }

    /// Bare site gap `ω₁ − ω₂`.
    pub fn bare_gap(&self) -> f64 {
        self.omega1 - self.omega2
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("omega1", self.omega1),
            ("omega2", self.omega2),
            ("j12", self.j12),
            ("lambda1", self.lambda1),
            ("eta_abs", self.eta_abs),
            ("theta", self.theta),
        ];
        for (name, v) in finite {
            if !v.is_finite() {
                return Err(Error::invalid(name, "must be finite"));
            }
        }
        if self.omega1 <= self.omega2 {
            return Err(Error::invalid(
                "omega1",
                format!(
                    "site 1 must be the higher-energy site (omega1 = {} <= omega2 = {})",
                    self.omega1, self.omega2
                ),
            ));
        }
        if self.lambda1 < 0.0 {
            return Err(Error::invalid("lambda1", "must be >= 0"));
        }
        if self.eta_abs < 0.0 {
            return Err(Error::invalid("eta_abs", "must be >= 0"));
        }
        if !(0.0..=PI).contains(&self.theta) {
            return Err(Error::invalid("theta", "must lie in [0, pi]"));
        }
        Ok(())
    }
}

/// Derived quantities of the diagonalized dimer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcitonFrame {
    /// Renormalized site energy `ω'₁`, cm⁻¹.
    pub omega1p: f64,
    /// Renormalized site energy `ω'₂`, cm⁻¹.
    pub omega2p: f64,
    /// Mixing angle `φ₀ ∈ [−π/2, π/2]`.
    pub phi0: f64,
    pub omega_plus: f64,
    pub omega_minus: f64,
    /// Exciton resonance `ω₊ − ω₋ > 0`, cm⁻¹.
    pub omega0: f64,
    /// Set when renormalization pushed `ω'₁` below `ω'₂`. The frame is still
    /// computed, but the rotating-wave selection of exciton-phonon terms
    /// assumed downstream no longer matches the site ordering.
    pub inverted: bool,
}

impl ExcitonFrame {
    pub fn new(p: &DimerParams) -> Result<Self> {
        let lambda2 = lambda2_from_eta(p.lambda1, p.eta_abs, p.theta).value;
        let omega1p = p.omega1 - 2.0 * p.lambda1;
        let omega2p = p.omega2 - 2.0 * lambda2;
        let gap = renormalized_gap(p);
        let phi0 = mixing_angle(gap, p.j12)?;
        let (omega_plus, omega_minus) = exciton_frequencies(omega1p, omega2p, p.j12);
        Ok(ExcitonFrame {
            omega1p,
            omega2p,
            phi0,
            omega_plus,
            omega_minus,
            omega0: resonance(gap, p.j12),
            inverted: gap < 0.0,
        })
    }

    /// Rotation angle whose first exciton carries `ω₊`. Equal to `φ₀` unless
    /// the frame is inverted, where the folded `φ₀` would pair `|e₁⟩` with `ω₋`
    /// and the unfolded arctangent is returned instead.
    pub fn eigenvector_angle(&self) -> f64 {
        if !self.inverted {
            return self.phi0;
        }
        if self.phi0 > 0.0 {
            self.phi0 - PI
        } else {
            self.phi0 + PI
        }
    }
}

/// `ω'₁ − ω'₂ = (ω₁ − ω₂) + 2λ₁|η|(2cos θ + |η|)`.
pub fn renormalized_gap(p: &DimerParams) -> f64 {
    p.bare_gap() + 2.0 * p.lambda1 * p.eta_abs * (2.0 * p.theta.cos() + p.eta_abs)
}

/// `ω₀ = sqrt(gap² + 4J₁₂²)`.
pub fn resonance(gap: f64, j12: f64) -> f64 {
    gap.hypot(2.0 * j12)
}

/// Diagonalizing angle `φ₀`, the two-argument arctangent of `(−2J₁₂, gap)`
/// folded into `[−π/2, π/2]`.
pub fn mixing_angle(gap: f64, j12: f64) -> Result<f64> {
    if gap == 0.0 && j12 == 0.0 {
        return Err(Error::DegenerateDimer);
    }
    let phi = (-2.0 * j12).atan2(gap);
    Ok(if phi > FRAC_PI_2 {
        phi - PI
    } else if phi < -FRAC_PI_2 {
        phi + PI
    } else {
        phi
    })
}

/// Exciton energies `(ω₊, ω₋)` from the closed square-root form.
pub fn exciton_frequencies(omega1p: f64, omega2p: f64, j12: f64) -> (f64, f64) {
    let mean = 0.5 * (omega1p + omega2p);
    let half_split = 0.5 * resonance(omega1p - omega2p, j12);
    let plus = mean + half_split;
    let minus = mean - half_split;
    debug_assert!({
        match mixing_angle(omega1p - omega2p, j12) {
            Ok(phi) => {
                let (tp, tm) = trigonometric_frequencies(omega1p, omega2p, j12, phi);
                let (tp, tm) = if tp >= tm { (tp, tm) } else { (tm, tp) };
                let scale = omega1p.abs().max(omega2p.abs()).max(j12.abs()).max(1.0);
                (tp - plus).abs() <= 1e-10 * scale && (tm - minus).abs() <= 1e-10 * scale
            }
            Err(_) => true,
        }
    });
    (plus, minus)
}

/// Exciton energies from the rotation form,
/// `ω₊ = ω'₁cos²(φ/2) + ω'₂sin²(φ/2) − J₁₂ sin φ` and its partner.
///
/// At `φ = φ₀` this agrees with [`exciton_frequencies`] when `ω'₁ ≥ ω'₂`; for
/// an inverted gap the two entries come out swapped.
pub fn trigonometric_frequencies(omega1p: f64, omega2p: f64, j12: f64, phi: f64) -> (f64, f64) {
    let (s, c) = (0.5 * phi).sin_cos();
    let (c2, s2) = (c * c, s * s);
    let plus = omega1p * c2 + omega2p * s2 - j12 * phi.sin();
    let minus = omega1p * s2 + omega2p * c2 + j12 * phi.sin();
    (plus, minus)
}

/// Site-from-exciton rotation `R(φ₀/2)`.
///
/// Rows are `(cos, sin)` and `(−sin, cos)` of `φ₀/2`, so that
/// `|1⟩ = cos|e₁⟩ + sin|e₂⟩` and `|2⟩ = −sin|e₁⟩ + cos|e₂⟩`. Site amplitudes
/// are `R · exciton amplitudes`; the inverse is the transpose.
pub fn basis_map(phi0: f64) -> Matrix2<f64> {
    let (s, c) = (0.5 * phi0).sin_cos();
    Matrix2::new(c, s, -s, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverted_frame_keeps_upper_exciton_first() {
        // λ₁ large enough that renormalization reverses the site order
        let p = DimerParams::new(100.0, 0.0, -40.0, 60.0, 1.0, PI).unwrap();
        let f = ExcitonFrame::new(&p).unwrap();
        assert!(f.inverted);
        let (tp, tm) =
            trigonometric_frequencies(f.omega1p, f.omega2p, p.j12, f.eigenvector_angle());
        assert!((tp - f.omega_plus).abs() < 1e-12 * f.omega0);
        assert!((tm - f.omega_minus).abs() < 1e-12 * f.omega0);
        let (sp, _) = trigonometric_frequencies(f.omega1p, f.omega2p, p.j12, f.phi0);
        assert!((sp - f.omega_minus).abs() < 1e-12 * f.omega0);

        let upright = ExcitonFrame::new(&p.with_eta(0.0, 0.0)).unwrap();
        assert_eq!(upright.eigenvector_angle(), upright.phi0);
    }
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn fmo(eta_abs: f64, theta: f64) -> DimerParams {
        DimerParams::new(120.0, 0.0, -96.0, 35.0, eta_abs, theta).unwrap()
    }

    #[test]
    fn gap_examples() {
        assert_eq!(renormalized_gap(&fmo(0.0, 0.0)), 120.0);
        assert_relative_eq!(
            renormalized_gap(&fmo(0.71, 0.0)),
            120.0 + 70.0 * 0.71 * 2.71,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            renormalized_gap(&fmo(0.71, 0.0)),
            254.687,
            max_relative = 1e-12
        );
        assert_relative_eq!(renormalized_gap(&fmo(2.0, PI)), 120.0, max_relative = 1e-14);
    }

    #[test]
    fn gap_matches_site_energy_difference() {
        let p = fmo(0.9, 1.1);
        let f = ExcitonFrame::new(&p).unwrap();
        assert_relative_eq!(
            f.omega1p - f.omega2p,
            renormalized_gap(&p),
            max_relative = 1e-13
        );
    }

    #[test]
    fn mixing_angle_examples() {
        assert_eq!(mixing_angle(120.0, 0.0).unwrap(), 0.0);
        // arctan(192/120) = arctan(1.6)
        assert_relative_eq!(
            mixing_angle(120.0, -96.0).unwrap(),
            1.012_197_011_451_334_6,
            max_relative = 1e-14
        );
        assert_eq!(mixing_angle(0.0, 96.0).unwrap(), -FRAC_PI_2);
        assert_eq!(mixing_angle(0.0, -96.0).unwrap(), FRAC_PI_2);
        assert!(matches!(
            mixing_angle(0.0, 0.0),
            Err(Error::DegenerateDimer)
        ));
    }

    #[test]
    fn mixing_angle_folds_negative_gap() {
        let phi = mixing_angle(-120.0, -96.0).unwrap();
        assert!((-FRAC_PI_2..=FRAC_PI_2).contains(&phi));
        assert_relative_eq!(phi, (192.0f64 / -120.0).atan(), max_relative = 1e-14);
        assert_eq!(mixing_angle(-5.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn frequency_examples() {
        assert_eq!(exciton_frequencies(100.0, 50.0, 0.0), (100.0, 50.0));
        let (p, m) = exciton_frequencies(100.0, 100.0, 96.0);
        assert_relative_eq!(p, 196.0, max_relative = 1e-15);
        assert_relative_eq!(m, 4.0, max_relative = 1e-13);
        let (p, m) = exciton_frequencies(60.0, -60.0, 96.0);
        assert_relative_eq!(p - m, 226.415_547_169_358_5, max_relative = 1e-14);
    }

    #[test]
    fn trig_form_agrees_at_mixing_angle() {
        for &(o1, o2, j) in &[(50.0, -204.0, -96.0), (300.0, 10.0, 96.0), (1.0, 0.5, 40.0)] {
            let phi = mixing_angle(o1 - o2, j).unwrap();
            let (tp, tm) = trigonometric_frequencies(o1, o2, j, phi);
            let (p, m) = exciton_frequencies(o1, o2, j);
            assert_relative_eq!(tp, p, max_relative = 1e-10);
            assert_relative_eq!(tm, m, max_relative = 1e-10);
        }
    }

    #[test]
    fn inverted_gap_is_flagged() {
        // 2cosθ + |η| < 0 with large λ₁ drives ω'₁ below ω'₂
        let p = DimerParams::new(10.0, 0.0, 5.0, 100.0, 1.0, PI).unwrap();
        let f = ExcitonFrame::new(&p).unwrap();
        assert!(f.inverted);
        assert!(f.omega_plus >= f.omega_minus);
    }

    #[test]
    fn basis_map_examples() {
        assert_eq!(basis_map(0.0), Matrix2::identity());
        let r = basis_map(FRAC_PI_2);
        for v in r.iter() {
            assert_relative_eq!(v.abs(), FRAC_1_SQRT_2, max_relative = 1e-15);
        }
    }

    #[test]
    fn basis_map_diagonalizes_hamiltonian() {
        let f = ExcitonFrame::new(&fmo(0.71, 0.0)).unwrap();
        let h = Matrix2::new(f.omega1p, -96.0, -96.0, f.omega2p);
        let r = basis_map(f.phi0);
        // exciton-basis Hamiltonian = Rᵀ H R
        let d = r.transpose() * h * r;
        assert!(d[(0, 1)].abs() < 1e-12);
        assert_relative_eq!(d[(0, 0)], f.omega_plus, max_relative = 1e-12);
        assert_relative_eq!(d[(1, 1)], f.omega_minus, max_relative = 1e-12);
    }

    #[test]
    fn invalid_params_are_rejected() {
        assert!(DimerParams::new(0.0, 120.0, 96.0, 35.0, 1.0, 0.0).is_err());
        assert!(DimerParams::new(120.0, 0.0, 96.0, -1.0, 1.0, 0.0).is_err());
        assert!(DimerParams::new(120.0, 0.0, 96.0, 35.0, -0.1, 0.0).is_err());
        assert!(DimerParams::new(120.0, 0.0, 96.0, 35.0, 1.0, 3.5).is_err());
        assert!(DimerParams::new(120.0, 0.0, f64::NAN, 35.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn cartesian_eta_converts_to_polar() {
        let p = DimerParams::from_complex_eta(120.0, 0.0, 96.0, 35.0, 0.0, -2.0).unwrap();
        assert_relative_eq!(p.eta_abs, 2.0);
        assert_relative_eq!(p.theta, FRAC_PI_2);
        let p = DimerParams::from_complex_eta(120.0, 0.0, 96.0, 35.0, -1.0, 0.0).unwrap();
        assert_relative_eq!(p.theta, PI);
    }

    proptest! {
        #[test]
        fn trace_identity(o1 in -1e4f64..1e4, o2 in -1e4f64..1e4, j in -500.0f64..500.0) {
            let (p, m) = exciton_frequencies(o1, o2, j);
            let scale = (o1.abs() + o2.abs()).max(1.0);
            prop_assert!((p + m - (o1 + o2)).abs() <= 1e-12 * scale);
            prop_assert!(p >= m);
        }

        #[test]
        fn omega0_even_in_theta(eta in 0.0f64..5.0, theta in 0.0f64..PI, j in -200.0f64..200.0) {
            let p = DimerParams { omega1: 120.0, omega2: 0.0, j12: j, lambda1: 35.0, eta_abs: eta, theta };
            let q = DimerParams { theta: -theta, ..p };
            prop_assert_eq!(resonance(renormalized_gap(&p), j), resonance(renormalized_gap(&q), j));
        }

        #[test]
        fn omega0_bounded_by_coupling(gap in -500.0f64..500.0, j in -200.0f64..200.0) {
            let w0 = resonance(gap, j);
            prop_assert!(w0 >= 2.0 * j.abs());
            if gap == 0.0 {
                prop_assert_eq!(w0, 2.0 * j.abs());
            } else {
                prop_assert!(w0 > 2.0 * j.abs());
            }
        }

        #[test]
        fn basis_round_trip(phi in -FRAC_PI_2..FRAC_PI_2, x in -1.0f64..1.0, y in -1.0f64..1.0) {
            let r = basis_map(phi);
            let v = nalgebra::Vector2::new(x, y);
            let back = r.transpose() * (r * v);
            prop_assert!((back - v).amax() <= 1e-14);
            prop_assert!((r * r.transpose() - Matrix2::identity()).amax() <= 1e-14);
        }
    }
}
