use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exciton::basis_map;

pub type DensityMatrix = Matrix3<Complex64>;

/// Which basis the rows and columns of a [`OneExcitationState`] refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `{|e₀⟩, |e₁⟩, |e₂⟩}`
    Exciton,
    /// `{|0⟩, |1⟩, |2⟩}`
    Site,
}

/// Tolerances used by [`OneExcitationState::check`].
pub const HERMITICITY_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const POSITIVITY_TOL: f64 = 1e-10;

/// Density matrix on the vacuum plus one-excitation subspace of the dimer.
///
/// Index 0 is the vacuum in either basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneExcitationState {
    pub basis: Basis,
    pub rho: DensityMatrix,
}

impl OneExcitationState {
    /// Wraps a matrix after checking it is a valid density matrix.
    pub fn new(basis: Basis, rho: DensityMatrix) -> Result<Self> {
        let s = OneExcitationState { basis, rho };
        s.check()?;
        Ok(s)
    }

    /// Pure state from (not necessarily normalized) amplitudes.
    pub fn pure(basis: Basis, amplitudes: [Complex64; 3]) -> Result<Self> {
        let v = Vector3::from(amplitudes);
        let norm2 = v.norm_squared();
        if !(norm2 > 0.0) || !norm2.is_finite() {
            return Err(Error::Domain(
                "state vector must be nonzero and finite".into(),
            ));
        }
        let rho = v * v.adjoint() / Complex64::new(norm2, 0.0);
        Self::new(basis, rho)
    }

    fn basis_state(basis: Basis, index: usize) -> Self {
        let mut rho = DensityMatrix::zeros();
        rho[(index, index)] = Complex64::new(1.0, 0.0);
        OneExcitationState { basis, rho }
    }

    pub fn vacuum() -> Self {
        Self::basis_state(Basis::Site, 0)
    }

    /// Excitation localized on site 1.
    pub fn site1() -> Self {
        Self::basis_state(Basis::Site, 1)
    }

    pub fn site2() -> Self {
        Self::basis_state(Basis::Site, 2)
    }

    /// Upper exciton `|e₁⟩`.
    pub fn exciton1() -> Self {
        Self::basis_state(Basis::Exciton, 1)
    }

    pub fn exciton2() -> Self {
        Self::basis_state(Basis::Exciton, 2)
    }

    /// `(|1⟩ + |2⟩)/√2`.
    pub fn site_superposition() -> Self {
        let h = Complex64::new(0.5, 0.0);
        let z = Complex64::new(0.0, 0.0);
        OneExcitationState {
            basis: Basis::Site,
            rho: DensityMatrix::new(z, z, z, z, h, h, z, h, h),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.rho.trace()
    }

    /// `max |ρ − ρ†|`
    pub fn hermiticity_error(&self) -> f64 {
        max_abs(&(self.rho - self.rho.adjoint()))
    }

    /// `|tr ρ − 1|`
    pub fn trace_error(&self) -> f64 {
        (self.trace() - Complex64::new(1.0, 0.0)).norm()
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        self.hermitized()
            .rho
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn check(&self) -> Result<()> {
        if self
            .rho
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Domain(
                "density matrix has non-finite entries".into(),
            ));
        }
        let h = self.hermiticity_error();
        if h > HERMITICITY_TOL {
            return Err(Error::Domain(format!(
                "density matrix not Hermitian (error {h:e})"
            )));
        }
        let t = self.trace_error();
        if t > TRACE_TOL {
            return Err(Error::Domain(format!(
                "density matrix trace differs from 1 by {t:e}"
            )));
        }
        let e = self.min_eigenvalue();
        if e < -POSITIVITY_TOL {
            return Err(Error::Domain(format!(
                "density matrix has negative eigenvalue {e:e}"
            )));
        }
        Ok(())
    }

    /// `(ρ + ρ†)/2`
    pub fn hermitized(&self) -> Self {
        OneExcitationState {
            basis: self.basis,
            rho: hermitize(&self.rho),
        }
    }

    /// Expresses the state in the site basis, using the exciton mixing angle.
    pub fn to_site_basis(&self, phi0: f64) -> Self {
        match self.basis {
            Basis::Site => *self,
            Basis::Exciton => {
                let r = embed(phi0);
                OneExcitationState {
                    basis: Basis::Site,
                    rho: r * self.rho * r.transpose(),
                }
            }
        }
    }

    pub fn to_exciton_basis(&self, phi0: f64) -> Self {
        match self.basis {
            Basis::Exciton => *self,
            Basis::Site => {
                let r = embed(phi0);
                OneExcitationState {
                    basis: Basis::Exciton,
                    rho: r.transpose() * self.rho * r,
                }
            }
        }
    }

    pub fn in_basis(&self, basis: Basis, phi0: f64) -> Self {
        match basis {
            Basis::Site => self.to_site_basis(phi0),
            Basis::Exciton => self.to_exciton_basis(phi0),
        }
    }

    /// The six independent components `ρ₀₀, ρ₀₁, ρ₀₂, ρ₁₁, ρ₁₂, ρ₂₂`.
    pub fn components(&self) -> [Complex64; 6] {
        let r = &self.rho;
        [
            r[(0, 0)],
            r[(0, 1)],
            r[(0, 2)],
            r[(1, 1)],
            r[(1, 2)],
            r[(2, 2)],
        ]
    }

    /// Largest entrywise difference to another state in the same basis.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.basis, other.basis);
        max_abs(&(self.rho - other.rho))
    }
}

/// Column labels matching [`OneExcitationState::components`], Re/Im split.
pub const COMPONENT_COLUMNS: [&str; 12] = [
    "re_00", "im_00", "re_01", "im_01", "re_02", "im_02", "re_11", "im_11", "re_12", "im_12",
    "re_22", "im_22",
];

pub(crate) fn hermitize(rho: &DensityMatrix) -> DensityMatrix {
    (rho + rho.adjoint()) * Complex64::new(0.5, 0.0)
}

pub(crate) fn max_abs(m: &DensityMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `1 ⊕ R(φ₀/2)`: site amplitudes from exciton amplitudes, vacuum untouched.
fn embed(phi0: f64) -> DensityMatrix {
    let r = basis_map(phi0);
    let mut m = DensityMatrix::zeros();
    m[(0, 0)] = Complex64::new(1.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            m[(i + 1, j + 1)] = Complex64::new(r[(i, j)], 0.0);
        }
    }
    m
}
