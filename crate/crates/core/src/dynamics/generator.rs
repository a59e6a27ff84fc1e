use nalgebra::SMatrix;
use num_complex::Complex64;

use super::state::DensityMatrix;
use super::EvolutionParams;
use crate::units::wavenumber_to_angular;

/// Linear map on vectorized 3×3 matrices (column-major, index `i + 3j`).
pub type Superoperator = SMatrix<Complex64, 9, 9>;

/// The map `ρ ↦ −Kρ` in the exciton basis, built from its operator form.
#[derive(Debug, Clone, PartialEq)]
pub struct LindbladGenerator {
    hamiltonian: DensityMatrix,
    raise: DensityMatrix,
    lower: DensityMatrix,
    up_rate: f64,
    down_rate: f64,
}

impl LindbladGenerator {
    pub fn new(p: &EvolutionParams) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let mut hamiltonian = DensityMatrix::zeros();
        hamiltonian[(1, 1)] = Complex64::new(wavenumber_to_angular(p.omega_plus), 0.0);
        hamiltonian[(2, 2)] = Complex64::new(wavenumber_to_angular(p.omega_minus), 0.0);
        let mut raise = DensityMatrix::from_element(zero);
        raise[(1, 2)] = one;
        LindbladGenerator {
            hamiltonian,
            raise,
            lower: raise.adjoint(),
            up_rate: p.gamma * p.nbar0,
            down_rate: p.gamma * (p.nbar0 + 1.0),
        }
    }

    /// `−Kρ`
    pub fn apply(&self, rho: &DensityMatrix) -> DensityMatrix {
        let i = Complex64::new(0.0, 1.0);
        let h = &self.hamiltonian;
        let unitary = (h * rho - rho * h) * (-i);
        unitary
            + dissipator(&self.raise, &self.lower, rho) * Complex64::new(0.5 * self.up_rate, 0.0)
            + dissipator(&self.lower, &self.raise, rho) * Complex64::new(0.5 * self.down_rate, 0.0)
    }

    /// Matrix of [`apply`](Self::apply) acting on column-major vectorized `ρ`.
    pub fn superoperator(&self) -> Superoperator {
        let mut s = Superoperator::zeros();
        for col in 0..9 {
            let mut basis = DensityMatrix::zeros();
            basis[(col % 3, col / 3)] = Complex64::new(1.0, 0.0);
            let image = self.apply(&basis);
            for row in 0..9 {
                s[(row, col)] = image[(row % 3, row / 3)];
            }
        }
        s
    }
}

/// `2 A ρ B − B A ρ − ρ B A` with `B = A†`.
fn dissipator(a: &DensityMatrix, b: &DensityMatrix, rho: &DensityMatrix) -> DensityMatrix {
    let ba = b * a;
    (a * rho * b) * Complex64::new(2.0, 0.0) - ba * rho - rho * ba
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::state::max_abs;
    use proptest::prelude::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn params(gamma: f64) -> EvolutionParams {
        EvolutionParams::new(gamma, 0.51, 82.0, -236.0, 0.4).unwrap()
    }

    #[test]
    fn no_decay_keeps_populations() {
        let g = LindbladGenerator::new(&params(0.0));
        let rho = DensityMatrix::from_diagonal(&nalgebra::Vector3::new(c(0.2), c(0.5), c(0.3)));
        assert_eq!(max_abs(&g.apply(&rho)), 0.0);
    }

    #[test]
    fn thermal_fixed_point_is_stationary() {
        let p = params(1.0 / 1100.0);
        let g = LindbladGenerator::new(&p);
        let n = p.nbar0;
        for r00 in [0.0, 0.25, 0.9] {
            let s = (1.0 - r00) / (1.0 + 2.0 * n);
            let rho = DensityMatrix::from_diagonal(&nalgebra::Vector3::new(
                c(r00),
                c(n * s),
                c((n + 1.0) * s),
            ));
            assert!(max_abs(&g.apply(&rho)) <= 1e-12);
        }
    }

    #[test]
    fn vacuum_is_untouched_by_dissipation() {
        let g = LindbladGenerator::new(&params(0.3));
        let mut rho = DensityMatrix::zeros();
        rho[(0, 0)] = c(1.0);
        assert_eq!(max_abs(&g.apply(&rho)), 0.0);
    }

    #[test]
    fn superoperator_agrees_with_apply() {
        let g = LindbladGenerator::new(&params(0.01));
        let rho = DensityMatrix::from_fn(|i, j| {
            Complex64::new((i + 2 * j) as f64 * 0.1, i as f64 - j as f64)
        });
        let direct = g.apply(&rho);
        let vec = nalgebra::SVector::<Complex64, 9>::from_iterator(rho.iter().copied());
        let via_super = g.superoperator() * vec;
        for (a, b) in direct.iter().zip(via_super.iter()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    proptest! {
        #[test]
        fn trace_preserving(entries in proptest::collection::vec(-1.0f64..1.0, 18), gamma in 0.0f64..1.0) {
            let g = LindbladGenerator::new(&params(gamma));
            let m = DensityMatrix::from_fn(|i, j| Complex64::new(entries[2 * (3 * i + j)], entries[2 * (3 * i + j) + 1]));
            let rho = m + m.adjoint();
            prop_assert!(g.apply(&rho).trace().norm() <= 1e-12);
        }
    }
}
