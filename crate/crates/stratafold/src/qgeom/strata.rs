//! Rank stratification of the positive cone and the state space: where a
//! dual element sits, which tangents stay inside its stratum, and the
//! dimension the strata are supposed to have. Also the bridge to classical
//! probability: Born weights of a vector in a frame and the polar form
//! of a mixed state.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::statgeom::ProbabilityVector;

use super::dual::{DensityState, DualElement, EPS_RANK, STATE_TOL};
use super::fields::{gradient_field, hamiltonian_field, AlgebraConfig};
use super::operators::ObservableBasis;

/// Sign counts of the spectrum and the dimension of the matching stratum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StratumInfo {
    pub rank: usize,
    pub positive: usize,
    pub negative: usize,
    /// 2nk - k^2 - 1 on the state space, 2nk - k^2 off the unit-trace
    /// positive slice.
    pub dimension: usize,
}

/// Eigenvalue counts at threshold eps times the spectral radius.
pub fn rank_and_stratum(xi: &DualElement, eps: f64) -> StratumInfo {
    let spectrum = xi.spectrum();
    let scale = spectrum.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let cut = eps * scale;
    let positive = spectrum.iter().filter(|x| **x > cut).count();
    let negative = spectrum.iter().filter(|x| **x < -cut).count();
    let rank = positive + negative;
    let n = xi.dim();
    let is_state = (xi.trace_component() - 1.0).abs() <= STATE_TOL && negative == 0;
    let dimension = 2 * n * rank - rank * rank - usize::from(is_state);
    StratumInfo {
        rank,
        positive,
        negative,
        dimension,
    }
}

/// Whether the tangent's representative B keeps the defining pairing flat
/// on the kernel of xi: max |<x|B|y>| over an orthonormal kernel basis at
/// most 1e-10. Full-rank points have an empty kernel and always pass.
pub fn tangency_check(xi: &DualElement, tangent: &DualElement) -> Result<bool> {
    if !Arc::ptr_eq(xi.basis(), tangent.basis()) && *xi.basis() != *tangent.basis() {
        return Err(Error::ParentMismatch);
    }
    let eig = xi.matrix().symmetric_eigen();
    let scale = eig.eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let kernel: Vec<usize> = (0..eig.eigenvalues.len())
        .filter(|&k| eig.eigenvalues[k].abs() <= EPS_RANK * scale.max(1.0))
        .collect();
    if kernel.is_empty() {
        return Ok(true);
    }
    let b = tangent.matrix();
    let mut worst = 0.0f64;
    for &kx in &kernel {
        let x = eig.eigenvectors.column(kx);
        let bx = &b * x;
        for &ky in &kernel {
            let y = eig.eigenvectors.column(ky);
            let pairing: Complex64 = y.dotc(&bx);
            worst = worst.max(pairing.norm());
        }
    }
    Ok(worst <= 1e-10)
}

/// Dimension of the span of the Hamiltonian and gradient fields of all
/// traceless basis elements at rho, via the singular values of the
/// stacked coordinate vectors.
pub fn tangent_space_dimension(rho: &DensityState) -> Result<usize> {
    let basis = rho.basis();
    let cfg = AlgebraConfig::bare();
    let count = basis.size() - 1;
    let mut rows = DMatrix::zeros(2 * count, basis.size());
    for mu in 1..basis.size() {
        let a = basis.element(mu)?;
        let x = hamiltonian_field(a, rho, &cfg)?;
        let y = gradient_field(a, rho, &cfg)?;
        for c in 0..basis.size() {
            rows[(mu - 1, c)] = x.coordinates()[c];
            rows[(count + mu - 1, c)] = y.coordinates()[c];
        }
    }
    let sv = rows.singular_values();
    let top = sv.iter().fold(0.0f64, |m, x| m.max(*x));
    if top == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|s| **s > 1e-8 * top).count())
}

/// Squared moduli of the components of psi in the given orthonormal frame
/// (columns), normalized by |psi|^2.
pub fn born_probabilities(
    psi: &[Complex64],
    frame: &DMatrix<Complex64>,
) -> Result<ProbabilityVector> {
    let n = psi.len();
    if frame.nrows() != n || frame.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: frame.nrows().max(frame.ncols()),
        });
    }
    let residual = unitarity_residual(frame);
    if residual > 1e-10 {
        return Err(Error::NotUnitary { residual });
    }
    let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if norm2 <= 0.0 {
        return Err(Error::InvalidInput("zero vector".into()));
    }
    let p: Vec<f64> = (0..n)
        .map(|j| {
            let amp: Complex64 = (0..n).map(|r| frame[(r, j)].conj() * psi[r]).sum();
            amp.norm_sqr() / norm2
        })
        .collect();
    ProbabilityVector::new(p)
}

fn unitarity_residual(u: &DMatrix<Complex64>) -> f64 {
    let gram = u.adjoint() * u;
    let mut worst = 0.0f64;
    for r in 0..gram.nrows() {
        for c in 0..gram.ncols() {
            let target = if r == c {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            worst = worst.max((gram[(r, c)] - target).norm());
        }
    }
    worst
}

/// Mixed state in polar form: U* diag(p) U.
pub fn polar_state(p: &ProbabilityVector, u: &DMatrix<Complex64>) -> Result<DensityState> {
    let n = p.len();
    if u.nrows() != n || u.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: u.nrows().max(u.ncols()),
        });
    }
    let residual = unitarity_residual(u);
    if residual > 1e-10 {
        return Err(Error::NotUnitary { residual });
    }
    let diag = DMatrix::from_fn(n, n, |r, c| {
        if r == c {
            Complex64::new(p.values()[r], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let m = u.adjoint() * diag * u;
    let m = (&m + m.adjoint()).map(|z| z * 0.5);
    let basis = Arc::new(ObservableBasis::standard(n)?);
    DensityState::from_matrix(&basis, &m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgeom::fields::{kraus_field, LindbladSpec};
    use crate::qgeom::operators::pauli;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn stratum_of_qubit_states() {
        let pure = DensityState::bloch(0.0, 0.0, 1.0).unwrap();
        let info = rank_and_stratum(pure.dual(), EPS_RANK);
        assert_eq!((info.rank, info.positive, info.negative), (1, 1, 0));
        assert_eq!(info.dimension, 2);

        let basis = pure.basis();
        let mixed = DensityState::maximally_mixed(basis).unwrap();
        let info = rank_and_stratum(mixed.dual(), EPS_RANK);
        assert_eq!(info.rank, 2);
        assert_eq!(info.dimension, 3);

        let half_s3 =
            DualElement::from_coordinates(basis, vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        let info = rank_and_stratum(&half_s3, EPS_RANK);
        assert_eq!((info.positive, info.negative), (1, 1));
        assert_eq!(info.dimension, 2 * 2 * 2 - 4);
    }

    #[test]
    fn tangency_at_pure_states() {
        let cfg = AlgebraConfig::default();
        let pure = DensityState::bloch(1.0, 0.0, 0.0).unwrap();
        let rotation = hamiltonian_field(&pauli(3), &pure, &cfg).unwrap();
        assert!(tangency_check(pure.dual(), &rotation).unwrap());

        let spec = LindbladSpec::phase_damping(0.3).unwrap();
        let jump = kraus_field(&spec, &pure).unwrap();
        assert!(!tangency_check(pure.dual(), &jump).unwrap());

        // no kernel at an interior point, so anything passes
        let interior = DensityState::bloch(0.2, 0.1, -0.3).unwrap();
        let any = kraus_field(&spec, &interior).unwrap();
        assert!(tangency_check(interior.dual(), &any).unwrap());
    }

    #[test]
    fn span_dimensions_match_the_formula() {
        let pure = DensityState::bloch(0.0, 0.0, 1.0).unwrap();
        assert_eq!(tangent_space_dimension(&pure).unwrap(), 2);
        let interior = DensityState::bloch(0.1, -0.2, 0.3).unwrap();
        assert_eq!(tangent_space_dimension(&interior).unwrap(), 3);
    }

    #[test]
    fn born_weights() {
        let eye = DMatrix::<Complex64>::identity(2, 2);
        let p = born_probabilities(&[c(1.0, 0.0), c(0.0, 0.0)], &eye).unwrap();
        assert_eq!(p.values(), &[1.0, 0.0]);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let p = born_probabilities(&[c(s, 0.0), c(s, 0.0)], &eye).unwrap();
        assert!((p.values()[0] - 0.5).abs() < 1e-15);
        assert!((p.values()[1] - 0.5).abs() < 1e-15);

        let p = born_probabilities(&[c(2.0, 0.0), c(0.0, 0.0)], &eye).unwrap();
        assert_eq!(p.values(), &[1.0, 0.0]);

        assert!(born_probabilities(&[c(0.0, 0.0), c(0.0, 0.0)], &eye).is_err());
        let skew = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.4, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            born_probabilities(&[c(1.0, 0.0), c(0.0, 0.0)], &skew),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn polar_form_reproduces_the_spectrum() {
        let p = ProbabilityVector::new(vec![0.5, 0.5]).unwrap();
        let eye = DMatrix::<Complex64>::identity(2, 2);
        let rho = polar_state(&p, &eye).unwrap();
        assert!((rho.purity() - 0.5).abs() < 1e-14);
        assert_eq!(rho.rank(), 2);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let hadamard = DMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]);
        let vertex = ProbabilityVector::new(vec![1.0, 0.0]).unwrap();
        let rho = polar_state(&vertex, &hadamard).unwrap();
        assert_eq!(rho.rank(), 1);
        assert!((rho.spectrum()[1] - 1.0).abs() < 1e-12);

        let tilted = ProbabilityVector::new(vec![0.7, 0.3]).unwrap();
        let rho = polar_state(&tilted, &hadamard).unwrap();
        let spectrum = rho.spectrum();
        assert!((spectrum[0] - 0.3).abs() < 1e-12);
        assert!((spectrum[1] - 0.7).abs() < 1e-12);
    }
}
