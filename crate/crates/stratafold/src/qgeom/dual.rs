//! Points of the dual of the observable space, carried as coordinate
//! vectors against an ObservableBasis, and the states among them. The
//! linear and expectation functions of observables live here, along with
//! the two contravariant tensors (antisymmetric from the bracket,
//! symmetric from the Jordan product) in both their linear and
//! normalized forms.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

use super::operators::{jordan_product, lie_product, HermitianOperator, ObservableBasis};

/// Relative eigenvalue threshold for rank decisions.
pub const EPS_RANK: f64 = 1e-10;

/// Largest tolerated negative eigenvalue and trace drift for states.
pub const STATE_TOL: f64 = 1e-8;

/// Functional on observables: coordinates x_mu = xi(a_mu), equivalently a
/// Hermitian representative with xi(a) = Tr(matrix * a).
#[derive(Debug, Clone, PartialEq)]
pub struct DualElement {
    basis: Arc<ObservableBasis>,
    coords: Vec<f64>,
}

impl DualElement {
    pub fn from_coordinates(basis: &Arc<ObservableBasis>, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != basis.size() {
            return Err(Error::DimensionMismatch {
                expected: basis.size(),
                got: coords.len(),
            });
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("coordinates must be finite".into()));
        }
        Ok(DualElement {
            basis: Arc::clone(basis),
            coords,
        })
    }

    pub fn from_matrix(basis: &Arc<ObservableBasis>, m: &DMatrix<Complex64>) -> Result<Self> {
        // reuse the Hermiticity gate
        let op = HermitianOperator::new(m.clone())?;
        Self::from_operator(basis, &op)
    }

    pub fn from_operator(basis: &Arc<ObservableBasis>, op: &HermitianOperator) -> Result<Self> {
        if op.dim() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                got: op.dim(),
            });
        }
        Ok(DualElement {
            basis: Arc::clone(basis),
            coords: basis.coordinates_of(op.matrix()),
        })
    }

    pub fn zero(basis: &Arc<ObservableBasis>) -> Self {
        DualElement {
            basis: Arc::clone(basis),
            coords: vec![0.0; basis.size()],
        }
    }

    pub fn basis(&self) -> &Arc<ObservableBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn coordinates(&self) -> &[f64] {
        &self.coords
    }

    pub fn matrix(&self) -> DMatrix<Complex64> {
        self.basis.matrix_from_coordinates(&self.coords)
    }

    /// Coordinate along the identity, which equals the matrix trace.
    pub fn trace_component(&self) -> f64 {
        self.coords[0]
    }

    pub fn spectrum(&self) -> Vec<f64> {
        let mut eigs: Vec<f64> = self
            .matrix()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        eigs.sort_by(f64::total_cmp);
        eigs
    }

    fn same_basis(&self, other: &DualElement) -> Result<()> {
        if !Arc::ptr_eq(&self.basis, &other.basis) && *self.basis != *other.basis {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &DualElement) -> Result<DualElement> {
        self.same_basis(other)?;
        Ok(DualElement {
            basis: Arc::clone(&self.basis),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &DualElement) -> Result<DualElement> {
        self.add(&other.scaled(-1.0))
    }

    pub fn scaled(&self, s: f64) -> DualElement {
        DualElement {
            basis: Arc::clone(&self.basis),
            coords: self.coords.iter().map(|x| x * s).collect(),
        }
    }

    pub fn norm_inf(&self) -> f64 {
        self.coords.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn approx_eq(&self, other: &DualElement, tol: f64) -> bool {
        self.same_basis(other).is_ok()
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

/// Unit-trace positive dual element with its spectral data cached.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    xi: DualElement,
    spectrum: Vec<f64>,
    rank: usize,
    positive: usize,
    negative: usize,
}

/// Eigenvalue sign counts at the relative threshold EPS_RANK.
pub(crate) fn count_signs(spectrum: &[f64]) -> (usize, usize) {
    let scale = spectrum.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let cut = EPS_RANK * scale;
    let positive = spectrum.iter().filter(|x| **x > cut).count();
    let negative = spectrum.iter().filter(|x| **x < -cut).count();
    (positive, negative)
}

impl DensityState {
    pub fn new(xi: DualElement) -> Result<Self> {
        let trace = xi.trace_component();
        if (trace - 1.0).abs() > STATE_TOL {
            return Err(Error::NotAState(format!("trace is {trace}, not 1")));
        }
        let spectrum = xi.spectrum();
        let min = spectrum[0];
        if min < -STATE_TOL {
            return Err(Error::NotAState(format!("negative eigenvalue {min:.3e}")));
        }
        let (positive, negative) = count_signs(&spectrum);
        Ok(DensityState {
            xi,
            spectrum,
            rank: positive,
            positive,
            negative,
        })
    }

    pub fn from_coordinates(basis: &Arc<ObservableBasis>, coords: Vec<f64>) -> Result<Self> {
        Self::new(DualElement::from_coordinates(basis, coords)?)
    }

    pub fn from_matrix(basis: &Arc<ObservableBasis>, m: &DMatrix<Complex64>) -> Result<Self> {
        Self::new(DualElement::from_matrix(basis, m)?)
    }

    /// Two-level state from its coordinate 3-vector: (1 + x.sigma)/2.
    pub fn bloch(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        let basis = Arc::new(ObservableBasis::standard(2)?);
        Self::from_coordinates(&basis, vec![1.0, x1, x2, x3])
    }

    pub fn maximally_mixed(basis: &Arc<ObservableBasis>) -> Result<Self> {
        let mut coords = vec![0.0; basis.size()];
        coords[0] = 1.0;
        Self::from_coordinates(basis, coords)
    }

    /// Rank-one state psi psi* / |psi|^2.
    pub fn pure(basis: &Arc<ObservableBasis>, psi: &[Complex64]) -> Result<Self> {
        if psi.len() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                got: psi.len(),
            });
        }
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm2 <= 0.0 {
            return Err(Error::InvalidInput("zero vector".into()));
        }
        let n = psi.len();
        let m = DMatrix::from_fn(n, n, |r, c| psi[r] * psi[c].conj() / norm2);
        Self::from_matrix(basis, &m)
    }

    pub fn dual(&self) -> &DualElement {
        &self.xi
    }

    pub fn basis(&self) -> &Arc<ObservableBasis> {
        self.xi.basis()
    }

    pub fn dim(&self) -> usize {
        self.xi.dim()
    }

    pub fn coordinates(&self) -> &[f64] {
        self.xi.coordinates()
    }

    pub fn matrix(&self) -> DMatrix<Complex64> {
        self.xi.matrix()
    }

    /// Ascending eigenvalues.
    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn positive_count(&self) -> usize {
        self.positive
    }

    pub fn negative_count(&self) -> usize {
        self.negative
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.spectrum[0]
    }

    pub fn purity(&self) -> f64 {
        self.spectrum.iter().map(|l| l * l).sum()
    }
}

/// xi(a) = Tr(matrix(xi) a).
pub fn linear_function(a: &HermitianOperator, xi: &DualElement) -> Result<f64> {
    if a.dim() != xi.dim() {
        return Err(Error::DimensionMismatch {
            expected: xi.dim(),
            got: a.dim(),
        });
    }
    Ok((xi.matrix() * a.matrix()).trace().re)
}

/// Normalized function xi(a)/xi(1); invariant under dilations of xi.
pub fn expectation(a: &HermitianOperator, xi: &DualElement) -> Result<f64> {
    let unit = xi.trace_component();
    if unit.abs() <= 1e-12 {
        return Err(Error::OutsideDomain);
    }
    Ok(linear_function(a, xi)? / unit)
}

/// Antisymmetric tensor on linear functions: value xi([[a,b]]).
pub fn lambda_tensor(a: &HermitianOperator, b: &HermitianOperator, xi: &DualElement) -> Result<f64> {
    linear_function(&lie_product(a, b)?, xi)
}

/// Symmetric tensor on linear functions: value xi(a o b).
pub fn r_tensor(a: &HermitianOperator, b: &HermitianOperator, xi: &DualElement) -> Result<f64> {
    linear_function(&jordan_product(a, b)?, xi)
}

/// Antisymmetric tensor on expectation functions at a state; the identity
/// direction is annihilated since [[a, 1]] = 0.
pub fn lambda_d_tensor(
    a: &HermitianOperator,
    b: &HermitianOperator,
    rho: &DensityState,
) -> Result<f64> {
    expectation(&lie_product(a, b)?, rho.dual())
}

/// Symmetric tensor on expectation functions at a state: the covariance
/// e_{a o b} - e_a e_b. Nonnegative on the diagonal.
pub fn r_d_tensor(
    a: &HermitianOperator,
    b: &HermitianOperator,
    rho: &DensityState,
) -> Result<f64> {
    let joint = expectation(&jordan_product(a, b)?, rho.dual())?;
    Ok(joint - expectation(a, rho.dual())? * expectation(b, rho.dual())?)
}
