//! Hermitian observables and the trace-orthogonal coordinate bases built
//! from them. For two-level systems the basis is the Pauli set; larger
//! dimensions use the generalized Gell-Mann construction with the identity
//! in slot zero.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

const HERMITICITY_TOL: f64 = 1e-12;

fn hermiticity_residual(m: &DMatrix<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            worst = worst.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    worst
}

/// Self-adjoint n x n complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    m: DMatrix<Complex64>,
}

impl HermitianOperator {
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() == 0 || m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows().max(1),
                got: m.ncols(),
            });
        }
        let residual = hermiticity_residual(&m);
        if residual > HERMITICITY_TOL {
            return Err(Error::NotHermitian { residual });
        }
        Ok(HermitianOperator { m })
    }

    pub fn identity(n: usize) -> Self {
        HermitianOperator {
            m: DMatrix::identity(n, n),
        }
    }

    pub fn zero(n: usize) -> Self {
        HermitianOperator {
            m: DMatrix::zeros(n, n),
        }
    }

    /// Real symmetric entries promoted to a complex matrix.
    pub fn from_real(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let m = DMatrix::from_fn(n, n, |r, c| {
            Complex64::new(rows[r].get(c).copied().unwrap_or(f64::NAN), 0.0)
        });
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    pub fn add(&self, other: &HermitianOperator) -> Result<HermitianOperator> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(HermitianOperator {
            m: &self.m + &other.m,
        })
    }

    pub fn sub(&self, other: &HermitianOperator) -> Result<HermitianOperator> {
        self.add(&other.scaled(-1.0))
    }

    pub fn scaled(&self, s: f64) -> HermitianOperator {
        HermitianOperator {
            m: self.m.map(|z| z * s),
        }
    }

    pub fn norm_inf(&self) -> f64 {
        self.m.iter().fold(0.0, |w, z| w.max(z.norm()))
    }

    pub fn approx_eq(&self, other: &HermitianOperator, tol: f64) -> bool {
        self.dim() == other.dim()
            && self
                .m
                .iter()
                .zip(other.m.iter())
                .all(|(a, b)| (a - b).norm() <= tol)
    }
}

/// Antisymmetric product -(i/2)(ab - ba); outputs stay Hermitian.
pub fn lie_product(a: &HermitianOperator, b: &HermitianOperator) -> Result<HermitianOperator> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let ab = a.matrix() * b.matrix();
    let ba = b.matrix() * a.matrix();
    let half_i = Complex64::new(0.0, -0.5);
    HermitianOperator::new((ab - ba).map(|z| z * half_i))
}

/// Symmetrized product (ab + ba)/2.
pub fn jordan_product(a: &HermitianOperator, b: &HermitianOperator) -> Result<HermitianOperator> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let ab = a.matrix() * b.matrix();
    let ba = b.matrix() * a.matrix();
    HermitianOperator::new((ab + ba).map(|z| z * 0.5))
}

/// Ordered trace-orthogonal basis of Hermitian matrices. Slot 0 holds the
/// identity; the rest are traceless with trace-square 2. Coordinates of a
/// dual element are plain traces against the members, so the matrix behind
/// a coordinate vector carries the inverse normalizations.
#[derive(Debug, PartialEq)]
pub struct ObservableBasis {
    n: usize,
    elements: Vec<HermitianOperator>,
    norms: Vec<f64>,
}

impl ObservableBasis {
    /// Pauli basis for n=2; identity plus generalized Gell-Mann matrices
    /// above. Pair elements come first (symmetric then antisymmetric for
    /// each j < k), diagonals last.
    pub fn standard(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: n });
        }
        let mut elements = vec![HermitianOperator::identity(n)];
        for j in 0..n {
            for k in (j + 1)..n {
                let mut sym = DMatrix::zeros(n, n);
                sym[(j, k)] = Complex64::new(1.0, 0.0);
                sym[(k, j)] = Complex64::new(1.0, 0.0);
                elements.push(HermitianOperator::new(sym)?);
                let mut anti = DMatrix::zeros(n, n);
                anti[(j, k)] = Complex64::new(0.0, -1.0);
                anti[(k, j)] = Complex64::new(0.0, 1.0);
                elements.push(HermitianOperator::new(anti)?);
            }
        }
        for m in 1..n {
            let scale = (2.0 / (m as f64 * (m + 1) as f64)).sqrt();
            let mut diag = DMatrix::zeros(n, n);
            for j in 0..m {
                diag[(j, j)] = Complex64::new(scale, 0.0);
            }
            diag[(m, m)] = Complex64::new(-scale * m as f64, 0.0);
            elements.push(HermitianOperator::new(diag)?);
        }
        debug_assert_eq!(elements.len(), n * n);

        let mut norms = vec![0.0; elements.len()];
        for (mu, e) in elements.iter().enumerate() {
            norms[mu] = (e.matrix() * e.matrix()).trace().re;
            for nu in 0..mu {
                let cross = (elements[nu].matrix() * e.matrix()).trace().norm();
                if cross > 1e-12 {
                    return Err(Error::InvalidInput(format!(
                        "basis elements {nu} and {mu} are not trace-orthogonal"
                    )));
                }
            }
        }
        Ok(ObservableBasis { n, elements, norms })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of basis elements, n^2.
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, mu: usize) -> Result<&HermitianOperator> {
        self.elements.get(mu).ok_or(Error::IndexOutOfRange {
            index: mu,
            dim: self.elements.len(),
        })
    }

    pub fn elements(&self) -> &[HermitianOperator] {
        &self.elements
    }

    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    /// x_mu = Tr(m a_mu).
    pub fn coordinates_of(&self, m: &DMatrix<Complex64>) -> Vec<f64> {
        self.elements
            .iter()
            .map(|a| (m * a.matrix()).trace().re)
            .collect()
    }

    /// Matrix with the given coordinates: sum of (x_mu / n_mu) a_mu.
    pub fn matrix_from_coordinates(&self, x: &[f64]) -> DMatrix<Complex64> {
        let mut out = DMatrix::zeros(self.n, self.n);
        for (mu, a) in self.elements.iter().enumerate() {
            let w = x[mu] / self.norms[mu];
            if w != 0.0 {
                out += a.matrix().map(|z| z * w);
            }
        }
        out
    }
}

#[cfg(test)]
pub(crate) fn pauli(k: usize) -> HermitianOperator {
    let basis = ObservableBasis::standard(2).unwrap();
    basis.element(k).unwrap().clone()
}
