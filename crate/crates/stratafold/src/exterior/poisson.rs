//! Linear Poisson structure on the dual space: the bivector whose value on
//! a pair of coordinate differentials is the bracket evaluated at the point.

use super::algebra::LieAlgebraSpec;
use crate::error::{Error, Result};

/// Point of the dual space V*, coordinates against the dual basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DualPoint {
    coords: Vec<f64>,
}

impl DualPoint {
    pub fn new(coords: Vec<f64>) -> Self {
        DualPoint { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// Value of the linear Poisson bivector on (dv_i, dv_j) at alpha:
/// alpha([e_i, e_j]) = sum_k c[i][j][k] alpha_k.
pub fn lie_poisson_bivector(
    spec: &LieAlgebraSpec,
    i: usize,
    j: usize,
    alpha: &DualPoint,
) -> Result<f64> {
    let n = spec.dim();
    if i >= n || j >= n {
        return Err(Error::IndexOutOfRange {
            index: i.max(j),
            dim: n,
        });
    }
    if alpha.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: alpha.dim(),
        });
    }
    let mut total = 0.0;
    for k in 0..n {
        total += spec.structure_constant(i, j, k) * alpha.coords()[k];
    }
    Ok(total)
}
