//! The probability simplex with its information metric. The metric is
//! diagonal, g_jj = 1/(4 p_j), blows up toward the faces, and pulls back
//! to the flat round metric under the coordinate change x_j = sqrt(p_j)
//! onto the positive orthant of the unit sphere.

use crate::error::{Error, Result};

const SUM_TOL: f64 = 1e-12;

/// Point of the probability simplex: nonnegative entries summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    p: Vec<f64>,
}

impl ProbabilityVector {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidProbability("empty vector".into()));
        }
        if p.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidProbability(
                "entries must be nonnegative and finite".into(),
            ));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidProbability(format!(
                "entries sum to {sum}, not 1"
            )));
        }
        Ok(ProbabilityVector { p })
    }

    pub fn uniform(outcomes: usize) -> Result<Self> {
        if outcomes == 0 {
            return Err(Error::InvalidProbability("empty vector".into()));
        }
        Ok(ProbabilityVector {
            p: vec![1.0 / outcomes as f64; outcomes],
        })
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.p
    }

    pub fn is_interior(&self) -> bool {
        self.p.iter().all(|x| *x > 0.0)
    }
}

/// Component g_ij of the information metric at p. Queries touching an
/// outcome with zero probability hit the boundary of the stratum and fail.
pub fn fisher_metric(p: &ProbabilityVector, i: usize, j: usize) -> Result<f64> {
    if i >= p.len() || j >= p.len() {
        return Err(Error::IndexOutOfRange {
            index: i.max(j),
            dim: p.len(),
        });
    }
    if p.p[i] == 0.0 || p.p[j] == 0.0 {
        return Err(Error::StratumBoundary(format!(
            "metric component ({i},{j}) at a face"
        )));
    }
    if i != j {
        Ok(0.0)
    } else {
        Ok(1.0 / (4.0 * p.p[i]))
    }
}

/// Square-root coordinates: the image lies on the unit sphere octant.
pub fn sqrt_embed(p: &ProbabilityVector) -> Vec<f64> {
    p.p.iter().map(|x| x.sqrt()).collect()
}

fn check_tangent(p: &ProbabilityVector, u: &[f64]) -> Result<()> {
    if u.len() != p.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            got: u.len(),
        });
    }
    let scale = u.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let sum: f64 = u.iter().sum();
    if sum.abs() > 1e-9 * scale {
        return Err(Error::InvalidInput(
            "tangent components must sum to zero".into(),
        ));
    }
    Ok(())
}

/// Gap between the metric pairing g(u, v) and the Euclidean pairing of the
/// pushed-forward tangents under sqrt_embed. Zero up to roundoff, since
/// dx_j = dp_j / (2 sqrt(p_j)) turns one into the other.
pub fn pullback_residual(p: &ProbabilityVector, u: &[f64], v: &[f64]) -> Result<f64> {
    if !p.is_interior() {
        return Err(Error::StratumBoundary(
            "pullback needs an interior point".into(),
        ));
    }
    check_tangent(p, u)?;
    check_tangent(p, v)?;
    let mut metric = 0.0;
    let mut pushed = 0.0;
    for j in 0..p.len() {
        metric += u[j] * v[j] / (4.0 * p.p[j]);
        let du = u[j] / (2.0 * p.p[j].sqrt());
        let dv = v[j] / (2.0 * p.p[j].sqrt());
        pushed += du * dv;
    }
    Ok((metric - pushed).abs())
}
