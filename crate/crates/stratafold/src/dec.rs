//! Discrete calculus on a periodic 1-D complex: cochains on a ring of
//! vertices and edges, the coboundary/codifferential pair, the duality map
//! between primal and dual cells, and the first-order operator i(d - δ)
//! whose spectrum reproduces the lattice dispersion relation.
//!
//! Conventions. Vertices are 0..N-1, edge j runs from vertex j to vertex
//! j+1 (mod N) with length l_j. The cell around vertex j on the dual
//! complex spans the neighboring edge midpoints and has volume
//! w_j = (l_{j-1} + l_j)/2; edge duals are midpoints with unit volume.
//! Inner products carry the volume ratios (w_j on degree 0, 1/l_j on
//! degree 1), and the codifferential is the adjoint of the coboundary for
//! those inner products. Matrices are reported in the volume-normalized
//! coordinates y -> W^(1/2) y, where the first-order operator is Hermitian
//! for every spacing.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO_MODE_TOL: f64 = 1e-8;

/// Periodic 1-D complex: N vertices joined in a cycle by N oriented edges.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialRing {
    lengths: Vec<f64>,
}

impl SimplicialRing {
    pub fn uniform(sites: usize, length: f64) -> Result<Self> {
        Self::with_spacing(vec![length; sites])
    }

    pub fn with_spacing(lengths: Vec<f64>) -> Result<Self> {
        if lengths.len() < 3 {
            return Err(Error::InvalidRing(format!(
                "need at least 3 sites, got {}",
                lengths.len()
            )));
        }
        if lengths.iter().any(|l| !l.is_finite() || *l <= 0.0) {
            return Err(Error::InvalidRing(
                "edge lengths must be positive and finite".into(),
            ));
        }
        Ok(SimplicialRing { lengths })
    }

    pub fn sites(&self) -> usize {
        self.lengths.len()
    }

    pub fn edge_length(&self, j: usize) -> f64 {
        self.lengths[j % self.lengths.len()]
    }

    pub fn spacing(&self) -> &[f64] {
        &self.lengths
    }

    pub fn is_uniform(&self) -> bool {
        self.lengths
            .iter()
            .all(|l| (l - self.lengths[0]).abs() <= 1e-12 * self.lengths[0].abs())
    }

    /// Volume of the dual cell around vertex j: half the two incident edges.
    pub fn dual_vertex_volume(&self, j: usize) -> f64 {
        let n = self.sites();
        (self.lengths[(j + n - 1) % n] + self.lengths[j % n]) / 2.0
    }
}

/// Real-valued cochain of degree 0 (vertices) or 1 (edges), on the primal
/// or the dual complex.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain {
    ring: Arc<SimplicialRing>,
    degree: usize,
    dual: bool,
    values: Vec<f64>,
}

impl Cochain {
    pub fn new(ring: &Arc<SimplicialRing>, degree: usize, values: Vec<f64>) -> Result<Self> {
        Self::build(ring, degree, false, values)
    }

    pub fn new_dual(ring: &Arc<SimplicialRing>, degree: usize, values: Vec<f64>) -> Result<Self> {
        Self::build(ring, degree, true, values)
    }

    fn build(
        ring: &Arc<SimplicialRing>,
        degree: usize,
        dual: bool,
        values: Vec<f64>,
    ) -> Result<Self> {
        if degree > 1 {
            return Err(Error::UnsupportedGrade {
                op: "cochain",
                got: degree,
            });
        }
        if values.len() != ring.sites() {
            return Err(Error::DimensionMismatch {
                expected: ring.sites(),
                got: values.len(),
            });
        }
        Ok(Cochain {
            ring: Arc::clone(ring),
            degree,
            dual,
            values,
        })
    }

    pub fn zero(ring: &Arc<SimplicialRing>, degree: usize) -> Result<Self> {
        Self::new(ring, degree, vec![0.0; ring.sites()])
    }

    pub fn constant(ring: &Arc<SimplicialRing>, degree: usize, value: f64) -> Result<Self> {
        Self::new(ring, degree, vec![value; ring.sites()])
    }

    pub fn ring(&self) -> &Arc<SimplicialRing> {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn norm_inf(&self) -> f64 {
        self.values.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    fn same_shape(&self, other: &Cochain) -> Result<()> {
        if !Arc::ptr_eq(&self.ring, &other.ring) && *self.ring != *other.ring {
            return Err(Error::ParentMismatch);
        }
        if self.degree != other.degree || self.dual != other.dual {
            return Err(Error::CochainMismatch(format!(
                "degree {}/{} dual {}/{}",
                self.degree, other.degree, self.dual, other.dual
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.same_shape(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cochain {
            ring: Arc::clone(&self.ring),
            degree: self.degree,
            dual: self.dual,
            values,
        })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.scaled(-1.0))
    }

    pub fn scaled(&self, s: f64) -> Cochain {
        Cochain {
            ring: Arc::clone(&self.ring),
            degree: self.degree,
            dual: self.dual,
            values: self.values.iter().map(|x| x * s).collect(),
        }
    }

    pub fn approx_eq(&self, other: &Cochain, tol: f64) -> bool {
        self.same_shape(other).is_ok()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

/// Boundary of a chain given by cell coefficients. Degree-1 chains map to
/// vertex coefficients; degree-0 chains map to the trivial space (empty).
pub fn boundary(ring: &SimplicialRing, coefficients: &[f64], degree: usize) -> Result<Vec<f64>> {
    let n = ring.sites();
    if coefficients.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: coefficients.len(),
        });
    }
    match degree {
        0 => Ok(Vec::new()),
        1 => Ok((0..n)
            .map(|i| coefficients[(i + n - 1) % n] - coefficients[i])
            .collect()),
        got => Err(Error::UnsupportedGrade {
            op: "boundary",
            got,
        }),
    }
}

/// Coboundary: forward differences on primal vertices, backward differences
/// on dual cells (whose edges join consecutive midpoints), zero on degree 1.
pub fn coboundary(a: &Cochain) -> Cochain {
    let n = a.ring.sites();
    let values = match (a.degree, a.dual) {
        (0, false) => (0..n).map(|j| a.values[(j + 1) % n] - a.values[j]).collect(),
        (0, true) => (0..n)
            .map(|j| a.values[j] - a.values[(j + n - 1) % n])
            .collect(),
        _ => vec![0.0; n],
    };
    Cochain {
        ring: Arc::clone(&a.ring),
        degree: 1.min(a.degree + 1),
        dual: a.dual,
        values,
    }
}

/// Duality map fixed by matching cell averages:
/// (1/|cell|) <a, cell> = (1/|dual cell|) <*a, dual cell>.
pub fn discrete_hodge(a: &Cochain) -> Cochain {
    let n = a.ring.sites();
    let (values, degree, dual): (Vec<f64>, usize, bool) = match (a.degree, a.dual) {
        // vertex values spread over dual cells
        (0, false) => (
            (0..n)
                .map(|j| a.values[j] * a.ring.dual_vertex_volume(j))
                .collect(),
            1,
            true,
        ),
        // edge values concentrate on midpoints
        (1, false) => (
            (0..n).map(|j| a.values[j] / a.ring.edge_length(j)).collect(),
            0,
            true,
        ),
        // and back
        (1, true) => (
            (0..n)
                .map(|j| a.values[j] / a.ring.dual_vertex_volume(j))
                .collect(),
            0,
            false,
        ),
        (0, true) => (
            (0..n).map(|j| a.values[j] * a.ring.edge_length(j)).collect(),
            1,
            false,
        ),
        _ => unreachable!("degrees are 0 or 1 by construction"),
    };
    Cochain {
        ring: Arc::clone(&a.ring),
        degree,
        dual,
        values,
    }
}

/// Wedge of primal cochains; total degree at most 1. The (0,1) case uses
/// the half-half endpoint weights cut out by the dual cells.
pub fn discrete_wedge(a: &Cochain, b: &Cochain) -> Result<Cochain> {
    if a.dual || b.dual {
        return Err(Error::CochainMismatch(
            "wedge is defined on primal cochains".into(),
        ));
    }
    if !Arc::ptr_eq(&a.ring, &b.ring) && *a.ring != *b.ring {
        return Err(Error::ParentMismatch);
    }
    let n = a.ring.sites();
    let total = a.degree + b.degree;
    if total > 1 {
        return Err(Error::UnsupportedGrade {
            op: "discrete_wedge",
            got: total,
        });
    }
    let values = match (a.degree, b.degree) {
        (0, 0) => (0..n).map(|j| a.values[j] * b.values[j]).collect(),
        (0, 1) => (0..n)
            .map(|j| 0.5 * (a.values[j] + a.values[(j + 1) % n]) * b.values[j])
            .collect(),
        (1, 0) => (0..n)
            .map(|j| 0.5 * (b.values[j] + b.values[(j + 1) % n]) * a.values[j])
            .collect(),
        _ => unreachable!(),
    };
    Ok(Cochain {
        ring: Arc::clone(&a.ring),
        degree: total,
        dual: false,
        values,
    })
}

/// Adjoint of the coboundary for the volume-weighted inner products:
/// (δβ)_j = (β_{j-1}/l_{j-1} - β_j/l_j) / w_j on degree 1, zero on degree 0.
pub fn discrete_codifferential(b: &Cochain) -> Result<Cochain> {
    if b.dual {
        return Err(Error::CochainMismatch(
            "codifferential is defined on primal cochains".into(),
        ));
    }
    let n = b.ring.sites();
    if b.degree == 0 {
        return Cochain::zero(&b.ring, 0);
    }
    let values = (0..n)
        .map(|j| {
            let prev = (j + n - 1) % n;
            (b.values[prev] / b.ring.edge_length(prev) - b.values[j] / b.ring.edge_length(j))
                / b.ring.dual_vertex_volume(j)
        })
        .collect();
    Cochain::new(&b.ring, 0, values)
}

/// Volume-weighted inner product: w_j on vertices, 1/l_j on edges.
pub fn inner_product(a: &Cochain, b: &Cochain) -> Result<f64> {
    a.same_shape(b)?;
    if a.dual {
        return Err(Error::CochainMismatch(
            "inner product is defined on primal cochains".into(),
        ));
    }
    let n = a.ring.sites();
    Ok((0..n)
        .map(|j| {
            let weight = match a.degree {
                0 => a.ring.dual_vertex_volume(j),
                _ => 1.0 / a.ring.edge_length(j),
            };
            weight * a.values[j] * b.values[j]
        })
        .sum())
}

/// Evaluation of a cochain on a chain with the given cell coefficients.
pub fn evaluate_on_chain(a: &Cochain, coefficients: &[f64]) -> Result<f64> {
    if coefficients.len() != a.ring.sites() {
        return Err(Error::DimensionMismatch {
            expected: a.ring.sites(),
            got: coefficients.len(),
        });
    }
    Ok(a.values
        .iter()
        .zip(coefficients)
        .map(|(v, c)| v * c)
        .sum())
}

fn coboundary_matrix(ring: &SimplicialRing) -> DMatrix<f64> {
    let n = ring.sites();
    let mut d = DMatrix::zeros(n, n);
    for j in 0..n {
        d[(j, j)] = -1.0;
        d[(j, (j + 1) % n)] = 1.0;
    }
    d
}

/// Forward-difference block mapped to the volume-normalized coordinates,
/// where it and its transpose are exact adjoints.
fn normalized_d_block(ring: &SimplicialRing) -> DMatrix<f64> {
    let n = ring.sites();
    let d = coboundary_matrix(ring);
    let mut out = DMatrix::zeros(n, n);
    for r in 0..n {
        let se = 1.0 / ring.edge_length(r).sqrt();
        for c in 0..n {
            if d[(r, c)] != 0.0 {
                out[(r, c)] = se * d[(r, c)] / ring.dual_vertex_volume(c).sqrt();
            }
        }
    }
    out
}

/// i(d - δ) on vertex ⊕ edge coordinates after volume normalization;
/// Hermitian for every spacing.
pub fn dirac_kahler_matrix(ring: &SimplicialRing) -> DMatrix<Complex64> {
    let n = ring.sites();
    let a = normalized_d_block(ring);
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            if a[(r, c)] != 0.0 {
                // d block: edges from vertices; -δ block is minus its adjoint
                m[(n + r, c)] = Complex64::new(0.0, a[(r, c)]);
                m[(c, n + r)] = Complex64::new(0.0, -a[(r, c)]);
            }
        }
    }
    m
}

/// dδ + δd in the same normalized coordinates: block-diagonal, symmetric.
pub fn laplacian_matrix(ring: &SimplicialRing) -> DMatrix<f64> {
    let n = ring.sites();
    let a = normalized_d_block(ring);
    let l0 = a.transpose() * &a;
    let l1 = &a * a.transpose();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(&l0);
    m.view_mut((n, n), (n, n)).copy_from(&l1);
    m
}

/// Real eigenvalues of i(d - δ), ascending.
pub fn dk_spectrum(ring: &SimplicialRing) -> Vec<f64> {
    let m = dirac_kahler_matrix(ring);
    let mut eigs: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    eigs.sort_by(f64::total_cmp);
    eigs
}

/// One row of the lattice dispersion comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionRow {
    /// mode index 0..N-1
    pub mode: usize,
    /// wavenumber 2 pi m / (N l)
    pub wavenumber: f64,
    pub eigenvalue_numeric: f64,
    pub eigenvalue_analytic: f64,
    pub abs_error: f64,
}

/// Pairs the 2N numeric eigenvalues with the two analytic branches
/// ±(2/l)|sin(k_m l/2)|, both sorted ascending.
pub fn dispersion_table(ring: &SimplicialRing) -> Result<Vec<DispersionRow>> {
    if !ring.is_uniform() {
        return Err(Error::InvalidRing(
            "dispersion comparison needs uniform spacing".into(),
        ));
    }
    let n = ring.sites();
    let l = ring.edge_length(0);
    let numeric = dk_spectrum(ring);
    let mut analytic: Vec<(f64, usize, f64)> = Vec::with_capacity(2 * n);
    for m in 0..n {
        let k = 2.0 * std::f64::consts::PI * m as f64 / (n as f64 * l);
        let magnitude = (2.0 / l) * (k * l / 2.0).sin().abs();
        analytic.push((magnitude, m, k));
        analytic.push((-magnitude, m, k));
    }
    analytic.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(numeric
        .iter()
        .zip(analytic)
        .map(|(&num, (ana, m, k))| DispersionRow {
            mode: m,
            wavenumber: k,
            eigenvalue_numeric: num,
            eigenvalue_analytic: ana,
            abs_error: (num - ana).abs(),
        })
        .collect())
}

/// Splits a primal cochain into pieces from the image of d, the image of δ,
/// and the kernel of the degree Laplacian, mutually orthogonal for the
/// volume-weighted inner product.
pub fn hodge_decompose(a: &Cochain) -> Result<(Cochain, Cochain, Cochain)> {
    if a.dual {
        return Err(Error::CochainMismatch(
            "decomposition is defined on primal cochains".into(),
        ));
    }
    if !a.ring.is_uniform() {
        return Err(Error::InvalidRing(
            "decomposition implemented for uniform rings".into(),
        ));
    }
    let n = a.ring.sites();
    let block = normalized_d_block(&a.ring);
    let lap = if a.degree == 0 {
        block.transpose() * &block
    } else {
        &block * block.transpose()
    };
    // normalized coordinates: multiply by sqrt of the metric weight
    let weight: Vec<f64> = (0..n)
        .map(|j| match a.degree {
            0 => a.ring.dual_vertex_volume(j).sqrt(),
            _ => 1.0 / a.ring.edge_length(j).sqrt(),
        })
        .collect();
    let y = DMatrix::from_fn(n, 1, |r, _| a.values[r] * weight[r]);
    let eig = lap.symmetric_eigen();
    let scale = eig.eigenvalues.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let mut harmonic_y = DMatrix::zeros(n, 1);
    let mut moving_y = DMatrix::zeros(n, 1);
    for k in 0..n {
        let v = eig.eigenvectors.column(k);
        let coefficient = (v.transpose() * &y)[(0, 0)];
        if eig.eigenvalues[k].abs() <= ZERO_MODE_TOL * scale {
            harmonic_y += v * coefficient;
        } else {
            moving_y += v * coefficient;
        }
    }
    let back = |m: &DMatrix<f64>| -> Vec<f64> {
        (0..n).map(|r| m[(r, 0)] / weight[r]).collect()
    };
    let harmonic = Cochain::new(&a.ring, a.degree, back(&harmonic_y))?;
    let moving = Cochain::new(&a.ring, a.degree, back(&moving_y))?;
    let zero = Cochain::zero(&a.ring, a.degree)?;
    // nonzero modes of the degree-0 Laplacian come from δ, degree-1 from d
    if a.degree == 0 {
        Ok((zero, moving, harmonic))
    } else {
        Ok((moving, zero, harmonic))
    }
}
