//! Clifford structure carried on the exterior algebra of a metric space:
//! the ∨-product, Hodge duality, the codifferential and the first-order
//! operator d + δ.
//!
//! Products are computed in a basis orthonormal for the metric. A general
//! symmetric metric is handled by conjugation: coefficients are rewritten in
//! an orthonormal co-frame obtained from the eigendecomposition, multiplied
//! there, and rewritten back.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::exterior::blades::{contract_mask, mask_from_indices, mask_indices, wedge_masks};
use crate::exterior::{Form, LieAlgebraSpec, Multivector};

const METRIC_TOL: f64 = 1e-10;

/// Symmetric bilinear form on the underlying vector space, with the
/// orthonormalization data every product here runs through.
#[derive(Clone)]
pub struct MetricSpec {
    dim: usize,
    g: DMatrix<f64>,
    // metric signs per orthonormal direction: +1, -1, or 0 on a kernel
    signs: Vec<f64>,
    frame: Option<FrameChange>,
    positive: usize,
    negative: usize,
}

#[derive(Clone)]
struct FrameChange {
    // e^a = sum_i into[(a, i)] f^i for the orthonormal co-frame f^i
    into: DMatrix<f64>,
    // f^i = sum_a back[(i, a)] e^a
    back: DMatrix<f64>,
}

impl PartialEq for MetricSpec {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.g == other.g
    }
}

impl fmt::Debug for MetricSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricSpec")
            .field("dim", &self.dim)
            .field("signature", &(self.positive, self.negative))
            .finish()
    }
}

impl MetricSpec {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > 30 {
            return Err(Error::InvalidMetric(format!(
                "dimension {n} outside supported range 1..=30"
            )));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMetric("matrix is not square".into()));
        }
        let g = DMatrix::from_fn(n, n, |r, c| rows[r][c]);
        for r in 0..n {
            for c in (r + 1)..n {
                if (g[(r, c)] - g[(c, r)]).abs() > METRIC_TOL {
                    return Err(Error::InvalidMetric(format!(
                        "not symmetric at ({r},{c})"
                    )));
                }
            }
        }

        // fast path: already diagonal with entries in {-1, 0, +1}
        let mut orthonormal = true;
        'scan: for r in 0..n {
            for c in 0..n {
                let v = g[(r, c)];
                let ok = if r == c {
                    (v - 1.0).abs() <= METRIC_TOL
                        || (v + 1.0).abs() <= METRIC_TOL
                        || v.abs() <= METRIC_TOL
                } else {
                    v.abs() <= METRIC_TOL
                };
                if !ok {
                    orthonormal = false;
                    break 'scan;
                }
            }
        }
        if orthonormal {
            let signs: Vec<f64> = (0..n)
                .map(|i| {
                    let v = g[(i, i)];
                    if v > 0.5 {
                        1.0
                    } else if v < -0.5 {
                        -1.0
                    } else {
                        0.0
                    }
                })
                .collect();
            let positive = signs.iter().filter(|s| **s > 0.0).count();
            let negative = signs.iter().filter(|s| **s < 0.0).count();
            return Ok(MetricSpec {
                dim: n,
                g,
                signs,
                frame: None,
                positive,
                negative,
            });
        }

        let eig = g.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let scale = eig
            .eigenvalues
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()))
            .max(1.0);
        let mut frame = DMatrix::zeros(n, n);
        let mut signs = vec![0.0; n];
        for (slot, &k) in order.iter().enumerate() {
            let lambda = eig.eigenvalues[k];
            let (s, col_scale) = if lambda > METRIC_TOL * scale {
                (1.0, 1.0 / lambda.sqrt())
            } else if lambda < -METRIC_TOL * scale {
                (-1.0, 1.0 / (-lambda).sqrt())
            } else {
                (0.0, 1.0)
            };
            signs[slot] = s;
            frame
                .column_mut(slot)
                .copy_from(&(eig.eigenvectors.column(k) * col_scale));
        }
        if frame.determinant() < 0.0 {
            frame.column_mut(0).neg_mut();
        }
        let back = frame.clone().try_inverse().ok_or_else(|| {
            Error::InvalidMetric("orthonormal frame is not invertible".into())
        })?;
        let positive = signs.iter().filter(|s| **s > 0.0).count();
        let negative = signs.iter().filter(|s| **s < 0.0).count();
        Ok(MetricSpec {
            dim: n,
            g,
            signs,
            frame: Some(FrameChange { into: frame, back }),
            positive,
            negative,
        })
    }

    pub fn euclidean(n: usize) -> Self {
        Self::new(identity_rows(n, |_| 1.0)).expect("valid by construction")
    }

    /// One timelike direction first, spacelike for the rest.
    pub fn lorentzian(n: usize) -> Self {
        Self::new(identity_rows(n, |i| if i == 0 { -1.0 } else { 1.0 }))
            .expect("valid by construction")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct Raw {
            dim: usize,
            g: Vec<Vec<f64>>,
        }
        let raw: Raw = serde_json::from_str(text)?;
        if raw.g.len() != raw.dim {
            return Err(Error::InvalidMetric(format!(
                "declared dim {} but matrix has {} rows",
                raw.dim,
                raw.g.len()
            )));
        }
        Self::new(raw.g)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.g
    }

    /// Counts of (positive, negative) eigenvalues.
    pub fn signature(&self) -> (usize, usize) {
        (self.positive, self.negative)
    }

    pub fn is_degenerate(&self) -> bool {
        self.positive + self.negative < self.dim
    }

    fn det_sign(&self) -> f64 {
        if self.negative % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    fn check_parent(&self, algebra: &LieAlgebraSpec) -> Result<()> {
        if algebra.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: algebra.dim(),
            });
        }
        Ok(())
    }
}

fn identity_rows(n: usize, diag: impl Fn(usize) -> f64) -> Vec<Vec<f64>> {
    (0..n)
        .map(|r| (0..n).map(|c| if r == c { diag(r) } else { 0.0 }).collect())
        .collect()
}

/// Rewrites blade coefficients under the covector substitution
/// e^a -> sum_t m[(a, t)] f^t.
fn substitute_coframe(coeffs: &BTreeMap<u32, f64>, m: &DMatrix<f64>) -> BTreeMap<u32, f64> {
    let n = m.ncols();
    let mut out = BTreeMap::new();
    for (&mask, &c) in coeffs {
        let mut acc: Vec<(u32, f64)> = vec![(0, c)];
        for a in mask_indices(mask) {
            let mut next = Vec::new();
            for &(partial, x) in &acc {
                for t in 0..n {
                    let w = m[(a, t)];
                    if w == 0.0 {
                        continue;
                    }
                    if let Some((joined, sign)) = wedge_masks(partial, 1 << t) {
                        next.push((joined, x * w * sign));
                    }
                }
            }
            acc = next;
        }
        for (mask, x) in acc {
            if x != 0.0 {
                *out.entry(mask).or_insert(0.0) += x;
            }
        }
    }
    out.retain(|_, v| *v != 0.0);
    out
}

/// Inhomogeneous element of the algebra generated by covectors under ∨.
#[derive(Clone, Debug)]
pub struct CliffordElement {
    algebra: Arc<LieAlgebraSpec>,
    metric: Arc<MetricSpec>,
    coeffs: BTreeMap<u32, f64>,
}

impl CliffordElement {
    pub fn zero(algebra: &Arc<LieAlgebraSpec>, metric: &Arc<MetricSpec>) -> Result<Self> {
        metric.check_parent(algebra)?;
        Ok(CliffordElement {
            algebra: Arc::clone(algebra),
            metric: Arc::clone(metric),
            coeffs: BTreeMap::new(),
        })
    }

    pub fn scalar(
        algebra: &Arc<LieAlgebraSpec>,
        metric: &Arc<MetricSpec>,
        value: f64,
    ) -> Result<Self> {
        let mut out = Self::zero(algebra, metric)?;
        if value != 0.0 {
            out.coeffs.insert(0, value);
        }
        Ok(out)
    }

    pub fn from_form(metric: &Arc<MetricSpec>, form: &Form) -> Result<Self> {
        metric.check_parent(form.parent())?;
        let mut coeffs = BTreeMap::new();
        for (&mask, &x) in form.masks() {
            if x != 0.0 {
                coeffs.insert(mask, x);
            }
        }
        Ok(CliffordElement {
            algebra: Arc::clone(form.parent()),
            metric: Arc::clone(metric),
            coeffs,
        })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebraSpec> {
        &self.algebra
    }

    pub fn metric(&self) -> &Arc<MetricSpec> {
        &self.metric
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Grades carrying a nonzero coefficient, ascending.
    pub fn grades(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .coeffs
            .keys()
            .map(|m| m.count_ones() as usize)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Homogeneous part of the given grade.
    pub fn part(&self, grade: usize) -> Form {
        let coeffs: BTreeMap<u32, f64> = self
            .coeffs
            .iter()
            .filter(|(m, _)| m.count_ones() as usize == grade)
            .map(|(&m, &x)| (m, x))
            .collect();
        Form::from_masks(&self.algebra, grade, coeffs)
    }

    pub fn coeff(&self, indices: &[usize]) -> f64 {
        match mask_from_indices(indices) {
            Some((mask, sign)) => sign * self.coeffs.get(&mask).copied().unwrap_or(0.0),
            None => 0.0,
        }
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, x| m.max(x.abs()))
    }

    fn same_parent(&self, other: &CliffordElement) -> bool {
        let alg = Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra;
        let met = Arc::ptr_eq(&self.metric, &other.metric) || *self.metric == *other.metric;
        alg && met
    }

    pub fn add(&self, other: &CliffordElement) -> Result<CliffordElement> {
        if !self.same_parent(other) {
            return Err(Error::ParentMismatch);
        }
        let mut out = self.clone();
        for (&mask, &x) in &other.coeffs {
            let e = out.coeffs.entry(mask).or_insert(0.0);
            *e += x;
            if *e == 0.0 {
                out.coeffs.remove(&mask);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &CliffordElement) -> Result<CliffordElement> {
        self.add(&other.scaled(-1.0))
    }

    pub fn scaled(&self, s: f64) -> CliffordElement {
        let mut out = self.clone();
        if s == 0.0 {
            out.coeffs.clear();
        } else {
            for v in out.coeffs.values_mut() {
                *v *= s;
            }
        }
        out
    }

    pub fn approx_eq(&self, other: &CliffordElement, tol: f64) -> bool {
        if !self.same_parent(other) {
            return false;
        }
        let mut max = 0.0f64;
        for (&mask, &x) in &self.coeffs {
            max = max.max((x - other.coeffs.get(&mask).copied().unwrap_or(0.0)).abs());
        }
        for (&mask, &x) in &other.coeffs {
            if !self.coeffs.contains_key(&mask) {
                max = max.max(x.abs());
            }
        }
        max <= tol
    }

    /// Inserts a vector into every homogeneous part, first slot.
    pub fn contract(&self, v: &Multivector) -> Result<CliffordElement> {
        let mut out = Self::zero(&self.algebra, &self.metric)?;
        for grade in self.grades() {
            if grade == 0 {
                continue;
            }
            let reduced = self.part(grade).contract(v)?;
            for (&mask, &x) in reduced.masks() {
                if x != 0.0 {
                    *out.coeffs.entry(mask).or_insert(0.0) += x;
                }
            }
        }
        out.coeffs.retain(|_, v| *v != 0.0);
        Ok(out)
    }
}

/// Clifford product of inhomogeneous elements.
///
/// Each generator acts as the operator wedge(e^i) + g^ii contract(e_i); a
/// sorted blade acts as the composition of its generators, rightmost first.
/// The probe fixing the normalization of the contraction-order sum is kept
/// in the unit tests: squares of 2-blades come out at exactly -1 on
/// orthonormal directions.
pub fn vee_product(a: &CliffordElement, b: &CliffordElement) -> Result<CliffordElement> {
    if !a.same_parent(b) {
        return Err(Error::ParentMismatch);
    }
    let metric = &a.metric;
    let (ca, cb) = match &metric.frame {
        None => (a.coeffs.clone(), b.coeffs.clone()),
        Some(fr) => (
            substitute_coframe(&a.coeffs, &fr.into),
            substitute_coframe(&b.coeffs, &fr.into),
        ),
    };
    let mut out: BTreeMap<u32, f64> = BTreeMap::new();
    for (&mask_a, &xa) in &ca {
        let mut work: BTreeMap<u32, f64> =
            cb.iter().map(|(&m, &x)| (m, x * xa)).collect();
        for &i in mask_indices(mask_a).iter().rev() {
            let mut next: BTreeMap<u32, f64> = BTreeMap::new();
            let sign_i = metric.signs[i];
            for (&m, &x) in &work {
                if let Some((joined, s)) = wedge_masks(1 << i, m) {
                    *next.entry(joined).or_insert(0.0) += s * x;
                }
                if sign_i != 0.0 {
                    if let Some((reduced, s)) = contract_mask(m, i) {
                        *next.entry(reduced).or_insert(0.0) += sign_i * s * x;
                    }
                }
            }
            work = next;
        }
        for (mask, x) in work {
            if x != 0.0 {
                *out.entry(mask).or_insert(0.0) += x;
            }
        }
    }
    let mut coeffs = match &metric.frame {
        None => out,
        Some(fr) => substitute_coframe(&out, &fr.back),
    };
    coeffs.retain(|_, v| *v != 0.0);
    Ok(CliffordElement {
        algebra: Arc::clone(&a.algebra),
        metric: Arc::clone(metric),
        coeffs,
    })
}

/// Duality map sending grade k to grade n-k, fixed by the volume form of the
/// orthonormal co-frame.
pub fn hodge_star(a: &Form, metric: &MetricSpec) -> Result<Form> {
    metric.check_parent(a.parent())?;
    if metric.is_degenerate() {
        return Err(Error::InvalidMetric(
            "degenerate metric admits no duality map".into(),
        ));
    }
    let n = metric.dim;
    if a.grade() > n {
        return Ok(Form::zero(a.parent(), 0));
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let coeffs = match &metric.frame {
        None => a.masks().clone(),
        Some(fr) => substitute_coframe(a.masks(), &fr.into),
    };
    let mut out: BTreeMap<u32, f64> = BTreeMap::new();
    for (&mask, &c) in &coeffs {
        let complement = full & !mask;
        let (_, orient) = wedge_masks(mask, complement).expect("disjoint by construction");
        let factor: f64 = mask_indices(mask).iter().map(|&i| metric.signs[i]).product();
        let x = c * orient * factor;
        if x != 0.0 {
            *out.entry(complement).or_insert(0.0) += x;
        }
    }
    let mut out = match &metric.frame {
        None => out,
        Some(fr) => substitute_coframe(&out, &fr.back),
    };
    out.retain(|_, v| *v != 0.0);
    Ok(Form::from_masks(a.parent(), n - a.grade(), out))
}

/// Top-degree image of the unit scalar under the duality map.
pub fn volume_form(parent: &Arc<LieAlgebraSpec>, metric: &MetricSpec) -> Result<Form> {
    hodge_star(&Form::scalar(parent, 1.0), metric)
}

/// Degree-lowering partner of the structure differential,
/// (-1)^(n-k) (-1)^(negative count) ∗d∗ on grade-k input.
pub fn codifferential(a: &Form, metric: &MetricSpec) -> Result<Form> {
    metric.check_parent(a.parent())?;
    let k = a.grade();
    if k == 0 {
        return Err(Error::UnsupportedGrade {
            op: "codifferential",
            got: 0,
        });
    }
    let n = metric.dim;
    let grade_sign = if (n - k) % 2 == 0 { 1.0 } else { -1.0 };
    let starred = hodge_star(a, metric)?;
    let back = hodge_star(&starred.exterior_derivative(), metric)?;
    Ok(back.scaled(grade_sign * metric.det_sign()))
}

/// d + δ applied grade-wise; squares to the degree-preserving Laplacian.
pub fn dirac_operator(a: &CliffordElement) -> Result<CliffordElement> {
    let metric = &a.metric;
    metric.check_parent(&a.algebra)?;
    if metric.is_degenerate() {
        return Err(Error::InvalidMetric(
            "degenerate metric admits no duality map".into(),
        ));
    }
    let n = metric.dim;
    let mut out = CliffordElement::zero(&a.algebra, metric)?;
    for grade in a.grades() {
        let part = a.part(grade);
        if grade < n {
            out = out.add(&CliffordElement::from_form(metric, &part.exterior_derivative())?)?;
        }
        if grade > 0 {
            out = out.add(&CliffordElement::from_form(
                metric,
                &codifferential(&part, metric)?,
            )?)?;
        }
    }
    Ok(out)
}

/// dδ + δd on a homogeneous form, with the edge grades handled by dropping
/// the term that would leave the algebra.
pub fn laplacian(a: &Form, metric: &MetricSpec) -> Result<Form> {
    metric.check_parent(a.parent())?;
    let n = metric.dim;
    let k = a.grade();
    let mut out = Form::zero(a.parent(), k);
    if k > 0 {
        out = out.add(&codifferential(a, metric)?.exterior_derivative())?;
    }
    if k < n {
        out = out.add(&codifferential(&a.exterior_derivative(), metric)?)?;
    }
    Ok(out)
}
