//! Exterior forms Λ(V*) with the Chevalley-Eilenberg differential, interior
//! product, and the determinant pairing against multivectors.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::LieAlgebraSpec;
use super::blades::{contract_mask, mask_from_indices, mask_indices, masks_of_grade, wedge_masks};
use super::multivector::{accumulate, Multivector};
use crate::error::{Error, Result};

/// Homogeneous exterior form over the dual basis e^0..e^(n-1).
#[derive(Debug, Clone)]
pub struct Form {
    parent: Arc<LieAlgebraSpec>,
    grade: usize,
    coeffs: BTreeMap<u32, f64>,
}

impl Form {
    pub fn zero(parent: &Arc<LieAlgebraSpec>, grade: usize) -> Self {
        Form {
            parent: Arc::clone(parent),
            grade: grade.min(parent.dim()),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(parent: &Arc<LieAlgebraSpec>, value: f64) -> Self {
        let mut coeffs = BTreeMap::new();
        if value != 0.0 {
            coeffs.insert(0u32, value);
        }
        Form {
            parent: Arc::clone(parent),
            grade: 0,
            coeffs,
        }
    }

    pub fn basis_covector(parent: &Arc<LieAlgebraSpec>, i: usize) -> Result<Self> {
        if i >= parent.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: parent.dim(),
            });
        }
        let mut coeffs = BTreeMap::new();
        coeffs.insert(1u32 << i, 1.0);
        Ok(Form {
            parent: Arc::clone(parent),
            grade: 1,
            coeffs,
        })
    }

    /// Grade-1 form with the given dual coefficients.
    pub fn covector(parent: &Arc<LieAlgebraSpec>, v: &[f64]) -> Result<Self> {
        if v.len() != parent.dim() {
            return Err(Error::DimensionMismatch {
                expected: parent.dim(),
                got: v.len(),
            });
        }
        let mut coeffs = BTreeMap::new();
        for (i, &x) in v.iter().enumerate() {
            if x != 0.0 {
                coeffs.insert(1u32 << i, x);
            }
        }
        Ok(Form {
            parent: Arc::clone(parent),
            grade: 1,
            coeffs,
        })
    }

    /// Dual basis blade; non-sorted indices are normalized with the
    /// permutation sign.
    pub fn basis_blade(parent: &Arc<LieAlgebraSpec>, indices: &[usize]) -> Result<Self> {
        for &i in indices {
            if i >= parent.dim() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    dim: parent.dim(),
                });
            }
        }
        let mut coeffs = BTreeMap::new();
        if let Some((mask, sign)) = mask_from_indices(indices) {
            coeffs.insert(mask, sign);
        }
        Ok(Form {
            parent: Arc::clone(parent),
            grade: indices.len().min(parent.dim()),
            coeffs,
        })
    }

    pub fn from_components(
        parent: &Arc<LieAlgebraSpec>,
        grade: usize,
        parts: &[(&[usize], f64)],
    ) -> Result<Self> {
        let mut out = Self::zero(parent, grade);
        for (indices, x) in parts {
            if indices.len() != grade {
                return Err(Error::UnsupportedGrade {
                    op: "from_components",
                    got: indices.len(),
                });
            }
            for &i in *indices {
                if i >= parent.dim() {
                    return Err(Error::IndexOutOfRange {
                        index: i,
                        dim: parent.dim(),
                    });
                }
            }
            if let Some((mask, sign)) = mask_from_indices(indices) {
                accumulate(&mut out.coeffs, mask, sign * x);
            }
        }
        Ok(out)
    }

    pub(crate) fn from_masks(
        parent: &Arc<LieAlgebraSpec>,
        grade: usize,
        coeffs: BTreeMap<u32, f64>,
    ) -> Self {
        Form {
            parent: Arc::clone(parent),
            grade: grade.min(parent.dim()),
            coeffs,
        }
    }

    pub fn parent(&self) -> &Arc<LieAlgebraSpec> {
        &self.parent
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, indices: &[usize]) -> f64 {
        match mask_from_indices(indices) {
            Some((mask, sign)) => sign * self.coeffs.get(&mask).copied().unwrap_or(0.0),
            None => 0.0,
        }
    }

    pub fn components(&self) -> Vec<(Vec<usize>, f64)> {
        self.coeffs
            .iter()
            .map(|(&m, &x)| (mask_indices(m), x))
            .collect()
    }

    pub(crate) fn masks(&self) -> &BTreeMap<u32, f64> {
        &self.coeffs
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub(crate) fn same_parent(&self, other: &Form) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) || *self.parent == *other.parent
    }

    fn parent_matches_vector(&self, v: &Multivector) -> bool {
        Arc::ptr_eq(&self.parent, v.parent()) || *self.parent == **v.parent()
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        if !self.same_parent(other) {
            return Err(Error::ParentMismatch);
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.grade != other.grade {
            return Err(Error::UnsupportedGrade {
                op: "add",
                got: other.grade,
            });
        }
        let mut coeffs = self.coeffs.clone();
        for (&m, &x) in &other.coeffs {
            accumulate(&mut coeffs, m, x);
        }
        Ok(Form::from_masks(&self.parent, self.grade, coeffs))
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.add(&other.scaled(-1.0))
    }

    pub fn scaled(&self, s: f64) -> Form {
        let coeffs = if s == 0.0 {
            BTreeMap::new()
        } else {
            self.coeffs.iter().map(|(&m, &x)| (m, s * x)).collect()
        };
        Form::from_masks(&self.parent, self.grade, coeffs)
    }

    pub fn approx_eq(&self, other: &Form, tol: f64) -> bool {
        if !self.same_parent(other) {
            return false;
        }
        let mut max = 0.0f64;
        for (&m, &x) in &self.coeffs {
            max = max.max((x - other.coeffs.get(&m).copied().unwrap_or(0.0)).abs());
        }
        for (&m, &x) in &other.coeffs {
            if !self.coeffs.contains_key(&m) {
                max = max.max(x.abs());
            }
        }
        max <= tol
    }

    /// Exterior product of forms.
    pub fn wedge(&self, other: &Form) -> Result<Form> {
        if !self.same_parent(other) {
            return Err(Error::ParentMismatch);
        }
        let grade = self.grade + other.grade;
        let mut coeffs = BTreeMap::new();
        for (&ma, &xa) in &self.coeffs {
            for (&mb, &xb) in &other.coeffs {
                if let Some((m, sign)) = wedge_masks(ma, mb) {
                    accumulate(&mut coeffs, m, sign * xa * xb);
                }
            }
        }
        Ok(Form::from_masks(&self.parent, grade, coeffs))
    }

    /// Chevalley-Eilenberg differential: on grade p the value on
    /// v_1^..^v_(p+1) is sum_(i<j) (-1)^(i+j) of the input evaluated on
    /// [v_i,v_j] wedged with the remaining slots (1-based signs). Together
    /// with the Koszul boundary it satisfies <da, b> = -<a, db> under the
    /// determinant pairing.
    pub fn exterior_derivative(&self) -> Form {
        let n = self.parent.dim();
        let p = self.grade;
        if p >= n || self.is_zero() {
            return Form::zero(&self.parent, (p + 1).min(n));
        }
        let mut coeffs = BTreeMap::new();
        for &am in &masks_of_grade(n, p + 1) {
            let idx = mask_indices(am);
            let mut total = 0.0;
            for a in 0..idx.len() {
                for b in (a + 1)..idx.len() {
                    // 1-based slots: (-1)^(i+j) = (-1)^(a+b)
                    let slot_sign = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
                    let rest = am & !(1u32 << idx[a]) & !(1u32 << idx[b]);
                    for k in 0..n {
                        let c = self.parent.structure_constant(idx[a], idx[b], k);
                        if c == 0.0 {
                            continue;
                        }
                        if let Some((mask, ws)) = wedge_masks(1u32 << k, rest) {
                            if let Some(&x) = self.coeffs.get(&mask) {
                                total += slot_sign * c * ws * x;
                            }
                        }
                    }
                }
            }
            if total != 0.0 {
                coeffs.insert(am, total);
            }
        }
        Form::from_masks(&self.parent, p + 1, coeffs)
    }

    /// Interior product with a grade-1 multivector, first-slot convention.
    /// Grade 0 maps to zero.
    pub fn contract(&self, v: &Multivector) -> Result<Form> {
        if v.grade() != 1 {
            return Err(Error::UnsupportedGrade {
                op: "contract",
                got: v.grade(),
            });
        }
        if !self.parent_matches_vector(v) {
            return Err(Error::ParentMismatch);
        }
        let grade = self.grade.saturating_sub(1);
        let mut coeffs = BTreeMap::new();
        for (&vm, &vx) in v.masks() {
            let k = vm.trailing_zeros() as usize;
            for (&m, &x) in &self.coeffs {
                if let Some((mask, sign)) = contract_mask(m, k) {
                    accumulate(&mut coeffs, mask, sign * vx * x);
                }
            }
        }
        Ok(Form::from_masks(&self.parent, grade, coeffs))
    }

    /// Lie derivative along a grade-1 multivector via the Cartan homotopy
    /// formula: contraction after the differential plus the differential of
    /// the contraction.
    pub fn lie_derivative(&self, v: &Multivector) -> Result<Form> {
        let t1 = self.exterior_derivative().contract(v)?;
        let t2 = self.contract(v)?.exterior_derivative();
        t1.add(&t2)
    }
}

/// Determinant pairing of a grade-p multivector with a grade-p form: on
/// basis blades it is the determinant of the slot-evaluation matrix, so
/// sorted blades pair to 1 exactly when their index sets agree.
pub fn pairing(a: &Multivector, b: &Form) -> Result<f64> {
    let compatible = Arc::ptr_eq(b.parent(), a.parent()) || **b.parent() == **a.parent();
    if !compatible {
        return Err(Error::ParentMismatch);
    }
    if a.is_zero() || b.is_zero() {
        return Ok(0.0);
    }
    if a.grade() != b.grade() {
        return Err(Error::UnsupportedGrade {
            op: "pairing",
            got: b.grade(),
        });
    }
    let mut total = 0.0;
    for (&m, &x) in a.masks() {
        if let Some(&y) = b.masks().get(&m) {
            total += x * y;
        }
    }
    Ok(total)
}
