//! Multivectors Λ(V) and the operators induced by the Lie bracket: the
//! Koszul boundary, wedge insertion, Lie derivative, Schouten-Nijenhuis
//! bracket, and the derivation extension of an endomorphism.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::LieAlgebraSpec;
use super::blades::{mask_from_indices, mask_indices, substitute_mask, wedge_masks};
use crate::error::{Error, Result};

/// Homogeneous multivector of a fixed grade with sparse blade coefficients.
#[derive(Debug, Clone)]
pub struct Multivector {
    parent: Arc<LieAlgebraSpec>,
    grade: usize,
    coeffs: BTreeMap<u32, f64>,
}

impl Multivector {
    pub fn zero(parent: &Arc<LieAlgebraSpec>, grade: usize) -> Self {
        Multivector {
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
        Multivector {
            parent: Arc::clone(parent),
            grade: 0,
            coeffs,
        }
    }

    pub fn basis_vector(parent: &Arc<LieAlgebraSpec>, i: usize) -> Result<Self> {
        if i >= parent.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: parent.dim(),
            });
        }
        let mut coeffs = BTreeMap::new();
        coeffs.insert(1u32 << i, 1.0);
        Ok(Multivector {
            parent: Arc::clone(parent),
            grade: 1,
            coeffs,
        })
    }

    /// Grade-1 element with the given coefficients.
    pub fn vector(parent: &Arc<LieAlgebraSpec>, v: &[f64]) -> Result<Self> {
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
        Ok(Multivector {
            parent: Arc::clone(parent),
            grade: 1,
            coeffs,
        })
    }

    /// Basis blade from an index list; non-sorted input is normalized with
    /// the permutation sign, repeated indices give the zero element.
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
        Ok(Multivector {
            parent: Arc::clone(parent),
            grade: indices.len().min(parent.dim()),
            coeffs,
        })
    }

    /// Sum of coefficient-weighted blades, each given by an index list.
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
        Multivector {
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

    /// Coefficient of the blade with the given (possibly unsorted) indices.
    pub fn coeff(&self, indices: &[usize]) -> f64 {
        match mask_from_indices(indices) {
            Some((mask, sign)) => sign * self.coeffs.get(&mask).copied().unwrap_or(0.0),
            None => 0.0,
        }
    }

    /// Blade components as (increasing index tuple, coefficient).
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

    pub(crate) fn same_parent(&self, other: &Multivector) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) || *self.parent == *other.parent
    }

    /// Sum; the zero element is grade-absorbing so compositions that produce
    /// clamped zero grades still combine.
    pub fn add(&self, other: &Multivector) -> Result<Multivector> {
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
        Ok(Multivector::from_masks(&self.parent, self.grade, coeffs))
    }

    pub fn sub(&self, other: &Multivector) -> Result<Multivector> {
        self.add(&other.scaled(-1.0))
    }

    pub fn scaled(&self, s: f64) -> Multivector {
        let coeffs = if s == 0.0 {
            BTreeMap::new()
        } else {
            self.coeffs.iter().map(|(&m, &x)| (m, s * x)).collect()
        };
        Multivector::from_masks(&self.parent, self.grade, coeffs)
    }

    /// Max absolute coefficient difference; parents must agree.
    pub fn approx_eq(&self, other: &Multivector, tol: f64) -> bool {
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

    /// Exterior product. Zero when the combined grade exceeds the dimension.
    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
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
        Ok(Multivector::from_masks(&self.parent, grade, coeffs))
    }

    /// Koszul boundary: on a decomposable v_1^..^v_p the signed sum of
    /// [v_i,v_j] ^ (blade with slots i, j removed), sign (-1)^(i+j+1) for
    /// 1-based slots. Grades 0 and 1 map to zero.
    pub fn koszul_boundary(&self) -> Multivector {
        let n = self.parent.dim();
        if self.grade <= 1 {
            return Multivector::zero(&self.parent, 0);
        }
        let mut coeffs = BTreeMap::new();
        for (&m, &x) in &self.coeffs {
            let idx = mask_indices(m);
            for a in 0..idx.len() {
                for b in (a + 1)..idx.len() {
                    // slots are 1-based: sign = (-1)^(a+b+3) = (-1)^(a+b+1)
                    let slot_sign = if (a + b) % 2 == 0 { -1.0 } else { 1.0 };
                    let rest = m & !(1u32 << idx[a]) & !(1u32 << idx[b]);
                    for k in 0..n {
                        let c = self.parent.structure_constant(idx[a], idx[b], k);
                        if c == 0.0 {
                            continue;
                        }
                        if let Some((mask, ws)) = wedge_masks(1u32 << k, rest) {
                            accumulate(&mut coeffs, mask, slot_sign * ws * c * x);
                        }
                    }
                }
            }
        }
        Multivector::from_masks(&self.parent, self.grade - 1, coeffs)
    }

    /// Left wedge insertion by a grade-1 element: self ^ a.
    pub fn insert(&self, a: &Multivector) -> Result<Multivector> {
        if self.grade != 1 {
            return Err(Error::UnsupportedGrade {
                op: "insert",
                got: self.grade,
            });
        }
        self.wedge(a)
    }

    /// Lie derivative along a grade-1 element, as the anticommutator of
    /// insertion with the boundary; extends ad_u from grade 1.
    pub fn lie_derivative(&self, a: &Multivector) -> Result<Multivector> {
        if self.grade != 1 {
            return Err(Error::UnsupportedGrade {
                op: "lie_derivative",
                got: self.grade,
            });
        }
        let t1 = self.wedge(&a.koszul_boundary())?;
        let t2 = self.wedge(a)?.koszul_boundary();
        t1.add(&t2)
    }

    /// Schouten-Nijenhuis bracket, grade q + p - 1, defined through the
    /// failure of the boundary to be a wedge derivation:
    /// (-1)^(q+1) [G,H] = d(G^H) - dG^H - (-1)^q G^dH.
    pub fn schouten_bracket(&self, other: &Multivector) -> Result<Multivector> {
        if self.grade < 1 {
            return Err(Error::UnsupportedGrade {
                op: "schouten_bracket",
                got: self.grade,
            });
        }
        if other.grade < 1 {
            return Err(Error::UnsupportedGrade {
                op: "schouten_bracket",
                got: other.grade,
            });
        }
        let q = self.grade;
        let sign_q = if q % 2 == 0 { 1.0 } else { -1.0 };
        let sign_q1 = -sign_q;
        let t1 = self.wedge(other)?.koszul_boundary();
        let t2 = self.koszul_boundary().wedge(other)?;
        let t3 = self.wedge(&other.koszul_boundary())?;
        let rhs = t1.sub(&t2)?.sub(&t3.scaled(sign_q))?;
        Ok(rhs.scaled(sign_q1))
    }
}

pub(crate) fn accumulate(coeffs: &mut BTreeMap<u32, f64>, mask: u32, x: f64) {
    if x == 0.0 {
        return;
    }
    let entry = coeffs.entry(mask).or_insert(0.0);
    *entry += x;
    if *entry == 0.0 {
        coeffs.remove(&mask);
    }
}

/// Linear endomorphism of V together with its derivation extension to Λ(V).
#[derive(Debug, Clone)]
pub struct Endomorphism {
    parent: Arc<LieAlgebraSpec>,
    /// matrix[r][c] is the e_r component of T(e_c)
    matrix: Vec<Vec<f64>>,
}

impl Endomorphism {
    pub fn new(parent: &Arc<LieAlgebraSpec>, matrix: Vec<Vec<f64>>) -> Result<Self> {
        let n = parent.dim();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: matrix.len(),
            });
        }
        Ok(Endomorphism {
            parent: Arc::clone(parent),
            matrix,
        })
    }

    pub fn identity(parent: &Arc<LieAlgebraSpec>) -> Self {
        let n = parent.dim();
        let mut matrix = vec![vec![0.0; n]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Endomorphism {
            parent: Arc::clone(parent),
            matrix,
        }
    }

    pub fn from_diagonal(parent: &Arc<LieAlgebraSpec>, d: &[f64]) -> Result<Self> {
        let n = parent.dim();
        if d.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: d.len(),
            });
        }
        let mut matrix = vec![vec![0.0; n]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = d[i];
        }
        Ok(Endomorphism {
            parent: Arc::clone(parent),
            matrix,
        })
    }

    pub fn parent(&self) -> &Arc<LieAlgebraSpec> {
        &self.parent
    }

    /// Derivation extension: T applied in each slot of every blade in turn.
    /// On grade p the identity extends to p times the identity.
    pub fn apply_as_derivation(&self, a: &Multivector) -> Result<Multivector> {
        if !(Arc::ptr_eq(&self.parent, a.parent()) || *self.parent == **a.parent()) {
            return Err(Error::ParentMismatch);
        }
        let mut coeffs = BTreeMap::new();
        for (&m, &x) in a.masks() {
            for old in mask_indices(m) {
                for (new, row) in self.matrix.iter().enumerate() {
                    let t = row[old];
                    if t == 0.0 {
                        continue;
                    }
                    if let Some((mask, sign)) = substitute_mask(m, old, new) {
                        accumulate(&mut coeffs, mask, sign * t * x);
                    }
                }
            }
        }
        Ok(Multivector::from_masks(a.parent(), a.grade(), coeffs))
    }

    /// Boundary deformed by T: the commutator of the derivation extension
    /// with the Koszul boundary.
    pub fn deformed_boundary(&self, a: &Multivector) -> Result<Multivector> {
        let t1 = self.apply_as_derivation(&a.koszul_boundary())?;
        let t2 = self.apply_as_derivation(a)?.koszul_boundary();
        t1.sub(&t2)
    }

    /// Squared deformed boundary on the blade e_i ^ e_j ^ e_k; the grade-1
    /// obstruction to T being bracket-compatible.
    pub fn nijenhuis_tensor(&self, i: usize, j: usize, k: usize) -> Result<Multivector> {
        if self.parent.dim() < 3 {
            return Err(Error::UnsupportedGrade {
                op: "nijenhuis_tensor",
                got: self.parent.dim(),
            });
        }
        let blade = Multivector::basis_blade(&self.parent, &[i, j, k])?;
        self.deformed_boundary(&self.deformed_boundary(&blade)?)
    }
}
