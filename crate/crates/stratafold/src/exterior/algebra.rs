//! Lie algebra presented by structure constants, validated at construction.

use nalgebra::DMatrix;
use serde::Deserialize;

use crate::error::{Error, Result};

/// Tolerance for antisymmetry and Jacobi residuals at construction.
const STRUCTURE_TOL: f64 = 1e-10;

/// A real Lie algebra given by structure constants c[i][j][k] with
/// [e_i, e_j] = sum_k c[i][j][k] e_k. Construction rejects constants that
/// fail antisymmetry or the Jacobi identity beyond 1e-10.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraSpec {
    dim: usize,
    c: Vec<Vec<Vec<f64>>>,
}

#[derive(Deserialize)]
struct AlgebraFile {
    dim: usize,
    c: Vec<(usize, usize, usize, f64)>,
}

impl LieAlgebraSpec {
    /// Builds from a dense table c[i][j][k].
    pub fn new(dim: usize, c: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        if dim == 0 || dim > 30 {
            return Err(Error::InvalidStructureConstants(format!(
                "dimension {dim} outside supported range 1..=30"
            )));
        }
        let shape_ok = c.len() == dim
            && c.iter()
                .all(|ci| ci.len() == dim && ci.iter().all(|cij| cij.len() == dim));
        if !shape_ok {
            return Err(Error::InvalidStructureConstants(
                "table is not dim x dim x dim".into(),
            ));
        }
        let spec = LieAlgebraSpec { dim, c };
        spec.validate()?;
        Ok(spec)
    }

    /// Builds from sparse entries (i, j, k, value); the antisymmetric mirror
    /// of every entry is filled in automatically.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, f64)]) -> Result<Self> {
        let mut c = vec![vec![vec![0.0; dim]; dim]; dim];
        for &(i, j, k, v) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::IndexOutOfRange {
                    index: i.max(j).max(k),
                    dim,
                });
            }
            if i == j {
                return Err(Error::InvalidStructureConstants(format!(
                    "entry ({i},{j},{k}) has repeated bracket index"
                )));
            }
            if c[i][j][k] != 0.0 {
                return Err(Error::InvalidStructureConstants(format!(
                    "duplicate entry for ({i},{j},{k})"
                )));
            }
            c[i][j][k] = v;
            c[j][i][k] = -v;
        }
        Self::new(dim, c)
    }

    /// Parses the JSON form {"dim": n, "c": [[i, j, k, value], ...]}
    /// (0-indexed).
    pub fn from_json(text: &str) -> Result<Self> {
        let file: AlgebraFile = serde_json::from_str(text)?;
        Self::from_entries(file.dim, &file.c)
    }

    /// so(3): [e_i, e_j] = eps_ijk e_k.
    pub fn so3() -> Self {
        Self::from_entries(3, &[(0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 1, 1.0)])
            .expect("so(3) structure constants are valid")
    }

    /// Heisenberg algebra: [e_0, e_1] = e_2 central.
    pub fn heisenberg() -> Self {
        Self::from_entries(3, &[(0, 1, 2, 1.0)]).expect("heisenberg constants are valid")
    }

    /// Abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> Self {
        Self::new(dim, vec![vec![vec![0.0; dim]; dim]; dim]).expect("zero bracket is valid")
    }

    /// Solvable algebra [e_0, e_1] = e_1, [e_0, e_2] = e_2 (n = 3); the
    /// Koszul boundary is nonzero on the top blade, which so(3) and
    /// Heisenberg both miss.
    pub fn solvable3() -> Self {
        Self::from_entries(3, &[(0, 1, 1, 1.0), (0, 2, 2, 1.0)])
            .expect("solvable constants are valid")
    }

    /// Structure constants in a new basis f_j = sum_i a[(i, j)] e_i.
    /// Useful for generating randomized algebras that satisfy Jacobi by
    /// construction.
    pub fn change_basis(&self, a: &DMatrix<f64>) -> Result<Self> {
        let n = self.dim;
        if a.nrows() != n || a.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: a.nrows().max(a.ncols()),
            });
        }
        let lu = a.clone().lu();
        let mut c = vec![vec![vec![0.0; n]; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let fi: Vec<f64> = a.column(i).iter().copied().collect();
                let fj: Vec<f64> = a.column(j).iter().copied().collect();
                let w = self.bracket(&fi, &fj)?;
                let rhs = DMatrix::from_column_slice(n, 1, &w);
                let sol = lu.solve(&rhs).ok_or_else(|| {
                    Error::InvalidStructureConstants("basis change matrix is singular".into())
                })?;
                for k in 0..n {
                    c[i][j][k] = sol[(k, 0)];
                    c[j][i][k] = -sol[(k, 0)];
                }
            }
        }
        Self::new(n, c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// c[i][j][k], i.e. the e_k component of [e_i, e_j].
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[i][j][k]
    }

    /// Bracket of two coefficient vectors.
    pub fn bracket(&self, u: &[f64], v: &[f64]) -> Result<Vec<f64>> {
        if u.len() != self.dim || v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: u.len().max(v.len()),
            });
        }
        let mut out = vec![0.0; self.dim];
        for i in 0..self.dim {
            if u[i] == 0.0 {
                continue;
            }
            for j in 0..self.dim {
                if v[j] == 0.0 {
                    continue;
                }
                let uv = u[i] * v[j];
                for k in 0..self.dim {
                    out[k] += uv * self.c[i][j][k];
                }
            }
        }
        Ok(out)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let r = self.c[i][j][k] + self.c[j][i][k];
                    if r.abs() > STRUCTURE_TOL {
                        return Err(Error::InvalidStructureConstants(format!(
                            "antisymmetry violated at ({i},{j},{k}): residual {r:.3e}"
                        )));
                    }
                }
            }
        }
        // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    for l in 0..n {
                        let mut r = 0.0;
                        for m in 0..n {
                            r += self.c[i][j][m] * self.c[m][k][l]
                                + self.c[j][k][m] * self.c[m][i][l]
                                + self.c[k][i][m] * self.c[m][j][l];
                        }
                        if r.abs() > STRUCTURE_TOL {
                            return Err(Error::InvalidStructureConstants(format!(
                                "Jacobi violated at ({i},{j},{k})->{l}: residual {r:.3e}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so3_brackets_cycle() {
        let g = LieAlgebraSpec::so3();
        let e1 = vec![1.0, 0.0, 0.0];
        let e2 = vec![0.0, 1.0, 0.0];
        assert_eq!(g.bracket(&e1, &e2).unwrap(), vec![0.0, 0.0, 1.0]);
        assert_eq!(g.structure_constant(2, 0, 1), 1.0);
        assert_eq!(g.structure_constant(0, 2, 1), -1.0);
    }

    #[test]
    fn jacobi_violation_is_rejected() {
        // [e0,e1] = e2, [e0,e2] = e0 fails Jacobi on (0,1,2)
        let r = LieAlgebraSpec::from_entries(3, &[(0, 1, 2, 1.0), (0, 2, 0, 1.0)]);
        assert!(matches!(r, Err(Error::InvalidStructureConstants(_))));
    }

    #[test]
    fn antisymmetry_violation_is_rejected() {
        let mut c = vec![vec![vec![0.0; 2]; 2]; 2];
        c[0][1][0] = 1.0;
        c[1][0][0] = 1.0;
        let r = LieAlgebraSpec::new(2, c);
        assert!(matches!(r, Err(Error::InvalidStructureConstants(_))));
    }

    #[test]
    fn json_roundtrip_matches_so3() {
        let text = r#"{"dim": 3, "c": [[0,1,2,1.0],[1,2,0,1.0],[2,0,1,1.0]]}"#;
        let g = LieAlgebraSpec::from_json(text).unwrap();
        assert_eq!(g, LieAlgebraSpec::so3());
    }

    #[test]
    fn duplicate_entries_are_rejected() {
        let r = LieAlgebraSpec::from_entries(3, &[(0, 1, 2, 1.0), (1, 0, 2, -1.0)]);
        assert!(r.is_err());
    }

    #[test]
    fn basis_change_preserves_jacobi() {
        let g = LieAlgebraSpec::so3();
        let a = DMatrix::from_row_slice(3, 3, &[1.0, 0.5, 0.0, 0.0, 1.0, 0.25, -0.5, 0.0, 1.0]);
        let h = g.change_basis(&a).unwrap();
        assert_eq!(h.dim(), 3);
        // the transformed bracket reproduces A^{-1}[A u, A v]
        let u = vec![0.3, -0.7, 1.1];
        let v = vec![1.0, 0.2, -0.4];
        let au: Vec<f64> = (&a * DMatrix::from_column_slice(3, 1, &u))
            .iter()
            .copied()
            .collect();
        let av: Vec<f64> = (&a * DMatrix::from_column_slice(3, 1, &v))
            .iter()
            .copied()
            .collect();
        let w = g.bracket(&au, &av).unwrap();
        let back = a
            .clone()
            .lu()
            .solve(&DMatrix::from_column_slice(3, 1, &w))
            .unwrap();
        let direct = h.bracket(&u, &v).unwrap();
        for k in 0..3 {
            assert!((direct[k] - back[(k, 0)]).abs() < 1e-12);
        }
    }
}
