//! Tangent fields on the state space and the dissipative generator that
//! assembles from them. Hamiltonian fields come from the antisymmetric
//! tensor, gradient fields from the symmetric one, and the Kraus field
//! carries the jump part; with gradient operator set to minus the summed
//! collapse product, the three add up to the linear generator
//! L(rho) = -i[H, rho] - {V, rho}/2 + sum V_j rho V_j*.
//!
//! Normalization bookkeeping: the bracket [[a,b]] = -(i/2)(ab - ba) makes
//! the bare Hamiltonian field generate (i/2)[h, rho]; the dynamical
//! convention rescales it by kappa = -2 so the Hamiltonian part of the
//! generator is -i[H, rho] on the nose. AlgebraConfig carries that choice.


use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};

use super::dual::{DensityState, DualElement};
use super::operators::HermitianOperator;

/// Scale conventions: `lambda` divides gradient fields, `kappa` multiplies
/// the bare Hamiltonian field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraConfig {
    lambda: f64,
    kappa: f64,
}

impl AlgebraConfig {
    pub fn new(lambda: f64, kappa: f64) -> Result<Self> {
        if lambda == 0.0 || !lambda.is_finite() || !kappa.is_finite() {
            return Err(Error::InvalidInput(
                "lambda must be nonzero and both scales finite".into(),
            ));
        }
        Ok(AlgebraConfig { lambda, kappa })
    }

    /// Unit scales: fields exactly as the tensors produce them.
    pub fn bare() -> Self {
        AlgebraConfig {
            lambda: 1.0,
            kappa: 1.0,
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

impl Default for AlgebraConfig {
    /// Dynamical convention: Hamiltonian part of the flow is -i[H, rho].
    fn default() -> Self {
        AlgebraConfig {
            lambda: 1.0,
            kappa: -2.0,
        }
    }
}

/// Hamiltonian plus collapse operators; the summed product
/// V = sum V_j* V_j is cached for the anticommutator term.
#[derive(Debug, Clone, PartialEq)]
pub struct LindbladSpec {
    h: HermitianOperator,
    collapse: Vec<DMatrix<Complex64>>,
    total: HermitianOperator,
}

impl LindbladSpec {
    pub fn new(h: HermitianOperator, collapse: Vec<DMatrix<Complex64>>) -> Result<Self> {
        let n = h.dim();
        if collapse.len() > n * n - 1 {
            return Err(Error::InvalidGenerator(format!(
                "{} collapse operators exceed the bound {}",
                collapse.len(),
                n * n - 1
            )));
        }
        let mut total = DMatrix::zeros(n, n);
        for (j, v) in collapse.iter().enumerate() {
            if v.nrows() != n || v.ncols() != n {
                return Err(Error::InvalidGenerator(format!(
                    "collapse operator {j} is {}x{}, expected {n}x{n}",
                    v.nrows(),
                    v.ncols()
                )));
            }
            if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::InvalidGenerator(format!(
                    "collapse operator {j} has non-finite entries"
                )));
            }
            total += v.adjoint() * v;
        }
        // numerically Hermitian by construction; symmetrize the roundoff
        let total = (&total + total.adjoint()).map(|z| z * 0.5);
        Ok(LindbladSpec {
            h,
            collapse,
            total: HermitianOperator::new(total)?,
        })
    }

    pub fn closed(h: HermitianOperator) -> Result<Self> {
        Self::new(h, Vec::new())
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(HermitianOperator::zero(n), Vec::new())
    }

    /// Two-level dephasing channel: V_1 = sqrt(1-gamma) 1, V_2 = sqrt(gamma) s3.
    pub fn phase_damping(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::InvalidGenerator(format!(
                "damping strength {gamma} outside [0, 1]"
            )));
        }
        let v1 = DMatrix::from_diagonal_element(2, 2, Complex64::new((1.0 - gamma).sqrt(), 0.0));
        let s = gamma.sqrt();
        let v2 = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(s, 0.0),
            Complex64::new(-s, 0.0),
        ]));
        Self::new(HermitianOperator::zero(2), vec![v1, v2])
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn hamiltonian(&self) -> &HermitianOperator {
        &self.h
    }

    pub fn collapse_operators(&self) -> &[DMatrix<Complex64>] {
        &self.collapse
    }

    /// V = sum V_j* V_j.
    pub fn total_collapse(&self) -> &HermitianOperator {
        &self.total
    }

    /// Parse {"dim": n, "H": [[[re,im],...],...], "V": [matrix, ...]};
    /// H may be omitted for a pure dissipator, V for closed dynamics.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SpecJson = serde_json::from_str(text)?;
        let n = raw.dim;
        if n < 2 {
            return Err(Error::InvalidGenerator(format!("dim {n} too small")));
        }
        let h = match raw.h {
            Some(rows) => HermitianOperator::new(matrix_from_rows(n, &rows)?)?,
            None => HermitianOperator::zero(n),
        };
        let collapse = raw
            .v
            .iter()
            .map(|rows| matrix_from_rows(n, rows))
            .collect::<Result<Vec<_>>>()?;
        Self::new(h, collapse)
    }
}

#[derive(Deserialize)]
struct SpecJson {
    dim: usize,
    #[serde(rename = "H", default)]
    h: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(rename = "V", default)]
    v: Vec<Vec<Vec<[f64; 2]>>>,
}

pub(crate) fn matrix_from_rows(n: usize, rows: &[Vec<[f64; 2]>]) -> Result<DMatrix<Complex64>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput(format!(
            "matrix must be {n}x{n} entries of [re, im]"
        )));
    }
    Ok(DMatrix::from_fn(n, n, |r, c| {
        Complex64::new(rows[r][c][0], rows[r][c][1])
    }))
}

fn check_dims(op_dim: usize, xi: &DualElement) -> Result<()> {
    if op_dim != xi.dim() {
        return Err(Error::DimensionMismatch {
            expected: xi.dim(),
            got: op_dim,
        });
    }
    Ok(())
}

/// Hamiltonian field evaluated on any dual element:
/// matrix form kappa (i/2)(h xi - xi h). Trace component is zero.
pub fn hamiltonian_field_at(
    h: &HermitianOperator,
    xi: &DualElement,
    cfg: &AlgebraConfig,
) -> Result<DualElement> {
    check_dims(h.dim(), xi)?;
    let m = xi.matrix();
    let comm = h.matrix() * &m - m * h.matrix();
    let scale = Complex64::new(0.0, 0.5 * cfg.kappa());
    DualElement::from_matrix(xi.basis(), &comm.map(|z| z * scale))
}

pub fn hamiltonian_field(
    h: &HermitianOperator,
    rho: &DensityState,
    cfg: &AlgebraConfig,
) -> Result<DualElement> {
    hamiltonian_field_at(h, rho.dual(), cfg)
}

/// Gradient field evaluated on any dual element:
/// (g o xi - Tr(g xi) xi) / lambda. Trace component is zero on states.
pub fn gradient_field_at(
    g: &HermitianOperator,
    xi: &DualElement,
    cfg: &AlgebraConfig,
) -> Result<DualElement> {
    check_dims(g.dim(), xi)?;
    let m = xi.matrix();
    let sym = (g.matrix() * &m + &m * g.matrix()).map(|z| z * 0.5);
    let mean = (g.matrix() * &m).trace().re;
    let out = (sym - m.map(|z| z * mean)).map(|z| z / cfg.lambda());
    DualElement::from_matrix(xi.basis(), &out)
}

pub fn gradient_field(
    g: &HermitianOperator,
    rho: &DensityState,
    cfg: &AlgebraConfig,
) -> Result<DualElement> {
    gradient_field_at(g, rho.dual(), cfg)
}

fn jump_part(spec: &LindbladSpec, m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = spec.dim();
    let mut k = DMatrix::zeros(n, n);
    for v in spec.collapse_operators() {
        k += v * m * v.adjoint();
    }
    k
}

/// Kraus field: K(xi) - Tr(K(xi)) xi with K(xi) = sum V_j xi V_j*.
pub fn kraus_field_at(spec: &LindbladSpec, xi: &DualElement) -> Result<DualElement> {
    check_dims(spec.dim(), xi)?;
    let m = xi.matrix();
    let k = jump_part(spec, &m);
    let trace = k.trace().re;
    let out = k - m.map(|z| z * trace);
    // symmetrize roundoff from the triple products before the gate
    let out = (&out + out.adjoint()).map(|z| z * 0.5);
    DualElement::from_matrix(xi.basis(), &out)
}

pub fn kraus_field(spec: &LindbladSpec, rho: &DensityState) -> Result<DualElement> {
    kraus_field_at(spec, rho.dual())
}

pub(crate) fn generator_matrix(spec: &LindbladSpec, m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let h = spec.hamiltonian().matrix();
    let v = spec.total_collapse().matrix();
    let comm = (h * m - m * h).map(|z| z * Complex64::new(0.0, -1.0));
    let anti = (v * m + m * v).map(|z| z * 0.5);
    comm - anti + jump_part(spec, m)
}

/// The linear generator L(rho) = -i[H,rho] - {V,rho}/2 + sum V_j rho V_j*.
pub fn lindblad_generator(spec: &LindbladSpec, rho: &DensityState) -> Result<HermitianOperator> {
    if spec.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: spec.dim(),
        });
    }
    let out = generator_matrix(spec, &rho.matrix());
    let out = (&out + out.adjoint()).map(|z| z * 0.5);
    HermitianOperator::new(out)
}

/// Sum of the three field routes: Hamiltonian for H, gradient for -V,
/// Kraus for the collapse list. With the default config this equals the
/// coordinate image of the linear generator; the nonlinear terms cancel.
pub fn kl_vector_field_at(
    spec: &LindbladSpec,
    xi: &DualElement,
    cfg: &AlgebraConfig,
) -> Result<DualElement> {
    let x = hamiltonian_field_at(spec.hamiltonian(), xi, cfg)?;
    let y = gradient_field_at(&spec.total_collapse().scaled(-1.0), xi, cfg)?;
    let z = kraus_field_at(spec, xi)?;
    x.add(&y)?.add(&z)
}

pub fn kl_vector_field(
    spec: &LindbladSpec,
    rho: &DensityState,
    cfg: &AlgebraConfig,
) -> Result<DualElement> {
    kl_vector_field_at(spec, rho.dual(), cfg)
}
