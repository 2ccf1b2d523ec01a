//! Crate-wide error type.

use thiserror::Error;

/// Failure modes shared across the algebraic and numeric modules.
#[derive(Debug, Error)]
pub enum Error {
    /// Two elements built over different parent algebras were combined.
    #[error("parent algebra mismatch")]
    ParentMismatch,

    /// Dimension of an argument does not match the ambient space.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Operation applied to an element of an unsupported grade or degree.
    #[error("unsupported grade/degree {got} for {op}")]
    UnsupportedGrade { op: &'static str, got: usize },

    /// Basis index outside 0..dim.
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    /// Structure constants failed antisymmetry or the Jacobi identity.
    #[error("invalid structure constants: {0}")]
    InvalidStructureConstants(String),

    /// Metric is not symmetric or is numerically degenerate.
    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    /// Matrix expected to be Hermitian is not, within tolerance.
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    /// Matrix expected to be unitary is not, within tolerance.
    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    /// Element is not a valid state (trace or positivity violated).
    #[error("not a state: {0}")]
    NotAState(String),

    /// Functional evaluation hit the excluded hyperplane f_1 = 0.
    #[error("normalization functional vanishes; expectation undefined")]
    OutsideDomain,

    /// Computation requires an interior point of the domain.
    #[error("point lies on a stratum boundary: {0}")]
    StratumBoundary(String),

    /// Probability vector fails nonnegativity or normalization.
    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),

    /// Mesh construction parameters are invalid.
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    /// Cochain arguments live on different meshes or the wrong complex side.
    #[error("cochain mismatch: {0}")]
    CochainMismatch(String),

    /// Collapse-operator list is inconsistent with the declared dimension.
    #[error("invalid generator input: {0}")]
    InvalidGenerator(String),

    /// Trajectory left the state space beyond tolerance; integration aborted.
    #[error("positivity violated at tau={tau}: min eigenvalue {min_eig:.3e}")]
    PositivityViolation { tau: f64, min_eig: f64 },

    /// Input file or JSON payload could not be parsed.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::InvalidInput(e.to_string())
    }
}
