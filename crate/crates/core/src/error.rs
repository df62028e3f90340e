use thiserror::Error;

/// Errors raised by the geometric and measure-theoretic routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("wrong arity: expected {expected} arguments, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported dimension {dim} in exact mode (supported up to {max})")]
    UnsupportedDimension { dim: usize, max: usize },

    #[error("polarization inconsistency: volume route {volume_route}, integral route {integral_route}")]
    PolarizationInconsistency {
        volume_route: f64,
        integral_route: f64,
    },

    #[error("coefficient extraction unstable (residual {residual:e})")]
    CoefficientExtraction { residual: f64 },

    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),

    #[error("negative weight {weight:e} at atom {location:?}")]
    NegativeWeight { weight: f64, location: Vec<f64> },

    #[error("function is not super-coercive: {0}")]
    NotCoercive(String),

    #[error("function is not finite everywhere")]
    NotFinite,

    #[error("point {0:?} is not in the interior of the domain")]
    OutsideDomainInterior(Vec<f64>),

    #[error("subspace misses the domain")]
    EmptyRestriction,

    #[error("piece budget exceeded: {count} pieces (limit {limit})")]
    PieceBudget { count: usize, limit: usize },

    #[error("not full-dimensional: dim {dim} in ambient dimension {ambient}")]
    NotFullDimensional { dim: usize, ambient: usize },

    #[error("vector is not a unit vector (norm {0})")]
    NotUnit(f64),

    #[error("density must have compact support")]
    NoCompactSupport,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn dim(expected: usize, found: usize) -> Self {
        Error::DimensionMismatch { expected, found }
    }

    /// True for input-format failures (as opposed to math-domain failures).
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
