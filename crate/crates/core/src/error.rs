use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension n = {n}: {reason}")]
    InvalidDimension { n: usize, reason: &'static str },

    #[error("vector is not null: <Z,Z> = {residual:e}")]
    NotNull { residual: f64 },

    #[error("zero vector cannot represent a boundary point")]
    ZeroVector,

    #[error("points {i} and {j} coincide")]
    CoincidentPoints { i: usize, j: usize },

    #[error("Gram entry g{entry} is degenerate")]
    DegenerateEntry { entry: &'static str },

    #[error("invalid face ({0}, {1}, {2})")]
    InvalidFace(usize, usize, usize),

    #[error("Cartan invariant {value} outside [-pi/2, pi/2]")]
    CartanOutOfRange { value: f64 },

    #[error("cross-ratio coordinate {which} is zero")]
    ZeroCrossRatio { which: &'static str },

    #[error("point is not in the moduli space for n = {n}: {reason}")]
    NotInModuliSpace { n: usize, reason: String },

    #[error("Gram matrix cannot be realized: equation residual {residual:e}")]
    InconsistentGram { residual: f64 },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("certificate clause failed: {clause}")]
    CertificateFailure { clause: &'static str },

    #[error("could not draw distinct points after {attempts} attempts")]
    ResamplingExhausted { attempts: usize },
}

impl Error {
    /// Stable machine-readable code, used in CLI error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::InvalidDimension { .. } => "invalid_dimension",
            Error::NotNull { .. } => "not_null",
            Error::ZeroVector => "zero_vector",
            Error::CoincidentPoints { .. } => "coincident_points",
            Error::DegenerateEntry { .. } => "degenerate_entry",
            Error::InvalidFace(..) => "invalid_face",
            Error::CartanOutOfRange { .. } => "cartan_out_of_range",
            Error::ZeroCrossRatio { .. } => "zero_cross_ratio",
            Error::NotInModuliSpace { .. } => "not_in_moduli_space",
            Error::InconsistentGram { .. } => "inconsistent_gram",
            Error::PreconditionViolated(_) => "precondition_violated",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::CertificateFailure { .. } => "certificate_failure",
            Error::ResamplingExhausted { .. } => "resampling_exhausted",
        }
    }
}
