use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),

    #[error("{0} is not a usable prime modulus")]
    NotPrime(u64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polynomials live in different rings")]
    RingMismatch,

    #[error("characteristic {prime} does not exceed degree {degree}; derivative conditions are unreliable")]
    CharacteristicHazard { prime: u32, degree: u32 },

    #[error("no generic configuration found for {stage} after {attempts} attempts")]
    GenericityFailure { stage: String, attempts: usize },

    #[error("linear system is empty")]
    EmptySystem,

    #[error("singular scheme has dimension {dimension}; singularities are not isolated")]
    NonIsolatedSingularity { dimension: i32 },

    #[error("{what} needs {size} columns, above the limit of {limit}")]
    Feasibility { what: String, size: usize, limit: usize },

    #[error("generators must be homogeneous")]
    NotHomogeneous,

    #[error("degree truncation requires generators homogeneous for the grading")]
    InhomogeneousTruncation,

    #[error("too many variables: {0} (at most {max})", max = crate::poly::MAX_VARS)]
    TooManyVariables(usize),

    #[error("exponent overflow in monomial arithmetic")]
    ExponentOverflow,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
