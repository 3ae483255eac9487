use thiserror::Error;

/// Errors produced by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mismatched variable counts: {0} vs {1}")]
    VariableCount(usize, usize),

    #[error("{0} is not a prime with 2 < p < 2^31")]
    NotPrime(u64),

    #[error("a ring needs between 1 and {max} variables, got {got}")]
    VariableLimit { got: usize, max: usize },

    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),

    #[error("hypersurface equation must be homogeneous")]
    InhomogeneousHypersurface,

    #[error("hypersurface equation has degree {0}; a hypersurface needs degree at least 2")]
    HypersurfaceDegree(u32),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("degree cap {cap} exceeded (reached relative degree {reached})")]
    DegreeCap { cap: u32, reached: i64 },

    #[error("entry ({row}, {col}) is not homogeneous of degree {expected}")]
    Inhomogeneous { row: usize, col: usize, expected: i64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("operands live over different rings")]
    RingMismatch,

    #[error("maps do not form a complex: composition is nonzero")]
    NotAComplex,

    #[error("the zero module is not allowed here")]
    ZeroModule,

    #[error("ring is not a hypersurface")]
    NotHypersurface,

    #[error("ring is not regular")]
    NotRegular,

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("matrix factorization lift failed: {0}")]
    LiftFailed(String),

    #[error("{0}")]
    Usage(String),

    #[error("random module shaping failed after {0} attempts")]
    Shaping(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
