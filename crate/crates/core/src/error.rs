use thiserror::Error as ThisError;

/// Every failure the library can report. Variants named after invariant
/// violations signal a bug upstream, not bad input.
#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { msg: String, line: usize, col: usize },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("inhomogeneous input: {0}")]
    InhomogeneousInput(String),
    #[error("target is not in the image")]
    NotInImage,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("no stabilization within {0} iterations")]
    NonTermination(usize),
    #[error("degree {degree} outside window [{lo}, {hi}]")]
    WindowTooSmall { degree: i64, lo: i64, hi: i64 },
    #[error("map is not nullhomotopic: {0}")]
    NotNullhomotopic(String),
    #[error("lifting obstruction: {0}")]
    LiftObstruction(String),
    #[error("module is not annihilated by the sequence")]
    NotAnRModule,
    #[error("matrix factorization equation fails: {0}")]
    MfEquationFailure(String),
    #[error("objects live over different rings")]
    RingMismatch,
    #[error("verification failed: {0}")]
    VerificationFailure(String),
    #[error("operation needs a regular (polynomial) context")]
    NonRegularContext,
    #[error("entry of the squared lift is not in (f): {0}")]
    DecompositionFailure(String),
    #[error("syzygy identification failed: {0}")]
    IdentificationFailure(String),
    #[error("stable Ext in degree {q} below q0 = {q0} needs c = 1")]
    NegativeDegreeUnsupported { q: i64, q0: i64 },
    #[error("support routes disagree: {0}")]
    RouteMismatch(String),
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
