use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ideal is not zero-dimensional: the variety has infinitely many points")]
    NotZeroDimensional,
    #[error("weight polynomial is not fixed by the star map")]
    NotStarSymmetric,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("root iteration did not converge within {0} iterations")]
    MaxIterations(usize),
    #[error("lex basis has no univariate polynomial in the last variable")]
    NoEliminant,
    #[error("non-single solutions do not pair up under (z, w) -> (conj w, conj z)")]
    InconsistentPairing,
    #[error("borderline single classification: {0}")]
    Ambiguous(String),
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("arity error: {0}")]
    Arity(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable identifier used in JSON error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotZeroDimensional => "NotZeroDimensional",
            Error::NotStarSymmetric => "NotStarSymmetric",
            Error::NotHermitian => "NotHermitian",
            Error::UnsupportedShape(_) => "UnsupportedShape",
            Error::MaxIterations(_) => "MaxIterations",
            Error::NoEliminant => "NoEliminant",
            Error::InconsistentPairing => "InconsistentPairing",
            Error::Ambiguous(_) => "Ambiguous",
            Error::Syntax { .. } => "SyntaxError",
            Error::Arity(_) => "ArityError",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
