use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("bivector is singular; this operation needs its inverse")]
    SingularBivector,

    #[error("bivector is not antisymmetric at ({row}, {col})")]
    NotAntisymmetric { row: usize, col: usize },

    #[error("mode index {index} out of range for a basis with {modes} modes")]
    InvalidMode { index: usize, modes: usize },

    #[error("interior block is empty: margin {margin} leaves no states below cutoff {cutoff}")]
    EmptyInteriorBlock { margin: usize, cutoff: usize },

    #[error("operator is not hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("operator is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("q-deformed levels turn negative; largest admissible cutoff is {max_cutoff}")]
    TruncatedAlgebra { max_cutoff: usize },

    #[error("truncation insufficient: interior deviation {deviation:.3e} exceeds {limit}; try cutoff >= {suggested_cutoff}")]
    TruncationInsufficient {
        deviation: f64,
        limit: f64,
        suggested_cutoff: usize,
    },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

impl Error {
    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    /// True for errors caused by malformed input rather than by the
    /// mathematics of a well-formed request.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::UnknownGenerator(_)
                | Error::DimensionMismatch { .. }
                | Error::InvalidMode { .. }
                | Error::NotAntisymmetric { .. }
                | Error::InvalidParameter(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
