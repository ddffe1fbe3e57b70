use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("negative exponent at byte {offset}")]
    NegativeExponent { offset: usize },

    #[error("local mode input has a constant term")]
    ConstantTermInLocalMode,

    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { name: String, offset: usize },

    #[error("polynomial is not convenient: no pure power of {}", .missing.join(", "))]
    NotConvenient { missing: Vec<String> },

    #[error("invalid restriction: {0}")]
    InvalidRestriction(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("newton polytope is not full dimensional")]
    NotFullDimensional,

    #[error("face {0} is not a simplex")]
    NotSimplex(usize),

    #[error("box formula needs simplicial faces; face {0} is not a simplex")]
    NotSimplicialFaces(usize),

    #[error("fan is not simplicial")]
    NotSimplicial,

    #[error("generating series did not stabilise before truncation cap {cap}")]
    NoConvergence { cap: u32 },

    #[error("{formula}: {detail}")]
    InternalMismatch { formula: &'static str, detail: String },

    #[error("graded quotient dimension mismatch at degree {degree}: expected {expected}, found {found}")]
    DimensionMismatch {
        degree: String,
        expected: i64,
        found: i64,
    },

    #[error("basis hint is not a basis: {0}")]
    HintNotABasis(String),

    #[error("cannot reduce product: {0}")]
    ReductionFailure(String),

    #[error("spectrum exponent {0} lies outside [0, n]")]
    ExponentOutOfRange(String),

    #[error("negative delta entry at index {0}")]
    NegativeDelta(usize),

    #[error("integer overflow while {0}")]
    Overflow(&'static str),
}

impl Error {
    /// Input problems exit with 1, internal consistency failures with 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. }
            | Error::NegativeExponent { .. }
            | Error::ConstantTermInLocalMode
            | Error::UnknownVariable { .. }
            | Error::NotConvenient { .. }
            | Error::InvalidRestriction(_)
            | Error::InvalidInput(_)
            | Error::HintNotABasis(_)
            | Error::NotSimplicial
            | Error::NotSimplex(_)
            | Error::NotSimplicialFaces(_)
            | Error::ExponentOutOfRange(_) => 1,
            Error::NotFullDimensional
            | Error::NoConvergence { .. }
            | Error::InternalMismatch { .. }
            | Error::DimensionMismatch { .. }
            | Error::ReductionFailure(_)
            | Error::NegativeDelta(_)
            | Error::Overflow(_) => 2,
        }
    }
}
