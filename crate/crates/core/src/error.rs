use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("word {word:?} is not reduced in S_{n}")]
    NotReduced { word: Vec<usize>, n: usize },

    #[error("index {index} out of range for S_{n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial uses variables beyond {n}")]
    VariablesOutOfRange { n: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("ambient size {n} too small for the Pieri expansion; {needed} letters required, retry with a larger N")]
    PieriAmbientTooSmall { n: usize, needed: usize },

    #[error(
        "Schubert expansion did not terminate in S_{n}: exponent {code:?} is not a Lehmer code there; use a larger N"
    )]
    ExpansionTooSmall { n: usize, code: Vec<u32> },

    #[error("expected a polynomial in x only")]
    HasYVariables,

    #[error("pipe dream is not reduced")]
    NonReducedPipeDream,

    #[error("cell ({row}, {col}) lies outside the staircase of size {n}")]
    CellOutsideStaircase { row: usize, col: usize, n: usize },

    #[error("sequence is not a chain: {0}")]
    InvalidChain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
