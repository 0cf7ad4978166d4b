//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    #[error("requires alpha >= m (got alpha = {alpha}, m = {m})")]
    AlphaBelowM { alpha: i64, m: usize },

    #[error("m must be at least 1")]
    EmptySystem,

    #[error("the zero polynomial vanishes at every point")]
    ZeroPolynomial,

    #[error("duplicate interpolation node {node}")]
    DuplicateNode { node: String },

    #[error("linear system is singular at n = {n}")]
    SingularSystem { n: i64 },

    #[error("Casorati determinant vanishes at n = {n}; no orthogonal family exists")]
    OmegaVanishes { n: u64 },

    #[error("insufficient moments: need {needed}, have {have}")]
    InsufficientMoments { needed: usize, have: usize },

    #[error("basis polynomial at index {index} must have degree {index}")]
    BadBasisDegree { index: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid rational literal '{text}'")]
    BadRational { text: String },

    #[error("root scan bound {bound} is too large to enumerate")]
    RootBoundTooLarge { bound: String },
}

pub type Result<T> = std::result::Result<T, Error>;
