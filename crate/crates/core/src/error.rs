use thiserror::Error;

use crate::gf2::BitVec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {0} exceeds the supported maximum of 64")]
    DimensionTooLarge(usize),

    #[error("input vectors are linearly dependent")]
    DependentInput,

    #[error("linear system has no solution")]
    NoSolution,

    #[error("zero functional is not allowed here")]
    ZeroFunctional,

    #[error("s∘q does not vanish on radical vector {0}; the map is not real")]
    RadicalNotIsotropic(BitVec),

    #[error("quadratic form is not regular")]
    NotRegular,

    #[error("regular forms live in even dimension, got {0}")]
    OddDimension(usize),

    #[error("expected a quadratic form (dim_w = 1), got dim_w = {0}")]
    NotAForm(usize),

    #[error("group of order 2^{order_log2} exceeds the oracle cap of {cap} elements")]
    TooLarge { order_log2: usize, cap: usize },

    #[error(
        "not a special 2-group seed (regular: {regular}, polar image spans W: {polar_spans_w})"
    )]
    InvalidSeed { regular: bool, polar_spans_w: bool },

    #[error("the quadratic map does not define a real group")]
    NotReal,

    #[error("character index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("bilinear difference has nonzero diagonal entry at {0}")]
    DiagonalNonzero(usize),

    #[error("bilinear difference is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),

    #[error("measured matrix sign is not a bilinear cocycle")]
    SignNotBilinear,

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("variable x{var} at {pos} is out of range for dim_v = {dim}")]
    VarOutOfRange { var: usize, pos: usize, dim: usize },

    #[error("non-quadratic term at {pos}: {msg}")]
    Degree { pos: usize, msg: String },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("form {form} is not upper triangular: entry ({row}, {col}) is set")]
    NotUpperTriangular { form: usize, row: usize, col: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("no valid real seed found after {0} attempts")]
    NoSeedFound(usize),
}
