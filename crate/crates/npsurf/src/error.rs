use thiserror::Error;

/// Errors shared by the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree {q} is outside the module window [{q_min}, {q_max}]")]
    DegreeOutOfWindow { q: i64, q_min: i64, q_max: i64 },

    #[error(
        "cell K_{{{p},{q}}} is not computable: it needs M_{needed}, but the window ends at q_max = {q_max}"
    )]
    WindowTooSmall {
        p: usize,
        q: i64,
        needed: i64,
        q_max: i64,
    },

    #[error("{path}: {message}")]
    Schema { path: String, message: String },

    #[error("matrix shapes are incompatible: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("coordinate vector has length {got}, lattice rank is {expected}")]
    RankMismatch { expected: usize, got: usize },

    #[error("lattice signature is ({pos}, {neg}) with {zero} null directions; expected (1, rank-1) nondegenerate")]
    SignatureViolation { pos: usize, neg: usize, zero: usize },

    #[error("operation requires a {expected} surface, got {got}")]
    KindMismatch { expected: &'static str, got: &'static str },

    #[error("operation requires the `{0}` flag to be asserted on the surface")]
    MissingFlag(&'static str),

    #[error("no theorem covers the multiple m = {m} for p = {p}; supported m are p, p+1, p+2, p+3 (with p >= 2 unless m = p+3)")]
    NoTheoremApplies { m: u32, p: u32 },

    #[error("{0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
