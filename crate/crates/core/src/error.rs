use thiserror::Error;

/// Errors surfaced by the computation engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("coefficient {value} of {context} is not {p}-integral")]
    Integrality {
        context: String,
        value: String,
        p: u64,
    },
    #[error("outgoing * incoming is nonzero ({rows}x{cols} product); the differential is broken")]
    CompositionNonzero { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("coaction mode unavailable: {0}")]
    ModeUnavailable(String),
    #[error("element leaves the comodule window: {0}")]
    WindowViolation(String),
    #[error("degree {degree} exceeds the context bound {bound}")]
    DegreeBound { degree: u32, bound: u32 },
    #[error("a_{d} = {value} is not an integer under the |B_2d| convention")]
    NonIntegerA { d: u32, value: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
