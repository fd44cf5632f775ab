use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("arity mismatch: {left} leaves cannot be composed with {right} roots")]
    ArityMismatch { left: usize, right: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("leaf counts differ: top has {top}, bottom has {bottom}")]
    LeafCountMismatch { top: usize, bottom: usize },

    #[error("odd normalization exponent ({what}); the exact value is not in Q(δ)")]
    OddNormalization { what: &'static str },

    #[error("resource cap exceeded: {what} reached {reached} (limit {limit})")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        reached: usize,
    },

    #[error("the Ψ vacuum needs a tree with at least 2 leaves")]
    PsiNeedsCaret,

    #[error("incompatible operands: {0}")]
    Incompatible(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("at n = {n}: {inner}")]
    AtStep { n: usize, inner: Box<Error> },
}

impl Error {
    /// True for resource-cap errors, possibly wrapped.
    pub fn is_cap(&self) -> bool {
        match self {
            Error::CapExceeded { .. } => true,
            Error::AtStep { inner, .. } => inner.is_cap(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
