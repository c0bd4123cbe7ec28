use thiserror::Error;

/// Errors raised by the exact kernels.
///
/// The variants split into three families that callers map to exit codes:
/// bad input (`Parse`, `Precondition`, `UndefinedGcd`, `UndefinedContent`,
/// `ModulusMismatch`), and mathematically meaningful failures
/// (`StructuralFailure`, `TheoremViolation`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd of two zero polynomials is undefined")]
    UndefinedGcd,

    #[error("content of the zero matrix is undefined")]
    UndefinedContent,

    #[error("precondition failed for `{param}`: {reason}")]
    Precondition { param: &'static str, reason: String },

    #[error("parse error at position {pos} in {input:?}: {reason}")]
    Parse {
        input: String,
        pos: usize,
        reason: String,
    },

    #[error("elements live in different rings: p = {left} vs p = {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("structural failure at k = {k}: {detail}")]
    StructuralFailure { k: u64, detail: String },

    #[error("theorem violation at k = {k}: {detail}")]
    TheoremViolation { k: u64, detail: String },
}

impl Error {
    pub(crate) fn precondition(param: &'static str, reason: impl Into<String>) -> Self {
        Error::Precondition {
            param,
            reason: reason.into(),
        }
    }

    /// True for failures that indicate a broken computation rather than bad input.
    pub fn is_mathematical(&self) -> bool {
        matches!(
            self,
            Error::StructuralFailure { .. } | Error::TheoremViolation { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
