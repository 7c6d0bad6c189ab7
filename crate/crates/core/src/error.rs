use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two operands were built over different variable sets.
    #[error("variable sets differ: [{left}] vs [{right}]")]
    VarSetMismatch { left: String, right: String },

    /// An operation was asked for outside its domain (bad index, bad generator, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An exact division that must succeed did not. Always a bug.
    #[error("internal invariant violated: inexact division ({0})")]
    InexactDivision(String),

    /// A configured size limit was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
