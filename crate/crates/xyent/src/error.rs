use thiserror::Error;

/// Errors produced by the numerical routines.
///
/// Critical-point conditions are reported as errors (or as explicit markers
/// on [`crate::entropy::EntropyValue`]) so that callers are forced to branch
/// on criticality instead of receiving a large float.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested quantity has no finite value on a critical line or point.
    #[error("critical: {0}")]
    Critical(String),
    /// Series evaluation refused because the tail bound is useless this close
    /// to criticality.
    #[error("near-critical: use asymptotic expansion")]
    NearCritical,
    /// An iterative scheme failed to converge or lost internal consistency.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
