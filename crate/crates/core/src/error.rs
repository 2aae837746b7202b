use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid filter semantics: {0}")]
    InvalidSemantics(String),

    #[error("unsupported index class: {0}")]
    UnsupportedIndexClass(String),

    #[error("hyperreals carry different filter semantics")]
    SemanticsMismatch,

    #[error("cannot certify the divisor as eventually nonzero within horizon {horizon}")]
    DivisionUndetermined { horizon: u64 },

    #[error("divisor is eventually zero (from index {from})")]
    DivisionByProvableZero { from: u64 },

    #[error("standard part undefined: the hyperreal is unlimited")]
    StUnlimited,

    #[error("tail did not stabilize: oscillation {oscillation:e} exceeds tolerance {tolerance:e}")]
    StNotConverged { oscillation: f64, tolerance: f64 },

    #[error("difference quotient is not adequal to any real (oscillation {oscillation:e})")]
    QuotientNotAdequal { oscillation: f64 },

    #[error("increment is not a certified nonzero infinitesimal: {0}")]
    NotInfinitesimal(String),

    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("unsupported series `{0}` (only the registered sin(ix)/i series is supported)")]
    UnsupportedSeries(String),

    #[error("pointwise tail could not be certified at x = {x}")]
    TailNotCertified { x: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown case `{0}`")]
    UnknownCase(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}
