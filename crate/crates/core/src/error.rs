use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    #[error("{op}: argument out of domain ({detail})")]
    Domain { op: &'static str, detail: String },

    /// Request beyond what the kernel supports (e.g. polygamma order).
    #[error("{op}: unsupported request ({detail})")]
    Capability { op: &'static str, detail: String },

    /// The evaluation path would lose all significance at this argument.
    #[error("{op}: insufficient precision ({detail})")]
    Precision { op: &'static str, detail: String },

    /// A configuration or parameter value violates its contract.
    #[error("{op}: invalid parameter ({detail})")]
    Parameter { op: &'static str, detail: String },

    /// The true value is not representable in binary64.
    #[error("{op}: result overflows binary64 ({detail})")]
    Overflow { op: &'static str, detail: String },
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { op, detail: detail.into() }
    }

    pub(crate) fn capability(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Capability { op, detail: detail.into() }
    }

    pub(crate) fn precision(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Precision { op, detail: detail.into() }
    }

    pub(crate) fn parameter(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Parameter { op, detail: detail.into() }
    }

    pub(crate) fn overflow(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Overflow { op, detail: detail.into() }
    }
}
