//! Error type shared across the crate.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the screening toolkit.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An operation needs more samples than were supplied.
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },

    /// Two variables that must share a sample count do not.
    #[error("sample counts differ: {left} vs {right}")]
    SampleCountMismatch { left: usize, right: usize },

    /// A buffer length does not match the declared shape.
    #[error("buffer length {got} does not match expected {expected}")]
    ShapeMismatch { expected: usize, got: usize },

    /// NaN or infinity in the input data.
    #[error("non-finite value at sample {sample}, component {component}")]
    NonFinite { sample: usize, component: usize },

    /// A parameter that must be strictly positive is not.
    #[error("{name} must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    /// A parameter failed some other validity check.
    #[error("invalid {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Requested model size does not fit the feature count.
    #[error("model size d={d} out of range for p={p} features")]
    ModelSizeOutOfRange { d: usize, p: usize },

    /// A constant response leaves every marginal utility undefined.
    #[error("response is constant; all screening utilities are degenerate")]
    ConstantResponse,

    /// Method restricted to a single response column was given several.
    #[error("{method} screening requires a univariate response, got q={q}")]
    UnivariateResponseRequired { method: &'static str, q: usize },

    /// Metrics were requested against an empty active set.
    #[error("true active set is empty")]
    EmptyActiveSet,

    /// An active-set index falls outside the feature range.
    #[error("active index {index} out of range for p={p} features")]
    ActiveIndexOutOfRange { index: usize, p: usize },

    /// A benchmark replicate failed; carries enough context to reproduce it.
    #[error("replicate {replicate} (seed {seed}) failed: {source}")]
    Replicate {
        replicate: u64,
        seed: u64,
        #[source]
        source: Box<Error>,
    },
}
