use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point ({x}, {y}) lies outside the domain of `{chart}`")]
    OutOfDomain { chart: String, x: f64, y: f64 },

    #[error("point ({x}, {y}) of `{chart}` has interior margin {margin:.3e}, need at least {required:.3e}")]
    InsufficientMargin {
        chart: String,
        x: f64,
        y: f64,
        margin: f64,
        required: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain of `{0}` is not simply connected; the Lagrange potential is not single valued")]
    NotSimplyConnected(String),

    #[error("integration path from ({x0}, {y0}) to ({x1}, {y1}) leaves the domain of `{chart}`")]
    PathExitsDomain {
        chart: String,
        x0: f64,
        y0: f64,
        x1: f64,
        y1: f64,
    },

    #[error("x-first and y-first integration disagree by {discrepancy:.3e} (tolerance {tolerance:.3e})")]
    PathDependent { discrepancy: f64, tolerance: f64 },

    #[error("gradient estimate violated: |grad q|^2 = {0} >= 1")]
    GradientEstimate(f64),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("unknown registry key `{0}`")]
    UnknownKey(String),

    #[error("malformed grid file: {0}")]
    GridFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short machine-readable tag, used by the CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::OutOfDomain { .. } => "out_of_domain",
            Error::InsufficientMargin { .. } => "insufficient_margin",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::NotSimplyConnected(_) => "not_simply_connected",
            Error::PathExitsDomain { .. } => "path_exits_domain",
            Error::PathDependent { .. } => "path_dependent",
            Error::GradientEstimate(_) => "gradient_estimate",
            Error::TooFewSamples { .. } => "too_few_samples",
            Error::NonFinite(_) => "non_finite",
            Error::UnknownKey(_) => "unknown_key",
            Error::GridFormat(_) => "grid_format",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }
}
