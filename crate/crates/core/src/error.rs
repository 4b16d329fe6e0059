use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("malformed grid function at index {index}: {reason}")]
    MalformedFunction { index: usize, reason: String },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("zero norm: {0}")]
    ZeroNorm(&'static str),

    #[error("target grid [{target_lower}, {target_upper}] does not overlap source domain [{source_lower}, {source_upper}]")]
    EmptyOverlap {
        source_lower: f64,
        source_upper: f64,
        target_lower: f64,
        target_upper: f64,
    },

    #[error("window [{lower}, {upper}] contains no grid node of the (supported) domain [{domain_lower}, {domain_upper}]")]
    EmptyWindow {
        lower: f64,
        upper: f64,
        domain_lower: f64,
        domain_upper: f64,
    },

    #[error("non-positive momentum k = {k} at index {index} (photon maps require k > 0)")]
    NonPositiveMomentum { index: usize, k: f64 },

    #[error("negative density value {value} at index {index}")]
    NegativeDensity { index: usize, value: f64 },

    #[error("density is not normalized: integral = {0}")]
    NotNormalized(f64),

    #[error("csv: {0}")]
    Csv(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}
