use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("photon-number sector mismatch: {left} vs {right}")]
    SectorMismatch { left: u32, right: u32 },

    #[error("state has zero norm")]
    ZeroState,

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("operator trace {0} is not 1")]
    NotUnitTrace(f64),

    #[error("parameter `{name}` = {value} outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("mode sets do not partition the eight optical modes")]
    BadPartition,

    #[error("support has no single photon in modes {alice} and {bob}")]
    NotOnePhotonPerMode { alice: String, bob: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    range: &'static str,
) -> Result<f64> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(value)
    } else {
        Err(Error::OutOfRange { name, value, range })
    }
}
