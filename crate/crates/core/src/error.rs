use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("subsystem index {index} out of range for {count} subsystems")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("subsystem index {0} listed more than once")]
    RepeatedIndex(usize),

    #[error("invalid subsystem dimensions: {0}")]
    InvalidDims(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),

    #[error("invalid grouping: {0}")]
    InvalidGrouping(String),

    #[error("parameter {name} = {value} outside [{min}, {max}]")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("entropy-of-cut measures require a globally pure state")]
    MixedStateEntropy,

    #[error("entanglement-breaking certification only supports qubit channels (got dimension {0})")]
    NonQubitChannel(usize),

    #[error("channel {0} is not entanglement breaking")]
    NotEntanglementBreaking(String),

    #[error("invalid channel spec {0:?}")]
    InvalidChannelSpec(String),

    #[error("unknown measure {0:?}")]
    UnknownMeasure(String),

    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),

    #[error("unknown figure {0:?}")]
    UnknownFigure(String),

    #[error("unknown suite {0:?} (expected paper, properties or all)")]
    UnknownSuite(String),

    #[error("no criterion {0}")]
    UnknownCriterion(u8),

    #[error("axis mismatch: {0}")]
    AxisMismatch(String),

    #[error("invalid sweep axis: {0}")]
    InvalidAxis(String),

    #[error("serialization error: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange {
            name,
            value,
            min: 0.0,
            max: 1.0,
        })
    }
}
