use thiserror::Error;

/// Errors produced by the simulation engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit count mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("qubit index {index} out of range for a {n}-qubit register")]
    QubitOutOfRange { index: usize, n: usize },

    #[error("gate acts on qubit {0} twice")]
    RepeatedQubit(usize),

    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("{gate} is not supported by the descriptor engine: {hint}")]
    UnsupportedGate { gate: String, hint: &'static str },

    #[error("{0} is a channel, not a unitary")]
    NotUnitary(String),

    #[error("{what} needs {n} qubits but the dense cap is {cap}")]
    TooManyQubits {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("expectation has imaginary residue {residue:e}; observable is not Hermitian")]
    NonHermitian { residue: f64 },

    #[error("pattern has {found} stages but the template expects {expected}")]
    PatternLength { expected: usize, found: usize },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("requested {count} distinct patterns but only {population} exist")]
    PopulationExceeded { count: u128, population: u128 },

    #[error("exhaustive enumeration of {population} patterns exceeds the cap of {cap}")]
    ExhaustiveCap { population: u128, cap: u128 },

    #[error("partition must be a proper nonempty subset of the register")]
    TrivialPartition,

    #[error("invalid axis '{0}': expected x or z")]
    InvalidAxis(String),

    #[error("balanced patterns need an even stage count, got {0}")]
    OddStages(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Checks that `value` lies in the closed interval `[lo, hi]`.
pub(crate) fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if value.is_nan() || value < lo || value > hi {
        return Err(Error::OutOfRange {
            name,
            value,
            lo,
            hi,
        });
    }
    Ok(())
}
