use thiserror::Error;

use crate::Natural;

/// A guard tripped before a computation could exhaust memory or time.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResourceError {
    #[error("term would have more than {cap} nodes")]
    NodeCap { cap: usize },
    #[error("value needs more than {budget} bits")]
    BitBudget { budget: u64 },
    #[error("decrement would expand an exponent of value {exponent} past the cap of {cap} monomials")]
    ExpansionCap { exponent: String, cap: u64 },
    #[error("hierarchy value exceeds the magnitude guard of {bits} bits")]
    Magnitude { bits: u64 },
    #[error("sequence did not reach zero within {cap} steps")]
    StepCap { cap: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("schedule starts at {0}, but f(0) must be at least 2")]
    StartBelowTwo(Natural),
    #[error("schedule decreases at index {index}: {previous} > {next}")]
    Decreasing {
        index: u64,
        previous: Natural,
        next: Natural,
    },
    #[error("schedule table of length {len} queried at index {index}")]
    Exhausted { index: u64, len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("non-canonical term: {0}")]
    NonCanonical(String),
    #[error(transparent)]
    Resource(#[from] ResourceError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error("base must be at least 2, got {0}")]
    BaseTooSmall(Natural),
    #[error("cannot change base {from} to the smaller base {to}")]
    ShiftBelowBase { from: Natural, to: Natural },
    #[error("largest coefficient {max_coefficient} is not below base {base}")]
    CoefficientTooLarge {
        max_coefficient: Natural,
        base: Natural,
    },
    #[error("digit {digit} is not below base {base}")]
    DigitTooLarge { digit: Natural, base: Natural },
    #[error("numerals have different bases {left} and {right}")]
    BaseMismatch { left: Natural, right: Natural },
    #[error("terms {index} and {} are not strictly descending: {first} then {second}", index + 1)]
    NotDescending {
        index: usize,
        first: String,
        second: String,
    },
    #[error("empty input sequence")]
    EmptyInput,
    #[error("at index {index}: {message}")]
    InvariantViolation { index: usize, message: String },
    #[error(
        "level {level} does not majorize the block lengths: |beta_{}| = {length} exceeds f_{level}(max(2, {n})) = {bound}",
        n + 1
    )]
    MajorantInsufficient {
        level: u32,
        n: usize,
        length: Natural,
        bound: String,
    },
    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<Error> },
    #[error("{0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        match self {
            Error::Resource(_) => true,
            Error::AtLine { source, .. } => source.is_resource(),
            _ => false,
        }
    }

    pub(crate) fn at_line(self, line: usize) -> Error {
        Error::AtLine {
            line,
            source: Box::new(self),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
