//! Error type shared across the crate.
//!
//! Every variant carries a stable short code (see [`Error::code`]) that is
//! used on the wire by the stdio oracle protocol and by the C API.

use crate::point::PairKey;
use std::fmt;

#[derive(Debug)]
pub enum Error {
    /// Point id outside `1..=n`.
    BadPoint { point: u32, n: u32 },
    /// Path endpoints coincide.
    SelfPath { point: u32 },
    /// Query endpoints coincide.
    SelfQuery { point: u32 },
    /// The unordered pair was already queried in this session.
    RepeatedQuery { pair: PairKey },
    /// Horizon parameter out of range (must be `2..=1000`).
    BadHorizon { h: u32 },
    /// Density parameter out of range (must satisfy `0 < delta < 1`).
    BadDelta { detail: String },
    /// Point count out of range.
    BadPointCount { n: u32 },
    /// The isolated prefix would have fewer than two points.
    STooSmall { s_size: u32 },
    /// The isolated prefix would leave fewer than two connected points.
    STooLarge { s_size: u32, n: u32 },
    /// No candidate remains when selecting the planted center.
    EmptyCandidates,
    /// Some pair involving the declared output was never queried.
    IncompletePadding { z: u32, missing: u32 },
    /// The opponent violated the query protocol.
    OpponentFault { step: u64, detail: String },
    /// Strict mode: parameter or precondition violations present.
    PreconditionViolated { detail: String },
    /// A distance-matrix file could not be parsed.
    MatrixFormat { line: usize, detail: String },
    /// Malformed oracle-protocol line.
    BadLine { detail: String },
    Io(std::io::Error),
}

impl Error {
    /// Stable short code for wire formats and FFI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::BadPoint { .. } => "BAD_POINT",
            Error::SelfPath { .. } => "SELF_PATH",
            Error::SelfQuery { .. } => "SELF_QUERY",
            Error::RepeatedQuery { .. } => "REPEATED_QUERY",
            Error::BadHorizon { .. } => "BAD_H",
            Error::BadDelta { .. } => "BAD_DELTA",
            Error::BadPointCount { .. } => "BAD_N",
            Error::STooSmall { .. } => "S_TOO_SMALL",
            Error::STooLarge { .. } => "S_TOO_LARGE",
            Error::EmptyCandidates => "EMPTY_CANDIDATES",
            Error::IncompletePadding { .. } => "INCOMPLETE_PADDING",
            Error::OpponentFault { .. } => "OPPONENT_FAULT",
            Error::PreconditionViolated { .. } => "PRECONDITION_VIOLATED",
            Error::MatrixFormat { .. } => "MATRIX_FORMAT",
            Error::BadLine { .. } => "BAD_LINE",
            Error::Io(_) => "IO",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BadPoint { point, n } => write!(f, "point {point} outside 1..={n}"),
            Error::SelfPath { point } => write!(f, "path from point {point} to itself"),
            Error::SelfQuery { point } => write!(f, "query from point {point} to itself"),
            Error::RepeatedQuery { pair } => write!(f, "pair {pair} already queried"),
            Error::BadHorizon { h } => write!(f, "horizon h={h} out of range (need 2..=1000)"),
            Error::BadDelta { detail } => write!(f, "bad delta: {detail}"),
            Error::BadPointCount { n } => write!(f, "point count n={n} out of range"),
            Error::STooSmall { s_size } => {
                write!(f, "isolated prefix has {s_size} < 2 points")
            }
            Error::STooLarge { s_size, n } => {
                write!(f, "isolated prefix of {s_size} points leaves < 2 of {n} connected")
            }
            Error::EmptyCandidates => write!(f, "no candidate center besides the output"),
            Error::IncompletePadding { z, missing } => {
                write!(f, "{missing} pairs involving output {z} were never queried")
            }
            Error::OpponentFault { step, detail } => {
                write!(f, "opponent fault at step {step}: {detail}")
            }
            Error::PreconditionViolated { detail } => {
                write!(f, "strict mode: {detail}")
            }
            Error::MatrixFormat { line, detail } => {
                write!(f, "matrix file line {line}: {detail}")
            }
            Error::BadLine { detail } => write!(f, "malformed line: {detail}"),
            Error::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
