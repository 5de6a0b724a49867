use thiserror::Error;

use crate::verify::VerificationReport;

/// A cell position, 1-based. `block` is set when the cell lives inside a
/// block of a [`BlockSequence`](crate::BlockSequence).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Location {
    pub block: Option<usize>,
    pub row: usize,
    pub col: usize,
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.block {
            Some(b) => write!(f, "block {b} ({}, {})", self.row, self.col),
            None => write!(f, "({}, {})", self.row, self.col),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameters must be positive integers")]
    NonPositive,
    #[error("dimension mismatch: m*s = {ms} but n*k = {nk}")]
    DimensionMismatch { ms: u64, nk: u64 },
    #[error("t = {t} does not divide 2ms = {two_ms}")]
    InvalidT { t: u64, two_ms: u64 },
    #[error("arithmetic overflow while deriving parameters")]
    Overflow,
    #[error("absolute value {value} occurs more than once: {}", fmt_locations(.locations))]
    DuplicateAbsoluteValue { value: u64, locations: Vec<Location> },
    #[error("blocks of different heights cannot be juxtaposed ({left} vs {right})")]
    HeightMismatch { left: usize, right: usize },
    #[error("malformed block {name}: {reason}")]
    MalformedBlock { name: String, reason: String },
    #[error("unknown catalog block {0:?}")]
    UnknownBlock(String),
    #[error("invalid parameters for block {name}: {reason}")]
    InvalidBlockParams { name: String, reason: String },
    #[error("block {index} violates the {contract} contract: {reason}")]
    ContractViolation {
        index: usize,
        contract: &'static str,
        reason: String,
    },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no construction branch covers {0}")]
    BranchUnavailable(String),
    #[error("cell ({row}, {col}) written twice: {existing} then {incoming}")]
    CellCollision {
        row: usize,
        col: usize,
        existing: i64,
        incoming: i64,
    },
    #[error("zero cannot be stored in a partially filled array (cell ({row}, {col}))")]
    ZeroEntry { row: usize, col: usize },
    #[error("fill count mismatch: {0}")]
    CountMismatch(String),
    #[error("shape violation: {0}")]
    ShapeViolation(String),
    #[error("no integer Heffter array exists: {0}")]
    NonExistent(String),
    #[error("open case: m = {m} and n = {n} are both odd with s, k = 2 (mod 4)")]
    OpenCase { m: u64, n: u64 },
    #[error("constructed array failed verification")]
    VerificationFailed(Box<VerificationReport>),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn fmt_locations(locs: &[Location]) -> String {
    locs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
