use thiserror::Error;

use crate::matroid::Violation;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ground set of size {0} exceeds the supported maximum of {max}", max = crate::MAX_GROUND)]
    GroundTooLarge(usize),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("invalid label `{0}`: labels must be non-empty and contain no commas, quotes or line breaks")]
    InvalidLabel(String),

    #[error("rank table is not total: expected {expected} entries, found {found}")]
    RankNotTotal { expected: usize, found: usize },

    #[error("rank function violates the matroid axioms ({} violation(s), first: {})", .0.len(), .0[0])]
    AxiomViolation(Vec<Violation>),

    #[error("circuit family invalid: {0}")]
    CircuitAxiom(String),

    #[error("deletion and contraction sets overlap in `{0}`")]
    OverlappingSets(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("column mismatch: array columns {array:?} vs ground set {ground:?}")]
    ColumnMismatch { array: Vec<String>, ground: Vec<String> },

    #[error("entry {value} at row {row}, column `{column}` is outside 0..{limit}")]
    SymbolOutOfRange {
        row: usize,
        column: String,
        value: u32,
        limit: u64,
    },

    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),

    #[error("invalid level {0}: levels must be at least 2")]
    InvalidLevel(u32),

    #[error("auxiliary array is not an OA(2,3,{0}) of index one")]
    InvalidAuxiliary(u32),

    #[error("no builder for level {v}: {reason}")]
    UnsupportedLevel { v: u32, reason: String },

    #[error("{0} is not a prime power")]
    NotPrimePower(u32),

    #[error("basis {basis:?} has determinant {det}, which is not a unit modulo {v}")]
    NonUnitDeterminant { basis: Vec<String>, det: i128, v: u32 },

    #[error("graph is disconnected")]
    DisconnectedGraph,

    #[error("{0:?} is not a row of the projected array")]
    NotARow(Vec<u32>),

    #[error("whirl construction failed at stage k={stage} after trying {attempts} (x)1 table(s)")]
    WhirlStage { stage: usize, attempts: usize },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("size limit exceeded: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
