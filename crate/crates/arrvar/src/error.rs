//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("mismatched ambient group: {0}")]
    MismatchedAmbient(String),
    #[error("invalid P column: {0}")]
    InvalidPColumn(String),
    #[error("P not of full rank")]
    PNotFullRank,
    #[error("A not in general position: {0}")]
    NotGeneralPosition(String),
    #[error("relation degrees inconsistent: {0}")]
    InconsistentDegrees(String),
    #[error("degree matrix incompatible with exponents")]
    IncompatibleDegreeMatrix,
    #[error("class not in the interior of the effective cone")]
    ClassNotInEffInterior,
    #[error("grading not pointed, fiber infinite")]
    NotPointed,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("chamber decomposition implemented for Picard rank two only")]
    RankNotTwo,
    #[error("face is not relevant: {0}")]
    NotRelevant(String),
    #[error("{0} violated")]
    SideCondition(String),
    #[error("unknown catalog row {0}")]
    UnknownRow(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
