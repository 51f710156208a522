use num_bigint::{BigInt, BigUint};
use thiserror::Error;

use crate::graph::Violation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("torsion modulus {0} is below 2")]
    BadModulus(BigInt),
    #[error("expected {expected} coordinates, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("group descriptor mismatch: {left} vs {right}")]
    DescriptorMismatch { left: String, right: String },
    #[error("group is infinite")]
    Infinite,
    #[error("more than {0} elements")]
    TooLarge(usize),
    #[error("{0}")]
    Syntax(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("vertex {0} out of range")]
    NoSuchVertex(usize),
    #[error("no edge between {0} and {1}")]
    NoSuchEdge(usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("value set is empty")]
    EmptyValueSet,
    #[error("more than {0} simple cycles")]
    CycleCapacity(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArbError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("search budget of {budget} nodes exhausted; arboricity in [{lower}, {upper}]")]
    Budget {
        budget: u64,
        lower: usize,
        upper: usize,
    },
    #[error("oracle limited to {limit} vertices, graph has {n}")]
    OracleGuard { limit: usize, n: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Failures of the extraction pipelines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Arb(#[from] ArbError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The hypothesis of a bound is not met; carries the threshold.
    #[error("arboricity {arb} is below the required threshold {threshold}")]
    BelowThreshold { arb: usize, threshold: BigUint },
    /// The threshold is too large to evaluate; any desk-scale graph is below it.
    #[error("arboricity {arb} is below the required threshold, which exceeds the evaluation cap")]
    ThresholdTooLarge { arb: usize },
    #[error("graph is disconnected: vertex {0} is unreachable")]
    Disconnected(usize),
    #[error("stage `{stage}`: {reason}")]
    Stage { stage: String, reason: String },
    #[error("input inconsistent: {0}")]
    Inconsistent(String),
    /// A situation the underlying argument rules out; points at a bug upstream.
    #[error("argument contradicted ({0}); this indicates a bug")]
    Contradiction(String),
    #[error("emitted certificate failed verification: {0}")]
    Certificate(Violation),
}

impl ExtractError {
    pub(crate) fn stage(stage: &str, reason: impl Into<String>) -> Self {
        ExtractError::Stage {
            stage: stage.to_string(),
            reason: reason.into(),
        }
    }
}

impl From<GroupError> for ExtractError {
    fn from(e: GroupError) -> Self {
        ExtractError::Graph(GraphError::Group(e))
    }
}

impl From<GroupError> for ArbError {
    fn from(e: GroupError) -> Self {
        ArbError::Graph(GraphError::Group(e))
    }
}

/// Malformed text input, with the offending line (1-based).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}
