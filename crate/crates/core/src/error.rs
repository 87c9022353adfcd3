use thiserror::Error;

use crate::evidence::Violation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed evidence document: {0}")]
    Malformed(String),

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("unknown hypothesis `{label}` in evidence `{evidence}`")]
    UnknownHypothesis { evidence: String, label: String },

    #[error("duplicate focal set {set} in evidence `{evidence}`")]
    DuplicateFocalSet { evidence: String, set: String },

    #[error("evidence `{evidence}` is invalid: {}", describe(.violations))]
    InvalidEvidence {
        evidence: String,
        violations: Vec<Violation>,
    },

    #[error("at least two evidences are required, found {0}")]
    TooFewEvidences(usize),

    #[error("duplicate evidence id `{0}`")]
    DuplicateEvidenceId(String),

    #[error("evidences `{left}` and `{right}` are defined over different frames")]
    FrameMismatch { left: String, right: String },

    #[error("focal set {0} is not covered by the canonical ordering")]
    MissingFocalSet(String),

    #[error("degenerate-matrix: every off-diagonal entry is zero")]
    DegenerateMatrix,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },

    #[error("total-conflict")]
    TotalConflict { one_minus_k: f64 },

    #[error("{source} at combination step {step}")]
    CombinationStep { step: usize, source: Box<Error> },

    #[error("nothing to normalize: every value is zero")]
    ZeroMass,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn describe(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
