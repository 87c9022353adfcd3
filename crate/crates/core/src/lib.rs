//! Quantum basic probability assignments (QBPAs) with ordinal information:
//! evidence model, pairwise measures, ordinal reweighting and the complex
//! combination rule, plus an end-to-end fusion pipeline.
//!
//! ```
//! use qbpa::{parse_evidence_set, run_pipeline, PipelineOptions};
//!
//! let es = parse_evidence_set(r#"{
//!   "frame": ["A", "B"],
//!   "evidences": [
//!     {"id": "e1", "assignments": [
//!       {"set": ["A"], "amplitude": 0.8944, "phase": 0.3},
//!       {"set": ["B"], "amplitude": 0.4472, "phase": 0.1}]},
//!     {"id": "e2", "assignments": [
//!       {"set": ["A"], "amplitude": 0.7746, "phase": 0.2},
//!       {"set": ["A", "B"], "amplitude": 0.6325, "phase": 0.5}]}
//!   ]
//! }"#).unwrap();
//! let report = run_pipeline(&es, &PipelineOptions::default()).unwrap();
//! let (top, _) = report.proposed.classic.top().unwrap();
//! assert_eq!(top.to_string(), "{A}");
//! ```

pub mod document;
pub mod error;
pub mod evidence;
pub mod fusion;
pub mod measures;
pub mod ordinal;
pub mod parallel;
pub mod pipeline;
pub mod report;
pub mod sample;

pub use document::{parse_evidence_set, EvidenceDocument};
pub use error::{Error, Result};
pub use evidence::{
    Assignment, ClassicBpa, EvidenceSet, FocalSet, Frame, Hypothesis, OrdinalEvidence,
    QuantumMass, Violation, ViolationRule,
};
pub use fusion::{
    classical_dempster, evidence_weights, fold_combine, fuse_n_fold, quantum_combine,
    weighted_average, ConflictRecord, WeightVector,
};
pub use measures::{
    DistanceSemantics, DivergenceInput, LogBase, MatrixKind, MeasureStrategy, PairwiseMatrix,
};
pub use ordinal::{ordinal_reweight, ordinal_weights, OrdinalWeightVector};
pub use parallel::Execution;
pub use pipeline::{run_pipeline, FusionReport, PipelineError, PipelineOptions, Stage};
