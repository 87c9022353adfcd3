//! Evidence-file format.
//!
//! ```json
//! {
//!   "frame": ["C", "F", "S"],
//!   "evidences": [
//!     {"id": "E1", "assignments": [
//!       {"set": ["C"], "amplitude": 0.7416, "phase": 0.4882},
//!       {"set": ["C", "S"], "amplitude": 0.3162, "phase": 0.1988}
//!     ]}
//!   ]
//! }
//! ```
//!
//! Assignment order is the ordinal rank. Phases are radians. An optional
//! top-level `mass_tolerance` overrides [`DEFAULT_MASS_TOLERANCE`].

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evidence::{
    Assignment, EvidenceSet, Frame, OrdinalEvidence, QuantumMass, DEFAULT_MASS_TOLERANCE,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvidenceDocument {
    pub frame: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mass_tolerance: Option<f64>,
    pub evidences: Vec<EvidenceEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvidenceEntry {
    pub id: String,
    pub assignments: Vec<AssignmentEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssignmentEntry {
    pub set: Vec<String>,
    pub amplitude: f64,
    pub phase: f64,
}

impl EvidenceDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes") + "\n"
    }

    pub fn tolerance(&self) -> f64 {
        self.mass_tolerance.unwrap_or(DEFAULT_MASS_TOLERANCE)
    }

    /// Validates the document into an [`EvidenceSet`] at the document's own
    /// tolerance.
    pub fn into_evidence_set(self) -> Result<EvidenceSet> {
        let tol = self.tolerance();
        self.into_evidence_set_with(tol)
    }

    pub fn into_evidence_set_with(self, tol: f64) -> Result<EvidenceSet> {
        let frame = Arc::new(Frame::new(self.frame)?);
        let mut evidences = Vec::with_capacity(self.evidences.len());
        for entry in self.evidences {
            let mut seen = HashSet::new();
            let mut assignments = Vec::with_capacity(entry.assignments.len());
            for a in entry.assignments {
                let set = frame.focal_set(&a.set).map_err(|e| match e {
                    Error::UnknownHypothesis { label, .. } => Error::UnknownHypothesis {
                        evidence: entry.id.clone(),
                        label,
                    },
                    Error::InvalidArgument(msg) => {
                        Error::Malformed(format!("evidence `{}`: {msg}", entry.id))
                    }
                    other => other,
                })?;
                if !seen.insert(set.clone()) {
                    return Err(Error::DuplicateFocalSet {
                        evidence: entry.id,
                        set: set.to_string(),
                    });
                }
                assignments.push(Assignment::new(set, QuantumMass::new(a.amplitude, a.phase)));
            }
            evidences.push(OrdinalEvidence::new(entry.id, frame.clone(), assignments, tol)?);
        }
        EvidenceSet::new(frame, evidences, tol)
    }

    pub fn from_evidence_set(es: &EvidenceSet, mass_tolerance: Option<f64>) -> Self {
        Self {
            frame: es
                .frame()
                .hypotheses()
                .iter()
                .map(|h| h.label().to_string())
                .collect(),
            mass_tolerance,
            evidences: es
                .evidences()
                .iter()
                .map(|ev| EvidenceEntry {
                    id: ev.id().to_string(),
                    assignments: ev
                        .assignments()
                        .iter()
                        .map(|a| AssignmentEntry {
                            set: a.set.labels().map(str::to_string).collect(),
                            amplitude: a.mass.amplitude,
                            phase: a.mass.phase,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Parses and validates an evidence file.
pub fn parse_evidence_set(text: &str) -> Result<EvidenceSet> {
    EvidenceDocument::from_json(text)?.into_evidence_set()
}

pub fn to_json(es: &EvidenceSet) -> String {
    EvidenceDocument::from_evidence_set(es, None).to_json()
}
