//! Ordinal modification: scale each proposition's belief by a weight that
//! decreases with its rank inside the evidence, then renormalize.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evidence::{Assignment, OrdinalEvidence, QuantumMass};

/// Rank weights of one evidence: position `n` of `m` gets `m − n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrdinalWeightVector {
    weights: Vec<f64>,
}

impl OrdinalWeightVector {
    pub fn for_len(m: usize) -> Self {
        Self {
            weights: (0..m).map(|n| (m - n) as f64).collect(),
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

pub fn ordinal_weights(ev: &OrdinalEvidence) -> OrdinalWeightVector {
    OrdinalWeightVector::for_len(ev.len())
}

/// Beliefs become `belief·(m − n)` renormalized to sum to one. Phases and
/// assignment order are kept; amplitudes are `√belief`.
pub fn ordinal_reweight(ev: &OrdinalEvidence) -> Result<OrdinalEvidence> {
    let weights = ordinal_weights(ev);
    let scaled: Vec<f64> = ev
        .assignments()
        .iter()
        .zip(weights.weights())
        .map(|(a, w)| a.mass.belief() * w)
        .collect();
    let total: f64 = scaled.iter().sum();
    if !(total > 0.0) {
        return Err(Error::ZeroMass);
    }
    let assignments = ev
        .assignments()
        .iter()
        .zip(scaled)
        .map(|(a, v)| Assignment::new(a.set.clone(), QuantumMass::from_belief(v / total, a.mass.phase)))
        .collect();
    Ok(OrdinalEvidence::from_parts(
        ev.id(),
        ev.frame().clone(),
        assignments,
    ))
}
