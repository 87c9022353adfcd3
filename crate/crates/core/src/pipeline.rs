//! End-to-end fusion of an [`EvidenceSet`].
//!
//! Stages, in order: end-to-end distance matrix, fuzzy-divergence matrix,
//! Sim1, Sim2, combined similarity, credibility weights, ordinal
//! reweighting of every evidence, weighted average, `copies`-fold
//! self-combination of the average. The baseline folds the raw evidences
//! through the combination rule in input order.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::error::Error;
use crate::evidence::{ClassicBpa, EvidenceSet, FocalSet, OrdinalEvidence};
use crate::fusion::{
    evidence_weights, fold_combine, fuse_n_fold, weighted_average, ConflictRecord, WeightVector,
};
use crate::measures::{
    combined_similarity, distance_matrix, divergence_matrix, normalize_pairwise, sim1_matrix,
    sim2_matrix, MeasureStrategy, PairwiseMatrix,
};
use crate::ordinal::ordinal_reweight;
use crate::parallel::Execution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    DistanceMatrix,
    DivergenceMatrix,
    Sim1,
    Sim2,
    CombinedSimilarity,
    Weights,
    OrdinalReweight,
    WeightedAverage,
    Combination,
    Baseline,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::DistanceMatrix => "distance-matrix",
            Stage::DivergenceMatrix => "divergence-matrix",
            Stage::Sim1 => "sim1",
            Stage::Sim2 => "sim2",
            Stage::CombinedSimilarity => "combined-similarity",
            Stage::Weights => "weights",
            Stage::OrdinalReweight => "ordinal-reweight",
            Stage::WeightedAverage => "weighted-average",
            Stage::Combination => "combination",
            Stage::Baseline => "baseline",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{stage}: {source}")]
pub struct PipelineError {
    pub stage: Stage,
    pub source: Error,
}

trait AtStage<T> {
    fn at(self, stage: Stage) -> Result<T, PipelineError>;
}

impl<T> AtStage<T> for Result<T, Error> {
    fn at(self, stage: Stage) -> Result<T, PipelineError> {
        self.map_err(|source| PipelineError { stage, source })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PipelineOptions {
    pub strategy: MeasureStrategy,
    /// Copies of the weighted average fed to the self-combination; `None`
    /// means one per input evidence.
    pub copies: Option<usize>,
    pub execution: Execution,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            strategy: MeasureStrategy::default(),
            copies: None,
            execution: Execution::default(),
        }
    }
}

/// A combined evidence together with its classic projection and the
/// conflict of every combination step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CombinedResult {
    pub quantum: OrdinalEvidence,
    pub classic: ClassicBpa,
    pub conflicts: Vec<ConflictRecord>,
}

impl CombinedResult {
    fn new(quantum: OrdinalEvidence, conflicts: Vec<ConflictRecord>) -> Self {
        Self {
            classic: quantum.to_classic(),
            quantum,
            conflicts,
        }
    }
}

/// Everything one pipeline run produced. Matrices are normalized; a matrix
/// is `None` when normalization was degenerate (see `notes`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FusionReport {
    pub evidence_ids: Vec<String>,
    pub focal_sets: Vec<FocalSet>,
    pub strategy: MeasureStrategy,
    pub copies: usize,
    pub d_xp: Option<PairwiseMatrix>,
    pub d_wb: Option<PairwiseMatrix>,
    pub sim1: Option<PairwiseMatrix>,
    pub sim2: Option<PairwiseMatrix>,
    pub sim: Option<PairwiseMatrix>,
    pub weights: WeightVector,
    pub modified: Vec<OrdinalEvidence>,
    pub averaged: OrdinalEvidence,
    pub proposed: CombinedResult,
    pub baseline: CombinedResult,
    pub notes: Vec<String>,
}

fn normalized(
    raw: &PairwiseMatrix,
    name: &str,
    stage: Stage,
    notes: &mut Vec<String>,
) -> Result<Option<PairwiseMatrix>, PipelineError> {
    match normalize_pairwise(raw) {
        Ok(m) => Ok(Some(m)),
        Err(Error::DegenerateMatrix) => {
            notes.push(format!(
                "{name}: every off-diagonal entry is zero; weights fall back to uniform"
            ));
            Ok(None)
        }
        Err(e) => Err(e).at(stage),
    }
}

pub fn run_pipeline(es: &EvidenceSet, opts: &PipelineOptions) -> Result<FusionReport, PipelineError> {
    let evs = es.evidences();
    let n = evs.len();
    let s = opts.strategy;
    let exec = opts.execution;
    let copies = opts.copies.unwrap_or(n);
    let mut notes = Vec::new();

    let raw_dxp = distance_matrix(evs, s.distance, exec).at(Stage::DistanceMatrix)?;
    let raw_dwb =
        divergence_matrix(evs, s.divergence_input, s.log_base, exec).at(Stage::DivergenceMatrix)?;
    let raw_sim1 = sim1_matrix(evs, exec).at(Stage::Sim1)?;

    let d_xp = normalized(&raw_dxp, "d_XP", Stage::DistanceMatrix, &mut notes)?;
    let d_wb = normalized(&raw_dwb, "d_WB", Stage::DivergenceMatrix, &mut notes)?;
    let sim1 = normalized(&raw_sim1, "Sim1", Stage::Sim1, &mut notes)?;
    let sim2 = match (&d_xp, &d_wb) {
        (Some(x), Some(w)) => match sim2_matrix(x, w) {
            Ok(m) => Some(m),
            Err(Error::DegenerateMatrix) => {
                notes.push(
                    "Sim2: every off-diagonal entry is zero; weights fall back to uniform".into(),
                );
                None
            }
            Err(e) => return Err(e).at(Stage::Sim2),
        },
        _ => None,
    };
    let sim = match (&sim1, &sim2) {
        (Some(a), Some(b)) => Some(combined_similarity(a, b).at(Stage::CombinedSimilarity)?),
        _ => None,
    };
    let weights = match &sim {
        Some(m) => evidence_weights(m).at(Stage::Weights)?,
        None => WeightVector::uniform(n),
    };

    let modified = evs
        .iter()
        .map(ordinal_reweight)
        .collect::<Result<Vec<_>, _>>()
        .at(Stage::OrdinalReweight)?;
    let averaged = weighted_average(&modified, &weights).at(Stage::WeightedAverage)?;
    let (fused, conflicts) = fuse_n_fold(&averaged, copies).at(Stage::Combination)?;
    let (base, base_conflicts) = fold_combine(evs).at(Stage::Baseline)?;

    notes.push(format!(
        "proposed result: the weighted average combined with itself, {copies} copies ({} combination steps)",
        copies.saturating_sub(1)
    ));
    notes.push(
        "weighted average: beliefs are weight-averaged then renormalized; each phase is the argument of the weighted sum of σ·e^{jα}"
            .into(),
    );
    notes.push(format!(
        "baseline: raw evidences combined pairwise in input order ({} combination steps)",
        n - 1
    ));

    Ok(FusionReport {
        evidence_ids: es.ids(),
        focal_sets: es.canonical_focal_sets(),
        strategy: s,
        copies,
        d_xp,
        d_wb,
        sim1,
        sim2,
        sim,
        weights,
        modified,
        averaged,
        proposed: CombinedResult::new(fused.with_id("proposed"), conflicts),
        baseline: CombinedResult::new(base.with_id("baseline"), base_conflicts),
        notes,
    })
}
