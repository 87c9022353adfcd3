//! Data model for quantum basic probability assignments (QBPAs) over an
//! ordinal frame of discernment.
//!
//! A quantum mass is the complex value `σ·e^{jα}`. The belief it carries is
//! `σ²`, and beliefs of one evidence sum to one. Within an [`OrdinalEvidence`]
//! the position of an assignment is its ordinal rank: the first assignment is
//! rank 0 and dominates every later one.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance on `|Σ belief − 1|`.
pub const DEFAULT_MASS_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Hypothesis(String);

impl Hypothesis {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if label.trim().is_empty() {
            return Err(Error::InvalidFrame("hypothesis label is empty".into()));
        }
        Ok(Self(label))
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The frame of discernment. Hypothesis order is presentational only, so two
/// frames compare equal when they hold the same labels.
#[derive(Debug, Clone, Eq)]
pub struct Frame {
    hypotheses: Vec<Hypothesis>,
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let hypotheses = labels
            .into_iter()
            .map(Hypothesis::new)
            .collect::<Result<Vec<_>>>()?;
        if hypotheses.len() < 2 {
            return Err(Error::InvalidFrame(format!(
                "a frame needs at least 2 hypotheses, found {}",
                hypotheses.len()
            )));
        }
        let mut seen = HashSet::new();
        for h in &hypotheses {
            if !seen.insert(h) {
                return Err(Error::InvalidFrame(format!("duplicate hypothesis `{h}`")));
            }
        }
        Ok(Self { hypotheses })
    }

    pub fn hypotheses(&self) -> &[Hypothesis] {
        &self.hypotheses
    }

    pub fn len(&self) -> usize {
        self.hypotheses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hypotheses.is_empty()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.hypotheses.iter().any(|h| h.label() == label)
    }

    /// Builds a focal set, rejecting labels outside the frame.
    pub fn focal_set<I, S>(&self, labels: I) -> Result<FocalSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut members = Vec::new();
        for label in labels {
            let label = label.as_ref();
            if !self.contains(label) {
                return Err(Error::UnknownHypothesis {
                    evidence: String::new(),
                    label: label.to_string(),
                });
            }
            members.push(Hypothesis(label.to_string()));
        }
        FocalSet::from_hypotheses(members)
    }

    /// The whole frame as a focal set (the vacuous proposition).
    pub fn universe(&self) -> FocalSet {
        FocalSet::from_hypotheses(self.hypotheses.clone()).expect("frame is nonempty")
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        let a: BTreeSet<_> = self.hypotheses.iter().collect();
        let b: BTreeSet<_> = other.hypotheses.iter().collect();
        a == b
    }
}

/// A nonempty subset of the frame.
///
/// Members are kept sorted, so the derived ordering is lexicographic over the
/// sorted member labels with shorter prefixes first. That is the canonical
/// ordering used for every aligned vector and report column.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FocalSet(Vec<Hypothesis>);

impl FocalSet {
    fn from_hypotheses(mut members: Vec<Hypothesis>) -> Result<Self> {
        members.sort();
        members.dedup();
        if members.is_empty() {
            return Err(Error::InvalidArgument("a focal set must be nonempty".into()));
        }
        Ok(Self(members))
    }

    /// Builds a focal set from labels without checking frame membership.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let members = labels
            .into_iter()
            .map(Hypothesis::new)
            .collect::<Result<Vec<_>>>()?;
        Self::from_hypotheses(members)
    }

    pub fn members(&self) -> &[Hypothesis] {
        &self.0
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|h| h.label())
    }

    pub fn cardinality(&self) -> usize {
        self.0.len()
    }

    /// Set intersection; `None` for the empty set.
    pub fn intersect(&self, other: &FocalSet) -> Option<FocalSet> {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        (!out.is_empty()).then_some(FocalSet(out))
    }

    pub fn is_subset_of(&self, frame: &Frame) -> bool {
        self.0.iter().all(|h| frame.contains(h.label()))
    }
}

impl fmt::Display for FocalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, h) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(h.label())?;
        }
        f.write_str("}")
    }
}

impl Serialize for FocalSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Complex mass `σ·e^{jα}` of one focal element.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantumMass {
    pub amplitude: f64,
    /// Radians.
    pub phase: f64,
}

impl QuantumMass {
    pub const ZERO: QuantumMass = QuantumMass {
        amplitude: 0.0,
        phase: 0.0,
    };

    pub fn new(amplitude: f64, phase: f64) -> Self {
        Self { amplitude, phase }
    }

    /// Mass carrying `belief` with the given phase; amplitude is `√belief`.
    pub fn from_belief(belief: f64, phase: f64) -> Self {
        Self {
            amplitude: belief.max(0.0).sqrt(),
            phase,
        }
    }

    /// The degree of belief `σ²`.
    pub fn belief(&self) -> f64 {
        self.amplitude * self.amplitude
    }

    pub fn real(&self) -> f64 {
        self.amplitude * self.phase.cos()
    }

    pub fn imag(&self) -> f64 {
        self.amplitude * self.phase.sin()
    }

    /// Real and imaginary parts mirrored into the first quadrant.
    pub fn components(&self) -> (f64, f64) {
        (self.real().abs(), self.imag().abs())
    }

    /// `σ·e^{jα}`.
    pub fn amplitude_value(&self) -> Complex64 {
        Complex64::from_polar(self.amplitude, self.phase)
    }

    /// `σ²·e^{jα}`: the value multiplied by the combination rule. Its modulus
    /// is the belief, so with zero phase it is the classic mass.
    pub fn mass_value(&self) -> Complex64 {
        Complex64::from_polar(self.belief(), self.phase)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub set: FocalSet,
    pub mass: QuantumMass,
}

impl Assignment {
    pub fn new(set: FocalSet, mass: QuantumMass) -> Self {
        Self { set, mass }
    }
}

impl Serialize for Assignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Assignment", 4)?;
        st.serialize_field("set", &self.set)?;
        st.serialize_field("amplitude", &self.mass.amplitude)?;
        st.serialize_field("phase", &self.mass.phase)?;
        st.serialize_field("belief", &self.mass.belief())?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationRule {
    NoAssignments,
    AmplitudeOutOfRange,
    NonFinitePhase,
    NonFiniteAmplitude,
    DuplicateFocalSet,
    ForeignHypothesis,
    MassSum,
}

impl ViolationRule {
    pub fn describe(self) -> &'static str {
        match self {
            Self::NoAssignments => "no assignments",
            Self::AmplitudeOutOfRange => "amplitude out of range",
            Self::NonFinitePhase => "phase is not finite",
            Self::NonFiniteAmplitude => "amplitude is not finite",
            Self::DuplicateFocalSet => "duplicate focal set",
            Self::ForeignHypothesis => "focal set outside the frame",
            Self::MassSum => "belief sum differs from 1",
        }
    }
}

/// One broken invariant, with the offending value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub rule: ViolationRule,
    pub subject: String,
    pub value: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rule.describe())?;
        if !self.subject.is_empty() {
            write!(f, " at {}", self.subject)?;
        }
        write!(f, " (value {})", self.value)
    }
}

/// One QBPA. Assignment order is significant: position `n` is ordinal rank `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrdinalEvidence {
    id: String,
    frame: Arc<Frame>,
    assignments: Vec<Assignment>,
}

impl OrdinalEvidence {
    /// Builds an evidence and rejects it if [`validate_evidence`] reports
    /// anything at tolerance `tol`.
    pub fn new(
        id: impl Into<String>,
        frame: Arc<Frame>,
        assignments: Vec<Assignment>,
        tol: f64,
    ) -> Result<Self> {
        let ev = Self::from_parts(id, frame, assignments);
        let violations = validate_evidence(&ev, tol);
        if violations.is_empty() {
            Ok(ev)
        } else {
            Err(Error::InvalidEvidence {
                evidence: ev.id,
                violations,
            })
        }
    }

    /// Builds an evidence without validation.
    pub fn from_parts(
        id: impl Into<String>,
        frame: Arc<Frame>,
        assignments: Vec<Assignment>,
    ) -> Self {
        Self {
            id: id.into(),
            frame,
            assignments,
        }
    }

    /// Convenience constructor from `(labels, amplitude, phase)` rows.
    pub fn from_rows<'a, I>(id: &str, frame: Arc<Frame>, rows: I, tol: f64) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a [&'a str], f64, f64)>,
    {
        let assignments = rows
            .into_iter()
            .map(|(labels, amplitude, phase)| {
                let set = frame.focal_set(labels.iter().copied()).map_err(|e| match e {
                    Error::UnknownHypothesis { label, .. } => Error::UnknownHypothesis {
                        evidence: id.to_string(),
                        label,
                    },
                    other => other,
                })?;
                Ok(Assignment::new(set, QuantumMass::new(amplitude, phase)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(id, frame, assignments, tol)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn assignments(&self) -> &[Assignment] {
        &self.assignments
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    /// Mass of `set`, or [`QuantumMass::ZERO`] when the evidence does not
    /// mention it.
    pub fn mass_of(&self, set: &FocalSet) -> QuantumMass {
        self.assignments
            .iter()
            .find(|a| &a.set == set)
            .map_or(QuantumMass::ZERO, |a| a.mass)
    }

    pub fn rank_of(&self, set: &FocalSet) -> Option<usize> {
        self.assignments.iter().position(|a| &a.set == set)
    }

    pub fn belief_sum(&self) -> f64 {
        self.assignments.iter().map(|a| a.mass.belief()).sum()
    }

    pub fn focal_sets(&self) -> impl Iterator<Item = &FocalSet> {
        self.assignments.iter().map(|a| &a.set)
    }

    /// Drops phases and keeps beliefs.
    pub fn to_classic(&self) -> ClassicBpa {
        ClassicBpa(
            self.assignments
                .iter()
                .map(|a| (a.set.clone(), a.mass.belief()))
                .collect(),
        )
    }

    /// Beliefs aligned to `canon`; sets absent from this evidence give 0.
    pub fn belief_vector(&self, canon: &[FocalSet]) -> Result<Vec<f64>> {
        if let Some(missing) = self.focal_sets().find(|s| !canon.contains(s)) {
            return Err(Error::MissingFocalSet(missing.to_string()));
        }
        Ok(canon.iter().map(|s| self.mass_of(s).belief()).collect())
    }

    pub fn ensure_same_frame(&self, other: &OrdinalEvidence) -> Result<()> {
        if Arc::ptr_eq(&self.frame, &other.frame) || self.frame == other.frame {
            Ok(())
        } else {
            Err(Error::FrameMismatch {
                left: self.id.clone(),
                right: other.id.clone(),
            })
        }
    }
}

impl Serialize for OrdinalEvidence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("OrdinalEvidence", 2)?;
        st.serialize_field("id", &self.id)?;
        st.serialize_field("assignments", &self.assignments)?;
        st.end()
    }
}

/// Lists every rule `ev` breaks at mass tolerance `tol`. An empty list means
/// the evidence is a valid QBPA.
pub fn validate_evidence(ev: &OrdinalEvidence, tol: f64) -> Vec<Violation> {
    let mut out = Vec::new();
    if ev.assignments.is_empty() {
        out.push(Violation {
            rule: ViolationRule::NoAssignments,
            subject: String::new(),
            value: 0.0,
        });
        return out;
    }
    let mut seen = HashSet::new();
    for a in &ev.assignments {
        let subject = a.set.to_string();
        let QuantumMass { amplitude, phase } = a.mass;
        if !amplitude.is_finite() {
            out.push(Violation {
                rule: ViolationRule::NonFiniteAmplitude,
                subject: subject.clone(),
                value: amplitude,
            });
        } else if !(0.0..=1.0).contains(&amplitude) {
            out.push(Violation {
                rule: ViolationRule::AmplitudeOutOfRange,
                subject: subject.clone(),
                value: amplitude,
            });
        }
        if !phase.is_finite() {
            out.push(Violation {
                rule: ViolationRule::NonFinitePhase,
                subject: subject.clone(),
                value: phase,
            });
        }
        if !a.set.is_subset_of(&ev.frame) {
            out.push(Violation {
                rule: ViolationRule::ForeignHypothesis,
                subject: subject.clone(),
                value: 0.0,
            });
        }
        if !seen.insert(&a.set) {
            out.push(Violation {
                rule: ViolationRule::DuplicateFocalSet,
                subject,
                value: 0.0,
            });
        }
    }
    let sum = ev.belief_sum();
    if !((sum - 1.0).abs() <= tol) {
        out.push(Violation {
            rule: ViolationRule::MassSum,
            subject: String::new(),
            value: sum,
        });
    }
    out
}

/// Union of the focal sets of `evidences`, in canonical order.
pub fn canonical_focal_sets<'a, I>(evidences: I) -> Vec<FocalSet>
where
    I: IntoIterator<Item = &'a OrdinalEvidence>,
{
    evidences
        .into_iter()
        .flat_map(|e| e.focal_sets().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// A classic (real-valued) basic probability assignment.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ClassicBpa(pub BTreeMap<FocalSet, f64>);

impl ClassicBpa {
    pub fn get(&self, set: &FocalSet) -> f64 {
        self.0.get(set).copied().unwrap_or(0.0)
    }

    pub fn sum(&self) -> f64 {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FocalSet, f64)> {
        self.0.iter().map(|(k, v)| (k, *v))
    }

    /// Focal sets by decreasing mass; ties keep canonical order.
    pub fn ranking(&self) -> Vec<(FocalSet, f64)> {
        let mut v: Vec<_> = self.0.iter().map(|(k, v)| (k.clone(), *v)).collect();
        v.sort_by(|a, b| b.1.total_cmp(&a.1));
        v
    }

    pub fn top(&self) -> Option<(FocalSet, f64)> {
        self.ranking().into_iter().next()
    }
}

impl FromIterator<(FocalSet, f64)> for ClassicBpa {
    fn from_iter<T: IntoIterator<Item = (FocalSet, f64)>>(iter: T) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// A shared frame plus at least two ordinal evidences with unique ids.
#[derive(Debug, Clone, PartialEq)]
pub struct EvidenceSet {
    frame: Arc<Frame>,
    evidences: Vec<OrdinalEvidence>,
}

impl EvidenceSet {
    pub fn new(frame: Arc<Frame>, evidences: Vec<OrdinalEvidence>, tol: f64) -> Result<Self> {
        if evidences.len() < 2 {
            return Err(Error::TooFewEvidences(evidences.len()));
        }
        let mut ids = HashSet::new();
        for ev in &evidences {
            if !ids.insert(ev.id()) {
                return Err(Error::DuplicateEvidenceId(ev.id().to_string()));
            }
            if **ev.frame() != *frame {
                return Err(Error::FrameMismatch {
                    left: evidences[0].id().to_string(),
                    right: ev.id().to_string(),
                });
            }
            let violations = validate_evidence(ev, tol);
            if !violations.is_empty() {
                return Err(Error::InvalidEvidence {
                    evidence: ev.id().to_string(),
                    violations,
                });
            }
        }
        Ok(Self { frame, evidences })
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn evidences(&self) -> &[OrdinalEvidence] {
        &self.evidences
    }

    pub fn len(&self) -> usize {
        self.evidences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.evidences.is_empty()
    }

    pub fn ids(&self) -> Vec<String> {
        self.evidences.iter().map(|e| e.id().to_string()).collect()
    }

    pub fn canonical_focal_sets(&self) -> Vec<FocalSet> {
        canonical_focal_sets(&self.evidences)
    }
}
