//! Quantum combination rule, its classical Dempster counterpart, credibility
//! weights and the weighted average of ordinal-modified evidences.
//!
//! The combination rule multiplies mass values `σ²·e^{jα}` (see
//! [`QuantumMass::mass_value`]): the modulus of a combined value is a belief
//! and the phases add. With every phase at zero the rule is exactly Dempster's
//! rule on beliefs.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::evidence::{
    canonical_focal_sets, Assignment, ClassicBpa, FocalSet, Frame, OrdinalEvidence, QuantumMass,
};
use crate::measures::PairwiseMatrix;

/// `|1 − K|` at or below this is total conflict.
pub const EPS_CONFLICT: f64 = 1e-9;

/// Tolerance on `Σ weights − 1`.
pub const WEIGHT_SUM_TOL: f64 = 1e-9;

/// Nonnegative per-evidence weights summing to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
            return Err(Error::InvalidArgument(
                "weights must be finite and nonnegative".into(),
            ));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidArgument(format!(
                "weights sum to {sum}, expected 1"
            )));
        }
        Ok(Self(weights))
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Conflict coefficient `K` of one combination step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConflictRecord {
    pub k: Complex64,
    pub magnitude: f64,
}

impl ConflictRecord {
    fn new(k: Complex64) -> Self {
        Self {
            k,
            magnitude: k.norm(),
        }
    }
}

/// A combined focal value before normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct RawAssignment {
    pub set: FocalSet,
    pub belief: f64,
    pub phase: f64,
}

/// Rescales beliefs to sum to one, keeping phases. Output amplitudes are
/// `√belief`.
pub fn quantum_normalize(
    id: impl Into<String>,
    frame: Arc<Frame>,
    raw: Vec<RawAssignment>,
) -> Result<OrdinalEvidence> {
    let total: f64 = raw.iter().map(|r| r.belief).sum();
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::ZeroMass);
    }
    let assignments = raw
        .into_iter()
        .map(|r| Assignment::new(r.set, QuantumMass::from_belief(r.belief / total, r.phase)))
        .collect();
    Ok(OrdinalEvidence::from_parts(id, frame, assignments))
}

/// Combines two QBPAs. The result lists focal sets in canonical order.
pub fn quantum_combine(
    a: &OrdinalEvidence,
    b: &OrdinalEvidence,
) -> Result<(OrdinalEvidence, ConflictRecord)> {
    a.ensure_same_frame(b)?;
    let mut acc: BTreeMap<FocalSet, Complex64> = BTreeMap::new();
    let mut k = Complex64::new(0.0, 0.0);
    for x in a.assignments() {
        for y in b.assignments() {
            let product = x.mass.mass_value() * y.mass.mass_value();
            match x.set.intersect(&y.set) {
                Some(set) => *acc.entry(set).or_default() += product,
                None => k += product,
            }
        }
    }
    let one_minus_k = Complex64::new(1.0, 0.0) - k;
    // with nonzero phases |1 − K| can stay large even when nothing survives
    let nothing_survives = acc.values().all(|v| v.norm() == 0.0);
    if one_minus_k.norm() <= EPS_CONFLICT || nothing_survives {
        return Err(Error::TotalConflict {
            one_minus_k: one_minus_k.norm(),
        });
    }
    let raw = acc
        .into_iter()
        .map(|(set, v)| {
            let v = v / one_minus_k;
            RawAssignment {
                set,
                belief: v.norm(),
                phase: if v.norm() > 0.0 { v.arg() } else { 0.0 },
            }
        })
        .collect();
    let combined = quantum_normalize(format!("{}+{}", a.id(), b.id()), a.frame().clone(), raw)?;
    Ok((combined, ConflictRecord::new(k)))
}

/// Dempster's rule on real masses.
pub fn classical_dempster(a: &ClassicBpa, b: &ClassicBpa) -> Result<ClassicBpa> {
    let mut acc: BTreeMap<FocalSet, f64> = BTreeMap::new();
    let mut k = 0.0;
    for (x, mx) in a.iter() {
        for (y, my) in b.iter() {
            match x.intersect(y) {
                Some(set) => *acc.entry(set).or_default() += mx * my,
                None => k += mx * my,
            }
        }
    }
    if (1.0 - k).abs() <= EPS_CONFLICT {
        return Err(Error::TotalConflict {
            one_minus_k: (1.0 - k).abs(),
        });
    }
    Ok(acc.into_iter().map(|(s, m)| (s, m / (1.0 - k))).collect())
}

/// Credibility weights: each evidence's off-diagonal row sum of `SIM`,
/// normalized over all evidences.
pub fn evidence_weights(sim: &PairwiseMatrix) -> Result<WeightVector> {
    let n = sim.n();
    let support: Vec<f64> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i).map(|j| sim.get(i, j)).sum())
        .collect();
    let total: f64 = support.iter().sum();
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::DegenerateMatrix);
    }
    Ok(WeightVector(support.into_iter().map(|s| s / total).collect()))
}

/// Weighted average of ordinal-modified evidences. Beliefs are averaged and
/// renormalized; each focal set's phase is the argument of the weighted sum
/// of its complex values `σ·e^{jα}`.
pub fn weighted_average(mods: &[OrdinalEvidence], w: &WeightVector) -> Result<OrdinalEvidence> {
    if mods.len() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: mods.len(),
            found: w.len(),
        });
    }
    let first = mods.first().ok_or(Error::ZeroMass)?;
    for ev in &mods[1..] {
        first.ensure_same_frame(ev)?;
    }
    let raw = canonical_focal_sets(mods)
        .into_iter()
        .map(|set| {
            let mut belief = 0.0;
            let mut z = Complex64::new(0.0, 0.0);
            for (ev, wi) in mods.iter().zip(w.as_slice()) {
                let m = ev.mass_of(&set);
                belief += wi * m.belief();
                z += m.amplitude_value() * *wi;
            }
            RawAssignment {
                set,
                belief,
                phase: if z.norm() > 0.0 { z.arg() } else { 0.0 },
            }
        })
        .collect();
    quantum_normalize("weighted-average", first.frame().clone(), raw)
}

/// Left fold of [`quantum_combine`] over `evidences`, with one conflict
/// record per step. Errors name the 1-based step that failed.
pub fn fold_combine(evidences: &[OrdinalEvidence]) -> Result<(OrdinalEvidence, Vec<ConflictRecord>)> {
    let (first, rest) = evidences
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("nothing to combine".into()))?;
    let mut acc = first.clone();
    let mut conflicts = Vec::with_capacity(rest.len());
    for (i, ev) in rest.iter().enumerate() {
        let (next, k) = quantum_combine(&acc, ev).map_err(|e| Error::CombinationStep {
            step: i + 1,
            source: Box::new(e),
        })?;
        acc = next;
        conflicts.push(k);
    }
    Ok((acc, conflicts))
}

/// Combines `copies` copies of `ev` (`copies − 1` steps).
pub fn fuse_n_fold(ev: &OrdinalEvidence, copies: usize) -> Result<(OrdinalEvidence, Vec<ConflictRecord>)> {
    if copies == 0 {
        return Err(Error::InvalidArgument("copies must be at least 1".into()));
    }
    let mut acc = ev.clone();
    let mut conflicts = Vec::with_capacity(copies - 1);
    for step in 1..copies {
        let (next, k) = quantum_combine(&acc, ev).map_err(|e| Error::CombinationStep {
            step,
            source: Box::new(e),
        })?;
        acc = next;
        conflicts.push(k);
    }
    Ok((acc, conflicts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evidence::validate_evidence;
    use crate::measures::MatrixKind;

    fn frame() -> Arc<Frame> {
        Arc::new(Frame::new(["A", "B", "X", "Y"]).unwrap())
    }

    fn ev(f: &Arc<Frame>, id: &str, rows: &[(&[&str], f64, f64)]) -> OrdinalEvidence {
        let assignments = rows
            .iter()
            .map(|(l, b, p)| {
                Assignment::new(
                    f.focal_set(l.iter().copied()).unwrap(),
                    QuantumMass::from_belief(*b, *p),
                )
            })
            .collect();
        OrdinalEvidence::from_parts(id, f.clone(), assignments)
    }

    fn belief(e: &OrdinalEvidence, f: &Arc<Frame>, labels: &[&str]) -> f64 {
        e.mass_of(&f.focal_set(labels.iter().copied()).unwrap()).belief()
    }

    #[test]
    fn certainty_combines_to_certainty() {
        let f = frame();
        let a = ev(&f, "a", &[(&["X"], 1.0, 0.0)]);
        let (c, k) = quantum_combine(&a, &a).unwrap();
        assert_eq!(belief(&c, &f, &["X"]), 1.0);
        assert_eq!(k.magnitude, 0.0);
    }

    #[test]
    fn disjoint_certainties_are_total_conflict() {
        let f = frame();
        let a = ev(&f, "a", &[(&["X"], 1.0, 0.0)]);
        let b = ev(&f, "b", &[(&["Y"], 1.0, 0.0)]);
        assert!(matches!(
            quantum_combine(&a, &b),
            Err(Error::TotalConflict { .. })
        ));
        let err = fold_combine(&[a.clone(), b]).unwrap_err();
        assert_eq!(err.to_string(), "total-conflict at combination step 1");

        // phased: |1 − K| = |1 − e^{0.9j}| is far from zero, yet nothing survives
        let a = ev(&f, "a", &[(&["X"], 1.0, 0.2)]);
        let b = ev(&f, "b", &[(&["Y"], 1.0, 0.7)]);
        match quantum_combine(&a, &b) {
            Err(Error::TotalConflict { one_minus_k }) => assert!(one_minus_k > 0.8),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_phase_matches_dempster() {
        let f = frame();
        let a = ev(&f, "a", &[(&["A"], 0.6, 0.0), (&["B"], 0.4, 0.0)]);
        let b = ev(&f, "b", &[(&["A"], 0.3, 0.0), (&["B"], 0.7, 0.0)]);
        let (q, k) = quantum_combine(&a, &b).unwrap();
        assert!((belief(&q, &f, &["A"]) - 0.18 / 0.46).abs() < 1e-12);
        assert!((belief(&q, &f, &["B"]) - 0.28 / 0.46).abs() < 1e-12);
        assert!((k.magnitude - 0.54).abs() < 1e-12);
        let d = classical_dempster(&a.to_classic(), &b.to_classic()).unwrap();
        assert!((d.get(&f.focal_set(["A"]).unwrap()) - 0.391_304_347_826_087).abs() < 1e-12);
        assert!((d.get(&f.focal_set(["B"]).unwrap()) - 0.608_695_652_173_913).abs() < 1e-12);
    }

    #[test]
    fn dempster_vacuous_and_commutative() {
        let f = frame();
        let m = ev(&f, "m", &[(&["A"], 0.5, 0.0), (&["A", "B"], 0.3, 0.0), (&["Y"], 0.2, 0.0)]);
        let vac = ev(&f, "v", &[(&["A", "B", "X", "Y"], 1.0, 0.0)]);
        let out = classical_dempster(&m.to_classic(), &vac.to_classic()).unwrap();
        for (s, v) in m.to_classic().iter() {
            assert!((out.get(s) - v).abs() < 1e-15);
        }
        let n = ev(&f, "n", &[(&["A", "B"], 0.6, 0.0), (&["Y"], 0.4, 0.0)]);
        let ab = classical_dempster(&m.to_classic(), &n.to_classic()).unwrap();
        let ba = classical_dempster(&n.to_classic(), &m.to_classic()).unwrap();
        assert_eq!(ab, ba);
        let certain_x = ev(&f, "x", &[(&["X"], 1.0, 0.0)]);
        let certain_y = ev(&f, "y", &[(&["Y"], 1.0, 0.0)]);
        assert!(classical_dempster(&certain_x.to_classic(), &certain_y.to_classic()).is_err());
    }

    #[test]
    fn normalize_examples() {
        let f = frame();
        let set = |l: &str| f.focal_set([l]).unwrap();
        let out = quantum_normalize(
            "n",
            f.clone(),
            vec![
                RawAssignment { set: set("A"), belief: 0.2, phase: 0.0 },
                RawAssignment { set: set("B"), belief: 0.2, phase: 0.0 },
            ],
        )
        .unwrap();
        assert!((belief(&out, &f, &["A"]) - 0.5).abs() < 1e-15);

        let out = quantum_normalize(
            "n",
            f.clone(),
            vec![
                RawAssignment { set: set("A"), belief: 0.09, phase: 0.3 },
                RawAssignment { set: set("B"), belief: 0.01, phase: 1.1 },
            ],
        )
        .unwrap();
        assert!((belief(&out, &f, &["A"]) - 0.9).abs() < 1e-12);
        assert!((belief(&out, &f, &["B"]) - 0.1).abs() < 1e-12);
        assert_eq!(out.assignments()[0].mass.phase, 0.3);
        assert_eq!(out.assignments()[1].mass.phase, 1.1);

        // idempotent on a normalized evidence
        let again = quantum_normalize(
            "n",
            f.clone(),
            out.assignments()
                .iter()
                .map(|a| RawAssignment { set: a.set.clone(), belief: a.mass.belief(), phase: a.mass.phase })
                .collect(),
        )
        .unwrap();
        for (x, y) in out.assignments().iter().zip(again.assignments()) {
            assert!((x.mass.belief() - y.mass.belief()).abs() < 1e-12);
        }

        assert_eq!(
            quantum_normalize("z", f.clone(), vec![RawAssignment { set: set("A"), belief: 0.0, phase: 0.0 }]),
            Err(Error::ZeroMass)
        );
    }

    #[test]
    fn weights_from_published_similarities() {
        // Sim1 + Sim2 of the medical-diagnosis case study
        let s1 = [0.221107846, 0.169240021, 0.149963075, 0.176609694, 0.142552885, 0.140526479];
        let s2 = [0.181458539, 0.176105299, 0.191831419, 0.190480753, 0.171415843, 0.088708148];
        let sum: Vec<f64> = s1.iter().zip(s2).map(|(a, b)| a + b).collect();
        let sim = PairwiseMatrix::from_upper(MatrixKind::Similarity, 4, &sum, true).unwrap();
        let w = evidence_weights(&sim).unwrap();
        for (a, b) in w.as_slice().iter().zip([0.2724, 0.2709, 0.2354, 0.2212]) {
            assert!((a - b).abs() < 5e-4, "{a} vs {b}");
        }

        let uniform = PairwiseMatrix::from_upper(MatrixKind::Similarity, 5, &[0.3; 10], true).unwrap();
        for w in evidence_weights(&uniform).unwrap().as_slice() {
            assert!((w - 0.2).abs() < 1e-15);
        }

        let zero = PairwiseMatrix::from_upper(MatrixKind::Similarity, 3, &[0.0; 3], true).unwrap();
        assert_eq!(evidence_weights(&zero), Err(Error::DegenerateMatrix));
    }

    #[test]
    fn weighted_average_examples() {
        let f = frame();
        let e = ev(&f, "e", &[(&["A"], 0.7, 0.4), (&["B"], 0.3, 1.2)]);
        let w = WeightVector::new(vec![0.25, 0.75]).unwrap();
        let avg = weighted_average(&[e.clone(), e.clone()], &w).unwrap();
        for a in e.assignments() {
            let m = avg.mass_of(&a.set);
            assert!((m.belief() - a.mass.belief()).abs() < 1e-12);
            assert!((m.phase - a.mass.phase).abs() < 1e-12);
        }

        let p = ev(&f, "p", &[(&["A"], 1.0, 0.0)]);
        let q = ev(&f, "q", &[(&["B"], 1.0, 0.0)]);
        let avg = weighted_average(&[p, q], &WeightVector::uniform(2)).unwrap();
        assert!((belief(&avg, &f, &["A"]) - 0.5).abs() < 1e-15);
        assert!((belief(&avg, &f, &["B"]) - 0.5).abs() < 1e-15);
        assert!(validate_evidence(&avg, 1e-12).is_empty());

        assert!(matches!(
            weighted_average(&[e], &WeightVector::uniform(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn n_fold_examples() {
        let f = frame();
        let e = ev(&f, "e", &[(&["A"], 0.7, 0.4), (&["A", "B"], 0.3, 1.2)]);
        let (once, ks) = fuse_n_fold(&e, 1).unwrap();
        assert_eq!(once, e);
        assert!(ks.is_empty());

        let c = ev(&f, "c", &[(&["X"], 1.0, 0.0)]);
        let (twice, ks) = fuse_n_fold(&c, 2).unwrap();
        assert_eq!(belief(&twice, &f, &["X"]), 1.0);
        assert_eq!(ks.len(), 1);

        assert!(fuse_n_fold(&e, 0).is_err());
    }

    #[test]
    fn weight_vector_validation() {
        assert!(WeightVector::new(vec![0.5, 0.5]).is_ok());
        assert!(WeightVector::new(vec![0.6, 0.5]).is_err());
        assert!(WeightVector::new(vec![1.5, -0.5]).is_err());
    }
}
