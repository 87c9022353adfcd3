//! Random frames and evidence sets for property tests and benchmarks.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::evidence::{Assignment, EvidenceSet, FocalSet, Frame, OrdinalEvidence, QuantumMass};

/// Frame `H0 … H{size-1}`.
pub fn frame(size: usize) -> Arc<Frame> {
    Arc::new(Frame::new((0..size).map(|i| format!("H{i}"))).expect("size >= 2"))
}

/// All nonempty subsets of the frame with at most `max_card` members.
pub fn candidate_sets(frame: &Frame, max_card: usize) -> Vec<FocalSet> {
    let labels: Vec<&str> = frame.hypotheses().iter().map(|h| h.label()).collect();
    let n = labels.len().min(20);
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        if mask.count_ones() as usize > max_card {
            continue;
        }
        let members = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| labels[i]);
        out.push(frame.focal_set(members).expect("members come from the frame"));
    }
    out.sort();
    out
}

/// One evidence over `focal` focal sets drawn from `pool`. Beliefs are
/// positive and sum to one; phases are uniform in `[-π, π)`; the ordinal
/// rank follows the draw order.
pub fn evidence<R: Rng + ?Sized>(
    rng: &mut R,
    id: &str,
    frame: &Arc<Frame>,
    pool: &[FocalSet],
    focal: usize,
) -> OrdinalEvidence {
    let sets: Vec<FocalSet> = pool.choose_multiple(rng, focal.min(pool.len())).cloned().collect();
    let raw: Vec<f64> = sets.iter().map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let assignments = sets
        .into_iter()
        .zip(raw)
        .map(|(s, b)| Assignment::new(s, QuantumMass::from_belief(b / total, rng.gen_range(-PI..PI))))
        .collect();
    OrdinalEvidence::from_parts(id, frame.clone(), assignments)
}

/// `n` evidences named `E1 … En` over a frame of `frame_size` singletons
/// and pairs, each with `focal` focal sets.
pub fn evidence_set<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    frame_size: usize,
    focal: usize,
) -> EvidenceSet {
    let f = frame(frame_size);
    let pool = candidate_sets(&f, 2);
    let evs = (1..=n)
        .map(|i| evidence(rng, &format!("E{i}"), &f, &pool, focal))
        .collect();
    EvidenceSet::new(f, evs, 1e-9).expect("generated evidences are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evidence::validate_evidence;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generated_sets_are_valid() {
        let mut rng = StdRng::seed_from_u64(7);
        let es = evidence_set(&mut rng, 6, 4, 5);
        assert_eq!(es.len(), 6);
        for ev in es.evidences() {
            assert_eq!(ev.len(), 5);
            assert!(validate_evidence(ev, 1e-12).is_empty());
        }
    }

    #[test]
    fn candidate_set_count() {
        let f = frame(4);
        assert_eq!(candidate_sets(&f, 1).len(), 4);
        assert_eq!(candidate_sets(&f, 2).len(), 10);
        assert_eq!(candidate_sets(&f, 4).len(), 15);
    }
}
