//! Pairwise distance, divergence and similarity measures between QBPAs, and
//! the matrix normalization they share.
//!
//! All pairwise sums run over the union of both evidences' focal sets in
//! canonical order; a set missing from one evidence has zero mass there.
//! Normalized matrices divide every off-diagonal entry by the sum over
//! unordered pairs `i < j`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evidence::{canonical_focal_sets, OrdinalEvidence};
use crate::parallel::Execution;

/// Denominators below this make a Sim1 term contribute zero.
pub const EPS_DIV: f64 = 1e-12;

/// Tolerance on the unordered off-diagonal sum of a normalized matrix.
pub const NORMALIZED_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    Distance,
    Similarity,
}

impl MatrixKind {
    pub fn diagonal(self) -> f64 {
        match self {
            MatrixKind::Distance => 0.0,
            MatrixKind::Similarity => 1.0,
        }
    }
}

/// Symmetric `n × n` matrix of pairwise values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairwiseMatrix {
    kind: MatrixKind,
    n: usize,
    entries: Vec<f64>,
    normalized: bool,
}

impl PairwiseMatrix {
    /// Builds a matrix from its strict upper triangle in row-major order
    /// (`(0,1), (0,2), …, (1,2), …`). The diagonal is set from `kind`.
    pub fn from_upper(kind: MatrixKind, n: usize, upper: &[f64], normalized: bool) -> Result<Self> {
        let expected = n * n.saturating_sub(1) / 2;
        if upper.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: upper.len(),
            });
        }
        let mut entries = vec![0.0; n * n];
        let mut k = 0;
        for i in 0..n {
            entries[i * n + i] = kind.diagonal();
            for j in i + 1..n {
                entries[i * n + j] = upper[k];
                entries[j * n + i] = upper[k];
                k += 1;
            }
        }
        Ok(Self {
            kind,
            n,
            entries,
            normalized,
        })
    }

    /// Builds a matrix from full rows, checking shape and symmetry. The
    /// diagonal is overwritten from `kind`.
    pub fn from_rows(kind: MatrixKind, rows: &[Vec<f64>], normalized: bool) -> Result<Self> {
        let n = rows.len();
        let mut upper = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for j in i + 1..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::Asymmetric { row: i, col: j });
                }
                upper.push(row[j]);
            }
        }
        Self::from_upper(kind, n, &upper, normalized)
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks(self.n.max(1))
    }

    /// Strict upper triangle, row-major.
    pub fn upper(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.push(self.get(i, j));
            }
        }
        out
    }

    /// `Σ_{i<j} entries[i][j]`.
    pub fn unordered_sum(&self) -> f64 {
        self.upper().iter().sum()
    }

    /// Largest absolute entrywise difference to `other`.
    pub fn max_abs_diff(&self, other: &PairwiseMatrix) -> Result<f64> {
        self.ensure_same_n(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    fn ensure_same_n(&self, other: &PairwiseMatrix) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceSemantics {
    /// `|σ_i e^{jα_i} − σ_j e^{jα_j}|`
    ComplexModulus,
    /// `|σ_i² − σ_j²|`
    Belief,
    /// `|σ_i − σ_j|`
    Amplitude,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DivergenceInput {
    Belief,
    Amplitude,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LogBase {
    #[serde(rename = "10")]
    Ten,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "e")]
    E,
}

impl LogBase {
    pub fn ln(self) -> f64 {
        match self {
            LogBase::Ten => std::f64::consts::LN_10,
            LogBase::Two => std::f64::consts::LN_2,
            LogBase::E => 1.0,
        }
    }

    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Ten => x.log10(),
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        }
    }
}

/// How the two distance definitions read complex-valued masses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MeasureStrategy {
    pub distance: DistanceSemantics,
    pub divergence_input: DivergenceInput,
    pub log_base: LogBase,
}

impl Default for MeasureStrategy {
    fn default() -> Self {
        Self {
            distance: DistanceSemantics::ComplexModulus,
            divergence_input: DivergenceInput::Belief,
            log_base: LogBase::Ten,
        }
    }
}

impl MeasureStrategy {
    /// All 18 combinations in a fixed order (distance, then divergence
    /// input, then log base).
    pub fn all() -> Vec<MeasureStrategy> {
        let mut out = Vec::with_capacity(18);
        for distance in [
            DistanceSemantics::ComplexModulus,
            DistanceSemantics::Belief,
            DistanceSemantics::Amplitude,
        ] {
            for divergence_input in [DivergenceInput::Belief, DivergenceInput::Amplitude] {
                for log_base in [LogBase::Ten, LogBase::Two, LogBase::E] {
                    out.push(MeasureStrategy {
                        distance,
                        divergence_input,
                        log_base,
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for DistanceSemantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ComplexModulus => "complex",
            Self::Belief => "belief",
            Self::Amplitude => "amplitude",
        })
    }
}

impl FromStr for DistanceSemantics {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complex" => Ok(Self::ComplexModulus),
            "belief" => Ok(Self::Belief),
            "amplitude" => Ok(Self::Amplitude),
            other => Err(Error::InvalidArgument(format!(
                "distance semantics `{other}` (expected complex, belief or amplitude)"
            ))),
        }
    }
}

impl fmt::Display for DivergenceInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Belief => "belief",
            Self::Amplitude => "amplitude",
        })
    }
}

impl FromStr for DivergenceInput {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "belief" => Ok(Self::Belief),
            "amplitude" => Ok(Self::Amplitude),
            other => Err(Error::InvalidArgument(format!(
                "divergence input `{other}` (expected belief or amplitude)"
            ))),
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ten => "10",
            Self::Two => "2",
            Self::E => "e",
        })
    }
}

impl FromStr for LogBase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "10" => Ok(Self::Ten),
            "2" => Ok(Self::Two),
            "e" => Ok(Self::E),
            other => Err(Error::InvalidArgument(format!(
                "log base `{other}` (expected 10, 2 or e)"
            ))),
        }
    }
}

impl fmt::Display for MeasureStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "distance={} divergence-input={} log-base={}",
            self.distance, self.divergence_input, self.log_base
        )
    }
}

/// End-to-end distance: sum of per-proposition difference magnitudes.
pub fn end_to_end_distance(
    a: &OrdinalEvidence,
    b: &OrdinalEvidence,
    semantics: DistanceSemantics,
) -> Result<f64> {
    a.ensure_same_frame(b)?;
    let d = canonical_focal_sets([a, b])
        .iter()
        .map(|set| {
            let (x, y) = (a.mass_of(set), b.mass_of(set));
            match semantics {
                DistanceSemantics::ComplexModulus => {
                    (x.amplitude_value() - y.amplitude_value()).norm()
                }
                DistanceSemantics::Belief => (x.belief() - y.belief()).abs(),
                DistanceSemantics::Amplitude => (x.amplitude - y.amplitude).abs(),
            }
        })
        .sum();
    Ok(d)
}

/// Symmetrized fuzzy divergence
/// `½[Σ p·log(2p/(p+q)) + Σ q·log(2q/(q+p))]`, with `0·log(·) = 0`.
pub fn fuzzy_divergence(
    a: &OrdinalEvidence,
    b: &OrdinalEvidence,
    input: DivergenceInput,
    base: LogBase,
) -> Result<f64> {
    a.ensure_same_frame(b)?;
    let sets = canonical_focal_sets([a, b]);
    let scalar = |ev: &OrdinalEvidence, set| {
        let m = ev.mass_of(set);
        match input {
            DivergenceInput::Belief => m.belief(),
            DivergenceInput::Amplitude => m.amplitude,
        }
    };
    let half = |p: f64, q: f64| {
        if p > 0.0 {
            p * base.log(2.0 * p / (p + q))
        } else {
            0.0
        }
    };
    let (mut left, mut right) = (0.0, 0.0);
    for set in &sets {
        let (p, q) = (scalar(a, set), scalar(b, set));
        left += half(p, q);
        right += half(q, p);
    }
    Ok(0.5 * (left + right))
}

/// Unnormalized Sim1: for every proposition, the overlap of the two
/// first-quadrant rectangles spanned by the mirrored components, relative to
/// their mean area.
pub fn sim1_intermediate(a: &OrdinalEvidence, b: &OrdinalEvidence) -> Result<f64> {
    a.ensure_same_frame(b)?;
    let s = canonical_focal_sets([a, b])
        .iter()
        .map(|set| {
            let (ra, ia) = a.mass_of(set).components();
            let (rb, ib) = b.mass_of(set).components();
            let denom = ra * ia + rb * ib;
            if denom < EPS_DIV {
                0.0
            } else {
                2.0 * ra.min(rb) * ia.min(ib) / denom
            }
        })
        .sum();
    Ok(s)
}

/// Evaluates `f` on every unordered pair and assembles the raw matrix.
pub fn pairwise_matrix<F>(
    evidences: &[OrdinalEvidence],
    kind: MatrixKind,
    exec: Execution,
    f: F,
) -> Result<PairwiseMatrix>
where
    F: Fn(&OrdinalEvidence, &OrdinalEvidence) -> Result<f64> + Sync + Send,
{
    let n = evidences.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let upper = exec.try_map(&pairs, |&(i, j)| f(&evidences[i], &evidences[j]))?;
    PairwiseMatrix::from_upper(kind, n, &upper, false)
}

pub fn distance_matrix(
    evidences: &[OrdinalEvidence],
    semantics: DistanceSemantics,
    exec: Execution,
) -> Result<PairwiseMatrix> {
    pairwise_matrix(evidences, MatrixKind::Distance, exec, |a, b| {
        end_to_end_distance(a, b, semantics)
    })
}

pub fn divergence_matrix(
    evidences: &[OrdinalEvidence],
    input: DivergenceInput,
    base: LogBase,
    exec: Execution,
) -> Result<PairwiseMatrix> {
    pairwise_matrix(evidences, MatrixKind::Distance, exec, |a, b| {
        fuzzy_divergence(a, b, input, base)
    })
}

pub fn sim1_matrix(evidences: &[OrdinalEvidence], exec: Execution) -> Result<PairwiseMatrix> {
    pairwise_matrix(evidences, MatrixKind::Similarity, exec, sim1_intermediate)
}

/// Divides every off-diagonal entry by `Σ_{i<j}` and resets the diagonal.
/// Fails with [`Error::DegenerateMatrix`] when there is nothing to divide by.
pub fn normalize_pairwise(m: &PairwiseMatrix) -> Result<PairwiseMatrix> {
    let upper = m.upper();
    let total: f64 = upper.iter().sum();
    if !(total.abs() > 0.0) || !total.is_finite() {
        return Err(Error::DegenerateMatrix);
    }
    let scaled: Vec<f64> = upper.iter().map(|v| v / total).collect();
    PairwiseMatrix::from_upper(m.kind, m.n, &scaled, true)
}

/// Sim2 from normalized d_XP and d_WB: `(1 − d_XP)(1 − d_WB)`, normalized.
pub fn sim2_matrix(dxp: &PairwiseMatrix, dwb: &PairwiseMatrix) -> Result<PairwiseMatrix> {
    dxp.ensure_same_n(dwb)?;
    let upper: Vec<f64> = dxp
        .upper()
        .iter()
        .zip(dwb.upper())
        .map(|(x, w)| (1.0 - x) * (1.0 - w))
        .collect();
    let raw = PairwiseMatrix::from_upper(MatrixKind::Similarity, dxp.n, &upper, false)?;
    normalize_pairwise(&raw)
}

/// `SIM = Sim1 + Sim2` entrywise; the diagonal becomes 2.
pub fn combined_similarity(s1: &PairwiseMatrix, s2: &PairwiseMatrix) -> Result<PairwiseMatrix> {
    s1.ensure_same_n(s2)?;
    let entries = s1
        .entries
        .iter()
        .zip(&s2.entries)
        .map(|(a, b)| a + b)
        .collect();
    Ok(PairwiseMatrix {
        kind: MatrixKind::Similarity,
        n: s1.n,
        entries,
        normalized: s1.normalized && s2.normalized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evidence::{Assignment, Frame, QuantumMass, DEFAULT_MASS_TOLERANCE};
    use std::sync::Arc;

    fn frame() -> Arc<Frame> {
        Arc::new(Frame::new(["C", "F", "S"]).unwrap())
    }

    fn app1_e1(f: &Arc<Frame>) -> OrdinalEvidence {
        OrdinalEvidence::from_rows(
            "E1",
            f.clone(),
            [
                (&["C"][..], 0.7416, 0.4882),
                (&["F"][..], 0.4472, 0.3165),
                (&["S"][..], 0.3873, 0.3410),
                (&["C", "S"][..], 0.3162, 0.1988),
            ],
            DEFAULT_MASS_TOLERANCE,
        )
        .unwrap()
    }

    fn app1_e2(f: &Arc<Frame>) -> OrdinalEvidence {
        OrdinalEvidence::from_rows(
            "E2",
            f.clone(),
            [
                (&["F"][..], 0.6708, 0.6476),
                (&["C"][..], 0.5000, 0.3176),
                (&["C", "S"][..], 0.4123, 0.6307),
                (&["S"][..], 0.3607, 0.6077),
            ],
            DEFAULT_MASS_TOLERANCE,
        )
        .unwrap()
    }

    fn certain(f: &Arc<Frame>, id: &str, label: &str) -> OrdinalEvidence {
        OrdinalEvidence::from_parts(
            id,
            f.clone(),
            vec![Assignment::new(
                f.focal_set([label]).unwrap(),
                QuantumMass::new(1.0, 0.0),
            )],
        )
    }

    // Expected values below were computed with mpmath at 40 digits from the
    // rounded amplitudes, independently of this module.

    #[test]
    fn distance_examples() {
        let f = frame();
        let (e1, e2) = (app1_e1(&f), app1_e2(&f));
        for s in [
            DistanceSemantics::ComplexModulus,
            DistanceSemantics::Belief,
            DistanceSemantics::Amplitude,
        ] {
            assert_eq!(end_to_end_distance(&e1, &e1, s).unwrap(), 0.0);
        }
        let d = end_to_end_distance(&e1, &e2, DistanceSemantics::Belief).unwrap();
        assert!((d - 0.63986101).abs() < 1e-12, "{d}");
        assert!((d - 0.640).abs() < 1e-3);
        let d = end_to_end_distance(&e1, &e2, DistanceSemantics::ComplexModulus).unwrap();
        assert!((d - 0.835_346_464_112_258_5).abs() < 1e-12, "{d}");
        let d = end_to_end_distance(&e1, &e2, DistanceSemantics::Amplitude).unwrap();
        assert!((d - 0.5879).abs() < 1e-12, "{d}");

        let a = certain(&f, "a", "C");
        let b = certain(&f, "b", "F");
        assert_eq!(end_to_end_distance(&a, &b, DistanceSemantics::Belief).unwrap(), 2.0);
    }

    #[test]
    fn divergence_examples() {
        let f = frame();
        let (e1, e2) = (app1_e1(&f), app1_e2(&f));
        assert_eq!(
            fuzzy_divergence(&e1, &e1, DivergenceInput::Belief, LogBase::Ten).unwrap(),
            0.0
        );
        let d = fuzzy_divergence(&e1, &e2, DivergenceInput::Belief, LogBase::Ten).unwrap();
        assert!((d - 0.025_376_667_810_704_38).abs() < 1e-12, "{d}");
        assert!((d - 0.0254).abs() < 1e-4);

        let a = certain(&f, "a", "C");
        let b = certain(&f, "b", "F");
        for base in [LogBase::Ten, LogBase::Two, LogBase::E] {
            let d = fuzzy_divergence(&a, &b, DivergenceInput::Belief, base).unwrap();
            assert!((d - base.log(2.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn sim1_examples() {
        let f = frame();
        let (e1, e2) = (app1_e1(&f), app1_e2(&f));
        assert!((sim1_intermediate(&e1, &e1).unwrap() - 4.0).abs() < 1e-12);
        let s = sim1_intermediate(&e1, &e2).unwrap();
        assert!((s - 2.014_848_947_617_056).abs() < 1e-12, "{s}");

        // one proposition with (r, im) = (0.4, 0.3) in both evidences
        let m = QuantumMass::new(0.5, 0.3f64.atan2(0.4));
        let one = OrdinalEvidence::from_parts(
            "x",
            f.clone(),
            vec![Assignment::new(f.focal_set(["C"]).unwrap(), m)],
        );
        assert!((sim1_intermediate(&one, &one).unwrap() - 1.0).abs() < 1e-12);

        // zero phase: no imaginary part, every term is guarded to zero
        let z = certain(&f, "z", "C");
        assert_eq!(sim1_intermediate(&z, &z).unwrap(), 0.0);
    }

    #[test]
    fn frame_mismatch_is_rejected() {
        let f = frame();
        let g = Arc::new(Frame::new(["X", "Y"]).unwrap());
        let a = certain(&f, "a", "C");
        let b = certain(&g, "b", "X");
        assert!(matches!(
            end_to_end_distance(&a, &b, DistanceSemantics::Belief),
            Err(Error::FrameMismatch { .. })
        ));
        assert!(fuzzy_divergence(&a, &b, DivergenceInput::Belief, LogBase::E).is_err());
        assert!(sim1_intermediate(&a, &b).is_err());
    }

    #[test]
    fn normalize_examples() {
        let raw =
            PairwiseMatrix::from_upper(MatrixKind::Distance, 4, &[1., 2., 2., 2., 2., 1.], false)
                .unwrap();
        let m = normalize_pairwise(&raw).unwrap();
        let expect = [0.1, 0.2, 0.2, 0.2, 0.2, 0.1];
        for (a, b) in m.upper().iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(m.is_normalized());
        assert!((m.unordered_sum() - 1.0).abs() < NORMALIZED_SUM_TOL);
        assert_eq!(m.get(2, 2), 0.0);

        let table2 = [
            0.180431287,
            0.179981299,
            0.150345454,
            0.159564419,
            0.209037016,
            0.120640525,
        ];
        let published = PairwiseMatrix::from_upper(MatrixKind::Distance, 4, &table2, false).unwrap();
        let again = normalize_pairwise(&published).unwrap();
        assert!(again.max_abs_diff(&published).unwrap() < 1e-3);

        let zeros = PairwiseMatrix::from_upper(MatrixKind::Distance, 3, &[0.0; 3], false).unwrap();
        assert_eq!(normalize_pairwise(&zeros), Err(Error::DegenerateMatrix));
    }

    #[test]
    fn sim2_examples() {
        let uniform = PairwiseMatrix::from_upper(MatrixKind::Distance, 4, &[1.0 / 6.0; 6], true)
            .unwrap();
        let s2 = sim2_matrix(&uniform, &uniform).unwrap();
        for v in s2.upper() {
            assert!((v - 1.0 / 6.0).abs() < 1e-15);
        }
        assert_eq!(s2.get(0, 0), 1.0);

        let d2 = PairwiseMatrix::from_upper(MatrixKind::Distance, 2, &[1.0], true).unwrap();
        let w2 = PairwiseMatrix::from_upper(MatrixKind::Distance, 2, &[0.3], true).unwrap();
        // (1 − 1)(1 − 0.3) = 0 → degenerate
        assert_eq!(sim2_matrix(&d2, &w2), Err(Error::DegenerateMatrix));
        let d2 = PairwiseMatrix::from_upper(MatrixKind::Distance, 2, &[0.4], true).unwrap();
        assert_eq!(sim2_matrix(&d2, &w2).unwrap().get(0, 1), 1.0);

        let dxp = PairwiseMatrix::from_upper(
            MatrixKind::Distance,
            4,
            &[0.180431287, 0.179981299, 0.150345454, 0.159564419, 0.209037016, 0.120640525],
            true,
        )
        .unwrap();
        let dwb = PairwiseMatrix::from_upper(
            MatrixKind::Distance,
            4,
            &[0.138404579, 0.163484138, 0.210720747, 0.117352038, 0.170080205, 0.199958292],
            true,
        )
        .unwrap();
        let inter = (1.0 - dxp.get(0, 1)) * (1.0 - dwb.get(0, 1));
        assert!((inter - 0.706_136_650_315_663).abs() < 1e-12);
        let s2 = sim2_matrix(&dxp, &dwb).unwrap();
        let total: f64 = dxp
            .upper()
            .iter()
            .zip(dwb.upper())
            .map(|(x, w)| (1.0 - x) * (1.0 - w))
            .sum();
        assert!((s2.get(0, 1) - inter / total).abs() < 1e-15);

        let small = PairwiseMatrix::from_upper(MatrixKind::Distance, 3, &[0.2, 0.3, 0.5], true)
            .unwrap();
        assert!(matches!(
            sim2_matrix(&dxp, &small),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn combined_similarity_examples() {
        let s1 = PairwiseMatrix::from_upper(
            MatrixKind::Similarity,
            4,
            &[0.221107846, 0.169240021, 0.149963075, 0.176609694, 0.142552885, 0.140526479],
            true,
        )
        .unwrap();
        let s2 = PairwiseMatrix::from_upper(
            MatrixKind::Similarity,
            4,
            &[0.181458539, 0.176105299, 0.191831419, 0.190480753, 0.171415843, 0.088708148],
            true,
        )
        .unwrap();
        let sim = combined_similarity(&s1, &s2).unwrap();
        assert!((sim.get(0, 1) - 0.402566385).abs() < 1e-12);
        assert_eq!(sim.get(3, 3), 2.0);

        let doubled = combined_similarity(&s1, &s1).unwrap();
        for (a, b) in doubled.upper().iter().zip(s1.upper()) {
            assert_eq!(*a, 2.0 * b);
        }

        let zero = PairwiseMatrix::from_upper(MatrixKind::Similarity, 4, &[0.0; 6], true).unwrap();
        let sim = combined_similarity(&zero, &s2).unwrap();
        assert_eq!(sim.upper(), s2.upper());
    }

    #[test]
    fn strategy_enumeration_and_parsing() {
        let all = MeasureStrategy::all();
        assert_eq!(all.len(), 18);
        assert_eq!(all[0], MeasureStrategy::default());
        for s in ["complex", "belief", "amplitude"] {
            assert_eq!(s.parse::<DistanceSemantics>().unwrap().to_string(), s);
        }
        for s in ["10", "2", "e"] {
            assert_eq!(s.parse::<LogBase>().unwrap().to_string(), s);
        }
        assert!("3".parse::<LogBase>().is_err());
        assert!("modulus".parse::<DistanceSemantics>().is_err());
    }

    #[test]
    fn matrix_from_rows_checks_symmetry() {
        let ok = PairwiseMatrix::from_rows(
            MatrixKind::Distance,
            &[vec![0.0, 0.5], vec![0.5, 0.0]],
            false,
        )
        .unwrap();
        assert_eq!(ok.get(1, 0), 0.5);
        let bad = PairwiseMatrix::from_rows(
            MatrixKind::Distance,
            &[vec![0.0, 0.5], vec![0.4, 0.0]],
            false,
        );
        assert_eq!(bad, Err(Error::Asymmetric { row: 0, col: 1 }));
    }
}
