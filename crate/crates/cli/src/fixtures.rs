//! The four reference case studies: input evidence files plus the
//! intermediate and final tables published alongside them.
//!
//! Matrices are stored as strict upper triangles in evidence order. Result
//! rows follow `sets`. Application 2's distance tables were printed with
//! proposition names as headers; they are stored here indexed by evidence
//! like every other matrix.

use qbpa::{EvidenceDocument, EvidenceSet};

/// A published combination result: `(amplitude, phase)` per focal set and
/// the classic belief per focal set.
#[derive(Debug, Clone, Copy)]
pub struct PublishedResult {
    pub quantum: &'static [(f64, f64)],
    pub classic: &'static [f64],
}

#[derive(Debug, Clone, Copy)]
pub struct Published {
    pub sets: &'static [&'static [&'static str]],
    pub d_xp: &'static [f64],
    pub d_wb: &'static [f64],
    pub sim1: &'static [f64],
    pub sim2: &'static [f64],
    pub weights: &'static [f64],
    pub proposed: PublishedResult,
    pub baseline: PublishedResult,
}

/// What `reproduce` asserts about the proposed result.
#[derive(Debug, Clone, Copy)]
pub struct RankExpectation {
    /// Focal set expected to rank first; `None` means report only.
    pub top: Option<&'static [&'static str]>,
    /// Upper bound on the baseline's largest belief.
    pub baseline_max_below: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct PaperFixture {
    pub id: &'static str,
    pub title: &'static str,
    pub document: &'static str,
    pub published: Published,
    pub expect: RankExpectation,
}

impl PaperFixture {
    pub fn evidence_document(&self) -> EvidenceDocument {
        EvidenceDocument::from_json(self.document).expect("embedded fixture parses")
    }

    pub fn evidence_set(&self) -> EvidenceSet {
        self.evidence_document()
            .into_evidence_set()
            .expect("embedded fixture validates")
    }
}

pub const APP1: PaperFixture = PaperFixture {
    id: "app1",
    title: "medical equipment diagnosis",
    document: include_str!("../fixtures/app1.json"),
    published: Published {
        sets: &[&["C"], &["F"], &["S"], &["C", "S"]],
        d_xp: &[0.180431287, 0.179981299, 0.150345454, 0.159564419, 0.209037016, 0.120640525],
        d_wb: &[0.138404579, 0.163484138, 0.210720747, 0.117352038, 0.170080205, 0.199958292],
        sim1: &[0.221107846, 0.169240021, 0.149963075, 0.176609694, 0.142552885, 0.140526479],
        sim2: &[0.181458539, 0.176105299, 0.191831419, 0.190480753, 0.171415843, 0.088708148],
        weights: &[0.2724, 0.2709, 0.2354, 0.2212],
        proposed: PublishedResult {
            quantum: &[(0.9927, -2.4640), (0.1170, 3.0032), (0.0189, -2.6956), (0.0229, -2.6187)],
            classic: &[0.9854, 0.0137, 0.0003, 0.0005],
        },
        baseline: PublishedResult {
            quantum: &[(0.9910, -2.41972), (0.1047, 3.0943), (0.0479, -2.6047), (0.0671, -2.6600)],
            classic: &[0.9822, 0.0109, 0.0023, 0.0045],
        },
    },
    expect: RankExpectation {
        top: Some(&["C"]),
        baseline_max_below: None,
    },
};

pub const APP2: PaperFixture = PaperFixture {
    id: "app2",
    title: "investment decision by financial experts",
    document: include_str!("../fixtures/app2.json"),
    published: Published {
        sets: &[&["AS"], &["BS"], &["AS", "BS"], &["NO"]],
        d_xp: &[0.1912, 0.1773, 0.1656, 0.1375, 0.1728, 0.1556],
        d_wb: &[0.2055, 0.2042, 0.1524, 0.1624, 0.1590, 0.1165],
        sim1: &[0.0909, 0.1484, 0.1492, 0.2039, 0.1913, 0.2163],
        sim2: &[0.1541, 0.1571, 0.1697, 0.1733, 0.1669, 0.1790],
        weights: &[0.2173, 0.2451, 0.2695, 0.2681],
        proposed: PublishedResult {
            quantum: &[(0.8879, -2.3298), (0.4595, -1.0344), (0.0129, -0.7355), (0.0150, -0.3980)],
            classic: &[0.7885, 0.2112, 0.0002, 0.0002],
        },
        baseline: PublishedResult {
            quantum: &[(0.9325, -2.4725), (0.3600, -0.9740), (0.0151, -0.7444), (0.0237, -0.6598)],
            classic: &[0.8696, 0.1296, 0.0002, 0.0006],
        },
    },
    expect: RankExpectation {
        top: Some(&["AS"]),
        baseline_max_below: None,
    },
};

pub const APP3: PaperFixture = PaperFixture {
    id: "app3",
    title: "fault detection sensors",
    document: include_str!("../fixtures/app3.json"),
    published: Published {
        sets: &[&["M"], &["S"], &["E"], &["S", "M"], &["M", "E"]],
        d_xp: &[
            0.095222009, 0.061335424, 0.128291791, 0.08803936, 0.065130772, 0.072923152,
            0.092479968, 0.09135496, 0.18540361, 0.119818954,
        ],
        d_wb: &[
            0.083689353, 0.026769203, 0.043637639, 0.108407669, 0.066969002, 0.181357579,
            0.122602905, 0.074733965, 0.103655864, 0.188176822,
        ],
        sim1: &[
            0.096500067, 0.12415855, 0.104560777, 0.100928249, 0.096621301, 0.103247208,
            0.095194423, 0.085874652, 0.106825599, 0.086089173,
        ],
        sim2: &[
            0.103190835, 0.113738589, 0.111304902, 0.098754391, 0.105804526, 0.091261514,
            0.098198746, 0.105285393, 0.084351484, 0.088109621,
        ],
        weights: &[0.2133, 0.1975, 0.2057, 0.1939, 0.1896],
        proposed: PublishedResult {
            quantum: &[
                (0.3540, -2.3177),
                (0.3699, -0.3635),
                (0.8053, 0.3157),
                (0.0994, 0.9264),
                (0.2819, 1.1772),
            ],
            classic: &[0.1253, 0.1368, 0.6485, 0.0099, 0.0794],
        },
        baseline: PublishedResult {
            quantum: &[
                (0.3985, 0.1717),
                (0.4724, 0.7727),
                (0.4615, 0.4848),
                (0.4256, -0.2590),
                (0.4731, 0.1501),
            ],
            classic: &[0.1588, 0.2231, 0.2130, 0.1812, 0.2238],
        },
    },
    expect: RankExpectation {
        top: Some(&["E"]),
        baseline_max_below: Some(0.25),
    },
};

pub const APP4: PaperFixture = PaperFixture {
    id: "app4",
    title: "income estimation by department heads",
    document: include_str!("../fixtures/app4.json"),
    published: Published {
        sets: &[&["Fir"], &["Sec"], &["Thi"], &["Fou"], &["Fif"]],
        d_xp: &[0.0477, 0.0874, 0.0867, 0.0773, 0.0829, 0.0973, 0.0530, 0.0730, 0.2892, 0.1055],
        d_wb: &[0.0604, 0.1111, 0.1263, 0.1047, 0.1057, 0.1358, 0.0357, 0.0841, 0.1174, 0.1188],
        sim1: &[0.1030, 0.0862, 0.0943, 0.0988, 0.0942, 0.0899, 0.1248, 0.1191, 0.1014, 0.0884],
        sim2: &[0.1104, 0.1000, 0.0984, 0.1019, 0.1011, 0.0962, 0.1126, 0.1047, 0.0774, 0.0972],
        weights: &[0.1982, 0.2080, 0.1960, 0.1971, 0.2006],
        proposed: PublishedResult {
            quantum: &[
                (0.5443, 2.5182),
                (0.8164, 0.1408),
                (0.0584, 0.7536),
                (0.1155, 1.7257),
                (0.1431, 1.5691),
            ],
            classic: &[0.2963, 0.6665, 0.0034, 0.0133, 0.0205],
        },
        baseline: PublishedResult {
            quantum: &[
                (0.7401, 2.5269),
                (0.6339, 0.1205),
                (0.1464, 0.9514),
                (0.1193, 1.7262),
                (0.1216, 1.5377),
            ],
            classic: &[0.5477, 0.4018, 0.0214, 0.0142, 0.0148],
        },
    },
    expect: RankExpectation {
        top: None,
        baseline_max_below: None,
    },
};

pub const ALL: [PaperFixture; 4] = [APP1, APP2, APP3, APP4];

pub fn by_id(id: &str) -> Option<PaperFixture> {
    ALL.into_iter().find(|f| f.id == id)
}
