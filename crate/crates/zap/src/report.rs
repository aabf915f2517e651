//! JSON views of the analysis reports.
//!
//! Field order is fixed by struct declaration and every map is a
//! `BTreeMap`, so identical inputs serialize to identical bytes.
//! Intervals lead with `min`/`max`; quantities that cannot be
//! determined appear as `{"unavailable": "<reason>"}`.

use serde::Serialize;
use std::collections::BTreeMap;

use zappatic::graph::{SingularityCensus, ValidationReport};
use zappatic::homology::{BettiVector, ChainComplex};
use zappatic::invariants::{Determination, InvariantReport};
use zappatic::obstructions::{EqualityClass, MiyaokaYau, ObstructionReport, Verdict, ZappaRecord};

#[derive(Serialize)]
pub struct ValidationDoc {
    pub pass: bool,
    pub connected: bool,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_coverage: Option<CoverageDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity: Option<IdentityDoc>,
}

#[derive(Serialize)]
pub struct CoverageDoc {
    pub pairs: u64,
    pub uncovered: u64,
    pub multiply_covered: u64,
}

#[derive(Serialize)]
pub struct IdentityDoc {
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
}

pub fn validation_doc(report: &ValidationReport) -> ValidationDoc {
    ValidationDoc {
        pass: report.pass(),
        connected: report.connected,
        violations: report.violations.iter().map(|v| v.to_string()).collect(),
        pair_coverage: report.pair_coverage.as_ref().map(|c| CoverageDoc {
            pairs: c.pairs,
            uncovered: c.uncovered.len() as u64,
            multiply_covered: c.multiply_covered.len() as u64,
        }),
        identity: report.identity.as_ref().map(|i| IdentityDoc {
            lhs: i.lhs,
            rhs: i.rhs,
            holds: i.holds(),
        }),
    }
}

/// A determined quantity serializes as its value, an undetermined one
/// as a reason object.
pub enum MaybeDoc {
    Known(u64),
    Unavailable(&'static str),
}

impl Serialize for MaybeDoc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            MaybeDoc::Known(x) => s.serialize_u64(*x),
            MaybeDoc::Unavailable(reason) => {
                let mut m = BTreeMap::new();
                m.insert("unavailable", reason);
                m.serialize(s)
            }
        }
    }
}

impl From<&Determination> for MaybeDoc {
    fn from(d: &Determination) -> Self {
        match d {
            Determination::Known(x) => MaybeDoc::Known(*x),
            Determination::Unavailable { reason } => MaybeDoc::Unavailable(reason),
        }
    }
}

#[derive(Serialize)]
pub struct K2Doc {
    pub min: i64,
    pub max: i64,
    pub base: i64,
}

#[derive(Serialize)]
pub struct DeltaDoc {
    pub min: i64,
    pub max: i64,
    pub lower_bound: i64,
    pub violates_lower_bound: bool,
}

#[derive(Serialize)]
pub struct CensusDoc {
    pub v: u64,
    pub e: u64,
    pub e_tilde: u64,
    pub f_n: BTreeMap<usize, u64>,
    pub r_n: BTreeMap<usize, u64>,
    pub s_n: BTreeMap<usize, u64>,
    pub f: u64,
    pub r: u64,
    pub s: u64,
    pub tau: u64,
    pub valences: Vec<u64>,
}

impl From<&SingularityCensus> for CensusDoc {
    fn from(c: &SingularityCensus) -> Self {
        CensusDoc {
            v: c.v,
            e: c.e,
            e_tilde: c.e_tilde,
            f_n: c.f_n.clone(),
            r_n: c.r_n.clone(),
            s_n: c.s_n.clone(),
            f: c.f,
            r: c.r,
            s: c.s,
            tau: c.tau,
            valences: c.valences.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct BettiDoc {
    pub b0: u64,
    pub b1: u64,
    pub b2: u64,
}

impl From<&BettiVector> for BettiDoc {
    fn from(b: &BettiVector) -> Self {
        BettiDoc { b0: b.b0, b1: b.b1, b2: b.b2 }
    }
}

#[derive(Serialize)]
pub struct InvariantsDoc {
    pub degree: u64,
    pub sectional_genus: i64,
    pub chi: i64,
    pub p_omega: MaybeDoc,
    pub irregularity_q: MaybeDoc,
    pub k2: MaybeK2Doc,
    pub delta_class: MaybeDeltaDoc,
    pub census: CensusDoc,
    pub betti: BettiDoc,
}

pub enum MaybeK2Doc {
    Known(K2Doc),
    Unavailable,
}

impl Serialize for MaybeK2Doc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            MaybeK2Doc::Known(k) => k.serialize(s),
            MaybeK2Doc::Unavailable => {
                let mut m = BTreeMap::new();
                m.insert("unavailable", "a vertex K² or edge genus/self-intersection is missing");
                m.serialize(s)
            }
        }
    }
}

pub enum MaybeDeltaDoc {
    Known(DeltaDoc),
    Unavailable,
}

impl Serialize for MaybeDeltaDoc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            MaybeDeltaDoc::Known(d) => d.serialize(s),
            MaybeDeltaDoc::Unavailable => {
                let mut m = BTreeMap::new();
                m.insert("unavailable", "requires the K² interval");
                m.serialize(s)
            }
        }
    }
}

pub fn invariants_doc(report: &InvariantReport) -> InvariantsDoc {
    InvariantsDoc {
        degree: report.degree,
        sectional_genus: report.sectional_genus,
        chi: report.chi,
        p_omega: (&report.p_omega).into(),
        irregularity_q: (&report.irregularity_q).into(),
        k2: match report.k2 {
            Some(k) => MaybeK2Doc::Known(K2Doc { min: k.min, max: k.max, base: k.base }),
            None => MaybeK2Doc::Unavailable,
        },
        delta_class: match report.delta_class {
            Some(d) => MaybeDeltaDoc::Known(DeltaDoc {
                min: d.min,
                max: d.max,
                lower_bound: d.lower_bound,
                violates_lower_bound: d.violates_lower_bound,
            }),
            None => MaybeDeltaDoc::Unavailable,
        },
        census: (&report.census).into(),
        betti: (&report.betti).into(),
    }
}

#[derive(Serialize)]
pub struct EdgeMpfDoc {
    pub edge: usize,
    pub upper_bound: i64,
    pub violated: bool,
}

#[derive(Serialize)]
pub struct ZappaDoc {
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slack_min: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slack_max: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equality_class: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<&'static str>,
}

#[derive(Serialize)]
pub struct MiyaokaYauDoc {
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub satisfied_min: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub satisfied_max: Option<bool>,
}

#[derive(Serialize)]
pub struct ObstructionsDoc {
    pub per_edge: Vec<EdgeMpfDoc>,
    pub global_mpf_upper: Option<i64>,
    pub zappa: ZappaDoc,
    pub miyaoka_yau: MiyaokaYauDoc,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reasons: Vec<String>,
}

pub fn obstructions_doc(report: &ObstructionReport) -> ObstructionsDoc {
    let zappa = match &report.zappa {
        ZappaRecord::NotApplicable { reason } => ZappaDoc {
            applicable: false,
            reason: Some(reason),
            slack_min: None,
            slack_max: None,
            equality_class: None,
            warning: None,
        },
        ZappaRecord::Applicable { slack_min, slack_max, equality_class } => ZappaDoc {
            applicable: true,
            reason: None,
            slack_min: Some(*slack_min),
            slack_max: Some(*slack_max),
            equality_class: equality_class.as_ref().map(|c| match c {
                EqualityClass::VeroneseS4 => "veronese_S4",
                EqualityClass::EllipticCycle => "elliptic_cycle",
                EqualityClass::Other => "other",
            }),
            warning: equality_class.as_ref().and_then(|c| c.warning()),
        },
    };
    let miyaoka_yau = match &report.miyaoka_yau {
        MiyaokaYau::NotApplicable { reason } => MiyaokaYauDoc {
            applicable: false,
            reason: Some(reason),
            satisfied_min: None,
            satisfied_max: None,
        },
        MiyaokaYau::Applicable { satisfied_min, satisfied_max } => MiyaokaYauDoc {
            applicable: true,
            reason: None,
            satisfied_min: Some(*satisfied_min),
            satisfied_max: Some(*satisfied_max),
        },
    };
    let (verdict, reasons) = match &report.verdict {
        Verdict::NoObstructionFound => ("no_obstruction_found", Vec::new()),
        Verdict::Obstructed { reasons } => ("obstructed", reasons.clone()),
    };
    ObstructionsDoc {
        per_edge: report
            .per_edge
            .iter()
            .map(|e| EdgeMpfDoc { edge: e.edge, upper_bound: e.upper_bound, violated: e.violated })
            .collect(),
        global_mpf_upper: report.global_mpf_upper,
        zappa,
        miyaoka_yau,
        verdict,
        reasons,
    }
}

#[derive(Serialize)]
pub struct HomologyDoc {
    pub betti: BettiDoc,
    pub rank_d1: usize,
    pub rank_d2: usize,
    pub d1_shape: [usize; 2],
    pub d2_shape: [usize; 2],
}

pub fn homology_doc(betti: &BettiVector, complex: &ChainComplex) -> HomologyDoc {
    HomologyDoc {
        betti: betti.into(),
        rank_d1: complex.d1.rank(),
        rank_d2: complex.d2.rank(),
        d1_shape: [complex.d1.rows, complex.d1.cols],
        d2_shape: [complex.d2.rows, complex.d2.cols],
    }
}

/// Compact-or-pretty JSON with the canonical trailing newline.
pub fn render<T: Serialize>(doc: &T, pretty: bool) -> String {
    let mut text = if pretty {
        serde_json::to_string_pretty(doc).expect("report serialization cannot fail")
    } else {
        serde_json::to_string(doc).expect("report serialization cannot fail")
    };
    text.push('\n');
    text
}
