//! The JSON document format for decorated dual graphs.
//!
//! Canonical form: compact JSON, keys in schema order (`mode`,
//! `vertices`, `edges`, `points`; weight keys in declaration order),
//! arrays in id order, one trailing newline.  Planar documents never
//! carry the weights the mode forces, so serializing any loaded
//! planar graph reproduces its canonical bytes.
//!
//! Loading applies planar defaults and resolves references but does
//! no semantic validation — that is `validate`'s job, including
//! flagging planar documents whose explicit weights contradict the
//! forced values.

use serde::{Deserialize, Serialize};
use std::fmt;

use zappatic::graph::{EdgeData, Mode, PointKind, SingularPoint, VertexWeights, ZappaticGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeDoc {
    Planar,
    General,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k2: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pg: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sectional_genus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub u: usize,
    pub v: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_int_u: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_int_v: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_deg_u: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_deg_v: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub kind: KindDoc,
    pub edges: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KindDoc {
    E,
    R,
    S,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub mode: ModeDoc,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    pub points: Vec<PointDoc>,
}

#[derive(Debug)]
pub enum LoadError {
    /// Malformed JSON or a schema mismatch, with serde's path/position.
    Parse(serde_json::Error),
    EmptyVertexList,
    UnknownVertex { edge: usize, vertex: usize },
    UnknownEdge { point: usize, edge: usize },
    ZeroDegree { what: &'static str, id: usize },
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Parse(e) => write!(f, "parse error: {e}"),
            LoadError::EmptyVertexList => write!(f, "document has no vertices"),
            LoadError::UnknownVertex { edge, vertex } => {
                write!(f, "edge {edge} references unknown vertex {vertex}")
            }
            LoadError::UnknownEdge { point, edge } => {
                write!(f, "point {point} references unknown edge {edge}")
            }
            LoadError::ZeroDegree { what, id } => {
                write!(f, "{what} {id}: degree must be at least 1")
            }
        }
    }
}

impl std::error::Error for LoadError {}

impl From<serde_json::Error> for LoadError {
    fn from(e: serde_json::Error) -> Self {
        LoadError::Parse(e)
    }
}

pub fn load(text: &str) -> Result<ZappaticGraph, LoadError> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    graph_of_document(&doc)
}

pub fn graph_of_document(doc: &GraphDoc) -> Result<ZappaticGraph, LoadError> {
    if doc.vertices.is_empty() {
        return Err(LoadError::EmptyVertexList);
    }
    let mode = match doc.mode {
        ModeDoc::Planar => Mode::Planar,
        ModeDoc::General => Mode::General,
    };

    let mut vertices = Vec::with_capacity(doc.vertices.len());
    for (id, w) in doc.vertices.iter().enumerate() {
        if w.degree == Some(0) {
            return Err(LoadError::ZeroDegree { what: "vertex", id });
        }
        let defaults = match mode {
            Mode::Planar => VertexWeights::planar(),
            Mode::General => VertexWeights::unknown(),
        };
        vertices.push(VertexWeights {
            chi: w.chi.or(defaults.chi),
            k2: w.k2.or(defaults.k2),
            pg: w.pg.or(defaults.pg),
            q: w.q.or(defaults.q),
            sectional_genus: w.sectional_genus.or(defaults.sectional_genus),
            degree: w.degree.or(defaults.degree),
        });
    }

    let mut edges = Vec::with_capacity(doc.edges.len());
    for (id, e) in doc.edges.iter().enumerate() {
        for endpoint in [e.u, e.v] {
            if endpoint >= doc.vertices.len() {
                return Err(LoadError::UnknownVertex { edge: id, vertex: endpoint });
            }
        }
        if e.degree == Some(0) {
            return Err(LoadError::ZeroDegree { what: "edge", id });
        }
        let defaults = match mode {
            Mode::Planar => EdgeData::planar(e.u, e.v),
            Mode::General => EdgeData::bare(e.u, e.v),
        };
        edges.push(EdgeData {
            u: e.u,
            v: e.v,
            genus: e.genus.or(defaults.genus),
            degree: e.degree.or(defaults.degree),
            self_int_u: e.self_int_u.or(defaults.self_int_u),
            self_int_v: e.self_int_v.or(defaults.self_int_v),
            normal_deg_u: e.normal_deg_u.or(defaults.normal_deg_u),
            normal_deg_v: e.normal_deg_v.or(defaults.normal_deg_v),
        });
    }

    let mut points = Vec::with_capacity(doc.points.len());
    for (id, p) in doc.points.iter().enumerate() {
        if let Some(&edge) = p.edges.iter().find(|&&e| e >= doc.edges.len()) {
            return Err(LoadError::UnknownEdge { point: id, edge });
        }
        let kind = match p.kind {
            KindDoc::E => PointKind::E,
            KindDoc::R => PointKind::R,
            KindDoc::S => PointKind::S,
        };
        points.push(SingularPoint { kind, edges: p.edges.clone() });
    }

    Ok(ZappaticGraph { mode, vertices, edges, points })
}

/// Canonical document of a graph.  Planar weights equal to the forced
/// values are dropped; if inference or construction left them unset
/// they stay absent too, so planar documents list only `u`/`v` per
/// edge and nothing per vertex.
pub fn document_of_graph(g: &ZappaticGraph) -> GraphDoc {
    let planar = g.mode == Mode::Planar;
    let strip_v = |w: &VertexWeights| -> VertexDoc {
        let forced = VertexWeights::planar();
        let keep = |cur: Option<i64>, def: Option<i64>| if planar && cur == def { None } else { cur };
        let keep_u = |cur: Option<u64>, def: Option<u64>| if planar && cur == def { None } else { cur };
        VertexDoc {
            chi: keep(w.chi, forced.chi),
            k2: keep(w.k2, forced.k2),
            pg: keep_u(w.pg, forced.pg),
            q: keep_u(w.q, forced.q),
            sectional_genus: keep_u(w.sectional_genus, forced.sectional_genus),
            degree: keep_u(w.degree, forced.degree),
        }
    };
    let strip_e = |e: &EdgeData| -> EdgeDoc {
        let forced = EdgeData::planar(e.u, e.v);
        let keep = |cur: Option<i64>, def: Option<i64>| if planar && cur == def { None } else { cur };
        let keep_u = |cur: Option<u64>, def: Option<u64>| if planar && cur == def { None } else { cur };
        EdgeDoc {
            u: e.u,
            v: e.v,
            genus: keep_u(e.genus, forced.genus),
            degree: keep_u(e.degree, forced.degree),
            self_int_u: keep(e.self_int_u, forced.self_int_u),
            self_int_v: keep(e.self_int_v, forced.self_int_v),
            normal_deg_u: keep(e.normal_deg_u, forced.normal_deg_u),
            normal_deg_v: keep(e.normal_deg_v, forced.normal_deg_v),
        }
    };
    GraphDoc {
        mode: if planar { ModeDoc::Planar } else { ModeDoc::General },
        vertices: g.vertices.iter().map(strip_v).collect(),
        edges: g.edges.iter().map(strip_e).collect(),
        points: g
            .points
            .iter()
            .map(|p| PointDoc {
                kind: match p.kind {
                    PointKind::E => KindDoc::E,
                    PointKind::R => KindDoc::R,
                    PointKind::S => KindDoc::S,
                },
                edges: p.edges.clone(),
            })
            .collect(),
    }
}

pub fn serialize(g: &ZappaticGraph, pretty: bool) -> String {
    let doc = document_of_graph(g);
    let mut text = if pretty {
        serde_json::to_string_pretty(&doc).expect("document serialization cannot fail")
    } else {
        serde_json::to_string(&doc).expect("document serialization cannot fail")
    };
    text.push('\n');
    text
}
