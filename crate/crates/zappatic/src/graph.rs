//! Decorated dual graphs of good Zappatic surfaces.
//!
//! Vertices carry the numerical invariants of the surface components,
//! edges carry the double-curve data (one edge per *irreducible*
//! component of a double curve, so parallel edges encode reducible
//! intersections), and [`SingularPoint`]s mark the Zappatic
//! singularities:
//!
//! * `E_n` — n components forming a cycle at the point (a closed
//!   n-face of the graph),
//! * `R_n` — n components forming a chain (an open n-face: the n−1
//!   consecutive edges are listed, the dashed closing edge is not),
//! * `S_n` — n components forming a fork: n−1 of them concur along
//!   the central one (an n-angle: the n−1 edges share one vertex).
//!
//! In planar mode every component is a plane and every double curve a
//! line, so all weights are forced and two planes meet in at most one
//! line (no parallel edges).  Planar surfaces satisfy an exact-coverage
//! law: every unordered pair of edges meeting at a vertex lies in
//! exactly one singular point, which gives the pair-count identity
//!
//! ```text
//! Σ_i C(w_i, 2) = Σ_n (n·f_n + (n−2)·r_n) + Σ_{n≥4} C(n−1, 2)·s_n .
//! ```
//!
//! Open 3-faces are conventionally droppable from planar input:
//! [`infer_r3`] restores them over every uncovered adjacent pair.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type VertexId = usize;
pub type EdgeId = usize;

/// Surface-level invariants attached to a vertex (one component X_i).
///
/// `None` means "not supplied" (general mode only); operations that
/// need a missing weight report themselves inapplicable instead of
/// guessing.  In planar mode every field is forced to the value for a
/// plane with hyperplane-section a line: see [`VertexWeights::planar`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexWeights {
    /// χ(O_{X_i})
    pub chi: Option<i64>,
    /// K²_{X_i}
    pub k2: Option<i64>,
    /// geometric genus p_g(X_i)
    pub pg: Option<u64>,
    /// irregularity q(X_i)
    pub q: Option<u64>,
    /// genus g_i of the hyperplane section of X_i
    pub sectional_genus: Option<u64>,
    /// degree d_i ≥ 1 of X_i
    pub degree: Option<u64>,
}

impl VertexWeights {
    /// Weights of a plane: (χ, K², p_g, q, g_i, d_i) = (1, 9, 0, 0, 0, 1).
    pub const fn planar() -> Self {
        VertexWeights {
            chi: Some(1),
            k2: Some(9),
            pg: Some(0),
            q: Some(0),
            sectional_genus: Some(0),
            degree: Some(1),
        }
    }

    /// All fields unsupplied.
    pub const fn unknown() -> Self {
        VertexWeights {
            chi: None,
            k2: None,
            pg: None,
            q: None,
            sectional_genus: None,
            degree: None,
        }
    }
}

/// One irreducible double-curve component C, lying on the two surfaces
/// indexed by `u < v`.  Side-specific weights are the self-intersection
/// and normal-bundle degree of C on each of the two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeData {
    pub u: VertexId,
    pub v: VertexId,
    /// geometric genus of C
    pub genus: Option<u64>,
    /// degree c ≥ 1 of C in the ambient projective space
    pub degree: Option<u64>,
    /// C² computed on the side of `u`
    pub self_int_u: Option<i64>,
    /// C² computed on the side of `v`
    pub self_int_v: Option<i64>,
    /// deg N_{C|X_u}
    pub normal_deg_u: Option<i64>,
    /// deg N_{C|X_v}
    pub normal_deg_v: Option<i64>,
}

impl EdgeData {
    /// A line cut by two planes: genus 0, degree 1, self-intersection
    /// and normal degree 1 on both sides.
    pub const fn planar(u: VertexId, v: VertexId) -> Self {
        EdgeData {
            u,
            v,
            genus: Some(0),
            degree: Some(1),
            self_int_u: Some(1),
            self_int_v: Some(1),
            normal_deg_u: Some(1),
            normal_deg_v: Some(1),
        }
    }

    /// Endpoints and nothing else.
    pub const fn bare(u: VertexId, v: VertexId) -> Self {
        EdgeData {
            u,
            v,
            genus: None,
            degree: None,
            self_int_u: None,
            self_int_v: None,
            normal_deg_u: None,
            normal_deg_v: None,
        }
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }

    /// The endpoint shared with `other`, if exactly one is shared.
    fn unique_shared_vertex(&self, other: &EdgeData) -> Option<VertexId> {
        let mut shared = None;
        for a in [self.u, self.v] {
            if a == other.u || a == other.v {
                match shared {
                    None => shared = Some(a),
                    Some(_) => return None, // parallel edges share both endpoints
                }
            }
        }
        shared
    }

    fn other_endpoint(&self, w: VertexId) -> VertexId {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PointKind {
    /// Cycle of n components: closed n-face.  n = number of edges.
    E,
    /// Chain of n components: open n-face.  n = number of edges + 1.
    R,
    /// Fork of n components: n-angle.  n = number of edges + 1.
    S,
}

/// A Zappatic singular point, given by the edges (double curves)
/// concurring at it.
///
/// * `E`: the edges in cyclic order around the point (≥ 3, through
///   pairwise distinct vertices; the cyclic order matters and
///   disambiguates parallel edges),
/// * `R`: the edges in path order (≥ 2, a simple path),
/// * `S`: the edges of the angle (≥ 3, all sharing one center vertex,
///   with pairwise distinct far endpoints).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub kind: PointKind,
    pub edges: Vec<EdgeId>,
}

impl SingularPoint {
    pub fn e(edges: Vec<EdgeId>) -> Self {
        SingularPoint { kind: PointKind::E, edges }
    }
    pub fn r(edges: Vec<EdgeId>) -> Self {
        SingularPoint { kind: PointKind::R, edges }
    }
    pub fn s(edges: Vec<EdgeId>) -> Self {
        SingularPoint { kind: PointKind::S, edges }
    }

    /// The order n of the singularity (E_n / R_n / S_n).
    pub fn order(&self) -> usize {
        match self.kind {
            PointKind::E => self.edges.len(),
            PointKind::R | PointKind::S => self.edges.len() + 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Planar,
    General,
}

/// The decorated dual graph of a good Zappatic surface.
///
/// Vertex and edge ids are dense indices into the two vectors.  Edges
/// are stored with `u < v`; parallel edges (same endpoints) are legal
/// in general mode only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZappaticGraph {
    pub mode: Mode,
    pub vertices: Vec<VertexWeights>,
    pub edges: Vec<EdgeData>,
    pub points: Vec<SingularPoint>,
}

impl ZappaticGraph {
    /// A planar graph on `n` plane vertices with the given edges and points.
    pub fn planar(n: usize, edges: &[(VertexId, VertexId)], points: Vec<SingularPoint>) -> Self {
        ZappaticGraph {
            mode: Mode::Planar,
            vertices: alloc::vec![VertexWeights::planar(); n],
            edges: edges.iter().map(|&(u, v)| EdgeData::planar(u, v)).collect(),
            points,
        }
    }

    pub fn valence(&self, w: VertexId) -> u64 {
        self.edges.iter().filter(|e| e.u == w || e.v == w).count() as u64
    }

    pub fn valences(&self) -> Vec<u64> {
        let mut val = alloc::vec![0u64; self.vertices.len()];
        for e in &self.edges {
            if e.u < val.len() {
                val[e.u] += 1;
            }
            if e.v < val.len() {
                val[e.v] += 1;
            }
        }
        val
    }

    /// Ids of the edges incident to `w`, ascending.
    pub fn incident_edges(&self, w: VertexId) -> Vec<EdgeId> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].u == w || self.edges[i].v == w)
            .collect()
    }

    /// Whether the solid 1-skeleton is connected (true for a single
    /// vertex, false for the empty graph).
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut seen = alloc::vec![false; n];
        let mut stack = alloc::vec![0usize];
        seen[0] = true;
        while let Some(w) = stack.pop() {
            for e in &self.edges {
                if e.u >= n || e.v >= n {
                    continue;
                }
                let next = if e.u == w {
                    e.v
                } else if e.v == w {
                    e.u
                } else {
                    continue;
                };
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// A pair of distinct edges meeting at a vertex: (vertex, lower edge
/// id, higher edge id).  These are the pairs the singular points of a
/// planar surface must cover exactly once.
pub type EdgePair = (VertexId, EdgeId, EdgeId);

/// Why a listed singular point does not have its required shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointShapeError {
    TooFewEdges { have: usize, need: usize },
    DuplicateEdge(EdgeId),
    EdgeOutOfRange(EdgeId),
    /// Consecutive edges of a face/path share no vertex, or share both.
    BrokenWalk { position: usize },
    /// The walk revisits a vertex.
    RepeatedVertex(VertexId),
    /// Angle edges have no unique common vertex.
    NoCenter,
    /// Two angle edges end at the same far vertex.
    TeethCollide(VertexId),
}

impl fmt::Display for PointShapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointShapeError::TooFewEdges { have, need } => {
                write!(f, "lists {have} edges but needs at least {need}")
            }
            PointShapeError::DuplicateEdge(e) => write!(f, "lists edge {e} twice"),
            PointShapeError::EdgeOutOfRange(e) => write!(f, "references unknown edge {e}"),
            PointShapeError::BrokenWalk { position } => {
                write!(f, "edges at positions {position},{} do not chain", position + 1)
            }
            PointShapeError::RepeatedVertex(v) => write!(f, "walk revisits vertex {v}"),
            PointShapeError::NoCenter => write!(f, "angle edges have no unique common vertex"),
            PointShapeError::TeethCollide(v) => {
                write!(f, "two angle edges share the far endpoint {v}")
            }
        }
    }
}

/// The adjacent-edge pairs covered by one singular point, in the sense
/// of the pair-count identity: an E_n covers the n consecutive pairs
/// around its cycle, an R_n the n−2 consecutive pairs along its path,
/// an S_n all C(n−1, 2) pairs at its center.
pub fn covered_pairs(
    g: &ZappaticGraph,
    p: &SingularPoint,
) -> Result<Vec<EdgePair>, PointShapeError> {
    let k = p.edges.len();
    let need = match p.kind {
        PointKind::E | PointKind::S => 3,
        PointKind::R => 2,
    };
    if k < need {
        return Err(PointShapeError::TooFewEdges { have: k, need });
    }
    let mut seen = BTreeSet::new();
    for &e in &p.edges {
        if e >= g.edges.len() {
            return Err(PointShapeError::EdgeOutOfRange(e));
        }
        if !seen.insert(e) {
            return Err(PointShapeError::DuplicateEdge(e));
        }
    }
    let pair = |w: VertexId, a: EdgeId, b: EdgeId| -> EdgePair {
        (w, a.min(b), a.max(b))
    };
    match p.kind {
        PointKind::E => {
            let verts = face_walk_checked(g, &p.edges)?;
            Ok((0..k)
                .map(|i| pair(verts[i], p.edges[(i + k - 1) % k], p.edges[i]))
                .collect())
        }
        PointKind::R => {
            let mut verts = Vec::with_capacity(k + 1);
            for i in 0..k - 1 {
                let shared = g.edges[p.edges[i]]
                    .unique_shared_vertex(&g.edges[p.edges[i + 1]])
                    .ok_or(PointShapeError::BrokenWalk { position: i })?;
                verts.push(shared);
            }
            let first = g.edges[p.edges[0]].other_endpoint(verts[0]);
            let last = g.edges[p.edges[k - 1]].other_endpoint(verts[k - 2]);
            verts.insert(0, first);
            verts.push(last);
            let mut distinct = BTreeSet::new();
            for &v in &verts {
                if !distinct.insert(v) {
                    return Err(PointShapeError::RepeatedVertex(v));
                }
            }
            Ok((0..k - 1)
                .map(|i| pair(verts[i + 1], p.edges[i], p.edges[i + 1]))
                .collect())
        }
        PointKind::S => {
            let mut candidates: BTreeSet<VertexId> =
                [g.edges[p.edges[0]].u, g.edges[p.edges[0]].v].into_iter().collect();
            for &e in &p.edges[1..] {
                candidates.retain(|&c| g.edges[e].u == c || g.edges[e].v == c);
            }
            if candidates.len() != 1 {
                return Err(PointShapeError::NoCenter);
            }
            let center = *candidates.iter().next().unwrap();
            let mut far = BTreeSet::new();
            for &e in &p.edges {
                let t = g.edges[e].other_endpoint(center);
                if t == center || !far.insert(t) {
                    return Err(PointShapeError::TeethCollide(t));
                }
            }
            let mut pairs = Vec::new();
            for i in 0..k {
                for j in i + 1..k {
                    pairs.push(pair(center, p.edges[i], p.edges[j]));
                }
            }
            Ok(pairs)
        }
    }
}

fn face_walk_checked(g: &ZappaticGraph, edges: &[EdgeId]) -> Result<Vec<VertexId>, PointShapeError> {
    let k = edges.len();
    // vertex i sits between edges i−1 and i (cyclically)
    let mut verts = Vec::with_capacity(k);
    for i in 0..k {
        let prev = edges[(i + k - 1) % k];
        let cur = edges[i];
        let shared = g.edges[prev]
            .unique_shared_vertex(&g.edges[cur])
            .ok_or(PointShapeError::BrokenWalk { position: (i + k - 1) % k })?;
        verts.push(shared);
    }
    let mut distinct = BTreeSet::new();
    for &v in &verts {
        if !distinct.insert(v) {
            return Err(PointShapeError::RepeatedVertex(v));
        }
    }
    Ok(verts)
}

/// The vertex sequence v_0, …, v_{n−1} of a closed face: v_i is the
/// vertex between edges i−1 and i of the cyclic list, so edge i is
/// traversed v_i → v_{i+1 mod n}.  Errors on anything but a
/// well-formed E-point.
pub fn face_walk(g: &ZappaticGraph, p: &SingularPoint) -> Result<Vec<VertexId>, PointShapeError> {
    if p.kind != PointKind::E || p.edges.len() < 3 {
        return Err(PointShapeError::TooFewEdges { have: p.edges.len(), need: 3 });
    }
    for &e in &p.edges {
        if e >= g.edges.len() {
            return Err(PointShapeError::EdgeOutOfRange(e));
        }
    }
    face_walk_checked(g, &p.edges)
}

/// Every unordered pair of distinct edges sharing a vertex.  A pair of
/// parallel edges shows up once per shared vertex.
pub fn adjacent_pairs(g: &ZappaticGraph) -> Vec<EdgePair> {
    let mut pairs = Vec::new();
    for w in 0..g.vertices.len() {
        let inc = g.incident_edges(w);
        for i in 0..inc.len() {
            for j in i + 1..inc.len() {
                pairs.push((w, inc[i], inc[j]));
            }
        }
    }
    pairs
}

fn coverage_map(g: &ZappaticGraph) -> BTreeMap<EdgePair, u64> {
    let mut cover: BTreeMap<EdgePair, u64> = BTreeMap::new();
    for p in &g.points {
        if let Ok(pairs) = covered_pairs(g, p) {
            for pr in pairs {
                *cover.entry(pr).or_insert(0) += 1;
            }
        }
    }
    cover
}

/// Restore the droppable open 3-faces of a planar graph: every
/// adjacent-edge pair not covered by a listed point gains an R₃ over
/// it.  Idempotent; the identity on general-mode graphs (nothing is
/// ever inferred off-plane).  Malformed points cover nothing and are
/// left for [`validate`] to report.
pub fn infer_r3(g: &ZappaticGraph) -> ZappaticGraph {
    let mut out = g.clone();
    if g.mode != Mode::Planar {
        return out;
    }
    let cover = coverage_map(g);
    for (w, a, b) in adjacent_pairs(g) {
        if !cover.contains_key(&(w, a, b)) {
            let _ = w;
            out.points.push(SingularPoint::r(alloc::vec![a, b]));
        }
    }
    out
}

/// One defect found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyGraph,
    Disconnected,
    LoopEdge { edge: EdgeId },
    EndpointOrder { edge: EdgeId },
    EndpointOutOfRange { edge: EdgeId },
    /// Two planes meet in at most one line.
    ParallelEdgesInPlanar { u: VertexId, v: VertexId },
    PlanarWeightMismatch { what: String },
    MalformedPoint { point: usize, kind: PointKind, error: PointShapeError },
    OrderTooSmall { point: usize, kind: PointKind, order: usize, min: usize },
    PairMultiplyCovered { pair: EdgePair, times: u64 },
    PairUncovered { pair: EdgePair },
    IdentityMismatch { lhs: u64, rhs: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyGraph => write!(f, "graph has no vertices"),
            Violation::Disconnected => write!(f, "graph is not connected"),
            Violation::LoopEdge { edge } => write!(f, "edge {edge} is a loop"),
            Violation::EndpointOrder { edge } => {
                write!(f, "edge {edge} endpoints are not ordered u < v")
            }
            Violation::EndpointOutOfRange { edge } => {
                write!(f, "edge {edge} references an unknown vertex")
            }
            Violation::ParallelEdgesInPlanar { u, v } => {
                write!(f, "planar mode: vertices {u},{v} are joined by more than one edge")
            }
            Violation::PlanarWeightMismatch { what } => {
                write!(f, "planar mode: {what}")
            }
            Violation::MalformedPoint { point, kind, error } => {
                write!(f, "point {point} ({kind:?}): {error}")
            }
            Violation::OrderTooSmall { point, kind, order, min } => {
                write!(f, "point {point} ({kind:?}) has order {order}, minimum is {min}")
            }
            Violation::PairMultiplyCovered { pair, times } => write!(
                f,
                "edge pair ({},{}) at vertex {} is covered {times} times",
                pair.1, pair.2, pair.0
            ),
            Violation::PairUncovered { pair } => write!(
                f,
                "edge pair ({},{}) at vertex {} is covered by no point",
                pair.1, pair.2, pair.0
            ),
            Violation::IdentityMismatch { lhs, rhs } => write!(
                f,
                "pair-count identity fails: Σ C(w_i,2) = {lhs} but points account for {rhs}"
            ),
        }
    }
}

/// Exactness of the planar pair coverage, measured after R₃ inference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCoverage {
    pub pairs: u64,
    pub uncovered: Vec<EdgePair>,
    pub multiply_covered: Vec<(EdgePair, u64)>,
}

impl PairCoverage {
    pub fn exact(&self) -> bool {
        self.uncovered.is_empty() && self.multiply_covered.is_empty()
    }
}

/// The two sides of the pair-count identity (planar mode only).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairIdentity {
    /// Σ_i C(w_i, 2)
    pub lhs: u64,
    /// Σ_n (n f_n + (n−2) r_n) + Σ_{n≥4} C(n−1,2) s_n
    pub rhs: u64,
}

impl PairIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub connected: bool,
    pub violations: Vec<Violation>,
    /// Planar mode only; measured after R₃ inference.
    pub pair_coverage: Option<PairCoverage>,
    /// Planar mode only; sides of the pair-count identity after inference.
    pub identity: Option<PairIdentity>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_planar_weights(g: &ZappaticGraph, violations: &mut Vec<Violation>) {
    let pw = VertexWeights::planar();
    for (i, w) in g.vertices.iter().enumerate() {
        if *w != pw {
            violations.push(Violation::PlanarWeightMismatch {
                what: format!("vertex {i} does not carry plane weights"),
            });
        }
    }
    for (i, e) in g.edges.iter().enumerate() {
        let le = EdgeData::planar(e.u, e.v);
        if *e != le {
            violations.push(Violation::PlanarWeightMismatch {
                what: format!("edge {i} does not carry line weights"),
            });
        }
    }
}

/// Structural validation.
///
/// Checks the 1-skeleton (dense ids, `u < v`, no loops, connectivity),
/// the shape of every singular point, and — in planar mode — the
/// exact-coverage law and the pair-count identity, both evaluated
/// after R₃ inference so that dropped open 3-faces do not count
/// against the input.
pub fn validate(g: &ZappaticGraph) -> ValidationReport {
    let mut violations = Vec::new();
    if g.vertices.is_empty() {
        violations.push(Violation::EmptyGraph);
    }
    let connected = g.is_connected();
    if !connected && !g.vertices.is_empty() {
        violations.push(Violation::Disconnected);
    }
    let n = g.vertices.len();
    for (i, e) in g.edges.iter().enumerate() {
        if e.u >= n || e.v >= n {
            violations.push(Violation::EndpointOutOfRange { edge: i });
        } else if e.u == e.v {
            violations.push(Violation::LoopEdge { edge: i });
        } else if e.u > e.v {
            violations.push(Violation::EndpointOrder { edge: i });
        }
    }
    if g.mode == Mode::Planar {
        let mut by_pair: BTreeMap<(VertexId, VertexId), u64> = BTreeMap::new();
        for e in &g.edges {
            *by_pair.entry((e.u.min(e.v), e.u.max(e.v))).or_insert(0) += 1;
        }
        for ((u, v), c) in by_pair {
            if c > 1 {
                violations.push(Violation::ParallelEdgesInPlanar { u, v });
            }
        }
        check_planar_weights(g, &mut violations);
    }
    for (i, p) in g.points.iter().enumerate() {
        let min_order = match p.kind {
            PointKind::E | PointKind::R => 3,
            PointKind::S => 4,
        };
        if p.order() < min_order {
            violations.push(Violation::OrderTooSmall {
                point: i,
                kind: p.kind,
                order: p.order(),
                min: min_order,
            });
            continue;
        }
        if let Err(err) = covered_pairs(g, p) {
            violations.push(Violation::MalformedPoint { point: i, kind: p.kind, error: err });
        }
    }

    let (pair_coverage, identity) = if g.mode == Mode::Planar {
        let inferred = infer_r3(g);
        let cover = coverage_map(&inferred);
        let pairs = adjacent_pairs(g);
        let mut uncovered = Vec::new();
        let mut multiply = Vec::new();
        for pr in &pairs {
            match cover.get(pr).copied().unwrap_or(0) {
                0 => uncovered.push(*pr),
                1 => {}
                t => multiply.push((*pr, t)),
            }
        }
        for pr in &uncovered {
            violations.push(Violation::PairUncovered { pair: *pr });
        }
        for (pr, t) in &multiply {
            violations.push(Violation::PairMultiplyCovered { pair: *pr, times: *t });
        }
        let census = counts(&inferred);
        let lhs: u64 = census.valences.iter().map(|&w| w * w.saturating_sub(1) / 2).sum();
        let rhs = census.pair_budget();
        if lhs != rhs {
            violations.push(Violation::IdentityMismatch { lhs, rhs });
        }
        (
            Some(PairCoverage {
                pairs: pairs.len() as u64,
                uncovered,
                multiply_covered: multiply,
            }),
            Some(PairIdentity { lhs, rhs }),
        )
    } else {
        (None, None)
    };

    ValidationReport { connected, violations, pair_coverage, identity }
}

/// The full singularity census of a graph.
///
/// `f_n`, `r_n`, `s_n` count E-, R-, S-points by order; `rho_n` merges
/// the non-face counts (ρ₃ = r₃ and ρ_n = r_n + s_n for n ≥ 4);
/// `e_tilde` counts vertex pairs joined by at least one edge; `tau` is
/// the total number of singular points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SingularityCensus {
    pub v: u64,
    pub e: u64,
    pub e_tilde: u64,
    pub f_n: BTreeMap<usize, u64>,
    pub r_n: BTreeMap<usize, u64>,
    pub s_n: BTreeMap<usize, u64>,
    pub f: u64,
    pub r: u64,
    pub s: u64,
    pub rho_n: BTreeMap<usize, u64>,
    pub tau: u64,
    pub valences: Vec<u64>,
}

impl SingularityCensus {
    pub fn f_of(&self, n: usize) -> u64 {
        self.f_n.get(&n).copied().unwrap_or(0)
    }
    pub fn r_of(&self, n: usize) -> u64 {
        self.r_n.get(&n).copied().unwrap_or(0)
    }
    pub fn s_of(&self, n: usize) -> u64 {
        self.s_n.get(&n).copied().unwrap_or(0)
    }
    pub fn rho_of(&self, n: usize) -> u64 {
        self.rho_n.get(&n).copied().unwrap_or(0)
    }

    /// Right-hand side of the pair-count identity:
    /// Σ_n (n f_n + (n−2) r_n) + Σ_{n≥4} C(n−1,2) s_n.
    pub fn pair_budget(&self) -> u64 {
        let from_f: u64 = self.f_n.iter().map(|(&n, &c)| n as u64 * c).sum();
        let from_r: u64 = self.r_n.iter().map(|(&n, &c)| (n as u64 - 2) * c).sum();
        let from_s: u64 = self
            .s_n
            .iter()
            .map(|(&n, &c)| {
                let t = n as u64 - 1;
                t * (t - 1) / 2 * c
            })
            .sum();
        from_f + from_r + from_s
    }
}

/// Count everything.  Call on a validated graph (planar: after
/// [`infer_r3`]) for the censuses the invariant formulas expect.
pub fn counts(g: &ZappaticGraph) -> SingularityCensus {
    let mut census = SingularityCensus {
        v: g.vertices.len() as u64,
        e: g.edges.len() as u64,
        ..SingularityCensus::default()
    };
    let mut joined: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for e in &g.edges {
        joined.insert((e.u.min(e.v), e.u.max(e.v)));
    }
    census.e_tilde = joined.len() as u64;
    for p in &g.points {
        let n = p.order();
        match p.kind {
            PointKind::E => *census.f_n.entry(n).or_insert(0) += 1,
            PointKind::R => *census.r_n.entry(n).or_insert(0) += 1,
            PointKind::S => *census.s_n.entry(n).or_insert(0) += 1,
        }
    }
    census.f = census.f_n.values().sum();
    census.r = census.r_n.values().sum();
    census.s = census.s_n.values().sum();
    for (&n, &c) in &census.r_n {
        *census.rho_n.entry(n).or_insert(0) += c;
    }
    for (&n, &c) in &census.s_n {
        *census.rho_n.entry(n).or_insert(0) += c;
    }
    census.tau = census.f + census.r + census.s;
    census.valences = g.valences();
    census
}

/// Census of the points through one edge γ: the counts f_n(γ), r_n(γ),
/// s_n(γ) of singular points whose edge list contains γ.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeCensus {
    pub f_n: BTreeMap<usize, u64>,
    pub r_n: BTreeMap<usize, u64>,
    pub s_n: BTreeMap<usize, u64>,
}

impl EdgeCensus {
    pub fn f_of(&self, n: usize) -> u64 {
        self.f_n.get(&n).copied().unwrap_or(0)
    }
    pub fn r_of(&self, n: usize) -> u64 {
        self.r_n.get(&n).copied().unwrap_or(0)
    }
    pub fn s_of(&self, n: usize) -> u64 {
        self.s_n.get(&n).copied().unwrap_or(0)
    }
}

pub fn edge_local_census(g: &ZappaticGraph, edge: EdgeId) -> EdgeCensus {
    let mut census = EdgeCensus::default();
    for p in &g.points {
        if p.edges.contains(&edge) {
            let n = p.order();
            match p.kind {
                PointKind::E => *census.f_n.entry(n).or_insert(0) += 1,
                PointKind::R => *census.r_n.entry(n).or_insert(0) += 1,
                PointKind::S => *census.s_n.entry(n).or_insert(0) += 1,
            }
        }
    }
    census
}

/// Rebuild the graph under vertex and edge permutations
/// (`vperm[old] = new`).  When a permuted edge flips orientation the
/// side-keyed weights flip with it, so the result describes the same
/// configuration.  Test support for relabeling-invariance properties.
#[cfg(test)]
pub(crate) fn relabel(g: &ZappaticGraph, vperm: &[usize], eperm: &[usize]) -> ZappaticGraph {
    assert_eq!(vperm.len(), g.vertices.len());
    assert_eq!(eperm.len(), g.edges.len());
    let mut vertices = g.vertices.clone();
    for (old, w) in g.vertices.iter().enumerate() {
        vertices[vperm[old]] = w.clone();
    }
    let mut edges = g.edges.clone();
    for (old, e) in g.edges.iter().enumerate() {
        let (nu, nv) = (vperm[e.u], vperm[e.v]);
        edges[eperm[old]] = if nu <= nv {
            EdgeData { u: nu, v: nv, ..e.clone() }
        } else {
            EdgeData {
                u: nv,
                v: nu,
                genus: e.genus,
                degree: e.degree,
                self_int_u: e.self_int_v,
                self_int_v: e.self_int_u,
                normal_deg_u: e.normal_deg_v,
                normal_deg_v: e.normal_deg_u,
            }
        };
    }
    let points = g
        .points
        .iter()
        .map(|p| SingularPoint {
            kind: p.kind,
            edges: p.edges.iter().map(|&e| eperm[e]).collect(),
        })
        .collect();
    ZappaticGraph { mode: g.mode, vertices, edges, points }
}

/// Deterministic permutations of `0..n` for the relabeling tests.
#[cfg(test)]
pub(crate) fn test_permutation(n: usize, seed: u64) -> alloc::vec::Vec<usize> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut perm: alloc::vec::Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    perm
}
