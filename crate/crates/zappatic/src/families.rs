//! Generators for concrete degenerations.
//!
//! Wherever a configuration of planes is described by its points, the
//! generator goes through an [`IncidenceStructure`] and the
//! singularity types are *derived* — for each point the planes and
//! lines through it form a local graph classified as a chain (R_n),
//! cycle (E_n) or fork (S_n) — rather than hard-coded, so the census
//! of each generated family doubles as a check on the expected one.
//!
//! Families: chains, cycles and forks of planes; the chain of quadrics
//! a rational normal scroll degenerates to; the union of d² planes the
//! d-uple Veronese surface degenerates to (R₃- and E₆-points only);
//! the pillow — two triangulated a×b grids glued along their boundary,
//! a degeneration of a K3 of sectional genus 2ab+1; the torus grid of
//! 2nm planes an abelian surface degenerates to (E₆-points only);
//! two quadrics and a plane meeting like a quintic; stick-curve dual
//! graphs; a seeded random generator for property tests; and a numeric
//! feasibility check for the scroll census profile (d − 2g + 2 points
//! R₃, 2g − 2 points S₄ on d planes).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{
    counts, infer_r3, validate, EdgeData, EdgeId, Mode, SingularPoint, SingularityCensus,
    VertexWeights, ZappaticGraph,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IncidenceError {
    /// A plane needs at least three points to be spanned.
    PlaneTooSmall { plane: usize },
    UnknownPoint { plane: usize, point: usize },
    RepeatedPoint { plane: usize, point: usize },
    /// Three or more planes contain the same two points.
    LineOnThreePlanes { point_a: String, point_b: String },
    /// Two planes share two or more lines.
    ParallelLines { plane_a: usize, plane_b: usize },
    /// The local graph at a point is not a chain, cycle, or fork.
    NotZappatic { point: String },
}

impl fmt::Display for IncidenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IncidenceError::PlaneTooSmall { plane } => {
                write!(f, "plane {plane} has fewer than three points")
            }
            IncidenceError::UnknownPoint { plane, point } => {
                write!(f, "plane {plane} references unknown point {point}")
            }
            IncidenceError::RepeatedPoint { plane, point } => {
                write!(f, "plane {plane} lists point {point} twice")
            }
            IncidenceError::LineOnThreePlanes { point_a, point_b } => {
                write!(f, "line through {point_a} and {point_b} lies on three or more planes")
            }
            IncidenceError::ParallelLines { plane_a, plane_b } => {
                write!(f, "planes {plane_a} and {plane_b} share more than one line")
            }
            IncidenceError::NotZappatic { point } => {
                write!(f, "point {point}: not a good Zappatic configuration (local graph is not a chain, cycle, or fork)")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyError {
    ParameterOutOfRange { family: &'static str, constraint: &'static str },
    Incidence(IncidenceError),
    /// Tree / unicyclic stick curves need an explicit adjacency list.
    AdjacencyRequired,
    BadAdjacency { reason: String },
    NotATree,
    NotUnicyclic,
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::ParameterOutOfRange { family, constraint } => {
                write!(f, "{family} requires {constraint}")
            }
            FamilyError::Incidence(e) => write!(f, "{e}"),
            FamilyError::AdjacencyRequired => {
                write!(f, "this stick-curve kind needs an explicit adjacency list")
            }
            FamilyError::BadAdjacency { reason } => write!(f, "bad adjacency: {reason}"),
            FamilyError::NotATree => write!(f, "adjacency is not a tree"),
            FamilyError::NotUnicyclic => {
                write!(f, "adjacency does not have exactly one independent cycle")
            }
        }
    }
}

impl From<IncidenceError> for FamilyError {
    fn from(e: IncidenceError) -> Self {
        FamilyError::Incidence(e)
    }
}

/// A configuration of planes given by which labeled points each spans.
///
/// Lines are derived: two planes sharing exactly two points meet along
/// the line those points span.  No three planes may share a line, and
/// no two planes may share more than one.
#[derive(Clone, Debug)]
pub struct IncidenceStructure {
    pub points: Vec<String>,
    pub planes: Vec<Vec<usize>>,
}

impl IncidenceStructure {
    pub fn new(points: Vec<String>, planes: Vec<Vec<usize>>) -> Self {
        IncidenceStructure { points, planes }
    }

    /// Derive the dual graph: vertices are the planes, edges the
    /// shared lines, and each point on ≥ 3 planes becomes the singular
    /// point its local graph classifies as.  Points on ≤ 2 planes
    /// produce no record (on exactly 2, the planes must share a line
    /// through the point).
    pub fn derive_graph(&self) -> Result<ZappaticGraph, IncidenceError> {
        let n_points = self.points.len();
        for (pi, plane) in self.planes.iter().enumerate() {
            if plane.len() < 3 {
                return Err(IncidenceError::PlaneTooSmall { plane: pi });
            }
            let mut seen = BTreeSet::new();
            for &pt in plane {
                if pt >= n_points {
                    return Err(IncidenceError::UnknownPoint { plane: pi, point: pt });
                }
                if !seen.insert(pt) {
                    return Err(IncidenceError::RepeatedPoint { plane: pi, point: pt });
                }
            }
        }

        let mut point_planes: Vec<Vec<usize>> = vec![Vec::new(); n_points];
        let mut pair_planes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (pi, plane) in self.planes.iter().enumerate() {
            let mut pts = plane.clone();
            pts.sort_unstable();
            for &pt in &pts {
                point_planes[pt].push(pi);
            }
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    pair_planes.entry((pts[i], pts[j])).or_default().push(pi);
                }
            }
        }

        // A point pair on exactly two planes spans a shared line.
        let mut plane_pair_line: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for (&(p, q), planes) in &pair_planes {
            match planes.len() {
                0 | 1 => {}
                2 => {
                    let key = (planes[0], planes[1]);
                    if plane_pair_line.insert(key, (p, q)).is_some() {
                        return Err(IncidenceError::ParallelLines {
                            plane_a: key.0,
                            plane_b: key.1,
                        });
                    }
                }
                _ => {
                    return Err(IncidenceError::LineOnThreePlanes {
                        point_a: self.points[p].clone(),
                        point_b: self.points[q].clone(),
                    })
                }
            }
        }

        let mut edges = Vec::with_capacity(plane_pair_line.len());
        let mut point_lines: Vec<Vec<EdgeId>> = vec![Vec::new(); n_points];
        for (&(u, v), &(p, q)) in &plane_pair_line {
            let eid = edges.len();
            edges.push(EdgeData::planar(u, v));
            point_lines[p].push(eid);
            point_lines[q].push(eid);
        }

        let mut points = Vec::new();
        for pt in 0..n_points {
            if let Some(sp) =
                classify_point(&self.points[pt], &point_planes[pt], &point_lines[pt], &edges)?
            {
                points.push(sp);
            }
        }

        Ok(ZappaticGraph {
            mode: Mode::Planar,
            vertices: vec![VertexWeights::planar(); self.planes.len()],
            edges,
            points,
        })
    }
}

/// Classify the local graph at one point: vertices are the planes
/// through it, edges the lines through it.  A single cycle is an E_n,
/// a simple chain an R_n, a fork (n−1 lines through a common plane) an
/// S_n.  Points on fewer than three planes yield no singular point.
fn classify_point(
    label: &str,
    planes: &[usize],
    lines: &[EdgeId],
    edges: &[EdgeData],
) -> Result<Option<SingularPoint>, IncidenceError> {
    let mut planes: Vec<usize> = planes.to_vec();
    planes.sort_unstable();
    planes.dedup();
    let not_zappatic = || IncidenceError::NotZappatic { point: String::from(label) };

    match planes.len() {
        0 | 1 => return Ok(None),
        2 => {
            // Two surfaces through a point must cross along a curve
            // through it, not touch at the point alone.
            let (a, b) = (planes[0], planes[1]);
            let joined = lines.iter().any(|&l| (edges[l].u, edges[l].v) == (a, b));
            return if joined { Ok(None) } else { Err(not_zappatic()) };
        }
        _ => {}
    }

    let n = planes.len();
    let m = lines.len();
    let mut incident: BTreeMap<usize, Vec<EdgeId>> = planes.iter().map(|&p| (p, Vec::new())).collect();
    for &line in lines {
        for w in [edges[line].u, edges[line].v] {
            incident.get_mut(&w).ok_or_else(not_zappatic)?.push(line);
        }
    }
    let other_end = |line: EdgeId, w: usize| -> usize {
        if edges[line].u == w {
            edges[line].v
        } else {
            edges[line].u
        }
    };
    // Walk from `start` along `first`, at each plane taking the edge
    // not just used; single cycles and chains are covered completely.
    let walk = |start: usize, first: EdgeId| -> Vec<EdgeId> {
        let mut order = vec![first];
        let mut at = other_end(first, start);
        while let Some(&next) = incident[&at].iter().find(|&&l| l != *order.last().unwrap()) {
            if order.contains(&next) {
                break;
            }
            order.push(next);
            at = other_end(next, at);
        }
        order
    };

    let degree_one: Vec<usize> =
        planes.iter().copied().filter(|p| incident[p].len() == 1).collect();
    let all_degree_two = planes.iter().all(|p| incident[p].len() == 2);

    if m == n && all_degree_two {
        let start_line = *lines.iter().min().expect("n ≥ 3 lines");
        let order = walk(edges[start_line].u, start_line);
        // a shorter walk means the local graph splits into several cycles
        if order.len() == m {
            return Ok(Some(SingularPoint::e(order)));
        }
    } else if m + 1 == n && degree_one.len() == 2 {
        let chain_shaped = planes.iter().all(|p| incident[p].len() <= 2);
        if chain_shaped {
            let start = degree_one[0];
            let order = walk(start, incident[&start][0]);
            if order.len() == m {
                return Ok(Some(SingularPoint::r(order)));
            }
        }
    } else if m + 1 == n && n >= 4 {
        let centers: Vec<usize> =
            planes.iter().copied().filter(|p| incident[p].len() == m).collect();
        if centers.len() == 1 && degree_one.len() == n - 1 {
            let mut order = lines.to_vec();
            order.sort_unstable();
            return Ok(Some(SingularPoint::s(order)));
        }
    }
    Err(not_zappatic())
}

fn planar_out_of_range(family: &'static str, constraint: &'static str) -> FamilyError {
    FamilyError::ParameterOutOfRange { family, constraint }
}

/// Chain of n planes: path graph with an R₃ at each interior vertex.
pub fn chain_planes(n: usize) -> Result<ZappaticGraph, FamilyError> {
    if n < 2 {
        return Err(planar_out_of_range("chain_planes", "n ≥ 2"));
    }
    let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    let points = (0..n.saturating_sub(2)).map(|i| SingularPoint::r(vec![i, i + 1])).collect();
    Ok(ZappaticGraph::planar(n, &edges, points))
}

/// Cycle of n planes; `filled` puts a single E_n face on the cycle
/// (one n-fold point), otherwise the n crossings are R₃-points.
pub fn cycle_planes(n: usize, filled: bool) -> Result<ZappaticGraph, FamilyError> {
    if n < 3 {
        return Err(planar_out_of_range("cycle_planes", "n ≥ 3"));
    }
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((0, n - 1));
    let points = if filled {
        vec![SingularPoint::e((0..n).collect())]
    } else {
        // vertex 0 joins the closing edge n−1 to edge 0
        let mut pts = vec![SingularPoint::r(vec![0, n - 1])];
        pts.extend((1..n - 1).map(|w| SingularPoint::r(vec![w - 1, w])));
        pts.push(SingularPoint::r(vec![n - 2, n - 1]));
        Ok::<_, FamilyError>(pts)?
    };
    Ok(ZappaticGraph::planar(n, &edges, points))
}

/// Fork: n−1 planes through a common one, concurring at one S_n angle.
pub fn fork_planes(n: usize) -> Result<ZappaticGraph, FamilyError> {
    if n < 4 {
        return Err(planar_out_of_range("fork_planes", "n ≥ 4"));
    }
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (0, i)).collect();
    let points = vec![SingularPoint::s((0..n - 1).collect())];
    Ok(ZappaticGraph::planar(n, &edges, points))
}

/// Chain of n quadrics glued along ruling lines — the degeneration of
/// a rational normal scroll of degree 2n.  The two lines on a middle
/// quadric are disjoint fibres of one ruling, so there are no singular
/// points at all.
pub fn quadric_chain(n: usize) -> Result<ZappaticGraph, FamilyError> {
    if n < 2 {
        return Err(planar_out_of_range("quadric_chain", "n ≥ 2"));
    }
    let quadric = VertexWeights {
        chi: Some(1),
        k2: Some(8),
        pg: Some(0),
        q: Some(0),
        sectional_genus: Some(0),
        degree: Some(2),
    };
    let ruling_line = |u: usize, v: usize| EdgeData {
        u,
        v,
        genus: Some(0),
        degree: Some(1),
        self_int_u: Some(0),
        self_int_v: Some(0),
        normal_deg_u: Some(0),
        normal_deg_v: Some(0),
    };
    Ok(ZappaticGraph {
        mode: Mode::General,
        vertices: vec![quadric; n],
        edges: (0..n - 1).map(|i| ruling_line(i, i + 1)).collect(),
        points: Vec::new(),
    })
}

/// Union of d² planes over the triangulated side-d triangle — the
/// degeneration of the d-uple Veronese surface.  Interior lattice
/// points carry E₆-points, boundary non-corner points R₃-points.
pub fn veronese_mt(d: usize) -> Result<ZappaticGraph, FamilyError> {
    if d < 2 {
        return Err(planar_out_of_range("veronese_mt", "d ≥ 2"));
    }
    let pt = |i: usize, j: usize| i * (i + 1) / 2 + j;
    let mut labels = Vec::new();
    for i in 0..=d {
        for j in 0..=i {
            labels.push(format!("g{i}_{j}"));
        }
    }
    let mut planes = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..=i {
            planes.push(vec![pt(i, j), pt(i + 1, j), pt(i + 1, j + 1)]);
            if j < i {
                planes.push(vec![pt(i, j), pt(i, j + 1), pt(i + 1, j + 1)]);
            }
        }
    }
    Ok(IncidenceStructure::new(labels, planes).derive_graph()?)
}

/// Pillow of bidegree (a, b) with the two census readings of its four
/// corners.
///
/// Classifying the corners from the incidence data yields E₃ (the
/// three planes at a corner pairwise meet along lines through it,
/// closing a triangle); `derived_census` records that and is what
/// every invariant uses.  `alternative_census` books the corners as
/// R₃-points instead — a reading that leaves adjacent-edge pairs
/// uncovered and breaks both the pair-count identity and χ = 2, which
/// is why it is reported for comparison rather than adopted.
#[derive(Clone, Debug)]
pub struct Pillow {
    pub graph: ZappaticGraph,
    pub derived_census: SingularityCensus,
    pub alternative_census: SingularityCensus,
}

/// Two a×b grids of unit squares, each cell cut into two triangles by
/// its diagonal, glued along the shared boundary rectangle: a planar
/// degeneration of a K3 surface of sectional genus 2ab + 1.  In the
/// coordinates shared across the glued boundary the lower sheet is the
/// mirror image of the upper, so its diagonals run the other way.
pub fn pillow(a: usize, b: usize) -> Result<Pillow, FamilyError> {
    if a < 2 || b < 2 {
        return Err(planar_out_of_range("pillow", "a, b ≥ 2"));
    }
    let mut labels = Vec::new();
    let mut boundary_ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut add_boundary = |x: usize, y: usize, labels: &mut Vec<String>| {
        let id = labels.len();
        labels.push(format!("b{}", id + 1));
        boundary_ids.insert((x, y), id);
    };
    // clockwise around the rectangle from the top-left corner
    for x in 0..a {
        add_boundary(x, b, &mut labels);
    }
    for y in (1..=b).rev() {
        add_boundary(a, y, &mut labels);
    }
    for x in (1..=a).rev() {
        add_boundary(x, 0, &mut labels);
    }
    for y in 0..b {
        add_boundary(0, y, &mut labels);
    }

    let mut top_ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut bot_ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for y in 1..b {
        for x in 1..a {
            top_ids.insert((x, y), labels.len());
            labels.push(format!("t{x}_{y}"));
        }
    }
    for y in 1..b {
        for x in 1..a {
            bot_ids.insert((x, y), labels.len());
            labels.push(format!("u{x}_{y}"));
        }
    }
    let top = |x: usize, y: usize| *boundary_ids.get(&(x, y)).unwrap_or_else(|| &top_ids[&(x, y)]);
    let bot = |x: usize, y: usize| *boundary_ids.get(&(x, y)).unwrap_or_else(|| &bot_ids[&(x, y)]);

    let mut planes = Vec::with_capacity(4 * a * b);
    for y in 0..b {
        for x in 0..a {
            // upper sheet: diagonal from (x, y) to (x+1, y+1)
            planes.push(vec![top(x, y), top(x + 1, y), top(x + 1, y + 1)]);
            planes.push(vec![top(x, y), top(x + 1, y + 1), top(x, y + 1)]);
        }
    }
    for y in 0..b {
        for x in 0..a {
            // lower sheet, mirrored: diagonal from (x, y+1) to (x+1, y)
            planes.push(vec![bot(x, y), bot(x + 1, y), bot(x, y + 1)]);
            planes.push(vec![bot(x + 1, y), bot(x + 1, y + 1), bot(x, y + 1)]);
        }
    }

    let graph = IncidenceStructure::new(labels, planes).derive_graph()?;
    let derived_census = counts(&graph);
    let mut alternative_census = derived_census.clone();
    let corners = alternative_census.f_n.remove(&3).unwrap_or(0);
    if corners > 0 {
        alternative_census.f -= corners;
        *alternative_census.r_n.entry(3).or_insert(0) += corners;
        alternative_census.r += corners;
        *alternative_census.rho_n.entry(3).or_insert(0) += corners;
    }
    Ok(Pillow { graph, derived_census, alternative_census })
}

/// Torus grid: n×m cells with wraparound, each cut into two triangles
/// — the degeneration of an abelian surface of degree 2nm, with one
/// E₆-point per lattice point and nothing else.
///
/// Wraparound makes distinct lines repeat point pairs (already at
/// n = 2 the two horizontal segments of a row join the same two
/// lattice points), so the lines are listed explicitly instead of
/// being derived from shared points; classification is unchanged.
pub fn abelian_grid(n: usize, m: usize) -> Result<ZappaticGraph, FamilyError> {
    if n < 2 || m < 2 {
        return Err(planar_out_of_range("abelian_grid", "n, m ≥ 2"));
    }
    let lower = |x: usize, y: usize| 2 * (y * n + x);
    let upper = |x: usize, y: usize| 2 * (y * n + x) + 1;
    let pid = |x: usize, y: usize| (y % m) * n + (x % n);

    let mut edges: Vec<EdgeData> = Vec::with_capacity(3 * n * m);
    let mut point_lines: Vec<Vec<EdgeId>> = vec![Vec::new(); n * m];
    let mut point_planes: Vec<Vec<usize>> = vec![Vec::new(); n * m];
    for y in 0..m {
        for x in 0..n {
            let xm = (x + n - 1) % n;
            let ym = (y + m - 1) % m;
            // horizontal, vertical, and diagonal line of the cell
            let cell_lines = [
                (lower(x, y), upper(x, ym), pid(x, y), pid(x + 1, y)),
                (upper(x, y), lower(xm, y), pid(x, y), pid(x, y + 1)),
                (lower(x, y), upper(x, y), pid(x, y), pid(x + 1, y + 1)),
            ];
            for (pa, pb, qa, qb) in cell_lines {
                let eid = edges.len();
                edges.push(EdgeData::planar(pa.min(pb), pa.max(pb)));
                point_lines[qa].push(eid);
                point_lines[qb].push(eid);
            }
            let cell_planes = [
                (lower(x, y), [pid(x, y), pid(x + 1, y), pid(x + 1, y + 1)]),
                (upper(x, y), [pid(x, y), pid(x + 1, y + 1), pid(x, y + 1)]),
            ];
            for (plane, corners) in cell_planes {
                for c in corners {
                    point_planes[c].push(plane);
                }
            }
        }
    }

    let mut points = Vec::with_capacity(n * m);
    for p in 0..n * m {
        let label = format!("p{}_{}", p % n, p / n);
        let sp = classify_point(&label, &point_planes[p], &point_lines[p], &edges)
            .map_err(FamilyError::Incidence)?
            .expect("every torus lattice point lies on six planes");
        points.push(sp);
    }

    Ok(ZappaticGraph {
        mode: Mode::Planar,
        vertices: vec![VertexWeights::planar(); 2 * n * m],
        edges,
        points,
    })
}

/// Two quadrics and a plane meeting pairwise along conics and a
/// quartic, with four common triple points — numerically a quintic
/// surface (degree 5, g 6, χ 5, K² 5).  The four E₃-points give four
/// parallel faces on one edge triple.
pub fn two_quadrics_plane() -> ZappaticGraph {
    let quadric = VertexWeights {
        chi: Some(1),
        k2: Some(8),
        pg: Some(0),
        q: Some(0),
        sectional_genus: Some(0),
        degree: Some(2),
    };
    let edge = |u: usize, v: usize, genus: u64, degree: u64, si_u: i64, si_v: i64| EdgeData {
        u,
        v,
        genus: Some(genus),
        degree: Some(degree),
        self_int_u: Some(si_u),
        self_int_v: Some(si_v),
        normal_deg_u: Some(si_u),
        normal_deg_v: Some(si_v),
    };
    ZappaticGraph {
        mode: Mode::General,
        vertices: vec![quadric.clone(), quadric, VertexWeights::planar()],
        edges: vec![
            // quadric ∩ quadric: elliptic quartic, a (2,2)-curve on each
            edge(0, 1, 1, 4, 8, 8),
            // quadric ∩ plane: a conic, (1,1) on the quadric, conic in the plane
            edge(0, 2, 0, 2, 2, 4),
            edge(1, 2, 0, 2, 2, 4),
        ],
        points: (0..4).map(|_| SingularPoint::e(vec![0, 1, 2])).collect(),
    }
}

/// Path of four planes with a pendant fifth and one R₄ along the path;
/// inference adds the two R₃-points at the branch vertex.  K² comes
/// out in [9, 10] although no smooth surface fits the rest of its
/// invariants — the standard non-smoothable configuration.
pub fn nonsmooth_example() -> ZappaticGraph {
    ZappaticGraph::planar(
        5,
        &[(0, 1), (1, 2), (2, 3), (2, 4)],
        vec![SingularPoint::r(vec![0, 1, 2])],
    )
}

/// Stick-curve kinds: chains (R), forks (S), cycles (E), or explicit
/// trees (T) / unicyclic graphs (Z).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StickKind {
    R,
    S,
    E,
    T,
    Z,
}

/// Dual graph of a stick curve: one vertex per line (genus 0, degree
/// 1), one edge per node.  The arithmetic genus is the sectional genus
/// of this graph: 0 for chains, forks and trees, 1 for cycles.
pub fn stick_curve_graph(
    kind: StickKind,
    n: usize,
    adjacency: Option<&[(usize, usize)]>,
) -> Result<ZappaticGraph, FamilyError> {
    let line = VertexWeights {
        chi: None,
        k2: None,
        pg: None,
        q: None,
        sectional_genus: Some(0),
        degree: Some(1),
    };
    let node = |u: usize, v: usize| EdgeData {
        u,
        v,
        genus: Some(0),
        degree: Some(1),
        self_int_u: None,
        self_int_v: None,
        normal_deg_u: None,
        normal_deg_v: None,
    };
    let pairs: Vec<(usize, usize)> = match kind {
        StickKind::R => {
            if n < 3 {
                return Err(planar_out_of_range("stick chain", "n ≥ 3"));
            }
            (0..n - 1).map(|i| (i, i + 1)).collect()
        }
        StickKind::S => {
            if n < 4 {
                return Err(planar_out_of_range("stick fork", "n ≥ 4"));
            }
            (1..n).map(|i| (0, i)).collect()
        }
        StickKind::E => {
            if n < 3 {
                return Err(planar_out_of_range("stick cycle", "n ≥ 3"));
            }
            let mut p: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
            p.push((0, n - 1));
            p
        }
        StickKind::T | StickKind::Z => {
            let Some(adjacency) = adjacency else {
                return Err(FamilyError::AdjacencyRequired);
            };
            let mut seen = BTreeSet::new();
            let mut p = Vec::with_capacity(adjacency.len());
            for &(u, v) in adjacency {
                let (u, v) = (u.min(v), u.max(v));
                if u == v {
                    return Err(FamilyError::BadAdjacency {
                        reason: format!("loop at vertex {u}"),
                    });
                }
                if v >= n {
                    return Err(FamilyError::BadAdjacency {
                        reason: format!("vertex {v} out of range for {n} vertices"),
                    });
                }
                if !seen.insert((u, v)) {
                    return Err(FamilyError::BadAdjacency {
                        reason: format!("edge ({u}, {v}) listed twice"),
                    });
                }
                p.push((u, v));
            }
            p.sort_unstable();
            p
        }
    };

    let graph = ZappaticGraph {
        mode: Mode::General,
        vertices: vec![line; n],
        edges: pairs.iter().map(|&(u, v)| node(u, v)).collect(),
        points: Vec::new(),
    };
    match kind {
        StickKind::T if !graph.is_connected() || graph.edges.len() != n - 1 => {
            Err(FamilyError::NotATree)
        }
        StickKind::Z if !graph.is_connected() || graph.edges.len() != n => {
            Err(FamilyError::NotUnicyclic)
        }
        _ => Ok(graph),
    }
}

/// Deterministic pseudo-random validated planar graph: a random
/// connected simple graph, a greedy random cover by E₃ faces, angles
/// and R₄ chains, and R₃ inference over whatever pairs remain.  Sizes
/// below 2 are raised to 2; the same seed always yields the same
/// graph.
pub fn random_planar_config(seed: u64, size: usize) -> ZappaticGraph {
    let size = size.max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let g = random_attempt(&mut rng, size);
        if validate(&g).pass() {
            return g;
        }
    }
    unreachable!("cover placement only ever claims uncovered pairs");
}

fn random_attempt(rng: &mut ChaCha8Rng, v: usize) -> ZappaticGraph {
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 1..v {
        pairs.insert((rng.gen_range(0..i), i));
    }
    for _ in 0..rng.gen_range(0..=v / 2) {
        let a = rng.gen_range(0..v);
        let b = rng.gen_range(0..v);
        if a != b {
            pairs.insert((a.min(b), a.max(b)));
        }
    }
    let edge_list: Vec<(usize, usize)> = pairs.into_iter().collect();
    let skeleton = ZappaticGraph::planar(v, &edge_list, Vec::new());

    let mut covered: BTreeSet<(usize, EdgeId, EdgeId)> = BTreeSet::new();
    let claim = |covered: &mut BTreeSet<(usize, EdgeId, EdgeId)>,
                 wanted: &[(usize, EdgeId, EdgeId)]| {
        if wanted.iter().any(|k| covered.contains(k)) {
            return false;
        }
        covered.extend(wanted.iter().copied());
        true
    };
    let key = |w: usize, a: EdgeId, b: EdgeId| (w, a.min(b), a.max(b));
    let mut points = Vec::new();

    // triangles → E₃ faces
    let e = edge_list.len();
    for i in 0..e {
        for j in i + 1..e {
            for k in j + 1..e {
                let (u1, v1) = edge_list[i];
                let (u2, v2) = edge_list[j];
                let (u3, v3) = edge_list[k];
                let mut verts = vec![u1, v1, u2, v2, u3, v3];
                verts.sort_unstable();
                verts.dedup();
                if verts.len() != 3 || !rng.gen_bool(0.5) {
                    continue;
                }
                // order the three edges so consecutive ones share a vertex
                let (a, b, c) = if shared(edge_list[i], edge_list[j]).is_some() {
                    (i, j, k)
                } else {
                    (i, k, j)
                };
                let wanted = [
                    key(shared(edge_list[a], edge_list[b]).unwrap(), a, b),
                    key(shared(edge_list[b], edge_list[c]).unwrap(), b, c),
                    key(shared(edge_list[c], edge_list[a]).unwrap(), c, a),
                ];
                if claim(&mut covered, &wanted) {
                    points.push(SingularPoint::e(vec![a, b, c]));
                }
            }
        }
    }

    // high-valence vertices → angles
    for w in 0..v {
        let inc = skeleton.incident_edges(w);
        if inc.len() < 3 || !rng.gen_bool(0.4) {
            continue;
        }
        let take = rng.gen_range(3..=inc.len());
        let mut chosen = inc;
        for i in 0..take {
            let j = rng.gen_range(i..chosen.len());
            chosen.swap(i, j);
        }
        chosen.truncate(take);
        chosen.sort_unstable();
        let mut wanted = Vec::new();
        for i in 0..take {
            for j in i + 1..take {
                wanted.push(key(w, chosen[i], chosen[j]));
            }
        }
        if claim(&mut covered, &wanted) {
            points.push(SingularPoint::s(chosen));
        }
    }

    // three-edge paths → R₄ chains (these widen the K² interval)
    for mid in 0..e {
        if !rng.gen_bool(0.3) {
            continue;
        }
        let (b, c) = edge_list[mid];
        let at_b = skeleton.incident_edges(b);
        let at_c = skeleton.incident_edges(c);
        let first = at_b.iter().copied().find(|&x| x != mid);
        let last = at_c.iter().copied().find(|&x| x != mid);
        let (Some(first), Some(last)) = (first, last) else { continue };
        if first == last {
            continue;
        }
        let a = other(edge_list[first], b);
        let d = other(edge_list[last], c);
        let mut verts = vec![a, b, c, d];
        verts.sort_unstable();
        verts.dedup();
        if verts.len() != 4 {
            continue;
        }
        let wanted = [key(b, first, mid), key(c, mid, last)];
        if claim(&mut covered, &wanted) {
            points.push(SingularPoint::r(vec![first, mid, last]));
        }
    }

    infer_r3(&ZappaticGraph::planar(v, &edge_list, points))
}

fn shared(a: (usize, usize), b: (usize, usize)) -> Option<usize> {
    if a.0 == b.0 || a.0 == b.1 {
        Some(a.0)
    } else if a.1 == b.0 || a.1 == b.1 {
        Some(a.1)
    } else {
        None
    }
}

fn other(e: (usize, usize), w: usize) -> usize {
    if e.0 == w {
        e.1
    } else {
        e.0
    }
}

/// Census profile of the degenerate scrolls of degree d and sectional
/// genus g: d plane vertices, d + g − 1 edges, d − 2g + 2 points R₃
/// and 2g − 2 points S₄.  Feasibility checks that some valence vector
/// on d vertices with Σw = 2e can meet the pair-count identity; the
/// minimum of Σ C(w_i, 2) is attained by the most even distribution
/// and the maximum by the most skewed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScrollProfile {
    pub vertices: u64,
    pub edges: u64,
    pub r3: u64,
    pub s4: u64,
    pub pair_target: u64,
    pub pair_min: u64,
    pub pair_max: u64,
    pub feasible: bool,
}

pub fn scroll_profile(d: u64, g: u64) -> Result<ScrollProfile, FamilyError> {
    if g < 1 {
        return Err(planar_out_of_range("scroll_profile", "g ≥ 1"));
    }
    if d < 3 || d + 2 < 2 * g {
        return Err(planar_out_of_range("scroll_profile", "d ≥ 3 and d ≥ 2g − 2"));
    }
    let (v, e) = (d, d + g - 1);
    let w = 2 * e;
    let r3 = d + 2 - 2 * g;
    let s4 = 2 * g - 2;
    let pair_target = r3 + 3 * s4;
    let c2 = |k: u64| k * k.saturating_sub(1) / 2;
    let (q, rem) = (w / v, w % v);
    let pair_min = rem * c2(q + 1) + (v - rem) * c2(q);
    let pair_max = c2(w - v + 1);
    Ok(ScrollProfile {
        vertices: v,
        edges: e,
        r3,
        s4,
        pair_target,
        pair_min,
        pair_max,
        feasible: pair_min <= pair_target && pair_target <= pair_max,
    })
}
