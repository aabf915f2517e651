//! Smoothability obstructions.
//!
//! The Multiple Point Formula bounds, for each double curve γ = C_ij
//! of the central fibre of a good Zappatic degeneration, the number
//! d_γ ≥ 0 of double points of the total space along γ:
//!
//! ```text
//! deg N_{γ|X_i} + deg N_{γ|X_j} + f₃(γ) − r₃(γ) − Σ_{n≥4} (ρ_n(γ) + f_n(γ)) ≥ d_γ ≥ 0,
//! ```
//!
//! so a negative left-hand side on any edge rules the degeneration
//! out.  Summing the planar form (normal degrees 1) over the edges
//! gives the global bound 2e + 3f₃ − 2r₃ − Σ_{n≥4} n f_n −
//! Σ_{n≥4} (n−1) ρ_n ≥ d_X ≥ 0.  When the configuration is global
//! normal crossings (only E₃-points) the inequality along each edge is
//! an equality — the Triple Point Formula — and d_γ is predicted
//! exactly.
//!
//! Two inequalities constrain the invariants themselves, both for
//! planar degenerations: Zappa's bound K² ≤ 8χ + 1 − g whenever the
//! singularities are at most R₃, E₃, E₄, E₅ (with equality only for
//! the degenerate Veronese fork and for cycles of n ≥ 5 planes), and
//! the degenerate Miyaoka–Yau bound K² ≤ 9χ whenever they are at most
//! R₃ and E_m, m ≤ 6.
//!
//! A planar degeneration of a smooth K3 gets its own profile: a
//! 3-valent graph with v = 2g−2, e = 3g−3, f = g+1, only E-points,
//! satisfying Σ_n (6−n) f_n = 12 — which caps the genus at 11 as soon
//! as no face has order > 5.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{
    counts, edge_local_census, infer_r3, EdgeId, Mode, SingularityCensus, ZappaticGraph,
};
use crate::invariants::{k2_interval_with_census, InvariantError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObstructionError {
    UnknownEdge(EdgeId),
    MissingNormalDegree { edge: EdgeId },
    Invariant(InvariantError),
}

impl fmt::Display for ObstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObstructionError::UnknownEdge(e) => write!(f, "unknown edge {e}"),
            ObstructionError::MissingNormalDegree { edge } => {
                write!(f, "edge {edge} is missing a normal-bundle degree")
            }
            ObstructionError::Invariant(e) => write!(f, "{e}"),
        }
    }
}

impl From<InvariantError> for ObstructionError {
    fn from(e: InvariantError) -> Self {
        ObstructionError::Invariant(e)
    }
}

/// Upper bound of the Multiple Point Formula along one edge; the
/// degeneration is obstructed when this is negative.
pub fn mpf_edge(g: &ZappaticGraph, edge: EdgeId) -> Result<i64, ObstructionError> {
    if edge >= g.edges.len() {
        return Err(ObstructionError::UnknownEdge(edge));
    }
    let normal_sum = if g.mode == Mode::Planar {
        2
    } else {
        let e = &g.edges[edge];
        let nu = e.normal_deg_u.ok_or(ObstructionError::MissingNormalDegree { edge })?;
        let nv = e.normal_deg_v.ok_or(ObstructionError::MissingNormalDegree { edge })?;
        nu + nv
    };
    let local = edge_local_census(g, edge);
    let mut bound = normal_sum + local.f_of(3) as i64 - local.r_of(3) as i64;
    for (&n, &c) in &local.f_n {
        if n >= 4 {
            bound -= c as i64;
        }
    }
    for (&n, &c) in &local.r_n {
        if n >= 4 {
            bound -= c as i64;
        }
    }
    for (&n, &c) in &local.s_n {
        if n >= 4 {
            bound -= c as i64;
        }
    }
    Ok(bound)
}

/// Global Multiple Point Formula bound for planar graphs:
/// 2e + 3f₃ − 2r₃ − Σ_{n≥4} n f_n − Σ_{n≥4} (n−1) ρ_n.
/// `None` off-plane.
pub fn mpf_global(g: &ZappaticGraph) -> Option<i64> {
    if g.mode != Mode::Planar {
        return None;
    }
    let census = counts(g);
    let mut bound = 2 * census.e as i64 + 3 * census.f_of(3) as i64 - 2 * census.r_of(3) as i64;
    for (&n, &c) in &census.f_n {
        if n >= 4 {
            bound -= n as i64 * c as i64;
        }
    }
    for (&n, &c) in &census.rho_n {
        if n >= 4 {
            bound -= (n as i64 - 1) * c as i64;
        }
    }
    Some(bound)
}

/// Exact number of total-space double points along an edge when the
/// configuration is global normal crossings (only E₃-points):
/// d_γ = deg N₁ + deg N₂ + f₃(γ).  `None` when other singularities are
/// present or a needed normal degree is missing.
pub fn tpf_predicted_double_points(g: &ZappaticGraph, edge: EdgeId) -> Option<i64> {
    if edge >= g.edges.len() {
        return None;
    }
    let census = counts(g);
    let only_e3 =
        census.r == 0 && census.s == 0 && census.f_n.keys().all(|&n| n == 3);
    if !only_e3 {
        return None;
    }
    let normal_sum = if g.mode == Mode::Planar {
        2
    } else {
        let e = &g.edges[edge];
        e.normal_deg_u? + e.normal_deg_v?
    };
    Some(normal_sum + edge_local_census(g, edge).f_of(3) as i64)
}

/// The equality cases of Zappa's bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqualityClass {
    /// Four planes forking out of one, three R₃-points: the Veronese
    /// surface degenerates this way.
    VeroneseS4,
    /// Cycle of n ≥ 5 planes with n R₃-points: the degenerate elliptic
    /// scrolls.
    EllipticCycle,
    /// Equality holds but the graph is neither — no good planar
    /// Zappatic degeneration has this central fibre.
    Other,
}

impl EqualityClass {
    pub fn warning(&self) -> Option<&'static str> {
        match self {
            EqualityClass::Other => Some(
                "graph attains Zappa's bound but is neither the Veronese fork nor a cycle of ≥ 5 planes; no good planar Zappatic degeneration realizes it",
            ),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZappaRecord {
    NotApplicable { reason: &'static str },
    Applicable {
        /// 8χ + 1 − g − K²max
        slack_min: i64,
        /// 8χ + 1 − g − K²min
        slack_max: i64,
        /// `Some` exactly when the bound is attained (slack_max = 0)
        equality_class: Option<EqualityClass>,
    },
}

impl ZappaRecord {
    pub fn exceeded(&self) -> bool {
        matches!(self, ZappaRecord::Applicable { slack_max, .. } if *slack_max < 0)
    }
}

fn classify_equality(census: &SingularityCensus) -> EqualityClass {
    let only = |census: &SingularityCensus, r3: u64| -> bool {
        census.s == 0
            && census.f == 0
            && census.r == r3
            && census.r_of(3) == r3
    };
    let mut valences = census.valences.clone();
    valences.sort_unstable();
    if census.v == 4 && census.e == 3 && only(census, 3) && valences == [1, 1, 1, 3] {
        return EqualityClass::VeroneseS4;
    }
    if census.v >= 5
        && census.e == census.v
        && only(census, census.v)
        && valences.iter().all(|&w| w == 2)
    {
        return EqualityClass::EllipticCycle;
    }
    EqualityClass::Other
}

/// Zappa's bound K² ≤ 8χ + 1 − g, applicable to planar graphs whose
/// singular points are at most R₃, E₃, E₄, E₅ (the hypothesis makes
/// the K² interval a single value, so slack_min = slack_max).
pub fn zappa_bound(g: &ZappaticGraph) -> ZappaRecord {
    if g.mode != Mode::Planar {
        return ZappaRecord::NotApplicable { reason: "graph is not planar" };
    }
    let census = counts(g);
    let within = census.s == 0
        && census.r_n.keys().all(|&n| n == 3)
        && census.f_n.keys().all(|&n| (3..=5).contains(&n));
    if !within {
        return ZappaRecord::NotApplicable {
            reason: "singular points are not all among R₃, E₃, E₄, E₅",
        };
    }
    let chi = g.vertices.len() as i64 - g.edges.len() as i64 + census.f as i64;
    let sg = g.edges.len() as i64 - g.vertices.len() as i64 + 1;
    let k2 = k2_interval_with_census(g, &census).expect("planar K² is always determined");
    let slack_min = 8 * chi + 1 - sg - k2.max;
    let slack_max = 8 * chi + 1 - sg - k2.min;
    let equality_class = (slack_max == 0).then(|| classify_equality(&census));
    ZappaRecord::Applicable { slack_min, slack_max, equality_class }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MiyaokaYau {
    NotApplicable { reason: &'static str },
    Applicable {
        /// bound holds for K² at the interval minimum
        satisfied_min: bool,
        /// bound holds for K² at the interval maximum
        satisfied_max: bool,
    },
}

impl MiyaokaYau {
    /// Violated even by the most favorable value in the K² interval.
    pub fn hopeless(&self) -> bool {
        matches!(self, MiyaokaYau::Applicable { satisfied_min: false, .. })
    }
}

/// Degenerate Miyaoka–Yau bound K² ≤ 9χ, applicable to planar graphs
/// whose singular points are at most R₃ and E_m with m ≤ 6.
pub fn miyaoka_yau(g: &ZappaticGraph) -> MiyaokaYau {
    if g.mode != Mode::Planar {
        return MiyaokaYau::NotApplicable { reason: "graph is not planar" };
    }
    let census = counts(g);
    let within = census.s == 0
        && census.r_n.keys().all(|&n| n == 3)
        && census.f_n.keys().all(|&n| n <= 6);
    if !within {
        return MiyaokaYau::NotApplicable {
            reason: "singular points are not all among R₃ and E_m (m ≤ 6)",
        };
    }
    let chi = g.vertices.len() as i64 - g.edges.len() as i64 + census.f as i64;
    let k2 = k2_interval_with_census(g, &census).expect("planar K² is always determined");
    MiyaokaYau::Applicable {
        satisfied_min: k2.min <= 9 * chi,
        satisfied_max: k2.max <= 9 * chi,
    }
}

/// How a census compares against the count relations a planar
/// degeneration of a smooth K3 must satisfy, with g = e − v + 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3Profile {
    pub genus: i64,
    pub three_valent: bool,
    /// v = 2g − 2
    pub v_matches: bool,
    /// e = 3g − 3
    pub e_matches: bool,
    /// f = g + 1
    pub f_matches: bool,
    /// Σ_n (6 − n) f_n = 12
    pub face_identity: bool,
    /// g ≤ 11; only meaningful (Some) when f_n = 0 for all n ≥ 6
    pub genus_cap: Option<bool>,
}

impl K3Profile {
    pub fn pass(&self) -> bool {
        self.three_valent
            && self.v_matches
            && self.e_matches
            && self.f_matches
            && self.face_identity
            && self.genus_cap.unwrap_or(true)
    }
}

pub fn k3_profile(g: &ZappaticGraph) -> K3Profile {
    k3_profile_from_census(&counts(g))
}

/// Same relations straight off a census, for profiles with no graph
/// behind them (candidate count vectors, hypothetical configurations).
pub fn k3_profile_from_census(census: &SingularityCensus) -> K3Profile {
    let genus = census.e as i64 - census.v as i64 + 1;
    let face_weight: i64 = census.f_n.iter().map(|(&n, &c)| (6 - n as i64) * c as i64).sum();
    let no_big_faces = census.f_n.keys().all(|&n| n < 6);
    K3Profile {
        genus,
        three_valent: census.valences.iter().all(|&w| w == 3),
        v_matches: census.v as i64 == 2 * genus - 2,
        e_matches: census.e as i64 == 3 * genus - 3,
        f_matches: census.f as i64 == genus + 1,
        face_identity: face_weight == 12,
        genus_cap: no_big_faces.then_some(genus <= 11),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeMpf {
    pub edge: EdgeId,
    pub upper_bound: i64,
    pub violated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    NoObstructionFound,
    Obstructed { reasons: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub per_edge: Vec<EdgeMpf>,
    pub global_mpf_upper: Option<i64>,
    pub zappa: ZappaRecord,
    pub miyaoka_yau: MiyaokaYau,
    pub verdict: Verdict,
}

impl ObstructionReport {
    pub fn obstructed(&self) -> bool {
        matches!(self.verdict, Verdict::Obstructed { .. })
    }
}

/// Run every obstruction check.  Planar input passes through R₃
/// inference first (idempotent); the graph is otherwise assumed
/// validated.  Checks whose hypotheses the graph does not meet come
/// back not-applicable rather than failing the whole report; in
/// particular `per_edge` lists only edges whose normal degrees are
/// known (in planar mode, all of them).
pub fn obstruction_report(g: &ZappaticGraph) -> Result<ObstructionReport, ObstructionError> {
    let owned;
    let g = if g.mode == Mode::Planar {
        owned = infer_r3(g);
        &owned
    } else {
        g
    };
    let mut reasons = Vec::new();
    let mut per_edge = Vec::with_capacity(g.edges.len());
    for edge in 0..g.edges.len() {
        let upper_bound = match mpf_edge(g, edge) {
            Ok(b) => b,
            Err(ObstructionError::MissingNormalDegree { .. }) => continue,
            Err(e) => return Err(e),
        };
        let violated = upper_bound < 0;
        if violated {
            reasons.push(format!(
                "Multiple Point Formula fails on edge {edge}: upper bound {upper_bound} < 0"
            ));
        }
        per_edge.push(EdgeMpf { edge, upper_bound, violated });
    }
    let global_mpf_upper = mpf_global(g);
    if let Some(bound) = global_mpf_upper {
        if bound < 0 {
            reasons.push(format!("global Multiple Point Formula bound is {bound} < 0"));
        }
    }
    let zappa = zappa_bound(g);
    if zappa.exceeded() {
        reasons.push(String::from("K² exceeds Zappa's bound 8χ + 1 − g"));
    }
    let miyaoka = miyaoka_yau(g);
    if miyaoka.hopeless() {
        reasons.push(String::from("K² exceeds the Miyaoka–Yau bound 9χ"));
    }
    let verdict = if reasons.is_empty() {
        Verdict::NoObstructionFound
    } else {
        Verdict::Obstructed { reasons }
    };
    Ok(ObstructionReport { per_edge, global_mpf_upper, zappa, miyaoka_yau: miyaoka, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{validate, SingularPoint, ZappaticGraph};
    use alloc::collections::BTreeMap;
    use alloc::vec;
    use alloc::vec::Vec;

    /// Center of valence 4 whose angle swallows three edges while the
    /// three R₃ against the fourth edge pile onto it: the fourth edge
    /// fails the Multiple Point Formula.
    fn star_obstruction() -> ZappaticGraph {
        ZappaticGraph::planar(
            5,
            &[(0, 1), (0, 2), (0, 3), (0, 4)],
            vec![
                SingularPoint::s(vec![1, 2, 3]),
                SingularPoint::r(vec![0, 1]),
                SingularPoint::r(vec![0, 2]),
                SingularPoint::r(vec![0, 3]),
            ],
        )
    }

    fn cycle(n: usize, filled: bool) -> ZappaticGraph {
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n - 1));
        let points = if filled {
            vec![SingularPoint::e((0..n).collect())]
        } else {
            vec![]
        };
        infer_r3(&ZappaticGraph::planar(n, &edges, points))
    }

    fn s4_fork() -> ZappaticGraph {
        ZappaticGraph::planar(
            4,
            &[(0, 1), (0, 2), (0, 3)],
            vec![
                SingularPoint::r(vec![0, 1]),
                SingularPoint::r(vec![0, 2]),
                SingularPoint::r(vec![1, 2]),
            ],
        )
    }

    #[test]
    fn star_obstruction_fails_mpf_on_the_lone_edge() {
        let g = star_obstruction();
        assert!(validate(&g).pass());
        assert_eq!(mpf_edge(&g, 0).unwrap(), -1); // 2 + 0 − 3 − 0
        for edge in 1..4 {
            assert_eq!(mpf_edge(&g, edge).unwrap(), 0); // 2 − 1 − 1
        }
        let report = obstruction_report(&g).unwrap();
        assert!(report.obstructed());
        assert!(report.per_edge[0].violated);
        assert_eq!(report.per_edge.iter().filter(|e| e.violated).count(), 1);
    }

    #[test]
    fn filled_cycle_passes_mpf() {
        let g = cycle(5, true);
        for edge in 0..5 {
            assert_eq!(mpf_edge(&g, edge).unwrap(), 1); // 2 + 0 − 0 − 1
        }
        assert_eq!(mpf_global(&g).unwrap(), 5); // 10 + 0 − 0 − 5 − 0
        assert!(!obstruction_report(&g).unwrap().obstructed());
    }

    #[test]
    fn global_bound_expands_as_edge_sum() {
        for g in [cycle(6, false), cycle(6, true), s4_fork(), star_obstruction()] {
            let total: i64 = (0..g.edges.len()).map(|e| mpf_edge(&g, e).unwrap()).sum();
            assert_eq!(mpf_global(&g).unwrap(), total);
        }
    }

    #[test]
    fn zappa_equality_classification() {
        match zappa_bound(&s4_fork()) {
            ZappaRecord::Applicable { slack_min: 0, slack_max: 0, equality_class } => {
                assert_eq!(equality_class, Some(EqualityClass::VeroneseS4));
            }
            other => panic!("unexpected record {other:?}"),
        }
        for n in 5..=9 {
            match zappa_bound(&cycle(n, false)) {
                ZappaRecord::Applicable { slack_max: 0, equality_class, .. } => {
                    assert_eq!(equality_class, Some(EqualityClass::EllipticCycle), "n = {n}");
                }
                other => panic!("unexpected record {other:?}"),
            }
        }
        // Cycles of 3 or 4 planes also attain the bound, but are not
        // central fibres of any good planar degeneration.
        for n in 3..=4 {
            match zappa_bound(&cycle(n, false)) {
                ZappaRecord::Applicable { equality_class: Some(class), .. } => {
                    assert_eq!(class, EqualityClass::Other, "n = {n}");
                    assert!(class.warning().is_some());
                }
                other => panic!("unexpected record {other:?}"),
            }
        }
    }

    #[test]
    fn zappa_guard_excludes_angles_and_big_faces() {
        let fork_angle = ZappaticGraph::planar(
            4,
            &[(0, 1), (0, 2), (0, 3)],
            vec![SingularPoint::s(vec![0, 1, 2])],
        );
        assert!(matches!(zappa_bound(&fork_angle), ZappaRecord::NotApplicable { .. }));
        assert!(matches!(zappa_bound(&cycle(6, true)), ZappaRecord::NotApplicable { .. }));
    }

    #[test]
    fn chain_has_positive_slack() {
        let chain: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 1)).collect();
        let g = infer_r3(&ZappaticGraph::planar(6, &chain, vec![]));
        match zappa_bound(&g) {
            ZappaRecord::Applicable { slack_min, slack_max, equality_class } => {
                assert_eq!((slack_min, slack_max), (1, 1)); // 8 + 1 − 0 − 8
                assert_eq!(equality_class, None);
            }
            other => panic!("unexpected record {other:?}"),
        }
    }

    #[test]
    fn miyaoka_yau_guard_and_equality() {
        // Filled E₅ cycle: K² = 5 ≤ 9χ = 9.
        match miyaoka_yau(&cycle(5, true)) {
            MiyaokaYau::Applicable { satisfied_min, satisfied_max } => {
                assert!(satisfied_min && satisfied_max);
            }
            other => panic!("unexpected record {other:?}"),
        }
        // An E₇ face puts the graph outside the hypothesis.
        assert!(matches!(miyaoka_yau(&cycle(7, true)), MiyaokaYau::NotApplicable { .. }));
    }

    #[test]
    fn tpf_only_fires_for_pure_triple_points() {
        let g = cycle(5, true); // one E₅ face
        assert_eq!(tpf_predicted_double_points(&g, 0), None);
        let triangle = ZappaticGraph::planar(
            3,
            &[(0, 1), (0, 2), (1, 2)],
            vec![SingularPoint::e(vec![0, 2, 1])],
        );
        assert_eq!(tpf_predicted_double_points(&triangle, 0), Some(3)); // 1 + 1 + 1
        // On the star obstruction graph the census has R and S points.
        assert_eq!(tpf_predicted_double_points(&star_obstruction(), 0), None);
    }

    #[test]
    fn k3_profile_relations() {
        // The fork is nowhere near a K3 profile.
        let profile = k3_profile(&s4_fork());
        assert!(!profile.pass());
        assert!(!profile.three_valent);
        // A hypothetical profile with g = 12 and no faces of order ≥ 6
        // fails the genus cap no matter how the faces are split.
        let mut f_n = BTreeMap::new();
        f_n.insert(5usize, 13u64);
        let census = SingularityCensus {
            v: 22,
            e: 33,
            e_tilde: 33,
            f_n,
            f: 13,
            valences: vec![3; 22],
            ..SingularityCensus::default()
        };
        let profile = k3_profile_from_census(&census);
        assert_eq!(profile.genus, 12);
        assert_eq!(profile.genus_cap, Some(false));
        assert!(!profile.pass());
    }

    #[test]
    fn report_stays_quiet_on_good_graphs() {
        for g in [s4_fork(), cycle(7, false), cycle(5, true)] {
            let report = obstruction_report(&g).unwrap();
            assert!(!report.obstructed(), "graph {g:?}");
        }
    }

    #[test]
    fn global_bound_is_the_edge_sum_on_random_graphs() {
        // expanding the per-edge form over all edges collects each
        // point n, n−1 or n−1 times — exactly the global coefficients
        for seed in 0..100u64 {
            let g = crate::families::random_planar_config(seed, 2 + (seed as usize % 11));
            let sum: i64 = (0..g.edges.len()).map(|e| mpf_edge(&g, e).unwrap()).sum();
            assert_eq!(mpf_global(&g), Some(sum), "seed {seed}");
        }
    }

    #[test]
    fn verdicts_invariant_under_relabeling() {
        use crate::graph::{relabel, test_permutation};
        let mut graphs: Vec<ZappaticGraph> = (0..20u64)
            .map(|seed| crate::families::random_planar_config(seed, 4 + (seed as usize % 8)))
            .collect();
        graphs.push(star_obstruction());
        for (i, g) in graphs.iter().enumerate() {
            let g = if g.mode == Mode::Planar { infer_r3(g) } else { g.clone() };
            let vperm = test_permutation(g.vertices.len(), i as u64);
            let eperm = test_permutation(g.edges.len(), i as u64 + 99);
            let h = relabel(&g, &vperm, &eperm);
            let (a, b) = (obstruction_report(&g).unwrap(), obstruction_report(&h).unwrap());
            assert_eq!(a.obstructed(), b.obstructed(), "graph {i}");
            assert_eq!(a.global_mpf_upper, b.global_mpf_upper);
            assert_eq!(a.zappa, b.zappa);
            assert_eq!(a.miyaoka_yau, b.miyaoka_yau);
            let mut bounds_a: Vec<i64> = a.per_edge.iter().map(|e| e.upper_bound).collect();
            let mut bounds_b: Vec<i64> = b.per_edge.iter().map(|e| e.upper_bound).collect();
            bounds_a.sort_unstable();
            bounds_b.sort_unstable();
            assert_eq!(bounds_a, bounds_b, "graph {i}");
        }
    }
}
