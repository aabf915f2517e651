//! Numerical invariants of a good Zappatic surface, computed exactly
//! from its decorated dual graph.
//!
//! For a surface X = ∪ X_i with double curves C_ij (c_ij = deg C_ij,
//! g_ij its genus summed over components) and census (v, e, f_n, r_n,
//! s_n):
//!
//! * degree: d = Σ d_i,
//! * sectional genus: g = Σ g_i + Σ_{i<j} c_ij − v + 1,
//! * χ(O_X) = Σ χ(O_{X_i}) − Σ_{i<j} χ(O_{C_ij}) + f,
//! * ω-genus: p_ω(X) = b₂(G_X) + Σ p_g(X_i) + dim coker Φ and
//!   h¹(O_X) = b₁(G_X) + dim ker Φ, where Φ: ⊕H¹(O_{X_i}) →
//!   ⊕H¹(O_{C_ij}) is the restriction map.  Both sides of Φ vanish
//!   exactly when every q(X_i) = 0 and every double curve is rational;
//!   only in that case is the Φ term derived (as 0) — anything else
//!   must be supplied explicitly,
//! * K²: determined by the graph only up to the contribution k of the
//!   R_n/S_n-points with n ≥ 4,
//!
//!   ```text
//!   K² = Σ_i (K²_{X_i} + Σ_{j≠i} (4 g_ij − C_ij²)) − 8e + Σ_n 2n f_n + r₃ + k,
//!   Σ_{n≥4} (n−2)(r_n+s_n)  ≤  k  ≤  Σ_{n≥4} ((2n−5) r_n + C(n−1,2) s_n),
//!   ```
//!
//!   which in planar mode collapses to 9v − 10e + Σ_n 2n f_n + r₃ + k,
//! * class of a degeneration: δ = (9χ − K²) + 3f + e, bounded below by
//!   3f₃ + r₃ + Σ_{n≥4} (12−n) f_n + Σ_{n≥4} (n−1) ρ_n − k.
//!
//! Everything here counts the points as listed: run
//! [`infer_r3`](crate::graph::infer_r3) first on planar input that
//! drops its open 3-faces ([`full_report`] does so itself).

use core::fmt;

use crate::graph::{
    counts, infer_r3, Mode, SingularityCensus, ZappaticGraph,
};
use crate::homology::{betti, BettiVector, HomologyError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantError {
    /// curve genera list does not match the vertex count
    GenusCount { expected: usize, got: usize },
    Disconnected,
    MissingVertexWeight { vertex: usize, field: &'static str },
    MissingEdgeWeight { edge: usize, field: &'static str },
    Homology(HomologyError),
}

impl fmt::Display for InvariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantError::GenusCount { expected, got } => {
                write!(f, "expected {expected} component genera, got {got}")
            }
            InvariantError::Disconnected => write!(f, "graph is not connected"),
            InvariantError::MissingVertexWeight { vertex, field } => {
                write!(f, "vertex {vertex} is missing the `{field}` weight")
            }
            InvariantError::MissingEdgeWeight { edge, field } => {
                write!(f, "edge {edge} is missing the `{field}` weight")
            }
            InvariantError::Homology(e) => write!(f, "{e}"),
        }
    }
}

impl From<HomologyError> for InvariantError {
    fn from(e: HomologyError) -> Self {
        InvariantError::Homology(e)
    }
}

/// Arithmetic genus of a connected nodal curve from its dual graph:
/// p_a = h¹(graph) + Σ g_i = e − v + 1 + Σ g_i.
pub fn curve_arithmetic_genus(
    g: &ZappaticGraph,
    genera: &[u64],
) -> Result<u64, InvariantError> {
    if genera.len() != g.vertices.len() {
        return Err(InvariantError::GenusCount {
            expected: g.vertices.len(),
            got: genera.len(),
        });
    }
    if !g.is_connected() {
        return Err(InvariantError::Disconnected);
    }
    let h1 = g.edges.len() as u64 + 1 - g.vertices.len() as u64;
    Ok(h1 + genera.iter().sum::<u64>())
}

/// d = Σ d_i (planar: one per plane).
pub fn degree(g: &ZappaticGraph) -> Result<u64, InvariantError> {
    if g.mode == Mode::Planar {
        return Ok(g.vertices.len() as u64);
    }
    g.vertices
        .iter()
        .enumerate()
        .map(|(i, w)| {
            w.degree.ok_or(InvariantError::MissingVertexWeight { vertex: i, field: "degree" })
        })
        .sum()
}

/// Genus of the general hyperplane section, a connected nodal curve:
/// g = Σ g_i + Σ_{i<j} c_ij − v + 1 (planar: e − v + 1).
pub fn sectional_genus(g: &ZappaticGraph) -> Result<i64, InvariantError> {
    let v = g.vertices.len() as i64;
    if g.mode == Mode::Planar {
        return Ok(g.edges.len() as i64 - v + 1);
    }
    let mut total = 1 - v;
    for (i, w) in g.vertices.iter().enumerate() {
        total += w.sectional_genus.ok_or(InvariantError::MissingVertexWeight {
            vertex: i,
            field: "sectional_genus",
        })? as i64;
    }
    for (i, e) in g.edges.iter().enumerate() {
        total += e
            .degree
            .ok_or(InvariantError::MissingEdgeWeight { edge: i, field: "degree" })?
            as i64;
    }
    Ok(total)
}

/// χ(O_X) = Σ χ(O_{X_i}) − Σ χ(O_{C_ij}) + f, with χ(O_C) = 1 − genus
/// per irreducible double-curve component (planar: v − e + f).
pub fn chi_structure_sheaf(g: &ZappaticGraph) -> Result<i64, InvariantError> {
    let census = counts(g);
    let f = census.f as i64;
    if g.mode == Mode::Planar {
        return Ok(g.vertices.len() as i64 - g.edges.len() as i64 + f);
    }
    let mut total = f;
    for (i, w) in g.vertices.iter().enumerate() {
        total +=
            w.chi.ok_or(InvariantError::MissingVertexWeight { vertex: i, field: "chi" })?;
    }
    for (i, e) in g.edges.iter().enumerate() {
        let genus = e
            .genus
            .ok_or(InvariantError::MissingEdgeWeight { edge: i, field: "genus" })?
            as i64;
        total -= 1 - genus;
    }
    Ok(total)
}

/// A value that the combinatorics may or may not pin down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Determination {
    Known(u64),
    Unavailable { reason: &'static str },
}

impl Determination {
    pub fn known(&self) -> Option<u64> {
        match self {
            Determination::Known(x) => Some(*x),
            Determination::Unavailable { .. } => None,
        }
    }
}

pub const PHI_COKER_REASON: &str = "Φ cokernel not combinatorially determined";
pub const PHI_KER_REASON: &str = "Φ kernel not combinatorially determined";
const MISSING_PG: &str = "vertex p_g weights missing";
const MISSING_Q: &str = "vertex irregularity weights missing";

/// Both sides of Φ vanish: every component has q = 0 and every double
/// curve is rational.  `None` when some weight needed for the check is
/// itself missing.
fn phi_vanishes(g: &ZappaticGraph) -> Option<bool> {
    let mut vanishes = true;
    for w in &g.vertices {
        vanishes &= w.q? == 0;
    }
    for e in &g.edges {
        vanishes &= e.genus? == 0;
    }
    Some(vanishes)
}

/// ω-genus p_ω(X) = b₂(G_X) + Σ p_g(X_i) + dim coker Φ.
///
/// The coker term is derived (as 0) only when both sides of Φ vanish;
/// otherwise it must arrive as `supplied_coker`.
pub fn omega_genus(
    g: &ZappaticGraph,
    supplied_coker: Option<u64>,
) -> Result<Determination, InvariantError> {
    let b = betti(g)?;
    omega_genus_with_betti(g, &b, supplied_coker)
}

pub(crate) fn omega_genus_with_betti(
    g: &ZappaticGraph,
    b: &BettiVector,
    supplied_coker: Option<u64>,
) -> Result<Determination, InvariantError> {
    let mut pg_sum: u64 = 0;
    for w in &g.vertices {
        match w.pg {
            Some(x) => pg_sum += x,
            None => return Ok(Determination::Unavailable { reason: MISSING_PG }),
        }
    }
    let coker = match supplied_coker {
        Some(c) => c,
        None => match phi_vanishes(g) {
            Some(true) => 0,
            _ => return Ok(Determination::Unavailable { reason: PHI_COKER_REASON }),
        },
    };
    Ok(Determination::Known(b.b2 + pg_sum + coker))
}

/// Irregularity h¹(O_X) = b₁(G_X) + dim ker Φ, same derivation rule as
/// [`omega_genus`].
pub fn irregularity(
    g: &ZappaticGraph,
    supplied_ker: Option<u64>,
) -> Result<Determination, InvariantError> {
    let b = betti(g)?;
    irregularity_with_betti(g, &b, supplied_ker)
}

pub(crate) fn irregularity_with_betti(
    g: &ZappaticGraph,
    b: &BettiVector,
    supplied_ker: Option<u64>,
) -> Result<Determination, InvariantError> {
    for w in &g.vertices {
        if w.q.is_none() {
            return Ok(Determination::Unavailable { reason: MISSING_Q });
        }
    }
    let ker = match supplied_ker {
        Some(k) => k,
        None => match phi_vanishes(g) {
            Some(true) => 0,
            _ => return Ok(Determination::Unavailable { reason: PHI_KER_REASON }),
        },
    };
    Ok(Determination::Known(b.b1 + ker))
}

/// K² of the smooth total space of a degeneration to X, pinned to an
/// interval by the census.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct K2Interval {
    pub min: i64,
    pub max: i64,
    /// the graph-determined part, i.e. the value with k = 0
    pub base: i64,
}

/// K² interval; `None` when a general-mode weight it needs is missing.
pub fn k2_interval(g: &ZappaticGraph) -> Option<K2Interval> {
    let census = counts(g);
    k2_interval_with_census(g, &census)
}

pub(crate) fn k2_interval_with_census(
    g: &ZappaticGraph,
    census: &SingularityCensus,
) -> Option<K2Interval> {
    let e = g.edges.len() as i64;
    let face_term: i64 = census.f_n.iter().map(|(&n, &c)| 2 * n as i64 * c as i64).sum();
    let r3 = census.r_of(3) as i64;
    let base = if g.mode == Mode::Planar {
        9 * g.vertices.len() as i64 - 10 * e + face_term + r3
    } else {
        let mut total = 0i64;
        for w in &g.vertices {
            total += w.k2?;
        }
        for edge in &g.edges {
            let genus = edge.genus? as i64;
            total += 4 * genus - edge.self_int_u?;
            total += 4 * genus - edge.self_int_v?;
        }
        total - 8 * e + face_term + r3
    };
    let mut k_min = 0i64;
    let mut k_max = 0i64;
    for (&n, &c) in &census.r_n {
        if n >= 4 {
            k_min += (n as i64 - 2) * c as i64;
            k_max += (2 * n as i64 - 5) * c as i64;
        }
    }
    for (&n, &c) in &census.s_n {
        if n >= 4 {
            let t = n as i64 - 1;
            k_min += (n as i64 - 2) * c as i64;
            k_max += t * (t - 1) / 2 * c as i64;
        }
    }
    Some(K2Interval { min: base + k_min, max: base + k_max, base })
}

/// The class δ of the image degeneration, as an interval inherited
/// from K², with its census lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaClass {
    pub min: i64,
    pub max: i64,
    pub lower_bound: i64,
    pub violates_lower_bound: bool,
}

/// δ = (9χ − K²) + 3f + e.  Needs the K² interval, so it is absent
/// whenever that is.
pub fn class_delta(g: &ZappaticGraph) -> Result<Option<DeltaClass>, InvariantError> {
    let census = counts(g);
    let chi = chi_structure_sheaf(g)?;
    Ok(class_delta_with(g, &census, chi))
}

pub(crate) fn class_delta_with(
    g: &ZappaticGraph,
    census: &SingularityCensus,
    chi: i64,
) -> Option<DeltaClass> {
    let k2 = k2_interval_with_census(g, census)?;
    let e = g.edges.len() as i64;
    let f = census.f as i64;
    let min = 9 * chi - k2.max + 3 * f + e;
    let max = 9 * chi - k2.min + 3 * f + e;
    let mut bound = 3 * census.f_of(3) as i64 + census.r_of(3) as i64;
    for (&n, &c) in &census.f_n {
        if n >= 4 {
            bound += (12 - n as i64) * c as i64;
        }
    }
    for (&n, &c) in &census.rho_n {
        if n >= 4 {
            bound += (n as i64 - 1) * c as i64;
        }
    }
    bound -= k2.max - k2.base; // the k-contribution, taken at its largest
    Some(DeltaClass { min, max, lower_bound: bound, violates_lower_bound: min < bound })
}

/// Everything the graph determines, bundled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub degree: u64,
    pub sectional_genus: i64,
    pub chi: i64,
    pub p_omega: Determination,
    pub irregularity_q: Determination,
    pub k2: Option<K2Interval>,
    pub delta_class: Option<DeltaClass>,
    pub census: SingularityCensus,
    pub betti: BettiVector,
}

/// Compute the full report.  Planar input is run through R₃ inference
/// first (idempotent), so dropped open 3-faces are fine; the graph is
/// otherwise assumed validated.
pub fn full_report(g: &ZappaticGraph) -> Result<InvariantReport, InvariantError> {
    let owned;
    let g = if g.mode == Mode::Planar {
        owned = infer_r3(g);
        &owned
    } else {
        g
    };
    let census = counts(g);
    let b = betti(g)?;
    Ok(InvariantReport {
        degree: degree(g)?,
        sectional_genus: sectional_genus(g)?,
        chi: chi_structure_sheaf(g)?,
        p_omega: omega_genus_with_betti(g, &b, None)?,
        irregularity_q: irregularity_with_betti(g, &b, None)?,
        k2: k2_interval_with_census(g, &census),
        delta_class: class_delta_with(g, &census, chi_structure_sheaf(g)?),
        census,
        betti: b,
    })
}
