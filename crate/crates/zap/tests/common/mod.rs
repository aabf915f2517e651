//! Family suite shared by the integration tests: one instance of every
//! named generator at a few representative parameters.  Random
//! configurations are deliberately not included — they are valid
//! graphs but carry no promises beyond validity (some are obstructed,
//! which is what the checker is for) — so tests add their own seeds
//! where randomness is wanted.

use zappatic::families;
use zappatic::graph::ZappaticGraph;

pub fn family_suite() -> Vec<(String, ZappaticGraph)> {
    let mut suite: Vec<(String, ZappaticGraph)> = Vec::new();
    for n in 2..=6 {
        suite.push((format!("chain {n}"), families::chain_planes(n).unwrap()));
    }
    for n in 3..=8 {
        suite.push((format!("cycle {n}"), families::cycle_planes(n, false).unwrap()));
        suite.push((format!("filled cycle {n}"), families::cycle_planes(n, true).unwrap()));
    }
    for n in 4..=7 {
        suite.push((format!("fork {n}"), families::fork_planes(n).unwrap()));
    }
    for n in 2..=6 {
        suite.push((format!("quadric chain {n}"), families::quadric_chain(n).unwrap()));
    }
    for d in 2..=5 {
        suite.push((format!("veronese {d}"), families::veronese_mt(d).unwrap()));
    }
    for (a, b) in [(2, 2), (2, 3), (3, 3), (4, 2)] {
        suite.push((format!("pillow {a}x{b}"), families::pillow(a, b).unwrap().graph));
    }
    for (n, m) in [(2, 2), (2, 3), (3, 3)] {
        suite.push((format!("abelian grid {n}x{m}"), families::abelian_grid(n, m).unwrap()));
    }
    suite.push(("two quadrics and a plane".into(), families::two_quadrics_plane()));
    suite.push(("open four-face example".into(), families::nonsmooth_example()));
    for (kind, n) in [
        (families::StickKind::R, 5),
        (families::StickKind::S, 6),
        (families::StickKind::E, 7),
    ] {
        suite.push((
            format!("stick {kind:?}{n}"),
            families::stick_curve_graph(kind, n, None).unwrap(),
        ));
    }
    suite.push((
        "stick tree".into(),
        families::stick_curve_graph(families::StickKind::T, 5, Some(&[(0, 1), (0, 2), (2, 3), (2, 4)]))
            .unwrap(),
    ));
    suite.push((
        "stick unicyclic".into(),
        families::stick_curve_graph(families::StickKind::Z, 4, Some(&[(0, 1), (1, 2), (2, 3), (0, 3)]))
            .unwrap(),
    ));
    suite
}

#[allow(dead_code)] // each test binary uses its own slice of this module
pub fn with_random_configs(
    mut suite: Vec<(String, ZappaticGraph)>,
    seeds: std::ops::RangeInclusive<u64>,
) -> Vec<(String, ZappaticGraph)> {
    for seed in seeds {
        suite.push((
            format!("random seed {seed}"),
            families::random_planar_config(seed, 4 + (seed as usize % 7)),
        ));
    }
    suite
}
