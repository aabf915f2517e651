use std::fs;
use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use zap::format;
use zap::report;
use zappatic::families;
use zappatic::graph::{validate, ZappaticGraph};
use zappatic::homology;
use zappatic::invariants;
use zappatic::obstructions;

/// Analyze decorated dual graphs of surfaces degenerating to unions
/// of planes: structural validation, exact numerical invariants,
/// smoothability obstructions, graph homology, and built-in families.
#[derive(Parser)]
#[command(name = "zap", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Indented JSON instead of the compact canonical form
    #[arg(long, global = true)]
    pretty: bool,
    /// Output file; "-" writes to stdout
    #[arg(short, long, global = true, default_value = "-")]
    output: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check structure: connectivity, point shapes, pair coverage
    Validate { input: String },
    /// Degree, sectional genus, χ, p_ω, q, K² and class intervals
    Invariants { input: String },
    /// Smoothability tests; exits 2 when an obstruction is found
    Check { input: String },
    /// Betti numbers and boundary ranks of the face complex
    Homology { input: String },
    /// Write a built-in family as a canonical document
    Generate {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Chain of n planes
    Chain {
        #[arg(long)]
        n: usize,
    },
    /// Cycle of n planes; --filled closes it with one n-fold point
    Cycle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        filled: bool,
    },
    /// n − 1 planes through a common one, meeting at an angle
    Fork {
        #[arg(long)]
        n: usize,
    },
    /// Chain of n quadrics glued along ruling lines
    QuadricChain {
        #[arg(long)]
        n: usize,
    },
    /// d² planes over the triangulated side-d triangle
    VeroneseMt {
        #[arg(long)]
        d: usize,
    },
    /// Two triangulated a×b grids glued along their boundary
    Pillow {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// Torus grid of 2nm planes
    AbelianGrid {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Two quadrics and a plane with four common triple points
    TwoQuadricsPlane,
    /// Five planes with an open 4-face: K² lands in [9, 10]
    Nonsmooth,
    /// Dual graph of a stick curve
    Stick {
        #[arg(long)]
        kind: StickKindArg,
        #[arg(long)]
        n: usize,
        /// Edge list "u-v,u-v,..." (required for kinds t and z)
        #[arg(long)]
        adjacency: Option<String>,
    },
    /// Seeded pseudo-random validated planar graph
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        size: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StickKindArg {
    /// chain
    R,
    /// fork
    S,
    /// cycle
    E,
    /// explicit tree
    T,
    /// explicit unicyclic graph
    Z,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(diagnostic) => {
            eprintln!("zap: {diagnostic}");
            ExitCode::from(3)
        }
    }
}

/// Ok carries the exit code for outcomes the command defines
/// (validation failures, obstructions); Err is reserved for parse and
/// IO problems, which exit 3.
fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Validate { input } => {
            let g = read_graph(input)?;
            let report = validate(&g);
            emit(cli, &report::render(&report::validation_doc(&report), cli.pretty))?;
            Ok(exit(if report.pass() { 0 } else { 1 }))
        }
        Command::Invariants { input } => {
            let g = read_graph(input)?;
            if let Some(code) = reject_invalid(&g) {
                return Ok(code);
            }
            match invariants::full_report(&g) {
                Ok(r) => {
                    emit(cli, &report::render(&report::invariants_doc(&r), cli.pretty))?;
                    Ok(exit(0))
                }
                Err(e) => {
                    eprintln!("zap: {e}");
                    Ok(exit(1))
                }
            }
        }
        Command::Check { input } => {
            let g = read_graph(input)?;
            if let Some(code) = reject_invalid(&g) {
                return Ok(code);
            }
            match obstructions::obstruction_report(&g) {
                Ok(r) => {
                    emit(cli, &report::render(&report::obstructions_doc(&r), cli.pretty))?;
                    Ok(exit(if r.obstructed() { 2 } else { 0 }))
                }
                Err(e) => {
                    eprintln!("zap: {e}");
                    Ok(exit(1))
                }
            }
        }
        Command::Homology { input } => {
            let g = read_graph(input)?;
            if let Some(code) = reject_invalid(&g) {
                return Ok(code);
            }
            let outcome = homology::chain_complex(&g)
                .map(|complex| (homology::betti_of_complex(&complex), complex));
            match outcome {
                Ok((betti, complex)) => {
                    emit(cli, &report::render(&report::homology_doc(&betti, &complex), cli.pretty))?;
                    Ok(exit(0))
                }
                Err(e) => {
                    eprintln!("zap: {e}");
                    Ok(exit(1))
                }
            }
        }
        Command::Generate { family } => {
            let g = build_family(family).map_err(|e| e.to_string())?;
            emit(cli, &format::serialize(&g, cli.pretty))?;
            Ok(exit(0))
        }
    }
}

fn exit(code: u8) -> ExitCode {
    ExitCode::from(code)
}

/// Commands that compute on a graph refuse structurally invalid input
/// with a one-line diagnostic and exit 1.
fn reject_invalid(g: &ZappaticGraph) -> Option<ExitCode> {
    let report = validate(g);
    if report.pass() {
        return None;
    }
    let first = report
        .violations
        .first()
        .map(|v| v.to_string())
        .unwrap_or_else(|| String::from("validation failed"));
    eprintln!(
        "zap: invalid graph ({} violation{}): {first}",
        report.violations.len(),
        if report.violations.len() == 1 { "" } else { "s" }
    );
    Some(exit(1))
}

fn read_graph(input: &str) -> Result<ZappaticGraph, String> {
    let text = if input == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| format!("stdin: {e}"))?;
        buffer
    } else {
        fs::read_to_string(input).map_err(|e| format!("{input}: {e}"))?
    };
    format::load(&text).map_err(|e| e.to_string())
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    if cli.output == "-" {
        std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| format!("stdout: {e}"))
    } else {
        fs::write(&cli.output, text).map_err(|e| format!("{}: {e}", cli.output))
    }
}

fn build_family(family: &Family) -> Result<ZappaticGraph, families::FamilyError> {
    match family {
        Family::Chain { n } => families::chain_planes(*n),
        Family::Cycle { n, filled } => families::cycle_planes(*n, *filled),
        Family::Fork { n } => families::fork_planes(*n),
        Family::QuadricChain { n } => families::quadric_chain(*n),
        Family::VeroneseMt { d } => families::veronese_mt(*d),
        Family::Pillow { a, b } => families::pillow(*a, *b).map(|p| p.graph),
        Family::AbelianGrid { n, m } => families::abelian_grid(*n, *m),
        Family::TwoQuadricsPlane => Ok(families::two_quadrics_plane()),
        Family::Nonsmooth => Ok(families::nonsmooth_example()),
        Family::Stick { kind, n, adjacency } => {
            let kind = match kind {
                StickKindArg::R => families::StickKind::R,
                StickKindArg::S => families::StickKind::S,
                StickKindArg::E => families::StickKind::E,
                StickKindArg::T => families::StickKind::T,
                StickKindArg::Z => families::StickKind::Z,
            };
            let pairs = adjacency.as_deref().map(parse_adjacency).transpose()?;
            families::stick_curve_graph(kind, *n, pairs.as_deref())
        }
        Family::Random { seed, size } => Ok(families::random_planar_config(*seed, *size)),
    }
}

fn parse_adjacency(text: &str) -> Result<Vec<(usize, usize)>, families::FamilyError> {
    let bad = |reason: String| families::FamilyError::BadAdjacency { reason };
    text.split(',')
        .map(|pair| {
            let (u, v) = pair
                .split_once('-')
                .ok_or_else(|| bad(format!("expected \"u-v\", got {pair:?}")))?;
            let parse = |s: &str| {
                s.trim().parse::<usize>().map_err(|_| bad(format!("bad vertex id {s:?}")))
            };
            Ok((parse(u)?, parse(v)?))
        })
        .collect()
}
