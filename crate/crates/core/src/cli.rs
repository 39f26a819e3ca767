//! Command-line front end. Complexes, graphs, traces and colorings are plain
//! text files; every report is JSON on stdout.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::coloring::{
    certify_lower_bound, measure_alpha, peel_color_3, peel_color_bound, CertificateReport,
    PeelParams, PlanarStrategy,
};
use crate::complex::{ComplexParseError, SimplicialComplex, SubdivisionTrace, TraceError};
use crate::cyclic::cyclic_4_sphere;
use crate::flagify::flagify;
use crate::graph::{
    chromatic_number_exact, mycielski_graph, triangle_free_process, ChromaticOutcome, Graph,
};
use crate::random_clique::{run_experiment, RandomCliqueError, RandomCliqueParams};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Domain(_) => 1,
            Self::Io { .. } | Self::Parse(_) => 2,
        }
    }

    fn domain(e: impl std::fmt::Display) -> Self {
        Self::Domain(e.to_string())
    }

    fn parse(path: &Path, e: impl std::fmt::Display) -> Self {
        Self::Parse(format!("{}: {e}", path.display()))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "flagsphere",
    version,
    about = "Flag triangulations of the 3-sphere"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the boundary of the cyclic 4-polytope on n vertices.
    Cyclic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a generated graph.
    Graph {
        #[arg(value_enum)]
        kind: GraphKind,
        /// Vertex count for `cycle` and `process`.
        #[arg(long)]
        n: Option<usize>,
        /// Chromatic number for `mycielski`.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Embed a triangle-free graph in the cyclic sphere on n vertices and subdivide until flag.
    Flagify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Report f-vector, flagness, manifold checks and coloring statistics of a complex.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Graph to certify a chromatic lower bound from.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Seed for the greedy independent set.
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        peel: PeelArgs,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Color the 1-skeleton of a flag 3-manifold by link peeling.
    Color {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        peel: PeelArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify that the complex has chromatic number at least k.
    Certify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
    },
    /// Random clique complex experiment, from a JSON config or flags.
    RandomClique {
        #[arg(long = "in", conflicts_with_all = ["n", "alpha", "seed"])]
        input: Option<PathBuf>,
        #[arg(long, required_unless_present = "input")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "input")]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, required_unless_present = "input")]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Apply a subdivision trace to a base complex.
    Replay {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GraphKind {
    Cycle,
    Mycielski,
    Process,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StrategyArg {
    Exact4,
    Five,
    Greedy,
}

impl From<StrategyArg> for PlanarStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Exact4 => Self::Exact4,
            StrategyArg::Five => Self::Five,
            StrategyArg::Greedy => Self::Greedy,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct PeelArgs {
    /// Degree threshold multiplier; defaults to sqrt(5).
    #[arg(long)]
    x: Option<f64>,
    #[arg(long, value_enum, default_value = "exact4")]
    strategy: StrategyArg,
    /// Largest link handed to the exact 4-coloring.
    #[arg(long, default_value_t = 64)]
    cap: usize,
}

impl PeelArgs {
    fn params(&self) -> Result<PeelParams, CliError> {
        let mut params = PeelParams {
            strategy: self.strategy.into(),
            exact4_cap: self.cap,
            ..PeelParams::default()
        };
        if let Some(x) = self.x {
            if !(x > 0.0 && x.is_finite()) {
                return Err(CliError::Parse(format!("--x must be positive, got {x}")));
            }
            params.x = x;
        }
        Ok(params)
    }
}

#[derive(Debug, Serialize)]
pub struct ManifoldChecks {
    pub ridges_in_two_facets: bool,
    pub connected: bool,
    pub vertex_links_spheres: bool,
    pub euler_zero: bool,
}

#[derive(Debug, Serialize)]
pub struct StatsReport {
    pub vertex_count: usize,
    pub f_vector: Vec<u64>,
    pub euler: i64,
    pub is_flag: bool,
    pub manifold_checks: Option<ManifoldChecks>,
    pub empty_triangle_count: usize,
    pub subdivision_count: usize,
    pub chromatic_upper: Option<usize>,
    pub chromatic_lower: Option<usize>,
    pub alpha_lower: usize,
    pub alpha_exact: Option<usize>,
    pub conjecture_value: usize,
}

#[derive(Debug, Serialize)]
struct ColorReport {
    colors: usize,
    bound: usize,
    rounds: usize,
    fallbacks: usize,
    all_four_colored: bool,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn emit_json(value: &impl Serialize, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    emit(None, &text, stdout)
}

fn read_complex(path: &Path) -> Result<SimplicialComplex, CliError> {
    let text = read(path)?;
    SimplicialComplex::from_text(&text).map_err(|e| match e {
        ComplexParseError::Complex(inner) => CliError::parse(path, inner),
        other => CliError::parse(path, other),
    })
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    Graph::from_text(&read(path)?).map_err(|e| CliError::parse(path, e))
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Cyclic { n, out } => {
            let sphere = cyclic_4_sphere(n).map_err(CliError::domain)?;
            emit(out.as_deref(), &sphere.complex().to_text(), stdout)
        }
        Command::Graph {
            kind,
            n,
            k,
            seed,
            out,
        } => {
            let name = format!("{kind:?}").to_lowercase();
            let missing = |flag: &str| CliError::Parse(format!("`graph {name}` needs --{flag}"));
            let g = match kind {
                GraphKind::Cycle => {
                    let n = n.ok_or_else(|| missing("n"))?;
                    if n < 3 {
                        return Err(CliError::Domain(format!(
                            "a cycle needs 3 vertices, got {n}"
                        )));
                    }
                    Graph::cycle(n)
                }
                GraphKind::Mycielski => {
                    let k = k.ok_or_else(|| missing("k"))?;
                    if k < 2 {
                        return Err(CliError::Domain(format!(
                            "Mycielski graphs start at k = 2, got {k}"
                        )));
                    }
                    mycielski_graph(k)
                }
                GraphKind::Process => triangle_free_process(
                    n.ok_or_else(|| missing("n"))?,
                    seed.ok_or_else(|| missing("seed"))?,
                ),
            };
            emit(out.as_deref(), &g.to_text(), stdout)
        }
        Command::Flagify {
            graph,
            n,
            out,
            trace,
        } => {
            let g = read_graph(&graph)?;
            let outcome = flagify(&g, n).map_err(CliError::domain)?;
            if let Some(path) = out {
                emit(Some(&path), &outcome.complex.to_text(), stdout)?;
            }
            if let Some(path) = trace {
                emit(Some(&path), &outcome.trace.to_text(), stdout)?;
            }
            emit_json(&outcome.report, stdout)
        }
        Command::Verify {
            input,
            graph,
            seed,
            peel,
            budget,
        } => {
            let x = read_complex(&input)?;
            let g = graph.as_deref().map(read_graph).transpose()?;
            let report = stats_report(&x, g.as_ref(), seed, &peel.params()?, budget)?;
            emit_json(&report, stdout)
        }
        Command::Color { input, peel, out } => {
            let x = read_complex(&input)?;
            let params = peel.params()?;
            let outcome = peel_color_3(&x, &params).map_err(CliError::domain)?;
            if let Some(path) = out {
                emit(Some(&path), &outcome.coloring.to_text(), stdout)?;
            }
            emit_json(
                &ColorReport {
                    colors: outcome.coloring.color_count(),
                    bound: peel_color_bound(5, params.x, x.vertex_count()),
                    rounds: outcome.rounds.len(),
                    fallbacks: outcome.fallbacks,
                    all_four_colored: outcome.all_four_colored(),
                },
                stdout,
            )
        }
        Command::Certify {
            input,
            graph,
            k,
            budget,
        } => {
            let x = read_complex(&input)?;
            let g = read_graph(&graph)?;
            let mut report: CertificateReport =
                certify_lower_bound(&x, &g, k, budget).map_err(CliError::domain)?;
            report.graph = graph.display().to_string();
            emit_json(&report, stdout)
        }
        Command::RandomClique {
            input,
            n,
            alpha,
            d,
            seed,
            budget,
        } => {
            let params = match input {
                Some(path) => RandomCliqueParams::from_json(&read(&path)?)
                    .map_err(|e| CliError::parse(&path, e))?,
                None => RandomCliqueParams {
                    n: n.expect("required by clap"),
                    alpha: alpha.expect("required by clap"),
                    d,
                    seed: seed.expect("required by clap"),
                },
            };
            let report = run_experiment(&params, budget).map_err(|e| match e {
                RandomCliqueError::Config(m) => CliError::Parse(m),
                other => CliError::domain(other),
            })?;
            emit_json(&report, stdout)
        }
        Command::Replay { input, trace, out } => {
            let base = read_complex(&input)?;
            let events = SubdivisionTrace::from_text(&read(&trace)?)
                .map_err(|e| CliError::parse(&trace, e))?;
            let result = events.replay(&base).map_err(|e| match e {
                TraceError::Parse { .. } => CliError::parse(&trace, e),
                other => CliError::domain(other),
            })?;
            emit(out.as_deref(), &result.to_text(), stdout)
        }
    }
}

pub fn stats_report(
    x: &SimplicialComplex,
    g: Option<&Graph>,
    seed: u64,
    params: &PeelParams,
    budget: u64,
) -> Result<StatsReport, CliError> {
    let f = x.f_vector();
    let is_flag = x.is_flag();
    let manifold = x.verify_closed_3_manifold().ok();
    let chromatic_upper = match &manifold {
        Some(m) if m.passed() && is_flag => Some(
            peel_color_3(x, params)
                .map_err(CliError::domain)?
                .coloring
                .color_count(),
        ),
        _ => None,
    };
    let chromatic_lower = match g {
        Some(g) => {
            let chi = match chromatic_number_exact(g, None, budget).map_err(CliError::domain)? {
                ChromaticOutcome::Exact {
                    chromatic_number, ..
                } => chromatic_number,
                ChromaticOutcome::ExceedsLimit { .. } => unreachable!("no limit was given"),
            };
            Some(
                certify_lower_bound(x, g, chi, budget)
                    .map_err(CliError::domain)?
                    .k,
            )
        }
        None => None,
    };
    let alpha = measure_alpha(x, seed, budget);
    Ok(StatsReport {
        vertex_count: x.vertex_count(),
        euler: f.euler,
        f_vector: f.counts,
        is_flag,
        manifold_checks: manifold.map(|m| ManifoldChecks {
            ridges_in_two_facets: m.ridges_in_two_facets,
            connected: m.connected,
            vertex_links_spheres: m.vertex_links_spheres,
            euler_zero: m.euler_zero,
        }),
        empty_triangle_count: x.empty_triangles().len(),
        subdivision_count: x.vertices().filter(|&v| !x.is_original(v)).count(),
        chromatic_upper,
        chromatic_lower,
        alpha_lower: alpha.greedy,
        alpha_exact: alpha.exact,
        conjecture_value: alpha.conjecture,
    })
}
