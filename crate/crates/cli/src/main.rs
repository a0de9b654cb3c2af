//! `cpath`: solve, verify, and explore colorful-path colorings from the
//! command line.
//!
//! Exit codes are a stable contract: 0 success/solved, 1 error (I/O,
//! parse, failed verification, discrepancies), 2 the seven-cycle
//! exception, 3 unsupported input class.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use colorful_paths::coloring::{parse_coloring, serialize_coloring};
use colorful_paths::dot::render_dot;
use colorful_paths::engine::{solve_seeded, SolveOutcome, SolveStatus};
use colorful_paths::generate::{generate, GraphSpec};
use colorful_paths::graph::{parse_dimacs, parse_edge_list, serialize_dimacs, Graph};
use colorful_paths::oracle::sweep_small_graphs;
use colorful_paths::{chromatic_number, verify_solution};

#[derive(Parser)]
#[command(
    name = "cpath",
    about = "Proper colorings in which every vertex begins a colorful path",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    /// DIMACS `.col`: `p edge <n> <m>` header, 1-based `e u v` lines.
    Dimacs,
    /// Plain edge list: one 0-based `u v` pair per line.
    Edges,
}

#[derive(Args)]
struct GraphInput {
    /// Graph file to read.
    #[arg(short, long)]
    input: PathBuf,
    /// Input format.
    #[arg(short, long, value_enum, default_value_t = GraphFormat::Dimacs)]
    format: GraphFormat,
}

impl GraphInput {
    fn read(&self) -> Result<Graph> {
        let text = fs::read_to_string(&self.input)
            .with_context(|| format!("reading {}", self.input.display()))?;
        let g = match self.format {
            GraphFormat::Dimacs => parse_dimacs(&text),
            GraphFormat::Edges => parse_edge_list(&text),
        }
        .with_context(|| format!("parsing {}", self.input.display()))?;
        Ok(g)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Cycle,
    Complete,
    Bipartite,
    Random,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve: compute a coloring in which every vertex begins a colorful
    /// path. Writes the coloring file on success.
    Color {
        #[command(flatten)]
        graph: GraphInput,
        /// Where to write the coloring (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Seed for the initial coloring.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory receiving the step records and one DOT snapshot per
        /// recoloring step.
        #[arg(long, value_name = "DIR")]
        trace: Option<PathBuf>,
        /// Also print the per-vertex certification report.
        #[arg(short, long)]
        verbose: bool,
    },
    /// Check a (graph, coloring) pair: proper, all colors used, every
    /// vertex begins a colorful path.
    Verify {
        #[command(flatten)]
        graph: GraphInput,
        /// Coloring file (`v <id> <color>` lines, 1-based).
        #[arg(short, long)]
        coloring: PathBuf,
        /// Additionally compare the color count to the exact chromatic
        /// number.
        #[arg(long)]
        check_chi: bool,
    },
    /// Print the exact chromatic number.
    Chi {
        #[command(flatten)]
        graph: GraphInput,
        /// Give up beyond this many colors.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Generate a graph and write it as DIMACS.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Vertex count (cycle length, clique size, random size).
        #[arg(short, long)]
        n: Option<usize>,
        /// Left side size for bipartite.
        #[arg(short, long)]
        a: Option<usize>,
        /// Right side size for bipartite.
        #[arg(short, long)]
        b: Option<usize>,
        /// Target chromatic number for random.
        #[arg(long)]
        chi: Option<usize>,
        /// Edge probability for random (defaults to a size-scaled value).
        #[arg(short, long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where to write the graph (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the solver over every labeled graph up to a size and report
    /// counts and discrepancies.
    Sweep {
        /// Largest vertex count (at most 7).
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Target chromatic number.
        #[arg(long, default_value_t = 3)]
        chi: usize,
        /// Worker threads for the enumeration.
        #[arg(short, long)]
        jobs: Option<usize>,
        /// Where to write the summary (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve and print the step records instead of the coloring.
    Trace {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where to write the records (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Color { graph, output, seed, trace, verbose } => {
            let g = graph.read()?;
            let out = solve(&g, seed)?;
            if let Some(dir) = &trace {
                dump_trace(dir, &out)?;
            }
            match out.status {
                SolveStatus::Solved(c) => {
                    write_out(output.as_deref(), &serialize_coloring(&c))?;
                    if verbose {
                        let report = verify_solution(&g, &c, false);
                        eprint!("{}", report.render());
                    }
                    Ok(ExitCode::SUCCESS)
                }
                SolveStatus::ExceptionC7 => {
                    eprintln!(
                        "the input is the 7-cycle: no proper 3-coloring lets every vertex begin a colorful path"
                    );
                    Ok(ExitCode::from(2))
                }
                SolveStatus::Unsupported(reason) => {
                    eprintln!("unsupported input: {reason}");
                    Ok(ExitCode::from(3))
                }
            }
        }
        Cmd::Verify { graph, coloring, check_chi } => {
            let g = graph.read()?;
            let text = fs::read_to_string(&coloring)
                .with_context(|| format!("reading {}", coloring.display()))?;
            let c = parse_coloring(&text, g.n())
                .with_context(|| format!("parsing {}", coloring.display()))?;
            let report = verify_solution(&g, &c, check_chi);
            print!("{}", report.render());
            Ok(if report.ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Chi { graph, limit } => {
            let g = graph.read()?;
            let limit = limit.unwrap_or_else(|| g.n().max(1));
            match chromatic_number(&g, limit) {
                Ok(chi) => {
                    println!("{chi}");
                    Ok(ExitCode::SUCCESS)
                }
                Err(_) => bail!("chromatic number exceeds {limit}"),
            }
        }
        Cmd::Gen { kind, n, a, b, chi, p, seed, output } => {
            let spec = build_spec(kind, n, a, b, chi, p, seed)?;
            let g = generate(&spec)?;
            write_out(output.as_deref(), &serialize_dimacs(&g))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sweep { n_max, chi, jobs, output } => {
            if !(1..=7).contains(&n_max) {
                bail!("n-max must be between 1 and 7");
            }
            let summary = sweep_small_graphs(n_max, chi, jobs);
            let text = format!("{}{}", summary.render_text(), summary.render_counts());
            write_out(output.as_deref(), &text)?;
            Ok(if summary.discrepancies.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Trace { graph, seed, output } => {
            let g = graph.read()?;
            let out = solve(&g, seed)?;
            write_out(output.as_deref(), &out.trace.render())?;
            match out.status {
                SolveStatus::Solved(_) => Ok(ExitCode::SUCCESS),
                SolveStatus::ExceptionC7 => Ok(ExitCode::from(2)),
                SolveStatus::Unsupported(_) => Ok(ExitCode::from(3)),
            }
        }
    }
}

fn solve(g: &Graph, seed: u64) -> Result<SolveOutcome> {
    solve_seeded(g, seed).map_err(|e| anyhow::anyhow!(e))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn build_spec(
    kind: GenKind,
    n: Option<usize>,
    a: Option<usize>,
    b: Option<usize>,
    chi: Option<usize>,
    p: Option<f64>,
    seed: u64,
) -> Result<GraphSpec> {
    let need = |v: Option<usize>, what: &str| v.with_context(|| format!("--{what} is required for this kind"));
    Ok(match kind {
        GenKind::Cycle => GraphSpec::Cycle { len: need(n, "n")? },
        GenKind::Complete => GraphSpec::Complete { k: need(n, "n")? },
        GenKind::Bipartite => GraphSpec::CompleteBipartite { a: need(a, "a")?, b: need(b, "b")? },
        GenKind::Random => GraphSpec::RandomChromatic {
            n: need(n, "n")?,
            chi: need(chi, "chi")?,
            p,
            seed,
        },
    })
}

/// Writes `trace.txt` plus `step_<k>.dot` for every step that carries a
/// coloring snapshot, all rendered against the solved core graph.
fn dump_trace(dir: &Path, out: &SolveOutcome) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    fs::write(dir.join("trace.txt"), out.trace.render())
        .with_context(|| format!("writing {}", dir.join("trace.txt").display()))?;
    if let Some(g) = &out.trace.core_graph {
        for rec in &out.trace.records {
            if let Some(c) = &rec.coloring {
                if c.len() == g.n() {
                    let path = dir.join(format!("step_{:03}.dot", rec.step));
                    fs::write(&path, render_dot(g, c))
                        .with_context(|| format!("writing {}", path.display()))?;
                }
            }
        }
    }
    Ok(())
}
