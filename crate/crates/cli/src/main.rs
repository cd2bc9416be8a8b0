//! `fumlab`: generate plane graphs, search for FUM colorings, check and
//! encode them, and replay the counterexample claims.
//!
//! Exit codes: 0 success / satisfiable, 1 violations or failed claims,
//! 2 bad arguments or unreadable input, 10 exhausted, 20 budget exceeded.

mod claims;

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fumlab::fum::{
    chi_fum, check_fum, parse_coloring, serialize_coloring, solve_fum, FumError, SearchOptions,
    SolveStatus,
};
use fumlab::generators::{self, GenError};
use fumlab::plane_graph::{parse_graph, serialize_graph, trace_faces, PlaneGraph};
use fumlab::sat::{encode_fum, write_dimacs};
use serde_json::json;

const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_EXHAUSTED: u8 = 10;
const EXIT_BUDGET: u8 = 20;

#[derive(Parser)]
#[command(name = "fumlab", version, about = "Facial unique-maximum colorings of plane graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph in the planegraph text format.
    Gen {
        #[command(subcommand)]
        target: GenTarget,
        /// Output file; the graph goes to stdout when omitted.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Decide whether a graph has a FUM-coloring with palette 1..=k.
    Solve {
        graph: PathBuf,
        #[arg(long)]
        k: u32,
        /// Where to write the certificate coloring when one is found.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Smallest palette admitting a FUM-coloring.
    Chi {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check a coloring against the FUM rules.
    Check {
        graph: PathBuf,
        coloring: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write the DIMACS CNF encoding of FUM-colorability.
    Encode {
        graph: PathBuf,
        #[arg(long)]
        k: u32,
        /// DIMACS output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay every counterexample claim and report pass/fail.
    VerifyPaper {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also write the machine-readable report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Remove the spoke a1-b1 from the gadget used by claim 2.
        #[arg(long)]
        tamper_gadget: bool,
    },
}

#[derive(Subcommand, Clone)]
enum GenTarget {
    /// The gadget H_k on 6k+2 vertices.
    Gadget {
        #[arg(long)]
        k: usize,
    },
    /// Two copies of H_1 joined by the edge a4-a2'.
    Fig1,
    /// K4 with a copy of H_k in each selected face.
    K4Composite {
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Comma-separated face ids of K4 (default 0,1).
        #[arg(long, value_delimiter = ',')]
        faces: Option<Vec<usize>>,
    },
    Cycle {
        #[arg(long)]
        n: usize,
    },
    Path {
        #[arg(long)]
        n: usize,
    },
    K4,
    /// n-cycle plus a hub.
    Wheel {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// Maximum search nodes per solve.
    #[arg(long, default_value_t = 1_000_000_000)]
    budget_nodes: u64,
    /// Maximum seconds per solve.
    #[arg(long, default_value_t = 600.0)]
    budget_seconds: f64,
    #[arg(long, value_enum, default_value_t = Toggle::On)]
    strong_pruning: Toggle,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Toggle {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Machine,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        let code = match e {
            GenError::InvalidParameter(_) | GenError::FaceNotFound(_) => EXIT_USAGE,
            _ => EXIT_VIOLATION,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// Worker threads: available parallelism, capped by `FUMLAB_THREADS`.
fn thread_count() -> Result<usize, CliError> {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    match std::env::var("FUMLAB_THREADS") {
        Ok(v) => {
            let cap: usize = v
                .trim()
                .parse()
                .ok()
                .filter(|&c| c >= 1)
                .ok_or_else(|| CliError::usage(format!("FUMLAB_THREADS must be a positive integer, got `{v}`")))?;
            Ok(available.min(cap))
        }
        Err(_) => Ok(available),
    }
}

impl SearchArgs {
    fn options(&self, threads: usize) -> Result<SearchOptions, CliError> {
        if !(self.budget_seconds.is_finite() && self.budget_seconds > 0.0) {
            return Err(CliError::usage("--budget-seconds must be positive"));
        }
        Ok(SearchOptions {
            strong_pruning: self.strong_pruning == Toggle::On,
            node_budget: Some(self.budget_nodes),
            time_budget: Some(Duration::from_secs_f64(self.budget_seconds)),
            threads,
        })
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<PlaneGraph, CliError> {
    parse_graph(&read_text(path)?).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError {
        code: EXIT_VIOLATION,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn summary(g: &PlaneGraph) -> String {
    format!(
        "V={} E={} F={} Δ={}",
        g.num_vertices(),
        g.num_edges(),
        trace_faces(g).len(),
        g.max_degree()
    )
}

fn cmd_gen(target: &GenTarget, out: Option<&Path>) -> Result<u8, CliError> {
    let g = match target {
        GenTarget::Gadget { k } => generators::gen_gadget(*k)?.graph,
        GenTarget::Fig1 => generators::gen_fig1(),
        GenTarget::K4Composite { k, faces } => {
            let faces: BTreeSet<_> = match faces {
                Some(f) => f.iter().copied().collect(),
                None => generators::default_k4_faces(),
            };
            generators::gen_k4_composite(&faces, *k)?
        }
        GenTarget::Cycle { n } => generators::gen_cycle(*n)?,
        GenTarget::Path { n } => generators::gen_path(*n)?,
        GenTarget::K4 => generators::gen_k4(),
        GenTarget::Wheel { n } => generators::gen_wheel(*n)?,
    };
    let text = serialize_graph(&g);
    match out {
        Some(path) => {
            write_text(path, &text)?;
            println!("{}", summary(&g));
        }
        None => {
            print!("{text}");
            eprintln!("{}", summary(&g));
        }
    }
    Ok(EXIT_OK)
}

fn cmd_solve(
    graph: &Path,
    k: u32,
    out: Option<&Path>,
    search: &SearchArgs,
    format: Format,
) -> Result<u8, CliError> {
    let g = read_graph(graph)?;
    let opts = search.options(thread_count()?)?;
    match solve_fum(&g, k, &opts) {
        Ok(outcome) => {
            if let (Some(path), Some(c)) = (out, &outcome.certificate) {
                write_text(path, &serialize_coloring(c))?;
            }
            match format {
                Format::Machine => println!(
                    "{}",
                    json!({
                        "status": outcome.status,
                        "k": k,
                        "stats": outcome.stats,
                        "certificate": outcome.certificate.as_ref().map(|c| c.colors()),
                    })
                ),
                Format::Text => {
                    let status = match outcome.status {
                        SolveStatus::Satisfiable => "satisfiable",
                        SolveStatus::Exhausted => "exhausted",
                    };
                    println!("status: {status} (k={k})");
                    print_stats(&outcome.stats);
                    if let Some(c) = &outcome.certificate {
                        let colors: Vec<_> = c.colors().iter().map(u32::to_string).collect();
                        println!("certificate: {}", colors.join(" "));
                    }
                }
            }
            Ok(match outcome.status {
                SolveStatus::Satisfiable => EXIT_OK,
                SolveStatus::Exhausted => EXIT_EXHAUSTED,
            })
        }
        Err(FumError::ResourceLimitExceeded(stats)) => {
            match format {
                Format::Machine => println!("{}", json!({ "status": "budget_exceeded", "k": k, "stats": stats })),
                Format::Text => {
                    println!("status: budget exceeded (k={k})");
                    print_stats(&stats);
                }
            }
            Ok(EXIT_BUDGET)
        }
        Err(e) => Err(CliError::usage(e.to_string())),
    }
}

fn print_stats(s: &fumlab::fum::SearchStats) {
    println!(
        "nodes: {}  prunes(properness): {}  prunes(face max): {}  time: {:.3}s",
        s.nodes_expanded,
        s.prunes_by_properness,
        s.prunes_by_face_max,
        s.wall_time.as_secs_f64()
    );
}

fn cmd_chi(graph: &Path, out: Option<&Path>, search: &SearchArgs, format: Format) -> Result<u8, CliError> {
    let g = read_graph(graph)?;
    let opts = search.options(thread_count()?)?;
    match chi_fum(&g, &opts) {
        Ok((k, c)) => {
            if let Some(path) = out {
                write_text(path, &serialize_coloring(&c))?;
            }
            match format {
                Format::Machine => println!("{}", json!({ "chi_fum": k, "certificate": c.colors() })),
                Format::Text => println!("chi_fum = {k}"),
            }
            Ok(EXIT_OK)
        }
        Err(FumError::ResourceLimitExceeded(stats)) => {
            println!("budget exceeded after {} nodes", stats.nodes_expanded);
            Ok(EXIT_BUDGET)
        }
        Err(e) => Err(CliError::usage(e.to_string())),
    }
}

fn cmd_check(graph: &Path, coloring: &Path, format: Format) -> Result<u8, CliError> {
    let g = read_graph(graph)?;
    let c = parse_coloring(&read_text(coloring)?)
        .map_err(|e| CliError::usage(format!("{}: {e}", coloring.display())))?;
    let report = check_fum(&g, &c, &trace_faces(&g)).map_err(|e| CliError::usage(e.to_string()))?;
    match format {
        Format::Machine => println!(
            "{}",
            json!({
                "status": if report.is_fum() { "ok" } else { "violations" },
                "violations": report,
            })
        ),
        Format::Text => print!("{report}"),
    }
    Ok(if report.is_fum() { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_encode(graph: &Path, k: u32, out: Option<&Path>) -> Result<u8, CliError> {
    let g = read_graph(graph)?;
    if k == 0 {
        return Err(CliError::usage("--k must be at least 1"));
    }
    let f = encode_fum(&g, k);
    let text = write_dimacs(&f);
    let counts = format!("vars={} clauses={}", f.num_vars, f.clauses.len());
    match out {
        Some(path) => {
            write_text(path, &text)?;
            println!("{counts}");
        }
        None => {
            print!("{text}");
            eprintln!("{counts}");
        }
    }
    Ok(EXIT_OK)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Gen { target, out } => cmd_gen(&target, out.as_deref()),
        Command::Solve {
            graph,
            k,
            out,
            search,
            format,
        } => cmd_solve(&graph, k, out.as_deref(), &search, format),
        Command::Chi {
            graph,
            out,
            search,
            format,
        } => cmd_chi(&graph, out.as_deref(), &search, format),
        Command::Check {
            graph,
            coloring,
            format,
        } => cmd_check(&graph, &coloring, format),
        Command::Encode { graph, k, out } => cmd_encode(&graph, k, out.as_deref()),
        Command::VerifyPaper {
            search,
            format,
            out,
            tamper_gadget,
        } => {
            let threads = thread_count()?;
            let opts = search.options(1)?;
            let report = claims::run_all(&opts, tamper_gadget, threads);
            let machine = serde_json::to_string_pretty(&report).expect("report serializes");
            if let Some(path) = out {
                write_text(&path, &machine)?;
            }
            match format {
                Format::Machine => println!("{machine}"),
                Format::Text => print!("{}", report.table()),
            }
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
