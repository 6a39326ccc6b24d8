//! `cubrep` — build, verify and experiment with cube representations.
//!
//! Exit codes: 0 success / representation valid, 1 verification failure,
//! 2 usage or parse errors. All diagnostics go to stderr; documents go to
//! stdout or `--output`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cubrep::builder::{
    construct_cub_rep, prune_dimensions, verify_interval_dims, verify_representation, BuildMode,
};
use cubrep::crossing::{bound_report, crossing_pipeline};
use cubrep::graph::{degeneracy_order, Graph};
use cubrep::io::{
    emit_bound_report, emit_experiment_result, emit_pipeline, emit_representation,
    emit_verification_report, parse_crossing_list, parse_experiment_spec, parse_graph_path,
    parse_representation, GraphFormat, ParsedRepresentation,
};
use cubrep::oracle::{exact_boxicity, exact_cubicity};
use cubrep::randlab::run_experiment;
use cubrep::Error;

#[derive(Parser)]
#[command(
    name = "cubrep",
    version,
    about = "Cube representations of graphs via degeneracy orderings"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Det,
    Rand,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Auto,
    EdgeList,
    Dimacs,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> GraphFormat {
        match f {
            FormatArg::Auto => GraphFormat::Auto,
            FormatArg::EdgeList => GraphFormat::EdgeList,
            FormatArg::Dimacs => GraphFormat::Dimacs,
        }
    }
}

#[derive(Args)]
struct GraphInput {
    /// Graph file (edge list or DIMACS).
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a verified cube representation.
    Build {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum, default_value_t = ModeArg::Det)]
        mode: ModeArg,
        /// Seed for randomized mode (overridden by CUBREP_SEED).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit endpoints as exact rationals over the common length.
        #[arg(long)]
        normalize: bool,
        /// Greedily drop redundant dimensions before emitting.
        #[arg(long)]
        prune: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a representation document against a graph.
    Verify {
        #[command(flatten)]
        input: GraphInput,
        /// Representation document produced by `build` or `crossing-pipeline`.
        rep: PathBuf,
    },
    /// Degeneracy and a witnessing vertex order.
    Degeneracy {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Exact brute-force cubicity or boxicity (small graphs only).
    Oracle {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, conflicts_with = "exact_boxicity")]
        exact_cubicity: bool,
        #[arg(long)]
        exact_boxicity: bool,
    },
    /// Crossing-number bound formulas.
    Bounds {
        /// Crossing count t.
        #[arg(long)]
        crossings: u64,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Decomposition pipeline: graph + crossing list -> box representation.
    CrossingPipeline {
        #[command(flatten)]
        input: GraphInput,
        /// Crossing list file: one `u1 v1 u2 v2` line per crossing.
        crossings: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run an experiment spec and emit the result document.
    Experiment {
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidGraph(_)
        | Error::InvalidInput(_)
        | Error::SizeCap { .. }
        | Error::Parse { .. }
        | Error::Io(_)
        | Error::Json(_) => 2,
        Error::InternalInvariant(_) | Error::AttemptsExceeded { .. } => 1,
    }
}

fn load_graph(input: &GraphInput) -> cubrep::Result<Graph> {
    let parsed = parse_graph_path(&input.graph, input.format.into())?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    Ok(parsed.graph)
}

fn write_out(path: &Option<PathBuf>, text: &str) -> cubrep::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn read_to_string(path: &Path) -> cubrep::Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn run(cli: Cli) -> cubrep::Result<u8> {
    match cli.cmd {
        Cmd::Build {
            input,
            mode,
            seed,
            normalize,
            prune,
            output,
        } => {
            let g = load_graph(&input)?;
            let mode = match mode {
                ModeArg::Det => BuildMode::Deterministic,
                ModeArg::Rand => {
                    let seed = match std::env::var("CUBREP_SEED") {
                        Ok(v) => v.parse::<u64>().map_err(|_| {
                            Error::InvalidInput(format!("CUBREP_SEED={v:?} is not a u64"))
                        })?,
                        Err(_) => seed,
                    };
                    BuildMode::Randomized { seed }
                }
            };
            let mut rep = construct_cub_rep(&g, mode)?;
            if prune {
                rep = prune_dimensions(&g, &rep)?;
            }
            write_out(&output, &emit_representation(&rep, normalize)?)?;
            Ok(0)
        }
        Cmd::Verify { input, rep } => {
            let g = load_graph(&input)?;
            let text = read_to_string(&rep)?;
            match parse_representation(&text)? {
                ParsedRepresentation::Cube(rep) => {
                    if rep.source_graph_hash != g.sha256_hex() {
                        eprintln!("warning: representation was built from a different graph");
                    }
                    let report = verify_representation(&g, &rep)?;
                    print!("{}", emit_verification_report(&report)?);
                    Ok(if report.is_empty() { 0 } else { 1 })
                }
                ParsedRepresentation::Box {
                    n,
                    graph_sha256,
                    dims,
                } => {
                    if n != g.n() {
                        return Err(Error::InvalidInput(format!(
                            "representation covers {n} vertices, graph has {}",
                            g.n()
                        )));
                    }
                    if graph_sha256 != g.sha256_hex() {
                        eprintln!("warning: representation was built from a different graph");
                    }
                    let (missing, phantom) = verify_interval_dims(&g, &dims)?;
                    let report = cubrep::builder::VerificationReport {
                        missing_edges: missing,
                        phantom_edges: phantom,
                        length_violations: Vec::new(),
                    };
                    print!("{}", emit_verification_report(&report)?);
                    Ok(if report.is_empty() { 0 } else { 1 })
                }
            }
        }
        Cmd::Degeneracy { input } => {
            let g = load_graph(&input)?;
            let d = degeneracy_order(&g);
            let order: Vec<usize> = (1..=g.n()).map(|i| d.vertex(i)).collect();
            let doc = serde_json::json!({
                "n": g.n(),
                "m": g.m(),
                "k": d.k(),
                "order": order,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(0)
        }
        Cmd::Oracle {
            input,
            exact_cubicity: want_cub,
            exact_boxicity: want_box,
        } => {
            if want_cub == want_box {
                return Err(Error::InvalidInput(
                    "choose exactly one of --exact-cubicity / --exact-boxicity".into(),
                ));
            }
            let g = load_graph(&input)?;
            let (name, value) = if want_cub {
                ("exact_cubicity", exact_cubicity(&g)?)
            } else {
                ("exact_boxicity", exact_boxicity(&g)?)
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({ "n": g.n(), name: value }))?
            );
            Ok(0)
        }
        Cmd::Bounds { crossings, n, m } => {
            let report = bound_report(n, m, crossings)?;
            print!("{}", emit_bound_report(&report)?);
            Ok(0)
        }
        Cmd::CrossingPipeline {
            input,
            crossings,
            output,
        } => {
            let g = load_graph(&input)?;
            let cd = parse_crossing_list(&read_to_string(&crossings)?, &g)?;
            for w in cd.warnings() {
                eprintln!("warning: {w}");
            }
            let out = crossing_pipeline(&g, &cd)?;
            write_out(&output, &emit_pipeline(&out, &g)?)?;
            Ok(0)
        }
        Cmd::Experiment { spec, output } => {
            let spec = parse_experiment_spec(&read_to_string(&spec)?)?;
            let result = run_experiment(&spec)?;
            write_out(&output, &emit_experiment_result(&spec, &result)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
