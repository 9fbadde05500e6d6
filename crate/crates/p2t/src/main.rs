//! Command-line tools for polygonal 2-trees.
//!
//! Every subcommand reads the plain edge-list format (`n m` header, one
//! `u v` line per edge) and writes line-oriented results to stdout;
//! diagnostics go to stderr. Exit codes: 0 on success, 1 when the input is
//! structurally valid but outside the domain (not a polygonal 2-tree, or a
//! failed cross-check), 2 on malformed input or arguments. The global
//! `--json` flag swaps each result for a single JSON object carrying the
//! same field names as the text labels.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use polygonal::cycles::{basis_size, induced_cycles, minimum_cycle_basis, Cycle};
use polygonal::decomp::{recognize, NiceEarDecomposition, RecognitionOutcome};
use polygonal::edgelist::{parse_edge_list, write_edge_list};
use polygonal::generator::{generate, generate_kgonal, AttachBias, EarLengthLaw, GenSpec};
use polygonal::graph::Graph;
use polygonal::mast::{distortion, fundamental_cycles, run_mast};
use polygonal::oracle::{brute_force_mast, horton_mcb, is_polygonal_by_reduction};

#[derive(Parser)]
#[command(name = "p2t", version, about = "Polygonal 2-tree toolkit")]
struct Cli {
    /// Emit the result as a single JSON object instead of text lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the input is a polygonal 2-tree.
    Recognize {
        file: PathBuf,
        /// On acceptance, print one line per ear (its vertex walk) in
        /// construction order instead of the plain verdict.
        #[arg(long)]
        emit_ears: bool,
    },
    /// Compute the minimum average stretch spanning tree.
    Mast { file: PathBuf },
    /// Compute the minimum fundamental cycle basis (the fundamental cycles
    /// of the optimal spanning tree).
    Mfcb { file: PathBuf },
    /// Compute the minimum cycle basis (the induced cycles).
    Mcb { file: PathBuf },
    /// Compute the probabilistic-embedding distortion (the optimal average
    /// stretch).
    Distortion { file: PathBuf },
    /// Generate a reproducible instance and print its edge list.
    Gen(GenArgs),
    /// Cross-check the fast implementations against the brute-force
    /// references (small inputs only).
    OracleCheck { file: PathBuf },
    /// Time the solve pipeline across instance sizes and report scaling
    /// ratios.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Grow until at least this many vertices exist.
    #[arg(long, required_unless_present = "kgonal", conflicts_with = "kgonal")]
    n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Make every polygon a k-gon (requires --polygons).
    #[arg(long, requires = "polygons")]
    kgonal: Option<u32>,
    /// Number of polygons for --kgonal.
    #[arg(long, requires = "kgonal")]
    polygons: Option<u32>,
    /// Smallest number of edges per glued path (at least 2).
    #[arg(long, default_value_t = 2, conflicts_with = "kgonal")]
    ear_min: u32,
    /// Largest number of edges per glued path.
    #[arg(long, default_value_t = 4, conflicts_with = "kgonal")]
    ear_max: u32,
    /// How the attachment edge of each new polygon is chosen.
    #[arg(long, value_enum, default_value_t = BiasArg::Uniform, conflicts_with = "kgonal")]
    bias: BiasArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum BiasArg {
    /// Any existing edge, uniformly.
    Uniform,
    /// Prefer recently created edges (deeply nested polygons).
    Recent,
    /// Only edges not yet shared by two polygons.
    External,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated vertex counts to time.
    #[arg(long, value_delimiter = ',', default_value = "4096,8192,16384,32768")]
    sizes: Vec<usize>,
    /// Instances timed per size; the median is reported.
    #[arg(long, default_value_t = 3)]
    seeds_per_size: u64,
    /// Timed solves per instance; the fastest counts.
    #[arg(long, default_value_t = 1)]
    repeats: u32,
}

/// Failures that map onto the non-zero exit codes.
enum CliError {
    /// Structurally valid input outside the domain, or a failed check.
    Domain(String),
    /// Unreadable or malformed input.
    Input(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Recognize { file, emit_ears } => cmd_recognize(file, *emit_ears, cli.json),
        Command::Mast { file } => cmd_mast(file, cli.json),
        Command::Mfcb { file } => cmd_mfcb(file, cli.json),
        Command::Mcb { file } => cmd_mcb(file, cli.json),
        Command::Distortion { file } => cmd_distortion(file, cli.json),
        Command::Gen(args) => cmd_gen(args, cli.json),
        Command::OracleCheck { file } => cmd_oracle_check(file, cli.json),
        Command::Bench(args) => cmd_bench(args, cli.json),
    }
}

fn load_graph(file: &PathBuf) -> Result<Graph, CliError> {
    let text = fs::read_to_string(file)
        .map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    parse_edge_list(&text).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))
}

/// Recognizes or reports why not; the rejection reason also lands on
/// stderr with full detail via the returned error.
fn accepted_decomposition(g: &Graph) -> Result<NiceEarDecomposition, CliError> {
    match recognize(g) {
        RecognitionOutcome::Accepted(d) => Ok(d),
        RecognitionOutcome::Rejected(r) => {
            Err(CliError::Domain(format!("not a polygonal 2-tree: {r}")))
        }
    }
}

fn ids(edges: impl IntoIterator<Item = polygonal::EdgeId>) -> String {
    let mut out = String::new();
    for (i, e) in edges.into_iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{e}");
    }
    out
}

fn cmd_recognize(file: &PathBuf, emit_ears: bool, json: bool) -> Result<(), CliError> {
    let g = load_graph(file)?;
    match recognize(&g) {
        RecognitionOutcome::Accepted(d) => {
            if json {
                let mut obj = json!({ "accepted": true, "ear_count": d.ear_count() });
                if emit_ears {
                    obj["ears"] = json!(d.ears.iter().map(|e| &e.path).collect::<Vec<_>>());
                }
                println!("{obj}");
            } else if emit_ears {
                for ear in &d.ears {
                    let walk: Vec<String> = ear.path.iter().map(u32::to_string).collect();
                    println!("{}", walk.join(" "));
                }
            } else {
                println!("accepted");
            }
            Ok(())
        }
        RecognitionOutcome::Rejected(r) => {
            if json {
                println!("{}", json!({ "accepted": false, "reason": r.code() }));
            } else {
                println!("rejected {}", r.code());
            }
            Err(CliError::Domain(format!("not a polygonal 2-tree: {r}")))
        }
    }
}

fn cmd_mast(file: &PathBuf, json: bool) -> Result<(), CliError> {
    let g = load_graph(file)?;
    let d = accepted_decomposition(&g)?;
    let r = run_mast(&g, &d);
    let tree: Vec<_> = r.tree.iter().collect();
    if json {
        println!(
            "{}",
            json!({
                "tree": tree,
                "removed": r.removal_order,
                "total_stretch": r.total_stretch,
                "avg_stretch": r.average_stretch.to_string(),
                "fcb_size": r.fcb_size,
            })
        );
    } else {
        println!("tree {}", ids(tree));
        println!("removed {}", ids(r.removal_order.iter().copied()));
        println!("total_stretch {}", r.total_stretch);
        println!("avg_stretch {}", r.average_stretch);
        println!("fcb_size {}", r.fcb_size);
    }
    Ok(())
}

fn print_cycles(cycles: &[Cycle], json: bool) {
    let total = basis_size(cycles);
    if json {
        println!(
            "{}",
            json!({
                "cycles": cycles.iter().map(|c| &c.edges).collect::<Vec<_>>(),
                "size": total,
            })
        );
    } else {
        for c in cycles {
            println!("{} {}", c.len(), ids(c.edges.iter().copied()));
        }
        println!("size {total}");
    }
}

fn cmd_mfcb(file: &PathBuf, json: bool) -> Result<(), CliError> {
    let g = load_graph(file)?;
    let d = accepted_decomposition(&g)?;
    let r = run_mast(&g, &d);
    let cycles =
        fundamental_cycles(&g, &r.tree).expect("the engine's tree is spanning by construction");
    print_cycles(&cycles, json);
    Ok(())
}

fn cmd_mcb(file: &PathBuf, json: bool) -> Result<(), CliError> {
    let g = load_graph(file)?;
    let set = minimum_cycle_basis(&g)
        .map_err(|r| CliError::Domain(format!("not a polygonal 2-tree: {r}")))?;
    print_cycles(&set.to_cycles(), json);
    Ok(())
}

fn cmd_distortion(file: &PathBuf, json: bool) -> Result<(), CliError> {
    let g = load_graph(file)?;
    let value =
        distortion(&g).map_err(|r| CliError::Domain(format!("not a polygonal 2-tree: {r}")))?;
    if json {
        println!("{}", json!({ "distortion": value.to_string() }));
    } else {
        println!("distortion {value}");
    }
    Ok(())
}

fn cmd_gen(args: &GenArgs, json: bool) -> Result<(), CliError> {
    let (g, _) = match (args.kgonal, args.polygons) {
        (Some(k), Some(r)) => {
            if k < 3 {
                return Err(CliError::Input("--kgonal must be at least 3".into()));
            }
            if r < 1 {
                return Err(CliError::Input("--polygons must be at least 1".into()));
            }
            generate_kgonal(k, r, args.seed)
        }
        _ => {
            let n = args.n.expect("clap enforces --n without --kgonal");
            if n < 3 {
                return Err(CliError::Input("--n must be at least 3".into()));
            }
            if args.ear_min < 2 || args.ear_min > args.ear_max {
                return Err(CliError::Input("need 2 <= --ear-min <= --ear-max".into()));
            }
            let ear_law = if args.ear_min == args.ear_max {
                EarLengthLaw::Fixed(args.ear_min)
            } else {
                EarLengthLaw::Uniform {
                    min: args.ear_min,
                    max: args.ear_max,
                }
            };
            let attach_bias = match args.bias {
                BiasArg::Uniform => AttachBias::Uniform,
                BiasArg::Recent => AttachBias::PreferRecent,
                BiasArg::External => AttachBias::PreferExternal,
            };
            generate(&GenSpec {
                target_vertices: n,
                ear_law,
                attach_bias,
                seed: args.seed,
            })
        }
    };
    if json {
        println!(
            "{}",
            json!({ "vertices": g.vertex_count(), "edges": g.edges() })
        );
    } else {
        print!("{}", write_edge_list(&g));
    }
    Ok(())
}

fn cmd_oracle_check(file: &PathBuf, json: bool) -> Result<(), CliError> {
    let g = load_graph(file)?;
    let report = brute_force_mast(&g)
        .map_err(|e| CliError::Domain(format!("brute-force reference refused the input: {e}")))?;
    let reduction_verdict = is_polygonal_by_reduction(&g)
        .map_err(|e| CliError::Domain(format!("brute-force reference refused the input: {e}")))?;

    let recognized = recognize(&g);
    let mut checks: Vec<(&str, bool)> = vec![(
        "recognizer_matches_oracle",
        recognized.decomposition().is_some() == report.is_polygonal
            && reduction_verdict == report.is_polygonal,
    )];
    if let RecognitionOutcome::Accepted(d) = &recognized {
        let r = run_mast(&g, d);
        checks.push((
            "engine_total_matches_oracle",
            r.total_stretch == report.min_total_stretch,
        ));

        let induced = induced_cycles(&g, d);
        let mut fast: Vec<Vec<polygonal::EdgeId>> = induced
            .iter()
            .map(|c| {
                let mut edges = c.to_vec();
                edges.sort_unstable();
                edges
            })
            .collect();
        fast.sort();
        let mut reference = horton_mcb(&g).map_err(|e| {
            CliError::Domain(format!("brute-force reference refused the input: {e}"))
        })?;
        for c in &mut reference {
            c.sort_unstable();
        }
        reference.sort();
        checks.push(("mcb_matches_oracle", fast == reference));
    }

    let tree: Vec<_> = report.optimal_tree.iter().collect();
    if json {
        println!(
            "{}",
            json!({
                "spanning_tree_count": report.spanning_tree_count,
                "min_total_stretch": report.min_total_stretch,
                "optimal_tree_count": report.optimal_tree_count,
                "optimal_tree": tree,
                "mcb_size": report.mcb_size,
                "is_polygonal": report.is_polygonal,
                "checks": checks
                    .iter()
                    .map(|&(name, ok)| (name, if ok { "PASS" } else { "FAIL" }))
                    .collect::<std::collections::BTreeMap<_, _>>(),
            })
        );
    } else {
        println!("spanning_tree_count {}", report.spanning_tree_count);
        println!("min_total_stretch {}", report.min_total_stretch);
        println!("optimal_tree_count {}", report.optimal_tree_count);
        println!("optimal_tree {}", ids(tree));
        println!("mcb_size {}", report.mcb_size);
        println!("is_polygonal {}", report.is_polygonal);
        for &(name, ok) in &checks {
            println!("{name} {}", if ok { "PASS" } else { "FAIL" });
        }
    }
    if checks.iter().all(|&(_, ok)| ok) {
        Ok(())
    } else {
        Err(CliError::Domain("cross-check failed".into()))
    }
}

fn cmd_bench(args: &BenchArgs, json: bool) -> Result<(), CliError> {
    if args.sizes.is_empty() {
        return Err(CliError::Input("--sizes needs at least one size".into()));
    }
    if args.seeds_per_size == 0 {
        return Err(CliError::Input("--seeds-per-size must be positive".into()));
    }
    if args.repeats == 0 {
        return Err(CliError::Input("--repeats must be positive".into()));
    }
    let seeds: Vec<u64> = (1..=args.seeds_per_size).collect();
    let report = polygonal::bench::run_bench(&args.sizes, &seeds, args.repeats);
    if json {
        println!(
            "{}",
            json!({
                "records": report.records.iter().map(|r| json!({
                    "n": r.vertices,
                    "m": r.edges,
                    "seed": r.seed,
                    "solve_ms": r.solve.as_secs_f64() * 1e3,
                    "heap_ops": r.heap_ops,
                    "cycle_scan_ops": r.cycle_scan_ops,
                    "approx_state_bytes": r.approx_state_bytes,
                })).collect::<Vec<_>>(),
                "medians": report.medians.iter().map(|&(target, t)| json!({
                    "target": target,
                    "solve_ms": t.as_secs_f64() * 1e3,
                })).collect::<Vec<_>>(),
                "ratios": report.ratios,
            })
        );
    } else {
        print!("{report}");
    }
    Ok(())
}
