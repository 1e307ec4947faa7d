//! Command-line reports over the cyclebound library: cycle counts, spectra,
//! edge-count bounds, extremal power sums, threshold tables, exhaustive
//! verification sweeps, and discrepancy probes.
//!
//! Exit codes: 0 success, 1 verification violations or a probe discrepancy
//! under --strict, 2 usage or input errors.

mod report;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cyclebound::bounds::{bound_report, probe_complete_graph_bound};
use cyclebound::cycles::{count_simple_cycles_with_budget, cycle_counts, DEFAULT_EXPANSION_BUDGET};
use cyclebound::graph::Graph;
use cyclebound::oracle::{
    verify_triangle_average_with_budget, verify_walk_class_sandwich, DEFAULT_SWEEP_BUDGET,
};
use cyclebound::powersum::{
    exceptional_set, g_threshold, numeric_maximize_detailed, two_level_candidates,
    PowerSumProblem, ThresholdRecord, DEFAULT_RESTARTS,
};
use cyclebound::spectral::{adjacency_spectrum, trace_power};
use cyclebound::symfun::{power_sum_in_e3, power_sum_in_e3_e4, PowerSumPoly};
use num_bigint::BigInt;
use report::{Document, Meta};
use serde_json::{json, Map, Value};
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "cyclebound", version, about = "Cycle counts, spectra, sharp bounds, and exhaustive small-graph verification")]
struct Cli {
    /// Output format; csv applies only to tabular reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Omit the meta block and wall-clock fields for reproducible output.
    #[arg(long, global = true)]
    no_meta: bool,

    /// Exit 1 when a probe reports a discrepancy.
    #[arg(long, global = true)]
    strict: bool,

    /// Cap the worker-thread count for parallel sweeps.
    #[arg(long, global = true, value_parser = clap::value_parser!(usize))]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count triangles and simple cycles of a graph.
    Count {
        /// Edge-list file.
        #[arg(long)]
        graph: PathBuf,
        /// Largest cycle length to count.
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        /// Node-expansion budget for the backtracking search.
        #[arg(long, default_value_t = DEFAULT_EXPANSION_BUDGET)]
        budget: u64,
    },
    /// Exact cycle counts of a graph against the edge-count bounds.
    Bounds {
        /// Edge-list file.
        #[arg(long)]
        graph: PathBuf,
        /// Largest cycle length to report.
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        /// Node-expansion budget for the backtracking search.
        #[arg(long, default_value_t = DEFAULT_EXPANSION_BUDGET)]
        budget: u64,
    },
    /// Adjacency eigenvalues, sorted descending.
    Spectrum {
        /// Edge-list file.
        #[arg(long)]
        graph: PathBuf,
        /// Eigenvalue accuracy relative to the spectral radius.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Maximizers of the p-th power sum over zero-sum unit vectors.
    Extremal {
        /// Dimension.
        #[arg(long)]
        n: usize,
        /// Exponent; integer unless --absolute.
        #[arg(long)]
        p: f64,
        /// Report every two-level stationary point, best first.
        #[arg(long, conflicts_with = "numeric")]
        splits: bool,
        /// Maximize numerically by projected gradient ascent with restarts.
        #[arg(long)]
        numeric: bool,
        /// Maximize sum |x|^p instead of sum x^p (allows fractional p > 2).
        #[arg(long)]
        absolute: bool,
        /// Seed for the numeric restarts.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Iteration cap per numeric restart.
        #[arg(long, default_value_t = 1000)]
        iterations: u32,
        /// Convergence tolerance on the stationarity residual.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Number of numeric restarts.
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: u32,
    },
    /// Power sums of constrained variables as exact polynomials.
    Newton {
        /// Number of variables (3 or 4).
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=4))]
        n: u8,
        /// Largest power sum to expand.
        #[arg(long, default_value_t = 12)]
        kmax: u32,
    },
    /// Dimension thresholds and exceptional pairs for even exponents.
    Exceptional {
        /// Largest even exponent to scan.
        #[arg(long, default_value_t = 12)]
        pmax: u64,
    },
    /// Probe a claim that can fail, reporting the discrepancy.
    Probe {
        #[command(subcommand)]
        probe: ProbeCommand,
    },
    /// Exhaustively verify a claim over all small graphs.
    Verify {
        #[command(subcommand)]
        claim: VerifyCommand,
    },
}

#[derive(Debug, Subcommand)]
enum ProbeCommand {
    /// Surplus of the closed-walk trace over 2p times the simple p-cycle count.
    Eq4 {
        /// Edge-list file.
        #[arg(long, required_unless_present = "n", conflicts_with = "n")]
        graph: Option<PathBuf>,
        /// Use the complete graph on n vertices instead of a file.
        #[arg(long)]
        n: Option<usize>,
        /// Cycle length.
        #[arg(long)]
        p: u32,
        /// Node-expansion budget for the backtracking search.
        #[arg(long, default_value_t = DEFAULT_EXPANSION_BUDGET)]
        budget: u64,
    },
    /// Both sharp-constant variants against the exact cycle count of a
    /// complete graph.
    Thm4 {
        /// Vertices of the complete graph.
        #[arg(long)]
        n: u64,
        /// Cycle length (odd prime).
        #[arg(long)]
        p: u32,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Average-triangle bound over every graph up to a vertex cap, with
    /// equality witnesses.
    Thm2 {
        /// Bound parameter: 3T <= (n-2)E.
        #[arg(long)]
        n: usize,
        /// Sweep all graphs on up to this many vertices.
        #[arg(long, default_value_t = 6)]
        vmax: usize,
        /// Instance budget for the sweep.
        #[arg(long, default_value_t = DEFAULT_SWEEP_BUDGET)]
        budget: u128,
    },
    /// Walk-class sandwich between the trace halves over every small graph.
    Eq5 {
        /// Sweep all graphs on up to this many vertices.
        #[arg(long, default_value_t = 5)]
        vmax: usize,
        /// Largest walk length to check.
        #[arg(long, default_value_t = 6)]
        kmax: u32,
    },
}

/// One executed subcommand: the document body plus rendering hints.
struct Outcome {
    command: String,
    params: Map<String, Value>,
    results: Value,
    /// CSV rows (header first) when the report is tabular.
    table: Option<Vec<Vec<String>>>,
    /// Exit 1: violations found, or a discrepancy under --strict.
    failing: bool,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 || rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().is_err() {
            eprintln!("error: --jobs must be a positive worker count");
            return 2;
        }
    }
    let started = Instant::now();
    let mut outcome = match execute(&cli) {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("error: {err:#}");
            return 2;
        }
    };
    let meta = (!cli.no_meta).then(|| Meta {
        version: env!("CARGO_PKG_VERSION"),
        timestamp_unix_ms: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis())
            .unwrap_or(0),
        wall_time_ms: started.elapsed().as_millis(),
    });
    let doc = Document {
        command: outcome.command,
        params: outcome.params,
        results: outcome.results,
        meta,
    };
    let rendered = match cli.format {
        Format::Json => report::to_json(&doc),
        Format::Text => report::to_text(&doc),
        Format::Csv => match outcome.table.take() {
            Some(rows) => {
                let mut out = String::new();
                for row in &rows {
                    out.push_str(&report::csv_line(row));
                    out.push('\n');
                }
                out
            }
            None => {
                eprintln!("error: csv output is only available for tabular reports (bounds, exceptional)");
                return 2;
            }
        },
    };
    print!("{rendered}");
    i32::from(outcome.failing)
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Count { graph, kmax, budget } => {
            let g = load_graph(graph)?;
            let counts = cycle_counts(&g, *kmax, *budget)?;
            let mut results = serde_json::to_value(&counts)?;
            let fields = results.as_object_mut().expect("struct serializes to an object");
            fields.insert("vertex_count".into(), json!(g.vertex_count()));
            fields.insert("edge_count".into(), json!(g.edge_count()));
            Ok(Outcome {
                command: "count".into(),
                params: params(&[
                    ("graph", path_value(graph)),
                    ("kmax", json!(kmax)),
                    ("budget", json!(budget)),
                ]),
                results,
                table: None,
                failing: false,
            })
        }
        Command::Bounds { graph, kmax, budget } => {
            let g = load_graph(graph)?;
            let rep = bound_report(&g, *kmax, *budget)?;
            let mut table = vec![header(&["k", "exact", "naive", "prime", "sharp", "ratio"])];
            for row in &rep.rows {
                table.push(vec![
                    row.k.to_string(),
                    row.exact.to_string(),
                    report::csv_real(row.naive),
                    row.prime.map(report::csv_real).unwrap_or_default(),
                    row.sharp.map(report::csv_real).unwrap_or_default(),
                    row.ratio.map(report::csv_real).unwrap_or_default(),
                ]);
            }
            Ok(Outcome {
                command: "bounds".into(),
                params: params(&[
                    ("graph", path_value(graph)),
                    ("kmax", json!(kmax)),
                    ("budget", json!(budget)),
                ]),
                results: serde_json::to_value(&rep)?,
                table: Some(table),
                failing: false,
            })
        }
        Command::Spectrum { graph, tol } => {
            if *tol <= 0.0 || tol.is_nan() {
                bail!("--tol must be positive");
            }
            let g = load_graph(graph)?;
            let spectrum = adjacency_spectrum(&g, *tol)?;
            Ok(Outcome {
                command: "spectrum".into(),
                params: params(&[("graph", path_value(graph)), ("tol", json!(tol))]),
                results: serde_json::to_value(&spectrum)?,
                table: None,
                failing: false,
            })
        }
        Command::Extremal {
            n,
            p,
            splits,
            numeric,
            absolute,
            seed,
            iterations,
            tol,
            restarts,
        } => {
            if *tol <= 0.0 || tol.is_nan() {
                bail!("--tol must be positive");
            }
            let problem = if *absolute {
                PowerSumProblem::absolute(*n, *p)?
            } else {
                if p.fract() != 0.0 || !(3.0..=4096.0).contains(p) {
                    bail!("signed mode needs an integer exponent 3 <= p <= 4096; use --absolute for fractional p");
                }
                PowerSumProblem::signed(*n, *p as u32)?
            };
            let (method, results) = if *numeric {
                let rep = numeric_maximize_detailed(&problem, *seed, *iterations, *restarts, *tol)?;
                ("numeric", serde_json::to_value(&rep)?)
            } else if *splits {
                ("splits", json!({ "candidates": two_level_candidates(&problem) }))
            } else {
                let best = two_level_candidates(&problem)
                    .into_iter()
                    .next()
                    .expect("n >= 2 admits a two-level point");
                ("closed", serde_json::to_value(&best)?)
            };
            Ok(Outcome {
                command: "extremal".into(),
                params: params(&[
                    ("n", json!(n)),
                    ("p", json!(p)),
                    ("mode", json!(if *absolute { "absolute" } else { "signed" })),
                    ("method", json!(method)),
                    ("seed", json!(seed)),
                    ("iterations", json!(iterations)),
                    ("tol", json!(tol)),
                    ("restarts", json!(restarts)),
                ]),
                results,
                table: None,
                failing: false,
            })
        }
        Command::Newton { n, kmax } => {
            if *kmax < 1 {
                bail!("--kmax must be at least 1");
            }
            let polynomials: Vec<PowerSumPoly> = (1..=*kmax)
                .map(|k| if *n == 3 { power_sum_in_e3(k) } else { power_sum_in_e3_e4(k) })
                .collect();
            Ok(Outcome {
                command: "newton".into(),
                params: params(&[("n", json!(n)), ("kmax", json!(kmax))]),
                results: json!({ "n": n, "k_max": kmax, "polynomials": polynomials }),
                table: None,
                failing: false,
            })
        }
        Command::Exceptional { pmax } => {
            if *pmax < 4 || *pmax % 2 != 0 {
                bail!("--pmax must be an even integer >= 4");
            }
            let records: Vec<ThresholdRecord> =
                (4..=*pmax).step_by(2).map(|p| g_threshold(p as f64)).collect();
            let pairs: Vec<(u64, u64)> = exceptional_set(*pmax).into_iter().collect();
            let mut table =
                vec![header(&["p", "g_value", "h_value", "n_threshold", "exceptional_n"])];
            for rec in &records {
                let ns: Vec<String> = rec.exceptional_n.iter().map(u64::to_string).collect();
                table.push(vec![
                    format!("{}", rec.p),
                    report::csv_real(rec.g_value),
                    report::csv_real(rec.h_value),
                    rec.n_threshold.to_string(),
                    ns.join(" "),
                ]);
            }
            Ok(Outcome {
                command: "exceptional".into(),
                params: params(&[("pmax", json!(pmax))]),
                results: json!({ "records": records, "pairs": pairs }),
                table: Some(table),
                failing: false,
            })
        }
        Command::Probe { probe } => execute_probe(cli, probe),
        Command::Verify { claim } => execute_verify(cli, claim),
    }
}

fn execute_probe(cli: &Cli, probe: &ProbeCommand) -> Result<Outcome> {
    match probe {
        ProbeCommand::Eq4 { graph, n, p, budget } => {
            let g = match (graph, n) {
                (Some(path), None) => load_graph(path)?,
                (None, Some(n)) => Graph::complete(*n),
                _ => unreachable!("clap enforces exactly one graph source"),
            };
            let cycles = count_simple_cycles_with_budget(&g, *p, *budget)?;
            let trace = trace_power(&g, *p);
            let gap = &trace - BigInt::from(2 * u64::from(*p)) * BigInt::from(cycles);
            let discrepancy = gap != BigInt::from(0);
            let mut p_map = params(&[("p", json!(p)), ("budget", json!(budget))]);
            match (graph, n) {
                (Some(path), _) => {
                    p_map.insert("graph".into(), path_value(path));
                }
                (_, Some(n)) => {
                    p_map.insert("n".into(), json!(n));
                }
                _ => {}
            }
            Ok(Outcome {
                command: "probe eq4".into(),
                params: p_map,
                results: json!({
                    "vertex_count": g.vertex_count(),
                    "edge_count": g.edge_count(),
                    "p": p,
                    "trace": bignum(&trace),
                    "cycle_count": cycles,
                    "gap": bignum(&gap),
                    "discrepancy": discrepancy,
                }),
                table: None,
                failing: discrepancy && cli.strict,
            })
        }
        ProbeCommand::Thm4 { n, p } => {
            let probe = probe_complete_graph_bound(*n, *p)?;
            let failing = probe.discrepancy && cli.strict;
            Ok(Outcome {
                command: "probe thm4".into(),
                params: params(&[("n", json!(n)), ("p", json!(p))]),
                results: serde_json::to_value(&probe)?,
                table: None,
                failing,
            })
        }
    }
}

fn execute_verify(cli: &Cli, claim: &VerifyCommand) -> Result<Outcome> {
    match claim {
        VerifyCommand::Thm2 { n, vmax, budget } => {
            let mut rep = verify_triangle_average_with_budget(*n, *vmax, *budget)?;
            if cli.no_meta {
                rep.wall_time_ms = None;
            }
            let failing = !rep.verified;
            Ok(Outcome {
                command: "verify thm2".into(),
                params: params(&[
                    ("n", json!(n)),
                    ("vmax", json!(vmax)),
                    ("budget", json!(budget)),
                ]),
                results: serde_json::to_value(&rep)?,
                table: None,
                failing,
            })
        }
        VerifyCommand::Eq5 { vmax, kmax } => {
            let mut rep = verify_walk_class_sandwich(*vmax, *kmax)?;
            if cli.no_meta {
                rep.wall_time_ms = None;
            }
            let failing = !rep.verified;
            Ok(Outcome {
                command: "verify eq5".into(),
                params: params(&[("vmax", json!(vmax)), ("kmax", json!(kmax))]),
                results: serde_json::to_value(&rep)?,
                table: None,
                failing,
            })
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Graph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn params(entries: &[(&str, Value)]) -> Map<String, Value> {
    entries.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn header(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn path_value(path: &Path) -> Value {
    json!(path.display().to_string())
}

/// Exact integer as a raw JSON number at any magnitude.
fn bignum(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse().expect("a decimal integer is a JSON number"))
}
