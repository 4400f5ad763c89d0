//! Command-line front end: every library operation behind one binary with
//! stable exit codes and machine-readable output.
//!
//! Exit codes: 0 for success or a true verdict, 1 for a false verdict (a
//! failed audit or predicate), 2 for usage and input errors. Every run
//! writes a one-line JSON manifest to stderr with a digest of stdout, so
//! deterministic subcommands can be compared across runs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;

use hyperpart::counting;
use hyperpart::families::{Family, SearchOutcome};
use hyperpart::hypergraph::Hypergraph;
use hyperpart::series::{self, BlockPattern};
use hyperpart::solver;
use hyperpart::tame::{self, TruncatedSeriesFamily};
use hyperpart::trees;

mod manifest;

#[derive(Parser)]
#[command(
    name = "hyperpart",
    version,
    about = "Exact hypergraph-partition extremal numbers, sign families, and block series"
)]
struct Cli {
    /// Emit JSON instead of aligned text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the exact solver (default 1 for reproducibility).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hypergraph operations on JSON inputs.
    #[command(subcommand)]
    Hyper(HyperCmd),
    /// Exact and randomized extremal search.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// The recursive trees and their derived objects.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Sign-family predicates and search.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Bounds tables and exact-arithmetic audits.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Block-series construction, audits, and verdicts.
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Sign-homogeneous chain certificates on truncated series.
    #[command(subcommand)]
    Tame(TameCmd),
}

#[derive(Subcommand)]
enum HyperCmd {
    /// Vertices contained in no edge.
    Isolated(HyperInput),
    /// Vertices covered exactly once by the selected edges.
    ExactlyOnce {
        #[command(flatten)]
        input: HyperInput,
        /// Comma-separated edge indices.
        #[arg(long, value_delimiter = ',')]
        edges: Vec<usize>,
    },
    /// Largest partition size with a witness.
    MaxPartition {
        #[command(flatten)]
        input: HyperInput,
        /// Write the witness JSON here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Delete edges, largest first, until every edge owns a private vertex.
    Trim {
        #[command(flatten)]
        input: HyperInput,
        /// Write the trimmed hypergraph JSON here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Degree profile and degree-class sizes.
    Degrees(HyperInput),
}

#[derive(Args)]
struct HyperInput {
    /// Hypergraph JSON: {"vertices": <int>, "edges": [[<int>, ...], ...]}.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Exact value of the largest partition-free vertex count.
    #[command(name = "H")]
    H {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 3600)]
        budget_secs: u64,
        /// Write the witness hypergraph JSON here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Seeded randomized search for a witness of a given size.
    Search {
        #[arg(long)]
        target: usize,
        #[arg(long)]
        n: u32,
        /// Mandatory seed; randomized runs must be reproducible.
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 60)]
        budget_secs: u64,
        #[arg(long, default_value_t = 10_000_000)]
        max_attempts: u64,
        /// Write the witness hypergraph JSON here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TreeCmd {
    /// Build the tree for a parameter and emit one of its forms.
    Build {
        #[arg(long)]
        n: usize,
        /// tree | family | hypergraph
        #[arg(long, default_value = "tree")]
        emit: TreeEmit,
    },
}

#[derive(Clone, clap::ValueEnum)]
enum TreeEmit {
    Tree,
    Family,
    Hypergraph,
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Evaluate a predicate on a family JSON file.
    Check {
        /// Family JSON: {"k": 3, "functions": [{"1": "p"}, ...]}.
        #[arg(long)]
        input: PathBuf,
        /// Verdict: is the family full?
        #[arg(long, conflicts_with_all = ["dagger", "bounding"])]
        full: bool,
        /// Verdict: does some subfamily agree on at least N coordinates?
        #[arg(long, value_name = "N")]
        dagger: Option<usize>,
        /// Verdict: full and no subfamily agrees on N coordinates?
        #[arg(long, value_name = "N", conflicts_with = "dagger")]
        bounding: Option<usize>,
        /// For families beyond the exhaustive cap: sample this many random
        /// subfamilies instead. Finding none is inconclusive, never false.
        #[arg(long, requires = "seed", conflicts_with_all = ["full", "bounding"])]
        sample_attempts: Option<u64>,
        /// Seed for --sample-attempts.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Exhaustive search for a full family without the agreement property.
    Search {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 600)]
        budget_secs: u64,
    },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Derived interval table for the extremal numbers.
    Table {
        #[arg(long)]
        max_n: u64,
        /// Pin rows with solver-proved exact values (n <= 6 within budget).
        #[arg(long)]
        use_solver: bool,
        /// Per-value time budget; values left unproved stay intervals.
        #[arg(long, default_value_t = 30)]
        solver_budget_secs: u64,
    },
    /// Exact lower-bound audit of the recurrence against the entropy bound.
    Audit {
        #[arg(long)]
        max_n: usize,
        /// Also check the harmonic-sum cap against the log bound up to this n.
        #[arg(long)]
        harmonic_max_n: Option<u64>,
    },
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// Audit seeded random block patterns against the sign claims.
    Audit {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        blocks: usize,
        #[arg(long, default_value_t = 1000)]
        patterns: u64,
        /// Mandatory seed; randomized runs must be reproducible.
        #[arg(long)]
        seed: u64,
    },
    /// Boundary sums and verdicts of the all-odd demo pattern.
    Demo {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        blocks: usize,
    },
}

#[derive(Subcommand)]
enum TameCmd {
    /// Build a sign-homogeneous chain certificate on a truncated family.
    Build {
        /// Series JSON: {"terms": [["1", "-1/2", ...], ...]} (exact rationals).
        #[arg(long, conflicts_with_all = ["alt_harmonic", "spec_n"])]
        input: Option<PathBuf>,
        /// Use the single alternating series 1, -1/2, 1/3, ...
        #[arg(long)]
        alt_harmonic: bool,
        /// Generate the 2n block series instead of reading a file.
        #[arg(long, requires = "spec_blocks")]
        spec_n: Option<usize>,
        #[arg(long)]
        spec_blocks: Option<usize>,
        #[arg(long)]
        depth: usize,
        /// Truncation length.
        #[arg(long)]
        trunc: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let mut out = manifest::Output::new(cli.json);
    let verdict = run(&cli, &mut out);
    let code = match verdict {
        Ok(true) => 0u8,
        Ok(false) => 1,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    };
    out.flush_with_manifest(started.elapsed(), code);
    ExitCode::from(code)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_json<T: Serialize>(path: &PathBuf, value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Runs the subcommand; `Ok(false)` is a mathematically meaningful negative
/// verdict, mapped to exit code 1.
fn run(cli: &Cli, out: &mut manifest::Output) -> Result<bool, String> {
    match &cli.command {
        Command::Hyper(cmd) => run_hyper(cmd, out),
        Command::Solve(cmd) => run_solve(cmd, cli.threads, out),
        Command::Tree(cmd) => run_tree(cmd, out),
        Command::Family(cmd) => run_family(cmd, out),
        Command::Bounds(cmd) => run_bounds(cmd, cli.threads, out),
        Command::Series(cmd) => run_series(cmd, out),
        Command::Tame(cmd) => run_tame(cmd, out),
    }
}

// ---------------------------------------------------------------------------
// hyper
// ---------------------------------------------------------------------------

fn run_hyper(cmd: &HyperCmd, out: &mut manifest::Output) -> Result<bool, String> {
    match cmd {
        HyperCmd::Isolated(input) => {
            let h: Hypergraph = read_json(&input.input)?;
            let isolated = h.isolated_vertices().to_vec();
            out.emit(
                &serde_json::json!({ "isolated": isolated }),
                &format!("isolated vertices: {isolated:?}"),
            );
            Ok(true)
        }
        HyperCmd::ExactlyOnce { input, edges } => {
            let h: Hypergraph = read_json(&input.input)?;
            let set = h
                .exactly_once_set(edges)
                .map_err(|e| e.to_string())?
                .to_vec();
            out.emit(
                &serde_json::json!({ "edges": edges, "exactly_once": set }),
                &format!("exactly-once set of {edges:?}: {set:?}"),
            );
            Ok(true)
        }
        HyperCmd::MaxPartition { input, witness } => {
            let h: Hypergraph = read_json(&input.input)?;
            let (size, w) = h.max_partition().map_err(|e| e.to_string())?;
            if let Some(path) = witness {
                write_json(path, &w)?;
            }
            out.emit(
                &serde_json::json!({ "size": size, "D": w.d.to_vec(), "P": w.p }),
                &format!(
                    "max partition size {size}\n  D = {:?}\n  P = {:?}",
                    w.d.to_vec(),
                    w.p
                ),
            );
            Ok(true)
        }
        HyperCmd::Trim { input, output } => {
            let h: Hypergraph = read_json(&input.input)?;
            let trimmed = h.trim_economical().map_err(|e| e.to_string())?;
            if let Some(path) = output {
                write_json(path, &trimmed)?;
            }
            out.emit(
                &serde_json::to_value(&trimmed).unwrap(),
                &format!(
                    "kept {} of {} edges; economical: {}",
                    trimmed.edge_count(),
                    h.edge_count(),
                    trimmed.is_economical()
                ),
            );
            Ok(true)
        }
        HyperCmd::Degrees(input) => {
            let h: Hypergraph = read_json(&input.input)?;
            let profile = h.degree_profile();
            let classes: BTreeMap<String, usize> = profile
                .class_sizes
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect();
            let weighted: BTreeMap<String, usize> = profile
                .weighted_classes()
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect();
            let mut text = format!("degrees: {:?}\n", profile.degrees);
            let _ = write!(text, "class sizes: {classes:?}\nweighted: {weighted:?}");
            out.emit(
                &serde_json::json!({
                    "degrees": profile.degrees,
                    "class_sizes": classes,
                    "weighted": weighted,
                }),
                &text,
            );
            Ok(true)
        }
    }
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

fn run_solve(cmd: &SolveCmd, threads: usize, out: &mut manifest::Output) -> Result<bool, String> {
    match cmd {
        SolveCmd::H {
            n,
            budget_secs,
            witness,
        } => {
            let res = solver::exact_h_with_threads(*n, Duration::from_secs(*budget_secs), threads)
                .map_err(|e| e.to_string())?;
            let h = solver::expand_witness(&res.witness).map_err(|e| e.to_string())?;
            if let Some(path) = witness {
                write_json(path, &h)?;
            }
            out.emit(
                &serde_json::json!({
                    "n": res.n,
                    "value": res.value,
                    "proved_optimal": res.proved_optimal,
                    "cap": res.cap,
                    "nodes": res.nodes,
                    "witness": serde_json::to_value(&h).unwrap(),
                }),
                &format!(
                    "H({}) = {}{} (cap {}, {} nodes)",
                    res.n,
                    res.value,
                    if res.proved_optimal {
                        ""
                    } else {
                        " (lower bound only; budget exhausted)"
                    },
                    res.cap,
                    res.nodes
                ),
            );
            Ok(true)
        }
        SolveCmd::Search {
            target,
            n,
            seed,
            budget_secs,
            max_attempts,
            witness,
        } => {
            let found = solver::search_witness(
                *target,
                *n,
                *seed,
                Duration::from_secs(*budget_secs),
                *max_attempts,
            );
            let json = match &found.witness {
                Some(h) => serde_json::json!({
                    "found": true,
                    "attempts": found.attempts,
                    "witness": serde_json::to_value(h).unwrap(),
                }),
                None => serde_json::json!({ "found": false, "attempts": found.attempts }),
            };
            let text = match &found.witness {
                Some(h) => format!(
                    "found a verified witness with {} vertices and {} edges after {} attempts",
                    h.vertex_count(),
                    h.edge_count(),
                    found.attempts
                ),
                None => format!(
                    "no witness found in {} attempts (not a nonexistence proof)",
                    found.attempts
                ),
            };
            if let (Some(path), Some(h)) = (witness, &found.witness) {
                write_json(path, h)?;
            }
            out.emit(&json, &text);
            Ok(true)
        }
    }
}

// ---------------------------------------------------------------------------
// tree
// ---------------------------------------------------------------------------

fn run_tree(cmd: &TreeCmd, out: &mut manifest::Output) -> Result<bool, String> {
    let TreeCmd::Build { n, emit } = cmd;
    if *n < 1 || *n > trees::MAX_TREE_N {
        return Err(format!(
            "tree parameter must lie in 1..={}",
            trees::MAX_TREE_N
        ));
    }
    match emit {
        TreeEmit::Tree => {
            let tree = trees::build_t(*n);
            let chains = tree.maximal_chains().len();
            out.emit(
                &serde_json::json!({
                    "n": n,
                    "vertices": tree.vertex_count(),
                    "tree": serde_json::to_value(&tree).unwrap(),
                }),
                &format!(
                    "tree {}: {} vertices, {} maximal chains",
                    n,
                    tree.vertex_count(),
                    chains
                ),
            );
        }
        TreeEmit::Family => {
            let family = trees::build_bounding_family(*n, None);
            out.emit(
                &serde_json::to_value(&family).unwrap(),
                &format!(
                    "family on {} coordinates with {} functions",
                    family.k,
                    family.len()
                ),
            );
        }
        TreeEmit::Hypergraph => {
            let h = trees::branch_hypergraph(*n);
            out.emit(
                &serde_json::to_value(&h).unwrap(),
                &format!(
                    "branch hypergraph: {} vertices, {} edges",
                    h.vertex_count(),
                    h.edge_count()
                ),
            );
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// family
// ---------------------------------------------------------------------------

fn run_family(cmd: &FamilyCmd, out: &mut manifest::Output) -> Result<bool, String> {
    match cmd {
        FamilyCmd::Check {
            input,
            full,
            dagger,
            bounding,
            sample_attempts,
            seed,
        } => {
            let family: Family = read_json(input)?;
            if *full {
                let verdict = family.is_full();
                out.emit(
                    &serde_json::json!({ "predicate": "full", "verdict": verdict }),
                    &format!("full: {verdict}"),
                );
                Ok(verdict)
            } else if let (Some(n), Some(attempts)) = (dagger, sample_attempts) {
                match family.agreement_sampled(*n, *attempts, seed.unwrap_or(0)) {
                    hyperpart::families::SampledAgreement::Holds(w) => {
                        out.emit(
                            &serde_json::json!({
                                "predicate": "dagger",
                                "n": n,
                                "verdict": true,
                                "sampled": true,
                                "witness": serde_json::to_value(&w).unwrap(),
                            }),
                            &format!("agreement at {n}: true (sampled)\n  subfamily {:?}\n  coordinates {:?}", w.function_indices, w.coords),
                        );
                        Ok(true)
                    }
                    hyperpart::families::SampledAgreement::Inconclusive { attempts } => {
                        out.emit(
                            &serde_json::json!({
                                "predicate": "dagger",
                                "n": n,
                                "verdict": "inconclusive",
                                "sampled": true,
                                "attempts": attempts,
                            }),
                            &format!("agreement at {n}: inconclusive after {attempts} sampled subfamilies"),
                        );
                        Ok(true)
                    }
                }
            } else if let Some(n) = dagger {
                let (verdict, witness) = family.agreement_holds(*n).map_err(|e| e.to_string())?;
                let text = match &witness {
                    Some(w) => format!(
                        "agreement at {n}: {verdict}\n  subfamily {:?}\n  coordinates {:?}",
                        w.function_indices, w.coords
                    ),
                    None => format!("agreement at {n}: {verdict}"),
                };
                out.emit(
                    &serde_json::json!({
                        "predicate": "dagger",
                        "n": n,
                        "verdict": verdict,
                        "witness": witness.as_ref().map(|w| serde_json::to_value(w).unwrap()),
                    }),
                    &text,
                );
                Ok(verdict)
            } else if let Some(n) = bounding {
                let verdict = family.is_bounding(*n).map_err(|e| e.to_string())?;
                out.emit(
                    &serde_json::json!({ "predicate": "bounding", "n": n, "verdict": verdict }),
                    &format!("bounding at {n}: {verdict}"),
                );
                Ok(verdict)
            } else {
                Err("one of --full, --dagger N, --bounding N is required".into())
            }
        }
        FamilyCmd::Search { k, n, budget_secs } => {
            let outcome = hyperpart::families::search_full_non_agreement(
                *k,
                *n,
                Duration::from_secs(*budget_secs),
            )
            .map_err(|e| e.to_string())?;
            match outcome {
                SearchOutcome::Found(family) => {
                    out.emit(
                        &serde_json::json!({
                            "outcome": "found",
                            "family": serde_json::to_value(&family).unwrap(),
                        }),
                        &format!(
                            "found a full family of {} functions on {k} coordinates with no {n}-coordinate agreement",
                            family.len()
                        ),
                    );
                    Ok(true)
                }
                SearchOutcome::ExhaustedNone => {
                    out.emit(
                        &serde_json::json!({ "outcome": "exhausted" }),
                        "exhausted: no such family exists",
                    );
                    Ok(false)
                }
                SearchOutcome::BudgetExceeded => {
                    out.emit(
                        &serde_json::json!({ "outcome": "budget_exceeded" }),
                        "budget exceeded before exhaustion; inconclusive",
                    );
                    Ok(false)
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

fn run_bounds(cmd: &BoundsCmd, threads: usize, out: &mut manifest::Output) -> Result<bool, String> {
    match cmd {
        BoundsCmd::Table {
            max_n,
            use_solver,
            solver_budget_secs,
        } => {
            let mut known = BTreeMap::new();
            if *use_solver {
                let budget = Duration::from_secs(*solver_budget_secs);
                for n in 1..=(*max_n).min(solver::MAX_SOLVER_N as u64) {
                    let res = solver::exact_h_with_threads(n as u32, budget, threads)
                        .map_err(|e| e.to_string())?;
                    if res.proved_optimal {
                        known.insert(n, res.value);
                    }
                }
            }
            let rows = counting::derive_tables(*max_n, &known);
            let mut text = String::from("  n    k_n  f(n)      sum n/k        H(n)        I(n)\n");
            for row in &rows {
                let h = match row.h_exact {
                    Some(v) => format!("= {v}"),
                    None => format!("[{}, {}]", row.h_lo, row.h_hi),
                };
                let i = match row.i_exact {
                    Some(v) => format!("= {v}"),
                    None => format!("[{}, {}]", row.i_lo, row.i_hi),
                };
                let _ = writeln!(
                    text,
                    "{:>3} {:>6} {:>8.3} {:>8}/{:<6} {:>10} {:>10}",
                    row.n, row.k_n, row.f_lower, row.upper_num, row.upper_den, h, i
                );
            }
            out.emit(&serde_json::to_value(&rows).unwrap(), text.trim_end());
            Ok(true)
        }
        BoundsCmd::Audit {
            max_n,
            harmonic_max_n,
        } => {
            let audit = counting::lower_bound_audit(*max_n);
            let harmonic_failure = harmonic_max_n.map(counting::harmonic_gamma_sweep);
            let pass = audit.pass && harmonic_failure.as_ref().is_none_or(|f| f.is_none());
            let mut text = format!(
                "entropy bound checked for n <= {}: {}\nconvexity samples: {}\ngrowth bound checks: {}",
                audit.nmax,
                if audit.pass { "all hold" } else { "FAILURES" },
                audit.convexity_samples_checked,
                audit.growth_bound_checked,
            );
            if let Some(f) = &harmonic_failure {
                let _ = write!(
                    text,
                    "\nharmonic cap up to {}: {}",
                    harmonic_max_n.unwrap(),
                    match f {
                        None => "holds".to_string(),
                        Some(n) => format!("fails at {n}"),
                    }
                );
            }
            out.emit(
                &serde_json::json!({
                    "audit": serde_json::to_value(&audit).unwrap(),
                    "harmonic_failure": harmonic_failure.flatten(),
                    "pass": pass,
                }),
                &text,
            );
            Ok(pass)
        }
    }
}

// ---------------------------------------------------------------------------
// series
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct BoundaryRow {
    block: usize,
    series: usize,
    sum_num: String,
    sum_den: String,
    verdict: String,
}

fn boundary_rows(
    spec: &series::SeriesSpec,
    report: &series::BoundaryReport,
    verdicts: &[series::SeriesVerdict],
) -> Vec<BoundaryRow> {
    let mut rows = Vec::new();
    for i in 1..=spec.series_count() {
        for m in 1..=spec.blocks() {
            let sum = &report.sums[i - 1][m - 1];
            rows.push(BoundaryRow {
                block: m,
                series: i,
                sum_num: sum.numer().to_string(),
                sum_den: sum.denom().to_string(),
                verdict: format!("{:?}", verdicts[i - 1].trend).to_lowercase(),
            });
        }
    }
    rows
}

fn run_series(cmd: &SeriesCmd, out: &mut manifest::Output) -> Result<bool, String> {
    match cmd {
        SeriesCmd::Audit {
            n,
            blocks,
            patterns,
            seed,
        } => {
            if *n < 2 {
                return Err("the construction needs n >= 2".into());
            }
            let spec = series::build_spec(*n, *blocks);
            let summary = series::audit_random_patterns(&spec, *patterns, *seed)
                .map_err(|e| e.to_string())?;
            let pass = summary.pass;
            out.emit(
                &serde_json::json!({
                    "n": n,
                    "blocks": blocks,
                    "summary": serde_json::to_value(&summary).unwrap(),
                }),
                &format!(
                    "{} random patterns: {} triggered blocks, {} violations",
                    summary.patterns,
                    summary.triggered_blocks,
                    summary.violations.len()
                ),
            );
            Ok(pass)
        }
        SeriesCmd::Demo { n, blocks } => {
            if *n < 2 {
                return Err("the construction needs n >= 2".into());
            }
            let spec = series::build_spec(*n, *blocks);
            let demo = BlockPattern::demo(&spec);
            let report = series::boundary_sums(&spec, &demo).map_err(|e| e.to_string())?;
            let verdicts = series::classify_pattern(&spec, &demo).map_err(|e| e.to_string())?;
            let audit = series::claim_audit(&spec, &demo).map_err(|e| e.to_string())?;
            let rows = boundary_rows(&spec, &report, &verdicts);
            let mut text = format!(
                "demo pattern on {} blocks: {} triggered, audit {}\n",
                blocks,
                audit.triggered.len(),
                if audit.pass { "passes" } else { "FAILS" }
            );
            for v in &verdicts {
                let _ = writeln!(
                    text,
                    "  series {:>2}: {:?}, final sum {}",
                    v.series,
                    v.trend,
                    report.sums[v.series - 1].last().unwrap()
                );
            }
            out.emit(
                &serde_json::json!({
                    "rows": serde_json::to_value(&rows).unwrap(),
                    "audit_pass": audit.pass,
                    "triggered": audit.triggered.len(),
                }),
                text.trim_end(),
            );
            Ok(audit.pass)
        }
    }
}

// ---------------------------------------------------------------------------
// tame
// ---------------------------------------------------------------------------

#[derive(serde::Deserialize)]
struct SeriesTermsJson {
    terms: Vec<Vec<String>>,
}

fn run_tame(cmd: &TameCmd, out: &mut manifest::Output) -> Result<bool, String> {
    let TameCmd::Build {
        input,
        alt_harmonic,
        spec_n,
        spec_blocks,
        depth,
        trunc,
    } = cmd;
    let family = if let Some(path) = input {
        let raw: SeriesTermsJson = read_json(path)?;
        let mut terms = Vec::new();
        for row in raw.terms {
            let mut parsed = Vec::new();
            for text in row {
                parsed.push(
                    BigRational::from_str(&text)
                        .map_err(|e| format!("bad rational {text:?}: {e}"))?,
                );
            }
            parsed.truncate(*trunc as usize);
            terms.push(parsed);
        }
        TruncatedSeriesFamily::from_terms(terms).map_err(|e| e.to_string())?
    } else if *alt_harmonic {
        TruncatedSeriesFamily::alternating_harmonic(*trunc)
    } else if let (Some(n), Some(blocks)) = (spec_n, spec_blocks) {
        if *n < 2 {
            return Err("the construction needs n >= 2".into());
        }
        let spec = series::build_spec(*n, *blocks);
        let len =
            (*trunc).min(num_traits::ToPrimitive::to_u64(&spec.truncation()).unwrap_or(u64::MAX));
        TruncatedSeriesFamily::from_series_spec(&spec, len).map_err(|e| e.to_string())?
    } else {
        return Err("one of --input, --alt-harmonic, --spec-n/--spec-blocks is required".into());
    };
    let cert = tame::build_tame_chain(&family, *depth);
    let assembled = tame::assemble_set(&cert);
    let mut text = format!(
        "depth {} of {} ({}), thresholds {:?}\nassembled {} indices",
        cert.depth_achieved,
        cert.depth_requested,
        if cert.complete { "complete" } else { "partial" },
        cert.thresholds,
        assembled.len(),
    );
    for level in &cert.levels {
        let _ = write!(
            text,
            "\n  level {}: side {:?}, kept {} indices, slice sum {}/{}",
            level.level,
            level.side,
            level.kept.len(),
            level.slice_sum_num,
            level.slice_sum_den
        );
    }
    out.emit(
        &serde_json::json!({
            "certificate": certificate_json(&cert),
            "assembled": ranges_of(&assembled),
        }),
        &text,
    );
    Ok(true)
}

/// Index sets in the certificate JSON are run-length encoded as inclusive
/// `[start, end]` ranges.
fn ranges_of(sorted: &[u64]) -> Vec<(u64, u64)> {
    let mut ranges: Vec<(u64, u64)> = Vec::new();
    for &k in sorted {
        match ranges.last_mut() {
            Some((_, end)) if *end + 1 == k => *end = k,
            _ => ranges.push((k, k)),
        }
    }
    ranges
}

fn certificate_json(cert: &tame::TameChainCertificate) -> serde_json::Value {
    serde_json::json!({
        "depth_requested": cert.depth_requested,
        "depth_achieved": cert.depth_achieved,
        "complete": cert.complete,
        "thresholds": cert.thresholds,
        "levels": cert.levels.iter().map(|l| serde_json::json!({
            "level": l.level,
            "side": l.side,
            "kept_ranges": ranges_of(&l.kept),
            "slice_sum_num": l.slice_sum_num,
            "slice_sum_den": l.slice_sum_den,
        })).collect::<Vec<_>>(),
    })
}
