//! `symcay`: build transposition Cayley graphs, export them, compute
//! connectivity and minimum cuts, and run the structural check suite.
//!
//! Exit status: 0 success, 1 a check failed, 2 bad input, 3 capacity exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Duration;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use symcay_core::cuts::{
    randomized_cut_search, vertex_connectivity, ConnectivityMode, RandomSearch, SearchOptions,
};
use symcay_core::export::{export, witness_file, ExportFormat};
use symcay_core::fixtures::Corruption;
use symcay_core::lab::{verify, CheckId, LabConfig, VerificationReport};
use symcay_core::{cuts, CayleyGraph, CutKind, CutWitness, Error, FaultSet, TopologySpec};

const WORKERS_ENV: &str = "SYMCAY_WORKERS";

#[derive(Parser)]
#[command(
    name = "symcay",
    version,
    about = "Transposition Cayley graphs of Sym(n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the graph as DOT, graph6 or an edge list.
    Gen {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value = "edgelist", value_name = "dot|graph6|edgelist")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Order, degree, generators, girth and block structure.
    Info {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Vertex connectivity by max-flow, with a minimum cut.
    Connectivity {
        #[command(flatten)]
        spec: SpecArg,
        /// Scan every non-adjacent pair instead of fixing the source.
        #[arg(long)]
        all_pairs: bool,
        /// Write the minimum cut as a witness file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a cut of bounded size.
    CutSearch {
        #[command(flatten)]
        spec: SpecArg,
        /// cyclic, vertex or good-neighbor:<g>
        #[arg(long, default_value = "cyclic")]
        kind: String,
        #[arg(long)]
        max_size: usize,
        #[arg(long, value_enum, default_value_t = SearchMode::Exhaustive)]
        mode: SearchMode,
        #[command(flatten)]
        run: RunArgs,
        /// Write the witness, if any, to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run structural checks; exits 1 if a gating check fails.
    Verify {
        /// SPEC, then optionally CHECKS (comma list or `all`).
        #[arg(value_name = "SPEC [CHECKS]", num_args = 0..=2)]
        positional: Vec<String>,
        #[arg(long, value_name = "SPEC")]
        spec: Option<String>,
        #[arg(long, value_name = "LIST")]
        checks: Option<String>,
        /// Replace the graph by a corrupted copy (negative control).
        #[arg(long, value_name = "FIXTURE")]
        corrupt: Option<String>,
        /// Report format for --out (default json) or stdout (default text).
        #[arg(long, value_enum)]
        format: Option<ReportFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Wall-clock budget in seconds; later checks are skipped once spent.
        #[arg(long, default_value_t = 600.0)]
        budget: f64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Render a saved JSON report; exits 1 if it records a gating failure.
    Report {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SpecArg {
    /// mb:<n>, bubble:<n>, star:<n>, ug:<n>:c=<c> or "edges:<k-l,...> n=<n>"
    #[arg(value_name = "SPEC", required_unless_present = "spec_flag")]
    spec: Option<String>,
    #[arg(long = "spec", value_name = "SPEC", conflicts_with = "spec")]
    spec_flag: Option<String>,
}

impl SpecArg {
    fn text(&self) -> &str {
        self.spec
            .as_deref()
            .or(self.spec_flag.as_deref())
            .unwrap_or_default()
    }
}

#[derive(Args)]
struct RunArgs {
    /// Defaults to the available parallelism.
    #[arg(long, env = WORKERS_ENV, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trials for sampled and randomized searches.
    #[arg(long, default_value_t = 1_000_000)]
    trials: u64,
}

impl RunArgs {
    fn workers(&self) -> usize {
        self.workers.map(|w| w as usize).unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchMode {
    Exhaustive,
    Random,
}

/// A failed run: the exit status to return and what to tell the user.
enum Failure {
    Checks,
    Error(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e.into())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Error(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_status(&e))
        }
    }
}

fn exit_status(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Capacity { .. }) => 3,
        _ => 2,
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Gen { spec, format, out } => {
            let (spec, g) = load(spec.text())?;
            let format = ExportFormat::from_str(&format).context("--format")?;
            let text = export(&g, format, &spec.to_string())
                .with_context(|| format!("--format for `{spec}`"))?;
            emit(out.as_deref(), &text)?;
        }
        Command::Info { spec, format } => {
            let (spec, g) = load(spec.text())?;
            emit(None, &info(&spec, &g, format))?;
        }
        Command::Connectivity {
            spec,
            all_pairs,
            out,
        } => {
            let (spec, g) = load(spec.text())?;
            connectivity(&spec, &g, all_pairs, out.as_deref())?;
        }
        Command::CutSearch {
            spec,
            kind,
            max_size,
            mode,
            run,
            out,
        } => {
            let (spec, g) = load(spec.text())?;
            let kind = parse_kind(&kind).context("--kind")?;
            cut_search(&spec, &g, kind, max_size, mode, &run, out.as_deref())?;
        }
        Command::Verify {
            positional,
            spec,
            checks,
            corrupt,
            format,
            out,
            budget,
            run,
        } => {
            let (spec_text, checks_text) = verify_targets(positional, spec, checks)?;
            let (spec, g) = load(&spec_text)?;
            let checks = CheckId::parse_list(&checks_text)
                .with_context(|| format!("--checks `{checks_text}`"))?;
            if !(budget.is_finite() && budget > 0.0) {
                return Err(
                    anyhow!("--budget `{budget}`: must be a positive number of seconds").into(),
                );
            }
            let mut cfg = LabConfig {
                seed: run.seed,
                workers: run.workers(),
                budget: Duration::from_secs_f64(budget),
                sample_trials: run.trials,
                falsify_trials: run.trials,
                all_pairs_connectivity: false,
            };
            let mut label = spec.to_string();
            let g = match corrupt {
                Some(name) => {
                    let c = Corruption::from_str(&name)
                        .with_context(|| format!("--corrupt `{name}`"))?;
                    cfg.all_pairs_connectivity = true;
                    label = format!("{label} corrupt={c}");
                    c.apply(&g).with_context(|| format!("--corrupt `{name}`"))?
                }
                None => g,
            };
            let report = verify(&g, &label, &checks, &cfg)?;
            write_report(&report, format, out.as_deref())?;
            if !report.passed() {
                return Err(Failure::Checks);
            }
        }
        Command::Report { path, format, out } => {
            let text = fs::read_to_string(&path)
                .with_context(|| format!("cannot read `{}`", path.display()))?;
            let report = VerificationReport::from_json(&text)
                .with_context(|| format!("`{}`", path.display()))?;
            let rendered = match format {
                ReportFormat::Json => report.to_json(),
                ReportFormat::Text => report.to_text(),
            };
            emit(out.as_deref(), &rendered)?;
            if !report.passed() {
                return Err(Failure::Checks);
            }
        }
    }
    Ok(())
}

fn load(text: &str) -> anyhow::Result<(TopologySpec, CayleyGraph)> {
    let spec = TopologySpec::from_str(text).with_context(|| format!("--spec `{text}`"))?;
    let g = spec.build().with_context(|| format!("--spec `{text}`"))?;
    Ok((spec, g))
}

/// `verify SPEC [CHECKS]`, with `--spec` and `--checks` as alternatives.
fn verify_targets(
    positional: Vec<String>,
    spec: Option<String>,
    checks: Option<String>,
) -> anyhow::Result<(String, String)> {
    let mut rest = positional.into_iter();
    let spec = match spec {
        Some(s) => s,
        None => rest
            .next()
            .ok_or_else(|| anyhow!("--spec: a topology spec is required"))?,
    };
    let checks = match (checks, rest.next()) {
        (Some(_), Some(extra)) => {
            bail!("unexpected argument `{extra}`: checks were already given by --checks")
        }
        (Some(c), None) | (None, Some(c)) => c,
        (None, None) => "all".to_string(),
    };
    if let Some(extra) = rest.next() {
        bail!("unexpected argument `{extra}`");
    }
    Ok((spec, checks))
}

fn parse_kind(s: &str) -> anyhow::Result<CutKind> {
    match s {
        "cyclic" => Ok(CutKind::Cyclic),
        "vertex" => Ok(CutKind::Vertex),
        _ => {
            let g = s.strip_prefix("good-neighbor:").ok_or_else(|| {
                anyhow!("`{s}` is not a cut kind; expected cyclic, vertex or good-neighbor:<g>")
            })?;
            let g: u32 = g
                .parse()
                .map_err(|_| anyhow!("`{g}` in `{s}` is not a non-negative integer"))?;
            Ok(CutKind::GoodNeighbor(g))
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("--out `{}`", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn info(spec: &TopologySpec, g: &CayleyGraph, format: ReportFormat) -> String {
    let graph = g.graph();
    let gens: Vec<String> = g
        .generating_graph()
        .edges()
        .iter()
        .map(|(a, b)| format!("{a}-{b}"))
        .collect();
    let girth = g.girth().ok();
    let peel = g.peel();
    match format {
        ReportFormat::Json => {
            let v = json!({
                "spec": spec,
                "n": g.n(),
                "class": g.class(),
                "order": g.order(),
                "size": graph.size(),
                "degree": graph.regular_degree(),
                "generators": g.generating_graph().edges(),
                "girth": girth,
                "peel": peel,
                "cross_edges": g.cross_edge_count(),
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        ReportFormat::Text => {
            let degree = graph
                .regular_degree()
                .map_or("irregular".to_string(), |d| d.to_string());
            let anchors: Vec<String> = peel.anchors.iter().map(u8::to_string).collect();
            format!(
                "spec={spec}\nn={} class={} order={} size={} degree={degree}\ngenerators={}\ngirth={}\npeel={} anchors={} cross_edges={}\n",
                g.n(),
                g.class(),
                g.order(),
                graph.size(),
                gens.join(","),
                girth.map_or("none".to_string(), |x| x.to_string()),
                peel.position,
                anchors.join(","),
                g.cross_edge_count(),
            )
        }
    }
}

fn connectivity(
    spec: &TopologySpec,
    g: &CayleyGraph,
    all_pairs: bool,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    let mode = if all_pairs {
        ConnectivityMode::AllPairs
    } else {
        ConnectivityMode::FixedSource
    };
    let k = vertex_connectivity(g.graph(), mode)?;
    let labels: Vec<String> = k.cut.iter().map(|&v| g.label(v)).collect();
    println!("kappa={}", k.value);
    if k.complete {
        println!("cut=none (complete graph)");
        return Ok(());
    }
    println!("separates {} from {}", g.label(k.source), g.label(k.target));
    println!("cut={}", labels.join(" "));
    if let Some(path) = out {
        let w = CutWitness::new(
            g.graph(),
            FaultSet::new(k.cut.clone(), g.order())?,
            CutKind::Vertex,
        );
        emit(Some(path), &witness_file(g, &spec.to_string(), &w))?;
    }
    Ok(())
}

fn cut_search(
    spec: &TopologySpec,
    g: &CayleyGraph,
    kind: CutKind,
    max_size: usize,
    mode: SearchMode,
    run: &RunArgs,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    let workers = run.workers();
    let found = match mode {
        SearchMode::Exhaustive => {
            cuts::min_cut_exhaustive(g.graph(), kind, max_size, &SearchOptions { workers })
                .context("--mode exhaustive")?
        }
        SearchMode::Random => randomized_cut_search(
            g.graph(),
            &RandomSearch {
                kind,
                target_size: max_size,
                trials: run.trials,
                seed: run.seed,
                workers,
            },
        )
        .context("--trials")?,
    };
    match found {
        None => println!("none"),
        Some(w) => {
            if !w.verify(g.graph()) {
                bail!("internal error: {} witness failed re-verification", w.kind);
            }
            let text = witness_file(g, &spec.to_string(), &w);
            print!("{text}");
            if let Some(path) = out {
                emit(Some(path), &text)?;
            }
        }
    }
    Ok(())
}

fn write_report(
    report: &VerificationReport,
    format: Option<ReportFormat>,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    let render = |f| match f {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Text => report.to_text(),
    };
    match out {
        Some(path) => {
            emit(Some(path), &render(format.unwrap_or(ReportFormat::Json)))?;
            print!("{}", report.to_text());
        }
        None => print!("{}", render(format.unwrap_or(ReportFormat::Text))),
    }
    Ok(())
}
