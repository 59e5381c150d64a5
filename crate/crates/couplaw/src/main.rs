use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use couplaw::report::{self, Report};
use couplaw::scan::{load_input, scan_tree, Scan};
use couplaw::{interchange, Error};
use couplaw_core::graphs::{build_graphs, member_counts, GraphOptions};
use couplaw_core::robustness::{run_experiment, RemovalExperiment, RemovalMode};
use couplaw_core::stats::correlation_matrix;
use couplaw_core::stats::{BucketOptions, Midpoint, Normalization};
use couplaw_core::stats::{FitOptions, DEFAULT_MIN_BUCKETS};
use couplaw_core::synth::{generate, EdgesPerClass, SynthParams};

#[derive(Parser)]
#[command(
    name = "couplaw",
    version,
    about = "Coupling graphs and power-law fits for Java class structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a source tree and write an interchange file
    Scan {
        dir: PathBuf,
        /// Output file (stdout when omitted)
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Fit all twelve relationships and write the CSV report
    Analyze(AnalyzeArgs),
    /// Correlation matrix of methods, fields and constructors per class
    Corr {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Generate a synthetic corpus by preferential attachment
    Synth(SynthArgs),
    /// Node-removal reachability experiment
    Ablate(AblateArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Source directory or interchange file
    input: PathBuf,
    #[arg(long, default_value_t = 2.0)]
    base: f64,
    #[arg(long, default_value_t = DEFAULT_MIN_BUCKETS)]
    min_buckets: usize,
    /// Fit plain bucket counts
    #[arg(long, conflicts_with = "density")]
    raw: bool,
    /// Fit count divided by bucket width (default)
    #[arg(long)]
    density: bool,
    /// Use (lower + upper) / 2 as the bucket midpoint
    #[arg(long)]
    arithmetic_midpoint: bool,
    /// Keep references to types outside the corpus as graph nodes
    #[arg(long)]
    include_external: bool,
    /// CSV output (stdout when omitted)
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Directory for per-relationship plot data
    #[arg(long)]
    plot_dir: Option<PathBuf>,
    /// Print the table as markdown instead of CSV
    #[arg(long)]
    markdown: bool,
    /// Write the edge list of all five graphs to this file
    #[arg(long)]
    edges: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    seed_size: usize,
    #[arg(long, default_value_t = 0)]
    m_inheritance: usize,
    #[arg(long, default_value_t = 0)]
    m_interface: usize,
    #[arg(long, default_value_t = 2)]
    m_aggregation: usize,
    #[arg(long, default_value_t = 0)]
    m_parameter: usize,
    #[arg(long, default_value_t = 0)]
    m_return_type: usize,
    /// Weight of uniform attachment, 0 = purely preferential
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    interface_fraction: f64,
    #[arg(long)]
    seed: u64,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Random,
    Targeted,
    Both,
}

#[derive(Args)]
struct AblateArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    mode: ModeArg,
    #[arg(long, default_value_t = 0.1)]
    fraction: f64,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    /// Comma-separated root classes (default: classes nothing refers to)
    #[arg(long, value_delimiter = ',')]
    roots: Option<Vec<String>>,
    #[arg(long)]
    include_external: bool,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout().write_all(bytes).context("writing stdout"),
    }
}

fn report_diagnostics(scan: &Scan) {
    for e in &scan.parse_errors {
        eprintln!("warning: {e}");
    }
    if !scan.unresolved.is_empty() {
        eprintln!(
            "note: {} references to types outside the corpus",
            scan.unresolved.len()
        );
    }
}

fn load(input: &Path) -> anyhow::Result<Scan> {
    let scan = load_input(input)?;
    report_diagnostics(&scan);
    Ok(scan)
}

fn cmd_analyze(args: AnalyzeArgs) -> anyhow::Result<()> {
    let scan = load(&args.input)?;
    let options = FitOptions {
        bucket: BucketOptions {
            base: args.base,
            normalization: if args.raw {
                Normalization::Raw
            } else {
                Normalization::Density
            },
            midpoint: if args.arithmetic_midpoint {
                Midpoint::Arithmetic
            } else {
                Midpoint::Geometric
            },
        },
        min_buckets: args.min_buckets,
    };
    let graph_options = GraphOptions {
        include_external: args.include_external,
    };
    let (report, graphs): (Report, _) =
        report::analyze(&scan.corpus, graph_options, options).map_err(Error::from)?;
    eprint!("{}", report.metadata());
    for d in graphs.diagnostics() {
        eprintln!("warning: {d}");
    }
    if let Some(dir) = &args.plot_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (stem, text) in report.plot_files() {
            let path = dir.join(format!("{stem}.tsv"));
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    if let Some(path) = &args.edges {
        emit(Some(path), report::edge_list(&graphs).as_bytes())?;
    }
    let text = if args.markdown {
        report.to_markdown()
    } else {
        report.to_csv()
    };
    emit(args.out.as_deref(), text.as_bytes())
}

fn cmd_corr(input: &Path, out: Option<&Path>) -> anyhow::Result<()> {
    let scan = load(input)?;
    let [m, f, c] = member_counts(&scan.corpus);
    let matrix = correlation_matrix(&m, &f, &c).map_err(Error::from)?;
    emit(out, report::correlation_csv(&matrix).as_bytes())
}

fn cmd_synth(args: SynthArgs) -> anyhow::Result<()> {
    let params = SynthParams {
        n_classes: args.n,
        seed_size: args.seed_size,
        edges_per_class: EdgesPerClass {
            inheritance: args.m_inheritance,
            interface: args.m_interface,
            aggregation: args.m_aggregation,
            parameter: args.m_parameter,
            return_type: args.m_return_type,
        },
        alpha: args.alpha,
        interface_fraction: args.interface_fraction,
        rng_seed: args.seed,
    };
    let corpus = generate(&params).map_err(Error::from)?;
    emit(args.out.as_deref(), &interchange::to_bytes(&corpus))
}

fn cmd_ablate(args: AblateArgs) -> anyhow::Result<()> {
    let scan = load(&args.input)?;
    let graphs = build_graphs(
        &scan.corpus,
        GraphOptions {
            include_external: args.include_external,
        },
    );
    let modes: &[RemovalMode] = match args.mode {
        ModeArg::Random => &[RemovalMode::Random],
        ModeArg::Targeted => &[RemovalMode::TargetedByDegree],
        ModeArg::Both => &[RemovalMode::Random, RemovalMode::TargetedByDegree],
    };
    let mut done = Vec::new();
    for &mode in modes {
        let exp = RemovalExperiment {
            roots: args.roots.clone(),
            ..RemovalExperiment::new(mode, args.fraction, args.trials, args.seed)
        };
        let exp = run_experiment(&graphs, &exp).map_err(Error::from)?;
        eprintln!("{} mean={:.4}", mode.name(), exp.mean());
        done.push(exp);
    }
    emit(args.out.as_deref(), report::ablation_rows(&done).as_bytes())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Scan { dir, out } => {
            let scan = scan_tree(&dir)?;
            report_diagnostics(&scan);
            emit(out.as_deref(), &interchange::to_bytes(&scan.corpus))
        }
        Command::Analyze(args) => cmd_analyze(args),
        Command::Corr { input, out } => cmd_corr(&input, out.as_deref()),
        Command::Synth(args) => cmd_synth(args),
        Command::Ablate(args) => cmd_ablate(args),
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("COUPLAW_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let empty = e
                .downcast_ref::<Error>()
                .is_some_and(Error::is_empty_corpus);
            ExitCode::from(if empty { 2 } else { 1 })
        }
    }
}
