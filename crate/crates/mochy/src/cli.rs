//! Command-line front end.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mochy_core::counting::{self, Algorithm, Budget, Estimator, SampleConfig};
use mochy_core::null_model::{null_counts, randomize_chung_lu, NullModelConfig};
use mochy_core::profiles::{self, EgoKind};
use mochy_core::{rng, Aggregate, Classifier, Hypergraph, LineGraph, MotifCatalog, StateMap};
use serde::Serialize;

use crate::io::{self, LoadError};
use crate::output::{self, fmt_f64, pattern_string, sha256_hex, OutputChecksum, RunManifest, Table};

/// A problem with the arguments rather than the run; exits with status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Debug, Parser)]
#[command(name = "mochy", version, about = "Count and profile hypergraph motifs")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Worker threads [default: available parallelism]
    #[arg(long, global = true, env = "MOCHY_THREADS", value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    /// Base seed for sampling and randomization
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file [default: stdout]
    #[arg(long, short = 'o', global = true)]
    pub out: Option<PathBuf>,
    /// Emit JSON instead of CSV
    #[arg(long, global = true)]
    pub json: bool,
    /// Manifest file [default: <out>.manifest.json, or stderr]
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    /// More log output (repeatable)
    #[arg(long, short = 'v', global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MotifKind {
    Binary,
    Ternary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Abs,
    Mr,
    HrMean,
    HrMax,
    HrMin,
}

#[derive(Debug, Clone, Args)]
pub struct MotifArgs {
    /// Motif catalog
    #[arg(long, value_enum, default_value_t = MotifKind::Binary)]
    pub motifs: MotifKind,
    /// Cardinality threshold of the ternary absolute variant
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub theta: u64,
    /// Ternary region-to-state rule
    #[arg(long, value_enum, default_value_t = Variant::Abs)]
    pub variant: Variant,
    /// Ratio threshold of the mr and hr variants, in (0, 1)
    #[arg(long, value_parser = parse_open_unit)]
    pub p: Option<f64>,
}

impl MotifArgs {
    pub fn state_map(&self) -> Result<StateMap> {
        if self.motifs == MotifKind::Binary {
            if self.variant != Variant::Abs {
                return Err(usage("--variant other than abs needs --motifs ternary"));
            }
            return Ok(StateMap::Binary);
        }
        let p = || {
            self.p
                .ok_or_else(|| usage("--p is required for the mr and hr variants"))
        };
        Ok(match self.variant {
            Variant::Abs => StateMap::Ternary {
                theta: self.theta as usize,
            },
            Variant::Mr => StateMap::MotifRatio { p: p()? },
            Variant::HrMean => StateMap::HyperedgeRatio {
                p: p()?,
                agg: Aggregate::Mean,
            },
            Variant::HrMax => StateMap::HyperedgeRatio {
                p: p()?,
                agg: Aggregate::Max,
            },
            Variant::HrMin => StateMap::HyperedgeRatio {
                p: p()?,
                agg: Aggregate::Min,
            },
        })
    }

    pub fn classifier(&self) -> Result<Classifier> {
        Ok(Classifier::try_new(self.state_map()?)?)
    }

    fn record(&self, m: &mut RunManifest) {
        m.motifs = Some(self.motifs.to_possible_value().unwrap().get_name().to_string());
        if self.motifs == MotifKind::Ternary {
            m.variant = Some(self.variant.to_possible_value().unwrap().get_name().to_string());
            match self.variant {
                Variant::Abs => m.theta = Some(self.theta as usize),
                _ => m.p = self.p,
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Exact,
    EdgeSample,
    WedgeSample,
    OtfBasic,
    OtfAdvanced,
}

impl From<Algo> for Algorithm {
    fn from(a: Algo) -> Self {
        match a {
            Algo::Exact => Algorithm::Exact,
            Algo::EdgeSample => Algorithm::EdgeSample,
            Algo::WedgeSample => Algorithm::WedgeSample,
            Algo::OtfBasic => Algorithm::OtfBasic,
            Algo::OtfAdvanced => Algorithm::OtfAdvanced,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SamplingArgs {
    /// Counting algorithm
    #[arg(long, value_enum, default_value_t = Algo::Exact)]
    pub algo: Algo,
    /// Sampled hyperedges (edge-sample)
    #[arg(short = 's', value_parser = clap::value_parser!(u64).range(1..))]
    pub edge_samples: Option<u64>,
    /// Sampled hyperwedges (wedge-sample, otf-*)
    #[arg(short = 'r', value_parser = clap::value_parser!(u64).range(1..))]
    pub wedge_samples: Option<u64>,
    /// Memo budget of the otf modes, as a fraction of the full line graph
    #[arg(long, default_value_t = 0.1, value_parser = parse_fraction)]
    pub budget: f64,
}

impl SamplingArgs {
    pub fn config(&self, workers: usize, seed: u64) -> Result<SampleConfig> {
        let algorithm = Algorithm::from(self.algo);
        let samples = match self.algo {
            Algo::Exact => 0,
            Algo::EdgeSample => self
                .edge_samples
                .ok_or_else(|| usage("edge-sample needs -s <samples>"))?,
            _ => self
                .wedge_samples
                .ok_or_else(|| usage(format!("{} needs -r <samples>", algorithm.name())))?,
        };
        Ok(SampleConfig {
            algorithm,
            samples,
            budget: Budget::Fraction(self.budget),
            workers,
            seed,
        })
    }

    fn record(&self, cfg: &SampleConfig, m: &mut RunManifest) {
        m.algorithm = Some(cfg.algorithm.name().to_string());
        if cfg.algorithm.is_sampling() {
            m.samples = Some(cfg.samples);
        }
        if !cfg.algorithm.needs_line_graph() {
            m.budget = Some(self.budget);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ego {
    Star,
    Radial,
    Contracted,
}

impl From<Ego> for EgoKind {
    fn from(e: Ego) -> Self {
        match e {
            Ego::Star => EgoKind::Star,
            Ego::Radial => EgoKind::Radial,
            Ego::Contracted => EgoKind::Contracted,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EstimatorArg {
    Edge,
    Wedge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Comparison {
    Similarity,
    Importance,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count motif instances
    Count {
        input: PathBuf,
        #[command(flatten)]
        motif: MotifArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Significance and characteristic profile against randomized replicates
    Cp {
        input: PathBuf,
        #[command(flatten)]
        motif: MotifArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        replicates: u64,
        /// Additive smoothing in the significance denominator
        #[arg(long, default_value_t = profiles::DEFAULT_EPSILON, value_parser = parse_fraction)]
        epsilon: f64,
    },
    /// List every instance as i,j,k,motif_id (hyperedge indices in input order)
    Enumerate {
        input: PathBuf,
        #[command(flatten)]
        motif: MotifArgs,
    },
    /// Write Chung-Lu randomized copies in edge-list format
    Randomize {
        input: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        replicates: u64,
    },
    /// List motif patterns
    Catalog {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..=4))]
        arity: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..=3))]
        states: u64,
    },
    /// Motif counts within node ego-networks
    ProfileNode {
        input: PathBuf,
        #[command(flatten)]
        motif: MotifArgs,
        #[arg(long, value_enum, default_value_t = Ego::Star)]
        ego: Ego,
        /// Node labels [default: all nodes]
        #[arg(long, value_delimiter = ',')]
        nodes: Vec<u64>,
    },
    /// Motif counts of the instances containing each hyperedge
    ProfileEdge {
        input: PathBuf,
        #[command(flatten)]
        motif: MotifArgs,
        /// Hyperedge indices in input order after deduplication [default: all]
        #[arg(long, value_delimiter = ',')]
        edges: Vec<usize>,
    },
    /// Samples sufficient for a relative error below epsilon with probability 1 - delta
    RecommendSamples {
        /// Hypergraph to take d_max, counts and population from, per motif
        input: Option<PathBuf>,
        #[command(flatten)]
        motif: MotifArgs,
        #[arg(long, value_parser = parse_positive)]
        epsilon: f64,
        #[arg(long, value_parser = parse_positive)]
        delta: f64,
        #[arg(long, value_enum)]
        estimator: EstimatorArg,
        /// The motif is open (wedge estimator, explicit form only)
        #[arg(long)]
        open: bool,
        #[arg(long)]
        d_max: Option<u64>,
        #[arg(long)]
        count: Option<u64>,
        #[arg(long)]
        population: Option<u64>,
    },
    /// Summary statistics of a hypergraph
    Stats {
        input: PathBuf,
        /// Also report per-motif instance-pair overlaps (small inputs only)
        #[arg(long)]
        pairs: bool,
        #[command(flatten)]
        motif: MotifArgs,
        /// Refuse pair statistics above this many instances
        #[arg(long, default_value_t = counting::DEFAULT_INSTANCE_CAP)]
        cap: usize,
    },
    /// Weighted line graph as i,j,weight rows with i < j
    LineGraph { input: PathBuf },
    /// Convert an nverts/simplices pair to an edge list
    Convert {
        #[arg(long)]
        nverts: PathBuf,
        #[arg(long)]
        simplices: PathBuf,
    },
    /// Compare characteristic profiles of several inputs given as DOMAIN=PATH or PATH
    Compare {
        #[arg(required = true, num_args = 2..)]
        inputs: Vec<String>,
        #[arg(long, value_enum, default_value_t = Comparison::Similarity)]
        what: Comparison,
        #[command(flatten)]
        motif: MotifArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        replicates: u64,
    },
}

fn parse_open_unit(s: &str) -> std::result::Result<f64, String> {
    let p: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if p > 0.0 && p < 1.0 {
        Ok(p)
    } else {
        Err("must lie strictly between 0 and 1".into())
    }
}

fn parse_fraction(s: &str) -> std::result::Result<f64, String> {
    let f: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if f.is_finite() && f >= 0.0 {
        Ok(f)
    } else {
        Err("must be a finite non-negative number".into())
    }
}

fn parse_positive(s: &str) -> std::result::Result<f64, String> {
    let f: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if f.is_finite() && f > 0.0 {
        Ok(f)
    } else {
        Err("must be a finite positive number".into())
    }
}

/// One file (or stdout) produced by a command.
pub struct Output {
    pub path: Option<PathBuf>,
    pub bytes: Vec<u8>,
}

struct Context<'a> {
    global: &'a GlobalArgs,
    workers: usize,
    manifest: RunManifest,
}

impl Context<'_> {
    fn load(&mut self, path: &Path) -> Result<Hypergraph> {
        let h = if path.is_dir() {
            io::load_any(path)?
        } else if path.as_os_str() == "-" {
            io::load_path(path)?
        } else {
            let bytes = std::fs::read(path).map_err(|source| LoadError::Io {
                path: path.display().to_string(),
                source,
            })?;
            self.manifest.input_sha256 = Some(sha256_hex(&bytes));
            io::read_edge_list(bytes.as_slice()).with_context(|| format!("reading {}", path.display()))?
        };
        self.manifest.input = Some(path.display().to_string());
        log::info!(
            "loaded {}: {} nodes, {} hyperedges",
            path.display(),
            h.num_nodes(),
            h.num_edges()
        );
        Ok(h)
    }

    fn primary(&self, bytes: Vec<u8>) -> Vec<Output> {
        vec![Output {
            path: self.global.out.clone(),
            bytes,
        }]
    }

    fn render<T: Serialize>(&self, json: &T, csv: impl FnOnce() -> Vec<u8>) -> Vec<Output> {
        self.primary(if self.global.json { output::to_json(json) } else { csv() })
    }
}

fn state_map_name(map: StateMap) -> String {
    match map {
        StateMap::Binary => "binary".into(),
        StateMap::Ternary { theta } => format!("ternary(theta={theta})"),
        StateMap::MotifRatio { p } => format!("mr(p={p})"),
        StateMap::HyperedgeRatio { p, agg } => format!("hr-{}(p={p})", format!("{agg:?}").to_lowercase()),
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Parses `args`, runs the command and maps failures to exit codes.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let level = match cli.global.verbose {
        0 => "warn",
        1 => "info",
        2 => "debug",
        _ => "trace",
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).try_init();
    let argv: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    match run(&cli, argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

/// Runs a parsed command; `argv` is recorded in the manifest.
pub fn run(cli: &Cli, argv: Vec<String>) -> Result<()> {
    let start = Instant::now();
    let workers = cli.global.threads.map_or_else(default_workers, |t| t as usize);
    let mut ctx = Context {
        global: &cli.global,
        workers,
        manifest: RunManifest {
            tool: "mochy".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            argv,
            workers,
            seed: cli.global.seed,
            ..RunManifest::default()
        },
    };
    let (name, outputs) = dispatch(&cli.command, &mut ctx)?;
    ctx.manifest.command = name.to_string();
    let mut checksums: Vec<OutputChecksum> = Vec::with_capacity(outputs.len());
    for out in &outputs {
        checksums.push(
            output::emit(out.path.as_deref(), &out.bytes)
                .with_context(|| format!("writing {}", out.path.as_deref().unwrap_or(Path::new("-")).display()))?,
        );
    }
    ctx.manifest.outputs = checksums;
    ctx.manifest.set_elapsed(start.elapsed());
    let manifest = output::to_json(&ctx.manifest);
    match output::manifest_path(cli.global.manifest.as_deref(), cli.global.out.as_deref()) {
        Some(path) => std::fs::write(&path, manifest).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stderr().write_all(&manifest)?,
    }
    Ok(())
}

fn dispatch(command: &Command, ctx: &mut Context<'_>) -> Result<(&'static str, Vec<Output>)> {
    Ok(match command {
        Command::Count { input, motif, sampling } => ("count", cmd_count(ctx, input, motif, sampling)?),
        Command::Cp {
            input,
            motif,
            sampling,
            replicates,
            epsilon,
        } => (
            "cp",
            cmd_cp(ctx, input, motif, sampling, *replicates as usize, *epsilon)?,
        ),
        Command::Enumerate { input, motif } => ("enumerate", cmd_enumerate(ctx, input, motif)?),
        Command::Randomize { input, replicates } => ("randomize", cmd_randomize(ctx, input, *replicates as usize)?),
        Command::Catalog { arity, states } => ("catalog", cmd_catalog(ctx, *arity as usize, *states as usize)?),
        Command::ProfileNode {
            input,
            motif,
            ego,
            nodes,
        } => ("profile-node", cmd_profile_node(ctx, input, motif, *ego, nodes)?),
        Command::ProfileEdge { input, motif, edges } => ("profile-edge", cmd_profile_edge(ctx, input, motif, edges)?),
        Command::RecommendSamples {
            input,
            motif,
            epsilon,
            delta,
            estimator,
            open,
            d_max,
            count,
            population,
        } => (
            "recommend-samples",
            cmd_recommend(
                ctx,
                input.as_deref(),
                motif,
                Bound {
                    eps: *epsilon,
                    delta: *delta,
                    estimator: *estimator,
                    open: *open,
                },
                (*d_max, *count, *population),
            )?,
        ),
        Command::Stats {
            input,
            pairs,
            motif,
            cap,
        } => ("stats", cmd_stats(ctx, input, *pairs, motif, *cap)?),
        Command::LineGraph { input } => ("line-graph", cmd_line_graph(ctx, input)?),
        Command::Convert { nverts, simplices } => ("convert", cmd_convert(ctx, nverts, simplices)?),
        Command::Compare {
            inputs,
            what,
            motif,
            sampling,
            replicates,
        } => (
            "compare",
            cmd_compare(ctx, inputs, *what, motif, sampling, *replicates as usize)?,
        ),
    })
}

fn cmd_count(ctx: &mut Context<'_>, input: &Path, motif: &MotifArgs, sampling: &SamplingArgs) -> Result<Vec<Output>> {
    let cls = motif.classifier()?;
    let cfg = sampling.config(ctx.workers, ctx.global.seed)?;
    motif.record(&mut ctx.manifest);
    sampling.record(&cfg, &mut ctx.manifest);
    let h = ctx.load(input)?;
    let counts = counting::count(&h, None, &cls, &cfg)?;
    let report = output::count_report(&counts, &cls, &state_map_name(cls.state_map()));
    Ok(ctx.render(&report, || output::counts_csv(&counts, &cls)))
}

#[derive(Debug, Serialize)]
struct CpRow {
    id: u32,
    pattern: String,
    count: f64,
    null_mean: f64,
    delta: f64,
    cp: f64,
}

#[derive(Debug, Serialize)]
struct ReplicateRun {
    index: usize,
    randomize_seed: u64,
    count_seed: u64,
    num_edges: usize,
    num_wedges: u64,
    total: f64,
}

#[derive(Debug, Serialize)]
struct CpReport {
    state_map: String,
    epsilon: f64,
    replicates: Vec<ReplicateRun>,
    motifs: Vec<CpRow>,
}

fn characteristic(
    h: &Hypergraph,
    cls: &Classifier,
    cfg: &SampleConfig,
    replicates: usize,
    seed: u64,
    eps: f64,
) -> Result<CpReport> {
    let m = counting::count(h, None, cls, cfg)?;
    let null = null_counts(h, cls, &NullModelConfig { replicates, seed }, cfg)?;
    let delta = profiles::significance(&m, &null.mean, eps)?;
    let cp = profiles::characteristic_profile(&delta);
    Ok(CpReport {
        state_map: state_map_name(cls.state_map()),
        epsilon: eps,
        replicates: null
            .replicates
            .iter()
            .enumerate()
            .map(|(n, r)| ReplicateRun {
                index: n,
                randomize_seed: rng::derive_seed(seed, 2 * n as u64),
                count_seed: rng::derive_seed(seed, 2 * n as u64 + 1),
                num_edges: r.num_edges,
                num_wedges: r.num_wedges,
                total: r.total(),
            })
            .collect(),
        motifs: cls
            .catalog()
            .ids()
            .map(|id| {
                let t = id as usize - 1;
                CpRow {
                    id,
                    pattern: pattern_string(cls.catalog().pattern(id)),
                    count: m.counts[t],
                    null_mean: null.mean.counts[t],
                    delta: delta[t],
                    cp: cp[t],
                }
            })
            .collect(),
    })
}

fn cmd_cp(
    ctx: &mut Context<'_>,
    input: &Path,
    motif: &MotifArgs,
    sampling: &SamplingArgs,
    replicates: usize,
    eps: f64,
) -> Result<Vec<Output>> {
    let cls = motif.classifier()?;
    let cfg = sampling.config(ctx.workers, ctx.global.seed)?;
    motif.record(&mut ctx.manifest);
    sampling.record(&cfg, &mut ctx.manifest);
    ctx.manifest.replicates = Some(replicates);
    let h = ctx.load(input)?;
    let report = characteristic(&h, &cls, &cfg, replicates, ctx.global.seed, eps)?;
    for r in &report.replicates {
        log::info!(
            "replicate {}: randomize seed {}, {} hyperedges, {} instances",
            r.index,
            r.randomize_seed,
            r.num_edges,
            r.total
        );
    }
    Ok(ctx.render(&report, || {
        let mut t = Table::new(["id", "pattern", "count", "null_mean", "delta", "cp"]);
        for r in &report.motifs {
            t.row([
                r.id.to_string(),
                r.pattern.clone(),
                fmt_f64(r.count),
                fmt_f64(r.null_mean),
                fmt_f64(r.delta),
                fmt_f64(r.cp),
            ]);
        }
        t.into_bytes()
    }))
}

fn cmd_enumerate(ctx: &mut Context<'_>, input: &Path, motif: &MotifArgs) -> Result<Vec<Output>> {
    let cls = motif.classifier()?;
    motif.record(&mut ctx.manifest);
    ctx.manifest.algorithm = Some(Algorithm::Exact.name().into());
    let h = ctx.load(input)?;
    let lg = LineGraph::build(&h, ctx.workers);
    let mut rows: Vec<[u32; 4]> = Vec::new();
    counting::enumerate_instances(&h, &lg, &cls, |i, j, k, id| {
        rows.push([i, j, k, id]);
        Ok::<(), std::convert::Infallible>(())
    })
    .map_err(|e| anyhow::anyhow!("{e}"))?;
    #[derive(Serialize)]
    struct Instance {
        i: u32,
        j: u32,
        k: u32,
        motif_id: u32,
    }
    let json: Vec<Instance> = if ctx.global.json {
        rows.iter()
            .map(|&[i, j, k, motif_id]| Instance { i, j, k, motif_id })
            .collect()
    } else {
        Vec::new()
    };
    Ok(ctx.render(&json, || {
        let mut t = Table::new(["i", "j", "k", "motif_id"]);
        for r in &rows {
            t.row(r.iter().map(u32::to_string));
        }
        t.into_bytes()
    }))
}

fn replicate_path(out: &Path, n: usize) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match out.extension() {
        Some(ext) => format!("{stem}.{n}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{n}"),
    };
    out.with_file_name(name)
}

fn cmd_randomize(ctx: &mut Context<'_>, input: &Path, replicates: usize) -> Result<Vec<Output>> {
    ctx.manifest.replicates = Some(replicates);
    let h = ctx.load(input)?;
    let seed = ctx.global.seed;
    let mut outputs = Vec::with_capacity(replicates);
    let mut stdout = Vec::new();
    for n in 0..replicates {
        let r = randomize_chung_lu(&h, rng::derive_seed(seed, 2 * n as u64));
        let mut bytes = Vec::new();
        io::write_edge_list(&r, &mut bytes)?;
        match (&ctx.global.out, replicates) {
            (Some(out), 1) => outputs.push(Output {
                path: Some(out.clone()),
                bytes,
            }),
            (Some(out), _) => outputs.push(Output {
                path: Some(replicate_path(out, n)),
                bytes,
            }),
            (None, _) => {
                if replicates > 1 {
                    writeln!(stdout, "# replicate {n}")?;
                }
                stdout.extend(bytes);
            }
        }
    }
    if ctx.global.out.is_none() {
        outputs.push(Output {
            path: None,
            bytes: stdout,
        });
    }
    Ok(outputs)
}

fn cmd_catalog(ctx: &mut Context<'_>, arity: usize, states: usize) -> Result<Vec<Output>> {
    if arity == 4 && states == 3 {
        return Err(usage("the ternary catalog is available for arity 2 and 3 only"));
    }
    let catalog = MotifCatalog::enumerate(arity, states)?;
    ctx.manifest.motifs = Some(format!("arity={arity},states={states}"));
    #[derive(Serialize)]
    struct Row {
        id: u32,
        pattern: String,
        open: bool,
    }
    let rows: Vec<Row> = catalog
        .ids()
        .map(|id| Row {
            id,
            pattern: pattern_string(catalog.pattern(id)),
            open: catalog.is_open(id),
        })
        .collect();
    Ok(ctx.render(&rows, || {
        let mut t = Table::new(["id", "pattern", "open"]);
        for r in &rows {
            t.row([r.id.to_string(), r.pattern.clone(), r.open.to_string()]);
        }
        t.into_bytes()
    }))
}

#[derive(Debug, Serialize)]
struct ProfileRow {
    key: u64,
    counts: Vec<f64>,
}

fn profile_outputs(ctx: &Context<'_>, key: &str, cls: &Classifier, rows: &[ProfileRow]) -> Vec<Output> {
    #[derive(Serialize)]
    struct Report<'a> {
        key: &'a str,
        patterns: Vec<String>,
        rows: &'a [ProfileRow],
    }
    let patterns: Vec<String> = cls.catalog().patterns().iter().map(pattern_string).collect();
    let report = Report { key, patterns, rows };
    ctx.render(&report, || {
        let header = std::iter::once(key.to_string()).chain(cls.catalog().ids().map(|id| format!("t{id}")));
        let mut t = Table::new(header);
        for r in rows {
            t.row(std::iter::once(r.key.to_string()).chain(r.counts.iter().map(|&c| fmt_f64(c))));
        }
        t.into_bytes()
    })
}

fn cmd_profile_node(
    ctx: &mut Context<'_>,
    input: &Path,
    motif: &MotifArgs,
    ego: Ego,
    labels: &[u64],
) -> Result<Vec<Output>> {
    let cls = motif.classifier()?;
    motif.record(&mut ctx.manifest);
    ctx.manifest.algorithm = Some(Algorithm::Exact.name().into());
    let h = ctx.load(input)?;
    let centers: Vec<u32> = if labels.is_empty() {
        (0..h.num_nodes() as u32).collect()
    } else {
        labels
            .iter()
            .map(|&l| {
                h.node_of_label(l)
                    .ok_or_else(|| anyhow::anyhow!("node {l} does not occur in the input"))
            })
            .collect::<Result<_>>()?
    };
    let profiles = profiles::node_profiles(&h, &centers, ego.into(), &cls, ctx.workers)?;
    let rows: Vec<ProfileRow> = centers
        .iter()
        .zip(profiles)
        .map(|(&v, p)| ProfileRow {
            key: h.label(v),
            counts: p.counts,
        })
        .collect();
    Ok(profile_outputs(ctx, "node", &cls, &rows))
}

fn cmd_profile_edge(ctx: &mut Context<'_>, input: &Path, motif: &MotifArgs, edges: &[usize]) -> Result<Vec<Output>> {
    let cls = motif.classifier()?;
    motif.record(&mut ctx.manifest);
    ctx.manifest.algorithm = Some(Algorithm::Exact.name().into());
    let h = ctx.load(input)?;
    let lg = LineGraph::build(&h, ctx.workers);
    let targets: Vec<usize> = if edges.is_empty() {
        (0..h.num_edges()).collect()
    } else {
        edges.to_vec()
    };
    let rows = targets
        .iter()
        .map(|&e| {
            Ok(ProfileRow {
                key: e as u64,
                counts: profiles::hyperedge_profile(&h, &lg, &cls, e)?.counts,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(profile_outputs(ctx, "edge", &cls, &rows))
}

struct Bound {
    eps: f64,
    delta: f64,
    estimator: EstimatorArg,
    open: bool,
}

fn cmd_recommend(
    ctx: &mut Context<'_>,
    input: Option<&Path>,
    motif: &MotifArgs,
    bound: Bound,
    explicit: (Option<u64>, Option<u64>, Option<u64>),
) -> Result<Vec<Output>> {
    let estimator = |open: bool| match bound.estimator {
        EstimatorArg::Edge => Estimator::Edge,
        EstimatorArg::Wedge => Estimator::Wedge { open },
    };
    let Some(input) = input else {
        let (Some(d_max), Some(m), Some(population)) = explicit else {
            return Err(usage("give an input file or all of --d-max, --count and --population"));
        };
        let n = counting::recommend_samples(bound.eps, bound.delta, d_max, m, population, estimator(bound.open))
            .map_err(|e| usage(e.to_string()))?;
        #[derive(Serialize)]
        struct One {
            samples: u64,
        }
        return Ok(ctx.render(&One { samples: n }, || format!("samples\n{n}\n").into_bytes()));
    };
    if explicit != (None, None, None) {
        return Err(usage(
            "--d-max, --count and --population cannot be combined with an input file",
        ));
    }
    let cls = motif.classifier()?;
    motif.record(&mut ctx.manifest);
    let h = ctx.load(input)?;
    let lg = LineGraph::build(&h, ctx.workers);
    let exact = counting::count_exact(&h, &lg, &cls, ctx.workers);
    let d_max = counting::max_degree_per_motif(&h, &lg, &cls, ctx.workers);
    let population = match bound.estimator {
        EstimatorArg::Edge => h.num_edges() as u64,
        EstimatorArg::Wedge => lg.wedge_count() as u64,
    };
    #[derive(Serialize)]
    struct Row {
        id: u32,
        pattern: String,
        open: bool,
        count: u64,
        d_max: u32,
        population: u64,
        samples: u64,
    }
    let mut rows = Vec::new();
    for (id, m) in exact.iter() {
        if m == 0.0 {
            continue;
        }
        let t = id as usize - 1;
        let samples = counting::recommend_samples(
            bound.eps,
            bound.delta,
            u64::from(d_max[t]),
            m as u64,
            population,
            estimator(cls.is_open(id)),
        )?;
        rows.push(Row {
            id,
            pattern: pattern_string(cls.catalog().pattern(id)),
            open: cls.is_open(id),
            count: m as u64,
            d_max: d_max[t],
            population,
            samples,
        });
    }
    Ok(ctx.render(&rows, || {
        let mut t = Table::new(["id", "pattern", "open", "count", "d_max", "population", "samples"]);
        for r in &rows {
            t.row([
                r.id.to_string(),
                r.pattern.clone(),
                r.open.to_string(),
                r.count.to_string(),
                r.d_max.to_string(),
                r.population.to_string(),
                r.samples.to_string(),
            ]);
        }
        t.into_bytes()
    }))
}

fn cmd_stats(ctx: &mut Context<'_>, input: &Path, pairs: bool, motif: &MotifArgs, cap: usize) -> Result<Vec<Output>> {
    let h = ctx.load(input)?;
    let lg = LineGraph::build(&h, ctx.workers);
    let sizes: Vec<usize> = h.edges().map(<[u32]>::len).collect();
    let max_degree = (0..h.num_nodes() as u32)
        .map(|v| h.incident(v).len())
        .max()
        .unwrap_or(0);
    let mut summary: Vec<(&str, String)> = vec![
        ("nodes", h.num_nodes().to_string()),
        ("hyperedges", h.num_edges().to_string()),
        ("incidences", h.num_incidences().to_string()),
        ("hyperwedges", lg.wedge_count().to_string()),
        ("overlap_mass", lg.overlap_mass().to_string()),
        ("max_edge_size", sizes.iter().max().copied().unwrap_or(0).to_string()),
        (
            "mean_edge_size",
            fmt_f64(h.num_incidences() as f64 / h.num_edges() as f64),
        ),
        ("max_node_degree", max_degree.to_string()),
        (
            "max_line_graph_degree",
            (0..h.num_edges()).map(|i| lg.degree(i)).max().unwrap_or(0).to_string(),
        ),
    ];
    if !pairs {
        #[derive(Serialize)]
        struct Entry<'a> {
            key: &'a str,
            value: &'a str,
        }
        let json: Vec<Entry> = summary.iter().map(|(k, v)| Entry { key: k, value: v }).collect();
        return Ok(ctx.render(&json, || {
            let mut t = Table::new(["key", "value"]);
            for (k, v) in &summary {
                t.row([*k, v.as_str()]);
            }
            t.into_bytes()
        }));
    }
    let cls = motif.classifier()?;
    motif.record(&mut ctx.manifest);
    let stats = counting::pair_overlap_stats(&h, &lg, &cls, cap)?;
    summary.push(("instances", stats.instances.iter().sum::<u64>().to_string()));
    #[derive(Serialize)]
    struct PairRow {
        id: u32,
        pattern: String,
        instances: u64,
        p: [u64; 3],
        q: [u64; 2],
    }
    let rows: Vec<PairRow> = cls
        .catalog()
        .ids()
        .filter(|&id| stats.instances(id) > 0)
        .map(|id| PairRow {
            id,
            pattern: pattern_string(cls.catalog().pattern(id)),
            instances: stats.instances(id),
            p: stats.get(id).p,
            q: stats.get(id).q,
        })
        .collect();
    Ok(ctx.render(&rows, || {
        let mut t = Table::new(["id", "pattern", "instances", "p0", "p1", "p2", "q0", "q1"]);
        for r in &rows {
            t.row(
                [r.id.to_string(), r.pattern.clone(), r.instances.to_string()]
                    .into_iter()
                    .chain(r.p.iter().chain(&r.q).map(u64::to_string)),
            );
        }
        t.into_bytes()
    }))
}

fn cmd_line_graph(ctx: &mut Context<'_>, input: &Path) -> Result<Vec<Output>> {
    let h = ctx.load(input)?;
    let lg = LineGraph::build(&h, ctx.workers);
    #[derive(Serialize)]
    struct Row {
        i: u32,
        j: u32,
        weight: u32,
    }
    let rows: Vec<Row> = lg
        .wedges()
        .map(|w| Row {
            i: w.i,
            j: w.j,
            weight: w.weight,
        })
        .collect();
    Ok(ctx.render(&rows, || {
        let mut t = Table::new(["i", "j", "weight"]);
        for r in &rows {
            t.row([r.i.to_string(), r.j.to_string(), r.weight.to_string()]);
        }
        t.into_bytes()
    }))
}

fn cmd_convert(ctx: &mut Context<'_>, nverts: &Path, simplices: &Path) -> Result<Vec<Output>> {
    let open = |p: &Path| {
        std::fs::File::open(p)
            .map(std::io::BufReader::new)
            .with_context(|| format!("opening {}", p.display()))
    };
    let edges = io::read_benson(open(nverts)?, open(simplices)?)?;
    ctx.manifest.input = Some(format!("{},{}", nverts.display(), simplices.display()));
    let mut bytes = Vec::new();
    for e in &edges {
        let line: Vec<String> = e.iter().map(u64::to_string).collect();
        writeln!(bytes, "{}", line.join(" "))?;
    }
    Ok(ctx.primary(bytes))
}

fn cmd_compare(
    ctx: &mut Context<'_>,
    inputs: &[String],
    what: Comparison,
    motif: &MotifArgs,
    sampling: &SamplingArgs,
    replicates: usize,
) -> Result<Vec<Output>> {
    let cls = motif.classifier()?;
    let cfg = sampling.config(ctx.workers, ctx.global.seed)?;
    motif.record(&mut ctx.manifest);
    sampling.record(&cfg, &mut ctx.manifest);
    ctx.manifest.replicates = Some(replicates);
    let parsed: Vec<(String, PathBuf)> = inputs
        .iter()
        .map(|s| match s.split_once('=') {
            Some((d, p)) => (d.to_string(), PathBuf::from(p)),
            None => (String::new(), PathBuf::from(s)),
        })
        .collect();
    let mut cps = Vec::with_capacity(parsed.len());
    for (_, path) in &parsed {
        let h = ctx.load(path)?;
        let report = characteristic(&h, &cls, &cfg, replicates, ctx.global.seed, profiles::DEFAULT_EPSILON)?;
        cps.push(report.motifs.iter().map(|r| r.cp).collect::<Vec<f64>>());
    }
    ctx.manifest.input = Some(inputs.join(","));
    ctx.manifest.input_sha256 = None;
    let names: Vec<String> = parsed.iter().map(|(_, p)| p.display().to_string()).collect();
    match what {
        Comparison::Similarity => {
            let matrix = profiles::cp_similarity_matrix(&cps)?;
            #[derive(Serialize)]
            struct Report<'a> {
                inputs: &'a [String],
                matrix: &'a [Vec<f64>],
            }
            Ok(ctx.render(
                &Report {
                    inputs: &names,
                    matrix: &matrix,
                },
                || {
                    let mut t = Table::new(std::iter::once(String::new()).chain(names.iter().cloned()));
                    for (name, row) in names.iter().zip(&matrix) {
                        t.row(std::iter::once(name.clone()).chain(row.iter().map(|&x| fmt_f64(x))));
                    }
                    t.into_bytes()
                },
            ))
        }
        Comparison::Importance => {
            if parsed.iter().any(|(d, _)| d.is_empty()) {
                return Err(usage("importance needs every input as DOMAIN=PATH"));
            }
            let labeled: Vec<(String, Vec<f64>)> = parsed.iter().map(|(d, _)| d.clone()).zip(cps).collect();
            let importance = profiles::motif_importance(&labeled).map_err(|e| usage(e.to_string()))?;
            #[derive(Serialize)]
            struct Row {
                id: u32,
                pattern: String,
                importance: f64,
            }
            let rows: Vec<Row> = cls
                .catalog()
                .ids()
                .map(|id| Row {
                    id,
                    pattern: pattern_string(cls.catalog().pattern(id)),
                    importance: importance[id as usize - 1],
                })
                .collect();
            Ok(ctx.render(&rows, || {
                let mut t = Table::new(["id", "pattern", "importance"]);
                for r in &rows {
                    t.row([r.id.to_string(), r.pattern.clone(), fmt_f64(r.importance)]);
                }
                t.into_bytes()
            }))
        }
    }
}
