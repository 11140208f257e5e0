//! Command-line front end. The binary parses [`Cli`] and calls [`run`].

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::adjacency::combined_adjacency;
use crate::centrality::{compute, CentralityOptions, CentralityVector, Measure, SpectralConfig};
use crate::complex::CliqueComplex;
use crate::error::{Error, Result};
use crate::essential::{
    detection_curve, project_to_nodes, random_baseline, rank_nodes, DetectionCurve,
    EssentialityAnnotation, DEFAULT_GRID, DEFAULT_REPETITIONS,
};
use crate::export::{
    centrality_json, format_float, format_option, write_centrality_csv, write_coo,
    write_simplex_index, RunMetadata,
};
use crate::families::Family;
use crate::graph::Graph;
use crate::paths::{DistanceMatrix, LevelPathSummary, DEFAULT_MATRIX_LIMIT};
use crate::stats::{correlation_table, degree_distribution, fit_all, select_model, Distribution};

const DEFAULT_MAX_LEVEL: usize = 3;
const DEFAULT_MEASURES: [Measure; 3] = [Measure::Degree, Measure::Subgraph, Measure::Closeness];

#[derive(Debug, Parser)]
#[command(
    name = "simcent",
    version,
    about = "Simplicial centralities of clique complexes"
)]
pub struct Cli {
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true, env = "SIMCENT_THREADS")]
    pub threads: Option<usize>,

    /// Repeat for more log output.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the clique complex and report simplex and interaction counts.
    Build(BuildArgs),
    /// Centrality scores of every simplex at the requested levels.
    Centrality(CentralityArgs),
    /// Components, diameters, average path lengths and eccentricities.
    Distance(DistanceArgs),
    /// Fit distributions to simplex degrees and select the best model.
    FitDegree(FitArgs),
    /// Spearman correlations between measures and levels.
    Correlate(CorrelateArgs),
    /// Detection curves of essential nodes against a random baseline.
    Essential(EssentialArgs),
    /// Write the edge list of a synthetic family: `S l k`, `T k x0..xk` or `P l k`.
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Edge list: two labels per line, `#` comments.
    pub input: PathBuf,

    /// Highest simplex dimension to materialize.
    #[arg(short = 'K', long, default_value_t = DEFAULT_MAX_LEVEL)]
    pub max_level: usize,

    /// Levels to analyse; defaults to every level with a defined adjacency.
    #[arg(short, long = "level", value_delimiter = ',')]
    pub levels: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Write coordinate-format matrices and simplex index files here.
    #[arg(long)]
    pub export_dir: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SpectralArgs {
    /// Largest level handled by dense eigendecomposition.
    #[arg(long, default_value_t = SpectralConfig::default().dense_limit)]
    pub dense_limit: usize,

    /// Use iterative and truncated-series methods above the dense limit.
    #[arg(long)]
    pub series_fallback: bool,
}

#[derive(Debug, Args)]
pub struct CentralityArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Measures to compute; defaults to all.
    #[arg(short, long = "measure", value_delimiter = ',')]
    pub measures: Vec<Measure>,

    /// Katz damping; defaults to half of 1/lambda_1.
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Report unnormalized closeness and betweenness.
    #[arg(long)]
    pub raw: bool,

    #[command(flatten)]
    pub spectral: SpectralArgs,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// One file per level is written here; stdout otherwise.
    #[arg(short, long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Write full distance matrices (`NA` for unreachable) into this directory.
    #[arg(long)]
    pub matrix_dir: Option<PathBuf>,

    /// Largest level for which a full distance matrix may be written.
    #[arg(long, default_value_t = DEFAULT_MATRIX_LIMIT)]
    pub matrix_limit: usize,

    /// CSV of eccentricities per simplex.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Candidate families; defaults to all six.
    #[arg(long = "family", value_delimiter = ',')]
    pub families: Vec<Distribution>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CorrelateArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Defaults to degree, subgraph and closeness.
    #[arg(short, long = "measure", value_delimiter = ',')]
    pub measures: Vec<Measure>,

    #[command(flatten)]
    pub spectral: SpectralArgs,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EssentialArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// `label 0|1` per line.
    #[arg(short, long)]
    pub annotation: PathBuf,

    /// Defaults to degree, subgraph and closeness.
    #[arg(short, long = "measure", value_delimiter = ',')]
    pub measures: Vec<Measure>,

    /// Top percentages.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_GRID)]
    pub grid: Vec<f64>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Random rankings averaged for the baseline.
    #[arg(long, default_value_t = DEFAULT_REPETITIONS)]
    pub repetitions: usize,

    #[command(flatten)]
    pub spectral: SpectralArgs,

    /// Long-format CSV; stdout otherwise.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    S,
    T,
    P,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum, ignore_case = true)]
    pub family: FamilyName,

    /// `l k` for S and P; `k x0 .. xk` for T.
    #[arg(required = true, num_args = 1..)]
    pub params: Vec<usize>,

    /// Edge-list file; stdout otherwise.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Everything that determines a run, validated up front and echoed into
/// output metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub max_level: usize,
    pub levels: Vec<usize>,
    pub measures: Vec<Measure>,
    pub alpha: Option<f64>,
    pub normalized: bool,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub dense_limit: usize,
    pub series_fallback: bool,
    pub matrix_limit: usize,
}

impl RunConfig {
    fn new(input: &InputArgs) -> Self {
        let spectral = SpectralConfig::default();
        Self {
            input: Some(input.input.clone()),
            max_level: input.max_level,
            levels: resolve_levels(input),
            measures: Vec::new(),
            alpha: None,
            normalized: true,
            seed: None,
            output: None,
            format: None,
            dense_limit: spectral.dense_limit,
            series_fallback: spectral.series_fallback,
            matrix_limit: DEFAULT_MATRIX_LIMIT,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(&k) = self.levels.iter().find(|&&k| k > self.max_level) {
            return Err(Error::LevelOutOfRange {
                level: k,
                max_level: self.max_level,
            });
        }
        if let Some(a) = self.alpha {
            if !(a.is_finite() && a > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "alpha must be positive, got {a}"
                )));
            }
        }
        Ok(())
    }

    fn centrality_options(&self) -> CentralityOptions {
        CentralityOptions {
            normalized: self.normalized,
            alpha: self.alpha,
            spectral: SpectralConfig {
                dense_limit: self.dense_limit,
                series_fallback: self.series_fallback,
                ..SpectralConfig::default()
            },
        }
    }

    fn metadata(&self, command: &str) -> RunMetadata {
        RunMetadata::new(command, self, self.seed)
    }
}

/// Requested levels, or every level whose combined adjacency is defined.
fn resolve_levels(input: &InputArgs) -> Vec<usize> {
    if input.levels.is_empty() {
        (0..input.max_level.max(1)).collect()
    } else {
        input.levels.clone()
    }
}

fn load(config: &RunConfig) -> Result<CliqueComplex> {
    let path = config.input.as_deref().expect("input path");
    let (graph, report) = Graph::load_edge_list(path)?;
    log::info!(
        "{}: {} nodes, {} edges ({} lines, {} duplicates, {} self-loops dropped)",
        path.display(),
        graph.node_count(),
        graph.edge_count(),
        report.edges_read,
        report.duplicates,
        report.self_loops
    );
    Ok(CliqueComplex::build(graph, config.max_level))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn io_out(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

/// Runs the parsed command, writing its report to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            // Output is buffered because `out` may not be shareable with
            // the pool's threads.
            let mut buf = Vec::new();
            pool.install(|| dispatch(cli.command, &mut buf))?;
            out.write_all(&buf).map_err(io_out)
        }
        None => dispatch(cli.command, out),
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Build(a) => cmd_build(&a, out),
        Command::Centrality(a) => cmd_centrality(&a, out),
        Command::Distance(a) => cmd_distance(&a, out),
        Command::FitDegree(a) => cmd_fit_degree(&a, out),
        Command::Correlate(a) => cmd_correlate(&a, out),
        Command::Essential(a) => cmd_essential(&a, out),
        Command::Generate(a) => cmd_generate(&a, out),
    }
}

#[derive(Debug, Serialize)]
struct LevelCounts {
    level: usize,
    simplices: usize,
    /// Combined-adjacency pairs; absent at the top level.
    interactions: Option<usize>,
}

fn cmd_build(args: &BuildArgs, out: &mut dyn Write) -> Result<()> {
    let mut config = RunConfig::new(&args.input);
    config.levels = (0..=args.input.max_level).collect();
    config.output = args.export_dir.clone();
    config.format = Some(args.format);
    config.validate()?;
    let c = load(&config)?;
    let meta = config.metadata("build");

    let mut rows = Vec::new();
    for k in 0..=c.max_level() {
        let interactions = if k < c.max_level() || k == 0 {
            Some(combined_adjacency(&c, k)?.interaction_count())
        } else {
            None
        };
        rows.push(LevelCounts {
            level: k,
            simplices: c.count(k),
            interactions,
        });
    }

    if let Some(dir) = &args.export_dir {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for (k, row) in rows.iter().enumerate() {
            let mut w = create(&dir.join(format!("level{k}.simplices")))?;
            write_simplex_index(&c, k, &meta, &mut w)?;
            w.flush().map_err(|e| Error::io(dir, e))?;
            if row.interactions.is_some() {
                let adj = combined_adjacency(&c, k)?;
                let mut w = create(&dir.join(format!("level{k}.coo")))?;
                write_coo(&adj, &meta, &mut w)?;
                w.flush().map_err(|e| Error::io(dir, e))?;
            }
        }
    }

    match args.format {
        Format::Json => {
            let value = serde_json::json!({ "metadata": meta, "levels": rows });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&value).expect("serializable")
            )
            .map_err(io_out)?;
        }
        Format::Csv => {
            meta.write_comment(out)?;
            writeln!(out, "level,simplices,interactions").map_err(io_out)?;
            for r in &rows {
                let i = r.interactions.map_or("NA".to_string(), |v| v.to_string());
                writeln!(out, "{},{},{}", r.level, r.simplices, i).map_err(io_out)?;
            }
        }
        Format::Text => {
            let counts: Vec<String> = rows.iter().map(|r| r.simplices.to_string()).collect();
            let inter: Vec<String> = rows
                .iter()
                .filter_map(|r| r.interactions.map(|v| v.to_string()))
                .collect();
            writeln!(out, "simplices:    {}", counts.join(" / ")).map_err(io_out)?;
            writeln!(out, "interactions: {}", inter.join(" / ")).map_err(io_out)?;
            writeln!(
                out,
                "{:>5}  {:>10}  {:>12}",
                "level", "simplices", "interactions"
            )
            .map_err(io_out)?;
            for r in &rows {
                let i = r.interactions.map_or("-".to_string(), |v| v.to_string());
                writeln!(out, "{:>5}  {:>10}  {:>12}", r.level, r.simplices, i).map_err(io_out)?;
            }
        }
    }
    Ok(())
}

fn measures_or(measures: &[Measure], default: &[Measure]) -> Vec<Measure> {
    if measures.is_empty() {
        default.to_vec()
    } else {
        measures.to_vec()
    }
}

fn cmd_centrality(args: &CentralityArgs, out: &mut dyn Write) -> Result<()> {
    let mut config = RunConfig::new(&args.input);
    config.measures = measures_or(&args.measures, &Measure::ALL);
    config.alpha = args.alpha;
    config.normalized = !args.raw;
    config.dense_limit = args.spectral.dense_limit;
    config.series_fallback = args.spectral.series_fallback;
    config.format = Some(args.format);
    config.output = args.out_dir.clone();
    if args.format == Format::Text {
        return Err(Error::InvalidArgument(
            "centrality output is csv or json".into(),
        ));
    }
    config.validate()?;
    let c = load(&config)?;
    let opts = config.centrality_options();
    let meta = config.metadata("centrality");

    for &k in &config.levels {
        let adj = combined_adjacency(&c, k)?;
        let vectors = config
            .measures
            .iter()
            .map(|&m| compute(&adj, m, &opts))
            .collect::<Result<Vec<CentralityVector>>>()?;
        let ext = if args.format == Format::Json {
            "json"
        } else {
            "csv"
        };
        let mut file;
        let w: &mut dyn Write = match &args.out_dir {
            Some(dir) => {
                file = create(&dir.join(format!("centrality_level{k}.{ext}")))?;
                &mut file
            }
            None => out,
        };
        match args.format {
            Format::Json => {
                let value = centrality_json(&c, k, &vectors, &meta)?;
                writeln!(
                    w,
                    "{}",
                    serde_json::to_string_pretty(&value).expect("serializable")
                )
                .map_err(io_out)?;
            }
            _ => write_centrality_csv(&c, k, &vectors, &meta, &mut *w)?,
        }
        w.flush().map_err(io_out)?;
    }
    Ok(())
}

fn cmd_distance(args: &DistanceArgs, out: &mut dyn Write) -> Result<()> {
    let mut config = RunConfig::new(&args.input);
    config.matrix_limit = args.matrix_limit;
    config.output = args.output.clone();
    config.validate()?;
    let c = load(&config)?;
    let meta = config.metadata("distance");

    let mut ecc_out = match &args.output {
        Some(path) => {
            let mut w = create(path)?;
            meta.write_comment(&mut w)?;
            writeln!(w, "level,id,simplex,component,eccentricity")
                .map_err(|e| Error::io(path, e))?;
            Some(w)
        }
        None => None,
    };
    for &k in &config.levels {
        let adj = combined_adjacency(&c, k)?;
        if let Some(dir) = &args.matrix_dir {
            let d = DistanceMatrix::compute(&adj, args.matrix_limit)?;
            let path = dir.join(format!("distance_level{k}.csv"));
            let mut w = create(&path)?;
            meta.write_comment(&mut w)?;
            for i in 0..d.len() {
                let row: Vec<String> = d
                    .row(i)
                    .map(|v| v.map_or("NA".into(), |x| x.to_string()))
                    .collect();
                writeln!(w, "{}", row.join(",")).map_err(|e| Error::io(&path, e))?;
            }
            w.flush().map_err(|e| Error::io(&path, e))?;
        }
        let summary = LevelPathSummary::compute(&adj);
        writeln!(
            out,
            "level {k}: {} simplices, components {}, diameter {}",
            summary.simplices,
            summary.components.len(),
            summary.diameter()
        )
        .map_err(io_out)?;
        writeln!(
            out,
            "{:>9}  {:>6}  {:>8}  path_length",
            "component", "size", "diameter"
        )
        .map_err(io_out)?;
        for (i, comp) in summary.components.iter().enumerate() {
            let l = comp.path_length.map_or("NA".to_string(), |p| {
                format!(
                    "{} ({}/{})",
                    format_float(p.value()),
                    p.distance_sum,
                    p.pairs
                )
            });
            writeln!(
                out,
                "{:>9}  {:>6}  {:>8}  {}",
                i, comp.size, comp.diameter, l
            )
            .map_err(io_out)?;
        }
        if let Some(w) = ecc_out.as_mut() {
            let labels = crate::paths::connected_components(&adj);
            for id in 0..adj.len() {
                writeln!(
                    w,
                    "{k},{id},\"{}\",{},{}",
                    c.format_simplex(k, id),
                    labels.label(id),
                    summary.eccentricity[id]
                )
                .map_err(io_out)?;
            }
        }
    }
    if let Some(mut w) = ecc_out {
        w.flush().map_err(io_out)?;
    }
    Ok(())
}

fn cmd_fit_degree(args: &FitArgs, out: &mut dyn Write) -> Result<()> {
    let mut config = RunConfig::new(&args.input);
    config.format = Some(args.format);
    config.validate()?;
    let families = if args.families.is_empty() {
        Distribution::ALL.to_vec()
    } else {
        args.families.clone()
    };
    let c = load(&config)?;
    let meta = config.metadata("fit-degree");

    if args.format == Format::Csv {
        meta.write_comment(out)?;
        writeln!(
            out,
            "level,family,params,ln_likelihood,aic,bic,delta_aic,rank,status,selection"
        )
        .map_err(io_out)?;
    }
    let mut json_levels = Vec::new();
    for &k in &config.levels {
        let dist = degree_distribution(&c, k)?;
        let fits = fit_all(&dist.values(), &families);
        let selection = select_model(&fits);
        let delta = |d: Distribution| {
            selection
                .ranked
                .iter()
                .position(|f| f.distribution == d)
                .map(|i| (selection.ranked[i].rank, selection.delta_aic[i]))
        };
        match args.format {
            Format::Json => json_levels.push(serde_json::json!({
                "level": k,
                "fits": fits,
                "selection": selection,
                "winner": selection.label(),
            })),
            Format::Csv => {
                for f in &fits {
                    let (rank, d) = delta(f.distribution).unzip();
                    writeln!(
                        out,
                        "{k},{},\"{}\",{},{},{},{},{},{},{}",
                        f.distribution,
                        param_string(f),
                        format_float(f.ln_likelihood),
                        format_float(f.aic),
                        format_float(f.bic),
                        format_option(d),
                        rank.flatten().map_or("NA".into(), |r| r.to_string()),
                        status_string(f),
                        selection.label()
                    )
                    .map_err(io_out)?;
                }
            }
            Format::Text => {
                writeln!(
                    out,
                    "level {k}: n = {}, selected {}",
                    dist.sample.len(),
                    selection.label()
                )
                .map_err(io_out)?;
                writeln!(
                    out,
                    "{:<12} {:<32} {:>12} {:>12} {:>12} {:>10}  status",
                    "family", "params", "lnL", "AIC", "BIC", "dAIC"
                )
                .map_err(io_out)?;
                for f in &fits {
                    let (_, d) = delta(f.distribution).unzip();
                    writeln!(
                        out,
                        "{:<12} {:<32} {:>12} {:>12} {:>12} {:>10}  {}",
                        f.distribution.name(),
                        param_string(f),
                        fixed3(f.ln_likelihood),
                        fixed3(f.aic),
                        fixed3(f.bic),
                        d.map_or("NA".into(), |v| format!("{v:.4}")),
                        status_string(f)
                    )
                    .map_err(io_out)?;
                }
                writeln!(out, "verdict: {}", selection.verdict.description()).map_err(io_out)?;
            }
        }
    }
    if args.format == Format::Json {
        let value = serde_json::json!({ "metadata": meta, "levels": json_levels });
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        )
        .map_err(io_out)?;
    }
    Ok(())
}

fn fixed3(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.3}")
    } else {
        "NA".into()
    }
}

fn param_string(f: &crate::stats::FitResult) -> String {
    let mut parts: Vec<String> = f
        .distribution
        .param_names()
        .iter()
        .zip(&f.params)
        .map(|(n, v)| format!("{n}={v:.4}"))
        .collect();
    if let Some(loc) = f.location {
        parts.push(format!("loc={loc}"));
    }
    if f.shift != 0.0 {
        parts.push(format!("shift={}", f.shift));
    }
    parts.join(" ")
}

fn status_string(f: &crate::stats::FitResult) -> String {
    match &f.status {
        crate::stats::FitStatus::Ok => "ok".into(),
        crate::stats::FitStatus::Insufficient => "NA (sample too small)".into(),
        crate::stats::FitStatus::Failed(reason) => format!("failed: {reason}"),
    }
}

fn cmd_correlate(args: &CorrelateArgs, out: &mut dyn Write) -> Result<()> {
    let mut config = RunConfig::new(&args.input);
    config.measures = measures_or(&args.measures, &DEFAULT_MEASURES);
    config.dense_limit = args.spectral.dense_limit;
    config.series_fallback = args.spectral.series_fallback;
    config.format = Some(args.format);
    config.validate()?;
    let c = load(&config)?;
    let meta = config.metadata("correlate");
    let table = correlation_table(
        &c,
        &config.measures,
        &config.levels,
        &config.centrality_options(),
    )?;

    let key = |(k, m): (usize, Measure)| format!("L{k}:{m}");
    match args.format {
        Format::Json => {
            let value = serde_json::json!({ "metadata": meta, "table": table });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&value).expect("serializable")
            )
            .map_err(io_out)?;
        }
        Format::Csv => {
            meta.write_comment(out)?;
            writeln!(out, "a,b,spearman").map_err(io_out)?;
            for i in 0..table.keys.len() {
                for j in i + 1..table.keys.len() {
                    writeln!(
                        out,
                        "{},{},{}",
                        key(table.keys[i]),
                        key(table.keys[j]),
                        format_option(table.matrix[i][j])
                    )
                    .map_err(io_out)?;
                }
            }
            for avg in &table.averages {
                writeln!(
                    out,
                    "<L{}>,<L{}>,{}",
                    avg.a,
                    avg.b,
                    format_option(avg.value)
                )
                .map_err(io_out)?;
            }
        }
        Format::Text => {
            let names: Vec<String> = table.keys.iter().map(|&k| key(k)).collect();
            write!(out, "{:<16}", "").map_err(io_out)?;
            for n in &names {
                write!(out, " {n:>16}").map_err(io_out)?;
            }
            writeln!(out).map_err(io_out)?;
            for (i, n) in names.iter().enumerate() {
                write!(out, "{n:<16}").map_err(io_out)?;
                for v in &table.matrix[i] {
                    let s = v.map_or("NA".into(), |x| format!("{x:.4}"));
                    write!(out, " {s:>16}").map_err(io_out)?;
                }
                writeln!(out).map_err(io_out)?;
            }
            for avg in &table.averages {
                let s = avg.value.map_or("NA".into(), |x| format!("{x:.4}"));
                writeln!(out, "<r L{} L{}> = {s}", avg.a, avg.b).map_err(io_out)?;
            }
        }
    }
    Ok(())
}

fn cmd_essential(args: &EssentialArgs, out: &mut dyn Write) -> Result<()> {
    let mut config = RunConfig::new(&args.input);
    config.measures = measures_or(&args.measures, &DEFAULT_MEASURES);
    config.seed = Some(args.seed);
    config.dense_limit = args.spectral.dense_limit;
    config.series_fallback = args.spectral.series_fallback;
    config.output = args.output.clone();
    config.validate()?;
    let c = load(&config)?;
    let ann = EssentialityAnnotation::load(&args.annotation, c.graph())?;
    let opts = config.centrality_options();
    let meta = config.metadata("essential");

    let mut curves: Vec<(Option<usize>, DetectionCurve)> = Vec::new();
    for &k in &config.levels {
        let adj = combined_adjacency(&c, k)?;
        for &m in &config.measures {
            let v = compute(&adj, m, &opts)?;
            let node_scores = if k == 0 { v } else { project_to_nodes(&c, &v)? };
            let ranking = rank_nodes(&node_scores.scores);
            curves.push((
                Some(k),
                detection_curve(m.name(), &ranking, &ann, &args.grid)?,
            ));
        }
    }
    curves.push((
        None,
        random_baseline(&ann, &args.grid, args.seed, args.repetitions)?,
    ));

    let mut file;
    let w: &mut dyn Write = match &args.output {
        Some(path) => {
            file = create(path)?;
            &mut file
        }
        None => out,
    };
    meta.write_comment(w)?;
    writeln!(w, "measure,level,x,top,count,percentage").map_err(io_out)?;
    for (level, curve) in &curves {
        let level = level.map_or("NA".to_string(), |k| k.to_string());
        for p in &curve.points {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                curve.tag,
                level,
                format_float(p.x),
                p.top,
                format_float(p.count),
                format_float(p.percentage)
            )
            .map_err(io_out)?;
        }
    }
    w.flush().map_err(io_out)
}

fn family(args: &GenerateArgs) -> Result<Family> {
    let p = &args.params;
    let pair = || match p[..] {
        [a, b] => Ok((a, b)),
        _ => Err(Error::InvalidArgument(format!(
            "{:?} takes two parameters `l k`, got {}",
            args.family,
            p.len()
        ))),
    };
    Ok(match args.family {
        FamilyName::S => {
            let (count, level) = pair()?;
            Family::Star { count, level }
        }
        FamilyName::P => {
            let (count, level) = pair()?;
            Family::Path { count, level }
        }
        FamilyName::T => Family::Branched {
            level: p[0],
            arms: p[1..].to_vec(),
        },
    })
}

fn cmd_generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<()> {
    let fam = family(args)?;
    let graph = fam.graph()?;
    #[derive(Serialize)]
    struct GenerateConfig<'a> {
        family: String,
        params: &'a [usize],
    }
    let config = GenerateConfig {
        family: format!("{:?}", args.family),
        params: &args.params,
    };
    let meta = RunMetadata::new("generate", &config, None);
    let mut file;
    let w: &mut dyn Write = match &args.output {
        Some(path) => {
            file = create(path)?;
            &mut file
        }
        None => out,
    };
    meta.write_comment(w)?;
    graph.write_edge_list(&mut *w).map_err(io_out)?;
    w.flush().map_err(io_out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<String> {
        let cli = Cli::try_parse_from(std::iter::once("simcent").chain(args.iter().copied()))
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let mut buf = Vec::new();
        run(cli, &mut buf)?;
        Ok(String::from_utf8(buf).unwrap())
    }

    fn fixture(dir: &Path) -> PathBuf {
        let path = dir.join("net.txt");
        let mut w = File::create(&path).unwrap();
        crate::families::reference_network()
            .write_edge_list(&mut w)
            .unwrap();
        path
    }

    #[test]
    fn build_reports_counts() {
        let dir = tempfile::tempdir().unwrap();
        let path = fixture(dir.path());
        let text = run_args(&["build", path.to_str().unwrap()]).unwrap();
        assert!(text.contains("simplices:    9 / 14 / 7 / 1"), "{text}");
        assert!(text.contains("interactions: 14 / "), "{text}");
    }

    #[test]
    fn depth_error_maps_to_four() {
        let dir = tempfile::tempdir().unwrap();
        let path = fixture(dir.path());
        let err = run_args(&[
            "centrality",
            path.to_str().unwrap(),
            "-K",
            "2",
            "--level",
            "2",
        ])
        .unwrap_err();
        assert_eq!(err.exit_code(), 4);
    }

    #[test]
    fn generate_parameters_are_checked() {
        assert!(run_args(&["generate", "S", "3"]).is_err());
        let text = run_args(&["generate", "P", "3", "1"]).unwrap();
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 3);
    }
}
