//! `fwkm` command-line front end.
//!
//! Exit codes: 0 on success, 2 for usage or validation errors, 3 when an
//! algorithm fails at runtime.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use fwkm::bench::{batch_synthetic, render_report, run_seed, sweep, Format, Grid, Report, SweepConfig};
use fwkm::dataset::{
    generate_synthetic, named_config, prepare, read_dataset, write_dataset, PrepOptions, SyntheticConfig,
};
use fwkm::engine::StopRule;
use fwkm::{ari, AlgorithmId, Dataset, Partition};

#[derive(Parser)]
#[command(name = "fwkm", version, about = "Feature-weighted K-Means experiments")]
struct Cli {
    /// Worker threads for sweeps (0 = all cores). Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate labelled Gaussian-cluster datasets.
    Generate(GenerateArgs),
    /// Drop constant features, standardize, expand categories, add noise.
    Prep(PrepArgs),
    /// Single clustering run, printed as JSON.
    Run(RunArgs),
    /// Parameter sweep with restarts on one dataset.
    Sweep(SweepArgs),
    /// Sweeps over freshly generated synthetic datasets.
    BenchSynthetic(BenchArgs),
    /// Re-render a JSON report in another format.
    Report(ReportArgs),
}

#[derive(Args)]
struct DataArgs {
    /// CSV file.
    #[arg(long)]
    data: PathBuf,
    /// JSON schema; defaults to the CSV path with `.schema.json`.
    #[arg(long)]
    schema: Option<PathBuf>,
}

impl DataArgs {
    fn load(&self) -> anyhow::Result<Dataset> {
        let schema = self.schema.clone().unwrap_or_else(|| schema_path_for(&self.data));
        read_dataset(&self.data, &schema).with_context(|| format!("loading {}", self.data.display()))
    }
}

#[derive(Args)]
struct GenerateArgs {
    /// `NxM-K` name, inline JSON, or a JSON file.
    #[arg(long)]
    config: String,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, env = "FWKM_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PrepArgs {
    #[command(flatten)]
    input: DataArgs,
    #[arg(long)]
    standardize: bool,
    #[arg(long)]
    expand: bool,
    /// Append one uniform noise feature per original feature.
    #[arg(long)]
    noise: bool,
    #[arg(long, env = "FWKM_SEED", default_value_t = 0)]
    seed: u64,
    /// Output CSV; the schema goes next to it.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    algo: AlgorithmId,
    #[arg(long)]
    param: Option<f64>,
    /// Number of clusters; defaults to the number of label classes.
    #[arg(long)]
    k: Option<usize>,
    #[command(flatten)]
    input: DataArgs,
    #[arg(long, env = "FWKM_SEED")]
    seed: Option<u64>,
    #[arg(long)]
    max_iterations: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long)]
    min: Option<f64>,
    #[arg(long)]
    max: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
}

impl GridArgs {
    /// The algorithm's default grid with any bound overridden.
    fn resolve(&self, algo: AlgorithmId) -> anyhow::Result<Option<Grid>> {
        let given = self.min.is_some() || self.max.is_some() || self.step.is_some();
        match algo.default_grid() {
            None if given => bail!(fwkm::Error::InvalidParameter(format!("{algo} takes no parameter"))),
            None => Ok(None),
            Some((min, max, step)) => Ok(Some(Grid::new(
                self.min.unwrap_or(min),
                self.max.unwrap_or(max),
                self.step.unwrap_or(step),
            )?)),
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    algo: AlgorithmId,
    #[command(flatten)]
    input: DataArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value_t = 100)]
    restarts: usize,
    #[arg(long, env = "FWKM_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    algo: AlgorithmId,
    /// Comma-separated `NxM-K` names.
    #[arg(long, value_delimiter = ',', required = true)]
    configs: Vec<String>,
    #[arg(long, default_value_t = 20)]
    per_config: usize,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value_t = 100)]
    restarts: usize,
    #[arg(long, env = "FWKM_SEED", default_value_t = 0)]
    seed: u64,
    /// Double the features with noise before clustering.
    #[arg(long)]
    noise: bool,
    #[arg(long, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// JSON report written by `sweep` or `bench-synthetic`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "markdown")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn schema_path_for(csv: &Path) -> PathBuf {
    csv.with_extension("schema.json")
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn synthetic_config(spec: &str) -> anyhow::Result<SyntheticConfig> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else if Path::new(spec).is_file() {
        fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?
    } else {
        return Ok(named_config(spec)?);
    };
    let cfg: SyntheticConfig = serde_json::from_str(&text).context("parsing synthetic config")?;
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_generate(a: &GenerateArgs) -> anyhow::Result<()> {
    let cfg = synthetic_config(&a.config)?;
    if a.count == 0 {
        bail!(fwkm::Error::InvalidParameter("count must be at least 1".into()));
    }
    fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    let name = cfg.name();
    for j in 0..a.count {
        let g = generate_synthetic(&cfg, run_seed(a.seed, 0, j))?;
        let stem = a.out.join(format!("{name}_{j:03}"));
        write_dataset(
            &g.dataset,
            stem.with_extension("csv"),
            stem.with_extension("schema.json"),
        )?;
        let prov = serde_json::to_string_pretty(&g.provenance)?;
        fs::write(stem.with_extension("provenance.json"), prov + "\n")?;
    }
    Ok(())
}

fn cmd_prep(a: &PrepArgs) -> anyhow::Result<()> {
    let d = a.input.load()?;
    let out = prepare(
        &d,
        PrepOptions {
            standardize: a.standardize,
            expand: a.expand,
            noise_seed: a.noise.then_some(a.seed),
        },
    )?;
    write_dataset(&out, &a.out, schema_path_for(&a.out))?;
    Ok(())
}

fn clusters(d: &Dataset, k: Option<usize>) -> anyhow::Result<usize> {
    match (k, d.labels()) {
        (Some(k), _) => Ok(k),
        (None, Some(l)) => Ok(l.n_classes()),
        (None, None) => bail!(fwkm::Error::InvalidParameter(
            "--k is required for unlabelled data".into()
        )),
    }
}

fn cmd_run(a: &RunArgs) -> anyhow::Result<()> {
    a.algo.validate_param(a.param)?;
    let d = a.input.load()?;
    let k = clusters(&d, a.k)?;
    if a.algo.is_deterministic() && a.seed.is_some() {
        eprintln!("warning: {} is deterministic, seed ignored", a.algo);
    }
    let mut stop = StopRule::default();
    if let Some(n) = a.max_iterations {
        stop.max_iterations = n;
    }
    let result = a.algo.run(&d, k, a.param, a.seed.unwrap_or(0), &stop)?;
    let mut json = serde_json::to_value(&result)?;
    if let Some(labels) = d.labels() {
        let truth = Partition::from_labels(labels.ids.clone());
        json["ari"] = serde_json::json!(ari(&result.partition, &truth)?);
    }
    emit(&(serde_json::to_string_pretty(&json)? + "\n"), a.out.as_deref())
}

fn cmd_sweep(a: &SweepArgs, jobs: usize) -> anyhow::Result<()> {
    let d = a.input.load()?;
    let dataset = a
        .input
        .data
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let cfg = SweepConfig {
        dataset,
        grid: a.grid.resolve(a.algo)?,
        restarts: a.restarts,
        jobs,
        ..SweepConfig::new(a.algo, a.seed)
    };
    let report = Report::Sweep(sweep(&d, &cfg)?);
    emit(&render_report(&report, a.format)?, a.out.as_deref())
}

fn cmd_bench(a: &BenchArgs, jobs: usize) -> anyhow::Result<()> {
    let configs = a
        .configs
        .iter()
        .map(|c| named_config(c))
        .collect::<fwkm::Result<Vec<_>>>()?;
    let cfg = SweepConfig {
        grid: a.grid.resolve(a.algo)?,
        restarts: a.restarts,
        jobs,
        ..SweepConfig::new(a.algo, a.seed)
    };
    let report = Report::Batch(batch_synthetic(&configs, a.per_config, &cfg, a.seed, a.noise)?);
    emit(&render_report(&report, a.format)?, a.out.as_deref())
}

fn cmd_report(a: &ReportArgs) -> anyhow::Result<()> {
    let text = fs::read_to_string(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let report: Report = serde_json::from_str(&text).context("parsing report")?;
    emit(&render_report(&report, a.format)?, a.out.as_deref())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<fwkm::Error>() {
        Some(e) if e.is_runtime_failure() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Prep(a) => cmd_prep(a),
        Command::Run(a) => cmd_run(a),
        Command::Sweep(a) => cmd_sweep(a, cli.jobs),
        Command::BenchSynthetic(a) => cmd_bench(a, cli.jobs),
        Command::Report(a) => cmd_report(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
