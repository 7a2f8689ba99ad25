//! Parameter sweeps with restarts, synthetic batches and report tables.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithms::AlgorithmId;
use crate::dataset::{generate_synthetic, prepare, Dataset, PrepOptions, SyntheticConfig};
use crate::engine::{Partition, StopRule};
use crate::error::{Error, Result};
use crate::evaluation::ari;

/// Inclusive arithmetic grid of parameter values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(min: f64, max: f64, step: f64) -> Result<Self> {
        let g = Grid { min, max, step };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.min <= self.max && self.min.is_finite() && self.max.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "grid needs step > 0 and min <= max, got {}..{} step {}",
                self.min, self.max, self.step
            )));
        }
        Ok(())
    }

    /// `min + i * step` up to `max`, cleaned of accumulated float error.
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.max - self.min) / self.step + 1e-9).floor() as usize + 1;
        (0..n)
            .map(|i| ((self.min + i as f64 * self.step) * 1e9).round() / 1e9)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub dataset: String,
    pub algorithm: AlgorithmId,
    /// `None` for algorithms without a parameter.
    pub grid: Option<Grid>,
    pub restarts: usize,
    pub master_seed: u64,
    pub stop: StopRule,
    /// Worker threads; 0 uses every core.
    pub jobs: usize,
}

impl SweepConfig {
    /// Default grid and 100 restarts.
    pub fn new(algorithm: AlgorithmId, master_seed: u64) -> Self {
        SweepConfig {
            dataset: "dataset".into(),
            algorithm,
            grid: algorithm.default_grid().map(|(min, max, step)| Grid { min, max, step }),
            restarts: 100,
            master_seed,
            stop: StopRule::default(),
            jobs: 0,
        }
    }

    /// Restarts actually performed: deterministic algorithms run once.
    pub fn effective_restarts(&self) -> usize {
        if self.algorithm.is_deterministic() {
            1
        } else {
            self.restarts
        }
    }

    fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidParameter("restarts must be at least 1".into()));
        }
        match (self.algorithm.param_name(), &self.grid) {
            (Some(_), Some(g)) => g.validate(),
            (Some(p), None) => Err(Error::InvalidParameter(format!(
                "{} needs a grid over {p}",
                self.algorithm
            ))),
            (None, Some(_)) => Err(Error::InvalidParameter(format!(
                "{} takes no parameter",
                self.algorithm
            ))),
            (None, None) => Ok(()),
        }
    }

    fn params(&self) -> Vec<Option<f64>> {
        match &self.grid {
            Some(g) => g.points().into_iter().map(Some).collect(),
            None => vec![None],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub param: Option<f64>,
    /// Statistics over successful runs; absent when every run failed.
    pub mean: Option<f64>,
    pub std: Option<f64>,
    pub max: Option<f64>,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    pub param: Option<f64>,
    pub mean: f64,
    pub std: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub dataset: String,
    pub algorithm: String,
    pub grid: Option<Grid>,
    pub restarts: usize,
    pub master_seed: u64,
    pub rows: Vec<SweepRow>,
    pub optimum: Optimum,
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of one run, a function of its coordinates only.
pub fn run_seed(master_seed: u64, grid_index: usize, run_index: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(master_seed) ^ grid_index as u64) ^ run_index as u64)
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start {jobs} worker threads: {e}")))
}

/// Mean, population standard deviation and maximum.
fn summary(values: &[f64]) -> Option<(f64, f64, f64)> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Some((mean, var.sqrt(), max))
}

/// Runs the algorithm `restarts` times at every grid point and scores each
/// run against the dataset labels. K is the number of label classes. Runs
/// that fail at run time are counted, not fatal.
pub fn sweep(d: &Dataset, cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let labels = d.labels().ok_or(Error::NoLabels)?;
    let truth = Partition::from_labels(labels.ids.clone());
    let k = labels.n_classes();
    let params = cfg.params();
    let restarts = cfg.effective_restarts();
    for p in &params {
        cfg.algorithm.validate_param(*p)?;
    }

    let tasks: Vec<(usize, usize)> = (0..params.len())
        .flat_map(|g| (0..restarts).map(move |r| (g, r)))
        .collect();
    let run = |&(g, r): &(usize, usize)| -> Result<f64> {
        let seed = run_seed(cfg.master_seed, g, r);
        let result = cfg.algorithm.run(d, k, params[g], seed, &cfg.stop)?;
        ari(&result.partition, &truth)
    };
    let outcomes: Vec<Result<f64>> = thread_pool(cfg.jobs)?.install(|| tasks.par_iter().map(run).collect());

    let mut rows = Vec::with_capacity(params.len());
    let mut outcomes = outcomes.into_iter();
    for &param in &params {
        let mut scores = Vec::with_capacity(restarts);
        let mut failures = 0;
        for outcome in outcomes.by_ref().take(restarts) {
            match outcome {
                Ok(x) => scores.push(x),
                Err(e) if e.is_runtime_failure() => failures += 1,
                Err(e) => return Err(e),
            }
        }
        let stats = summary(&scores);
        rows.push(SweepRow {
            param,
            mean: stats.map(|s| s.0),
            std: stats.map(|s| s.1),
            max: stats.map(|s| s.2),
            failures,
        });
    }

    // Rows ascend in the parameter, so the first maximal mean wins ties.
    let best = rows
        .iter()
        .filter(|r| r.mean.is_some())
        .fold(None::<&SweepRow>, |best, r| match best {
            Some(b) if b.mean >= r.mean => Some(b),
            _ => Some(r),
        })
        .ok_or_else(|| Error::AllRunsFailed(format!("{} on {}", cfg.algorithm, cfg.dataset)))?;
    let optimum = Optimum {
        param: best.param,
        mean: best.mean.unwrap(),
        std: best.std.unwrap(),
        max: best.max.unwrap(),
    };

    Ok(SweepReport {
        dataset: cfg.dataset.clone(),
        algorithm: cfg.algorithm.to_string(),
        grid: cfg.grid,
        restarts,
        master_seed: cfg.master_seed,
        rows,
        optimum,
    })
}

/// Mean and population standard deviation of a column of values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spread {
    pub mean: f64,
    pub std: f64,
}

impl Spread {
    fn of(values: &[f64]) -> Option<Spread> {
        summary(values).map(|(mean, std, _)| Spread { mean, std })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchRow {
    pub config: String,
    pub datasets: usize,
    /// Best mean ARI of each dataset, aggregated.
    pub mean: Spread,
    /// Maximum ARI at each dataset's optimum, aggregated.
    pub max: Spread,
    /// Selected parameter, aggregated; absent for parameterless algorithms.
    pub param: Option<Spread>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchReport {
    pub algorithm: String,
    pub grid: Option<Grid>,
    pub restarts: usize,
    pub seed: u64,
    pub noise: bool,
    pub rows: Vec<BatchRow>,
}

/// Generates `per_config` datasets for every configuration, standardizes
/// them (optionally doubling the features with noise), sweeps each and
/// aggregates the per-dataset optima.
pub fn batch_synthetic(
    configs: &[SyntheticConfig],
    per_config: usize,
    cfg: &SweepConfig,
    seed: u64,
    noise: bool,
) -> Result<BatchReport> {
    if per_config == 0 {
        return Err(Error::InvalidParameter("per-config count must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(configs.len());
    for (c, config) in configs.iter().enumerate() {
        let mut best = Vec::with_capacity(per_config);
        let mut maxima = Vec::with_capacity(per_config);
        let mut params = Vec::with_capacity(per_config);
        for j in 0..per_config {
            let data_seed = run_seed(seed, c, j);
            let d = synthetic_dataset(config, data_seed, noise)?;
            let report = sweep(
                &d,
                &SweepConfig {
                    dataset: format!("{}#{j}", config.name()),
                    master_seed: splitmix64(data_seed),
                    ..cfg.clone()
                },
            )?;
            best.push(report.optimum.mean);
            maxima.push(report.optimum.max);
            params.extend(report.optimum.param);
        }
        rows.push(BatchRow {
            config: config.name(),
            datasets: per_config,
            mean: Spread::of(&best).unwrap(),
            max: Spread::of(&maxima).unwrap(),
            param: Spread::of(&params),
        });
    }
    Ok(BatchReport {
        algorithm: cfg.algorithm.to_string(),
        grid: cfg.grid,
        restarts: cfg.effective_restarts(),
        seed,
        noise,
        rows,
    })
}

/// One synthetic dataset as the batch uses it: standardized, with noise
/// features when asked.
pub fn synthetic_dataset(config: &SyntheticConfig, seed: u64, noise: bool) -> Result<Dataset> {
    let raw = generate_synthetic(config, seed)?.dataset;
    prepare(
        &raw,
        PrepOptions {
            standardize: true,
            expand: false,
            noise_seed: noise.then(|| splitmix64(seed ^ 0x006E_6F69_7365)),
        },
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Report {
    Sweep(SweepReport),
    Batch(BatchReport),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Markdown,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "markdown" | "md" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidParameter(format!("unknown format '{other}'"))),
        }
    }
}

/// Rounds half away from zero at two decimals, working on the shortest
/// decimal representation so that e.g. 0.805 gives "0.81".
pub fn format2(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let text = format!("{}", x.abs());
    let (int, frac) = text.split_once('.').unwrap_or((&text, ""));
    let mut digits: Vec<u8> = int
        .bytes()
        .chain(frac.bytes().chain(std::iter::repeat(b'0')).take(2))
        .collect();
    if frac.as_bytes().get(2).is_some_and(|&d| d >= b'5') {
        let mut i = digits.len();
        loop {
            if i == 0 {
                digits.insert(0, b'1');
                break;
            }
            i -= 1;
            if digits[i] == b'9' {
                digits[i] = b'0';
            } else {
                digits[i] += 1;
                break;
            }
        }
    }
    let split = digits.len() - 2;
    let body = format!(
        "{}.{}",
        std::str::from_utf8(&digits[..split]).unwrap(),
        std::str::from_utf8(&digits[split..]).unwrap()
    );
    let zero = digits.iter().all(|&d| d == b'0');
    if x < 0.0 && !zero {
        format!("-{body}")
    } else {
        body
    }
}

fn cell(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), format2)
}

fn table(r: &Report) -> (Vec<&'static str>, Vec<Vec<String>>) {
    match r {
        Report::Sweep(s) => {
            let header = vec!["param", "mean", "std", "max", "failures"];
            let rows = s
                .rows
                .iter()
                .map(|row| {
                    vec![
                        cell(row.param),
                        cell(row.mean),
                        cell(row.std),
                        cell(row.max),
                        row.failures.to_string(),
                    ]
                })
                .collect();
            (header, rows)
        }
        Report::Batch(b) => {
            let header = vec![
                "config",
                "datasets",
                "mean",
                "std",
                "max",
                "max_std",
                "param",
                "param_std",
            ];
            let rows = b
                .rows
                .iter()
                .map(|row| {
                    vec![
                        row.config.clone(),
                        row.datasets.to_string(),
                        format2(row.mean.mean),
                        format2(row.mean.std),
                        format2(row.max.mean),
                        format2(row.max.std),
                        cell(row.param.map(|p| p.mean)),
                        cell(row.param.map(|p| p.std)),
                    ]
                })
                .collect();
            (header, rows)
        }
    }
}

/// Deterministic text rendering. Tables show two decimals; JSON keeps full
/// precision.
pub fn render_report(r: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(r)?;
            text.push('\n');
            Ok(text)
        }
        Format::Csv => {
            let (header, rows) = table(r);
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            w.write_record(&header)?;
            for row in rows {
                w.write_record(&row)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
        }
        Format::Markdown => {
            let (header, rows) = table(r);
            let mut out = String::new();
            let _ = writeln!(out, "| {} |", header.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
            for row in rows {
                let _ = writeln!(out, "| {} |", row.join(" | "));
            }
            Ok(out)
        }
    }
}
