//! Feature-weighting algorithms as weight-update rules plugged into the
//! engine loop.

use std::fmt;
use std::str::FromStr;

use crate::dataset::Dataset;
use crate::engine::{
    cell_distance, init_anomalous, init_random, iterate, run_kmeans, weighted_cost, Centroids, DistanceSpec,
    FixedWeights, Kernel, Partition, RunResult, StopRule, WeightMatrix, WeightRule,
};
use crate::error::{Error, Result};
use crate::metrics::Exponent;

/// Summed per-feature dissimilarity, one row per cluster (or a single row
/// for shared weights).
#[derive(Debug, Clone, PartialEq)]
pub struct Dispersion {
    rows: Vec<Vec<f64>>,
}

impl Dispersion {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let m = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || m == 0 || rows.iter().any(|r| r.len() != m) {
            return Err(Error::Shape(
                "dispersion rows must be non-empty and equally long".into(),
            ));
        }
        if rows.iter().flatten().any(|&x| !(x.is_finite() && x >= 0.0)) {
            return Err(Error::InvalidParameter(
                "dispersions must be finite and non-negative".into(),
            ));
        }
        Ok(Dispersion { rows })
    }

    /// A single shared row.
    pub fn shared(row: Vec<f64>) -> Result<Self> {
        Dispersion::new(vec![row])
    }

    /// `sum_{i in S_k} kernel(y_iv, c_kv)` for every cluster and feature.
    pub fn per_cluster(d: &Dataset, part: &Partition, c: &Centroids, kernel: Kernel) -> Self {
        let m = d.n_features();
        let mut rows = vec![vec![0.0; m]; part.k()];
        for (i, &k) in part.assignments().iter().enumerate() {
            let centre = c.row(k);
            for ((acc, &y), ck) in rows[k].iter_mut().zip(d.row(i)).zip(centre) {
                *acc += cell_distance(kernel, y, ck);
            }
        }
        Dispersion { rows }
    }

    /// Per-cluster rows summed into one.
    pub fn pooled(&self) -> Self {
        let m = self.rows[0].len();
        let row = (0..m).map(|v| self.rows.iter().map(|r| r[v]).sum()).collect();
        Dispersion { rows: vec![row] }
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn total(&self) -> f64 {
        self.rows.iter().flatten().sum()
    }

    fn map(&self, f: impl Fn(usize, f64) -> f64) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(k, r)| r.iter().map(|&x| f(k, x)).collect())
            .collect();
        Dispersion { rows }
    }

    fn into_weights(self, k: usize, row: impl Fn(&[f64]) -> Vec<f64>) -> WeightMatrix {
        let rows: Vec<Vec<f64>> = self.rows.iter().map(|r| row(r)).collect();
        if rows.len() == 1 {
            WeightMatrix::shared(rows.into_iter().next().unwrap(), k)
        } else {
            WeightMatrix::per_cluster(rows)
        }
    }
}

/// `w_v = 1 / sum_j (D_v / D_j)^(1/(beta-1))` over positive dispersions,
/// evaluated as a normalised power of `D` for numerical safety.
fn inverse_power_weights(d: &[f64], beta: f64) -> Vec<f64> {
    let e = 1.0 / (beta - 1.0);
    let logs: Vec<Option<f64>> = d.iter().map(|&x| (x > 0.0).then(|| -e * x.ln())).collect();
    let top = logs.iter().flatten().cloned().fold(f64::NEG_INFINITY, f64::max);
    let raw: Vec<f64> = logs.iter().map(|l| l.map_or(0.0, |l| (l - top).exp())).collect();
    normalised(raw)
}

fn normalised(raw: Vec<f64>) -> Vec<f64> {
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

fn uniform(m: usize) -> Vec<f64> {
    vec![1.0 / m as f64; m]
}

/// AWK rule: zero-dispersion features share the whole weight; otherwise the
/// inverse-power formula.
pub fn awk_update_weights(disp: &Dispersion, beta: f64, k: usize) -> Result<WeightMatrix> {
    if !(beta > 1.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!("AWK needs beta > 1, got {beta}")));
    }
    Ok(disp.clone().into_weights(k, |d| {
        let zeros = d.iter().filter(|&&x| x == 0.0).count();
        if zeros > 0 {
            d.iter()
                .map(|&x| if x == 0.0 { 1.0 / zeros as f64 } else { 0.0 })
                .collect()
        } else {
            inverse_power_weights(d, beta)
        }
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WkmMode {
    Shared,
    #[default]
    ClusterDependent,
}

/// WK-Means rule: zero-dispersion features get no weight, the rest follow
/// the inverse-power formula. At `beta = 1` all weight goes to the feature
/// of least positive dispersion. A row with no positive dispersion stays
/// uniform.
pub fn wkm_update_weights(disp: &Dispersion, beta: f64, k: usize) -> Result<WeightMatrix> {
    if !(beta >= 1.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!("WK-Means needs beta >= 1, got {beta}")));
    }
    Ok(disp.clone().into_weights(k, |d| {
        if d.iter().all(|&x| x == 0.0) {
            return uniform(d.len());
        }
        if beta == 1.0 {
            let best = d
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0.0)
                .fold(None::<(usize, f64)>, |best, (v, &x)| match best {
                    Some((_, b)) if b <= x => best,
                    _ => Some((v, x)),
                })
                .unwrap()
                .0;
            let mut w = vec![0.0; d.len()];
            w[best] = 1.0;
            return w;
        }
        inverse_power_weights(d, beta)
    }))
}

/// EW-KM rule: softmax of `-D / gamma` per cluster.
pub fn ewkm_update_weights(disp: &Dispersion, gamma: f64, k: usize) -> Result<WeightMatrix> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidParameter(format!("EW-KM needs gamma > 0, got {gamma}")));
    }
    Ok(disp.clone().into_weights(k, |d| {
        let least = d.iter().cloned().fold(f64::INFINITY, f64::min);
        normalised(d.iter().map(|&x| (-(x - least) / gamma).exp()).collect())
    }))
}

/// iMWK-Means rule; the same closed form as WK-Means with `p` for `beta`.
pub fn imwk_update_weights(disp: &Dispersion, p: Exponent, k: usize) -> Result<WeightMatrix> {
    if p.value() <= 1.0 {
        return Err(Error::InvalidParameter("iMWK-Means weights need p > 1".into()));
    }
    wkm_update_weights(disp, p.value(), k)
}

/// FWSA self-adjustment: `w <- (w + r / sum(r)) / 2` with `r_v = b_v / a_v`.
/// When no feature separates the clusters (`sum(r) = 0`) the weights are
/// left as they are.
pub fn fwsa_update_weights(a: &[f64], b: &[f64], w_prev: &WeightMatrix) -> Result<WeightMatrix> {
    if a.len() != b.len() || a.len() != w_prev.n_features() {
        return Err(Error::Shape("separation vectors and weights disagree in length".into()));
    }
    if let Some(v) = a.iter().position(|&x| x <= 0.0) {
        return Err(Error::ZeroSeparation(v.to_string()));
    }
    let ratios: Vec<f64> = a.iter().zip(b).map(|(a, b)| b / a).collect();
    let total: f64 = ratios.iter().sum();
    if total <= 0.0 {
        return Ok(w_prev.clone());
    }
    let k = w_prev.n_clusters();
    let rows: Vec<Vec<f64>> = w_prev
        .stored_rows()
        .iter()
        .map(|w| w.iter().zip(&ratios).map(|(w, r)| 0.5 * (w + r / total)).collect())
        .collect();
    Ok(if rows.len() == 1 {
        WeightMatrix::shared(rows.into_iter().next().unwrap(), k)
    } else {
        WeightMatrix::per_cluster(rows)
    })
}

/// Where the smoothing constant added to every dispersion comes from.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Smoothing {
    /// The mean per-cell dissimilarity at the first weight update, held
    /// fixed for the rest of the run.
    #[default]
    Average,
    /// The mean per-cell dissimilarity, recomputed at every weight update.
    /// The criterion is then no longer guaranteed to decrease.
    Recomputed,
    Fixed(f64),
}

impl Smoothing {
    fn resolve(self, disp: &Dispersion, d: &Dataset) -> f64 {
        match self {
            Smoothing::Average | Smoothing::Recomputed => disp.total() / (d.n_entities() * d.n_features()) as f64,
            Smoothing::Fixed(c) => c,
        }
    }
}

fn require_numeric(d: &Dataset, what: &str) -> Result<()> {
    if d.is_all_numeric() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{what} needs numeric features; expand categorical ones first"
        )))
    }
}

struct Awk {
    beta: f64,
}

impl WeightRule for Awk {
    fn spec(&self) -> DistanceSpec {
        DistanceSpec::weighted_euclidean(self.beta)
    }

    fn update(&mut self, d: &Dataset, part: &Partition, c: &Centroids, _: &WeightMatrix) -> Result<WeightMatrix> {
        let disp = Dispersion::per_cluster(d, part, c, Kernel::SquaredEuclidean);
        awk_update_weights(&disp, self.beta, part.k())
    }
}

/// Weighted K-Means with per-cluster weights on mixed data (squared
/// distance on numeric features, simple matching on categorical ones).
pub fn run_awk(d: &Dataset, k: usize, beta: f64, seed: u64, stop: &StopRule) -> Result<RunResult> {
    if !(beta > 1.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!("AWK needs beta > 1, got {beta}")));
    }
    let init = init_random(d, k, seed)?;
    let weights = WeightMatrix::uniform(k, d.n_features(), false);
    let r = iterate(d, init, weights, &mut Awk { beta }, stop)?;
    Ok(r.labelled("awk", &[("beta", beta)], Some(seed)))
}

struct Wkm {
    beta: f64,
    mode: WkmMode,
    smoothing: Smoothing,
    c: Option<f64>,
}

impl WeightRule for Wkm {
    fn spec(&self) -> DistanceSpec {
        DistanceSpec {
            smoothing: self.c.unwrap_or(0.0),
            ..DistanceSpec::weighted_euclidean(self.beta)
        }
    }

    fn update(&mut self, d: &Dataset, part: &Partition, c: &Centroids, _: &WeightMatrix) -> Result<WeightMatrix> {
        let disp = Dispersion::per_cluster(d, part, c, Kernel::SquaredEuclidean);
        match self.mode {
            WkmMode::Shared => wkm_update_weights(&disp.pooled(), self.beta, part.k()),
            WkmMode::ClusterDependent => {
                let smoothing = self.smoothing;
                if smoothing == Smoothing::Recomputed {
                    self.c = None;
                }
                let c = *self.c.get_or_insert_with(|| smoothing.resolve(&disp, d));
                let sizes = part.sizes();
                let smoothed = disp.map(|k, x| x + c * sizes[k] as f64);
                wkm_update_weights(&smoothed, self.beta, part.k())
            }
        }
    }
}

/// WK-Means with the default smoothing.
pub fn run_wkmeans(d: &Dataset, k: usize, beta: f64, mode: WkmMode, seed: u64, stop: &StopRule) -> Result<RunResult> {
    run_wkmeans_smoothed(d, k, beta, mode, Smoothing::default(), seed, stop)
}

/// WK-Means. `beta = 0` is plain K-Means; otherwise `beta >= 1`. In
/// cluster-dependent mode every per-cell dissimilarity is offset by the
/// smoothing constant, both in the distance and in the dispersions.
pub fn run_wkmeans_smoothed(
    d: &Dataset,
    k: usize,
    beta: f64,
    mode: WkmMode,
    smoothing: Smoothing,
    seed: u64,
    stop: &StopRule,
) -> Result<RunResult> {
    require_numeric(d, "WK-Means")?;
    if let Smoothing::Fixed(c) = smoothing {
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameter(format!("smoothing must be >= 0, got {c}")));
        }
    }
    let init = init_random(d, k, seed)?;
    let shared = mode == WkmMode::Shared;
    let weights = WeightMatrix::uniform(k, d.n_features(), shared);
    let r = if beta == 0.0 {
        iterate(d, init, weights, &mut FixedWeights(DistanceSpec::euclidean()), stop)?
    } else if beta >= 1.0 && beta.is_finite() {
        let mut rule = Wkm {
            beta,
            mode,
            smoothing,
            c: None,
        };
        iterate(d, init, weights, &mut rule, stop)?
    } else {
        return Err(Error::InvalidParameter(format!(
            "WK-Means needs beta = 0 or beta >= 1, got {beta}"
        )));
    };
    Ok(r.labelled("wkm", &[("beta", beta)], Some(seed)))
}

struct Ewkm {
    gamma: f64,
}

impl WeightRule for Ewkm {
    fn spec(&self) -> DistanceSpec {
        DistanceSpec::weighted_euclidean(1.0)
    }

    fn update(&mut self, d: &Dataset, part: &Partition, c: &Centroids, _: &WeightMatrix) -> Result<WeightMatrix> {
        let disp = Dispersion::per_cluster(d, part, c, Kernel::SquaredEuclidean);
        ewkm_update_weights(&disp, self.gamma, part.k())
    }

    fn criterion(&self, d: &Dataset, part: &Partition, c: &Centroids, w: &WeightMatrix) -> f64 {
        let entropy: f64 = (0..part.k())
            .flat_map(|k| w.row(k).iter())
            .filter(|&&x| x > 0.0)
            .map(|&x| x * x.ln())
            .sum();
        weighted_cost(d, part, c, w, &self.spec()) + self.gamma * entropy
    }
}

/// Entropy-weighted K-Means.
pub fn run_ewkm(d: &Dataset, k: usize, gamma: f64, seed: u64, stop: &StopRule) -> Result<RunResult> {
    require_numeric(d, "EW-KM")?;
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidParameter(format!("EW-KM needs gamma > 0, got {gamma}")));
    }
    let init = init_random(d, k, seed)?;
    let weights = WeightMatrix::uniform(k, d.n_features(), false);
    let r = iterate(d, init, weights, &mut Ewkm { gamma }, stop)?;
    Ok(r.labelled("ewkm", &[("gamma", gamma)], Some(seed)))
}

struct Ikp {
    beta: f64,
}

impl WeightRule for Ikp {
    fn spec(&self) -> DistanceSpec {
        DistanceSpec::ikp(self.beta)
    }

    fn update(&mut self, d: &Dataset, part: &Partition, c: &Centroids, _: &WeightMatrix) -> Result<WeightMatrix> {
        let disp = Dispersion::per_cluster(d, part, c, Kernel::Ikp).pooled();
        wkm_update_weights(&disp, self.beta, part.k())
    }
}

/// Weighted K-prototypes: Manhattan distance with mean centres on numeric
/// features, distributed centroids on categorical ones, shared weights.
pub fn run_ikp(d: &Dataset, k: usize, beta: f64, seed: u64, stop: &StopRule) -> Result<RunResult> {
    if !(beta > 1.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!("IK-P needs beta > 1, got {beta}")));
    }
    let init = init_random(d, k, seed)?;
    let weights = WeightMatrix::uniform(k, d.n_features(), true);
    let r = iterate(d, init, weights, &mut Ikp { beta }, stop)?;
    Ok(r.labelled("ikp", &[("beta", beta)], Some(seed)))
}

struct Imwk {
    p: Exponent,
    smoothing: Smoothing,
    c: Option<f64>,
}

impl Imwk {
    fn smoothed(&self, d: &Dataset, part: &Partition, c: &Centroids) -> Dispersion {
        let disp = Dispersion::per_cluster(d, part, c, Kernel::Minkowski(self.p));
        let smoothing = self.c.unwrap_or_else(|| self.smoothing.resolve(&disp, d));
        disp.map(|_, x| x + smoothing)
    }
}

impl WeightRule for Imwk {
    fn spec(&self) -> DistanceSpec {
        DistanceSpec::minkowski(self.p)
    }

    fn update(&mut self, d: &Dataset, part: &Partition, c: &Centroids, _: &WeightMatrix) -> Result<WeightMatrix> {
        if self.c.is_none() {
            let disp = Dispersion::per_cluster(d, part, c, Kernel::Minkowski(self.p));
            self.c = Some(self.smoothing.resolve(&disp, d));
        }
        imwk_update_weights(&self.smoothed(d, part, c), self.p, part.k())
    }

    fn criterion(&self, d: &Dataset, part: &Partition, c: &Centroids, w: &WeightMatrix) -> f64 {
        let p = self.p.value();
        self.smoothed(d, part, c)
            .rows()
            .iter()
            .enumerate()
            .map(|(k, row)| row.iter().zip(w.row(k)).map(|(x, w)| w.powf(p) * x).sum::<f64>())
            .sum()
    }
}

/// Minkowski weighted K-Means from anomalous-pattern centres. Deterministic.
pub fn run_imwk(d: &Dataset, k: usize, p: Exponent, stop: &StopRule) -> Result<RunResult> {
    run_imwk_smoothed(d, k, p, Smoothing::default(), stop)
}

pub fn run_imwk_smoothed(
    d: &Dataset,
    k: usize,
    p: Exponent,
    smoothing: Smoothing,
    stop: &StopRule,
) -> Result<RunResult> {
    require_numeric(d, "iMWK-Means")?;
    check_imwk_exponent(p.value())?;
    let init = init_anomalous(d, k, p)?;
    let weights = WeightMatrix::uniform(k, d.n_features(), false);
    let mut rule = Imwk { p, smoothing, c: None };
    let r = iterate(d, init, weights, &mut rule, stop)?;
    Ok(r.labelled("imwk", &[("p", p.value())], None))
}

fn check_imwk_exponent(p: f64) -> Result<()> {
    if p > 1.0 && p <= 5.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("iMWK-Means needs 1 < p <= 5, got {p}")))
    }
}

struct Fwsa;

impl WeightRule for Fwsa {
    fn spec(&self) -> DistanceSpec {
        DistanceSpec::weighted_euclidean(1.0)
    }

    fn update(&mut self, d: &Dataset, part: &Partition, c: &Centroids, w: &WeightMatrix) -> Result<WeightMatrix> {
        let within = Dispersion::per_cluster(d, part, c, Kernel::SquaredEuclidean).pooled();
        let centres = c.numeric_rows().expect("numeric data has numeric centres");
        let sizes = part.sizes();
        let between: Vec<f64> = (0..d.n_features())
            .map(|v| {
                let column = d.numeric_column(v).unwrap();
                let grand = column.iter().sum::<f64>() / column.len() as f64;
                centres
                    .iter()
                    .zip(&sizes)
                    .map(|(ck, &n)| n as f64 * (ck[v] - grand).powi(2))
                    .sum()
            })
            .collect();
        fwsa_update_weights(&within.rows()[0], &between, w)
    }
}

/// K-Means with separation-driven shared feature weights; no parameter.
pub fn run_fwsa(d: &Dataset, k: usize, seed: u64, stop: &StopRule) -> Result<RunResult> {
    require_numeric(d, "FWSA")?;
    let init = init_random(d, k, seed)?;
    let weights = WeightMatrix::uniform(k, d.n_features(), true);
    let r = iterate(d, init, weights, &mut Fwsa, stop)?;
    Ok(r.labelled("fwsa", &[], Some(seed)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmId {
    KMeans,
    Awk,
    Wkm,
    Ewkm,
    Ikp,
    Imwk,
    Fwsa,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 7] = [
        AlgorithmId::KMeans,
        AlgorithmId::Awk,
        AlgorithmId::Wkm,
        AlgorithmId::Ewkm,
        AlgorithmId::Ikp,
        AlgorithmId::Imwk,
        AlgorithmId::Fwsa,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmId::KMeans => "kmeans",
            AlgorithmId::Awk => "awk",
            AlgorithmId::Wkm => "wkm",
            AlgorithmId::Ewkm => "ewkm",
            AlgorithmId::Ikp => "ikp",
            AlgorithmId::Imwk => "imwk",
            AlgorithmId::Fwsa => "fwsa",
        }
    }

    /// Name of the tuning parameter, if the algorithm has one.
    pub fn param_name(self) -> Option<&'static str> {
        match self {
            AlgorithmId::KMeans | AlgorithmId::Fwsa => None,
            AlgorithmId::Awk | AlgorithmId::Wkm | AlgorithmId::Ikp => Some("beta"),
            AlgorithmId::Ewkm => Some("gamma"),
            AlgorithmId::Imwk => Some("p"),
        }
    }

    pub fn is_deterministic(self) -> bool {
        self == AlgorithmId::Imwk
    }

    /// Default sweep grid as `(min, max, step)`.
    pub fn default_grid(self) -> Option<(f64, f64, f64)> {
        match self {
            AlgorithmId::KMeans | AlgorithmId::Fwsa => None,
            AlgorithmId::Ewkm => Some((0.1, 5.0, 0.1)),
            _ => Some((1.1, 5.0, 0.1)),
        }
    }

    /// Checks presence and domain of the parameter.
    pub fn validate_param(self, param: Option<f64>) -> Result<()> {
        let name = self.as_str();
        match (self.param_name(), param) {
            (None, Some(_)) => Err(Error::InvalidParameter(format!("{name} takes no parameter"))),
            (None, None) => Ok(()),
            (Some(p), None) => Err(Error::InvalidParameter(format!("{name} needs a {p} parameter"))),
            (Some(_), Some(x)) => {
                let ok = match self {
                    AlgorithmId::Awk | AlgorithmId::Ikp => x > 1.0 && x.is_finite(),
                    AlgorithmId::Wkm => x == 0.0 || (x >= 1.0 && x.is_finite()),
                    AlgorithmId::Ewkm => x > 0.0 && x.is_finite(),
                    AlgorithmId::Imwk => x > 1.0 && x <= 5.0,
                    AlgorithmId::KMeans | AlgorithmId::Fwsa => unreachable!(),
                };
                if ok {
                    Ok(())
                } else {
                    let domain = match self {
                        AlgorithmId::Wkm => "beta = 0 or beta >= 1",
                        AlgorithmId::Ewkm => "gamma > 0",
                        AlgorithmId::Imwk => "1 < p <= 5",
                        _ => "beta > 1",
                    };
                    Err(Error::InvalidParameter(format!("{name} needs {domain}, got {x}")))
                }
            }
        }
    }

    /// Runs the algorithm with its defaults (cluster-dependent WK-Means).
    /// The seed is ignored by deterministic algorithms.
    pub fn run(self, d: &Dataset, k: usize, param: Option<f64>, seed: u64, stop: &StopRule) -> Result<RunResult> {
        self.validate_param(param)?;
        let x = param.unwrap_or(f64::NAN);
        match self {
            AlgorithmId::KMeans => run_kmeans(d, k, seed, stop),
            AlgorithmId::Awk => run_awk(d, k, x, seed, stop),
            AlgorithmId::Wkm => run_wkmeans(d, k, x, WkmMode::default(), seed, stop),
            AlgorithmId::Ewkm => run_ewkm(d, k, x, seed, stop),
            AlgorithmId::Ikp => run_ikp(d, k, x, seed, stop),
            AlgorithmId::Imwk => run_imwk(d, k, Exponent::new(x)?, stop),
            AlgorithmId::Fwsa => run_fwsa(d, k, seed, stop),
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlgorithmId::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm '{s}'")))
    }
}
