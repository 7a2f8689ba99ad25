//! Spherical Gaussian benchmark data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{Dataset, Feature, Labels, Schema, Value};
use crate::error::{Error, Result};

const MAX_CARDINALITY_DRAWS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticConfig {
    pub n_entities: usize,
    pub n_features: usize,
    pub n_clusters: usize,
    #[serde(default = "default_min_cluster_size")]
    pub min_cluster_size: usize,
    /// Inclusive interval the per-cluster variance is drawn from.
    #[serde(default = "default_sigma_sq_range")]
    pub sigma_sq_range: (f64, f64),
}

fn default_min_cluster_size() -> usize {
    20
}

fn default_sigma_sq_range() -> (f64, f64) {
    (0.5, 1.5)
}

impl SyntheticConfig {
    pub fn new(n_entities: usize, n_features: usize, n_clusters: usize) -> Self {
        SyntheticConfig {
            n_entities,
            n_features,
            n_clusters,
            min_cluster_size: default_min_cluster_size(),
            sigma_sq_range: default_sigma_sq_range(),
        }
    }

    /// Canonical `NxM-K` name.
    pub fn name(&self) -> String {
        format!("{}x{}-{}", self.n_entities, self.n_features, self.n_clusters)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_clusters == 0 || self.n_features == 0 || self.n_entities == 0 {
            return Err(Error::InvalidParameter(
                "entities, features and clusters must all be positive".into(),
            ));
        }
        if self.n_clusters * self.min_cluster_size > self.n_entities {
            return Err(Error::Infeasible(format!(
                "{} clusters of at least {} entities do not fit in {}",
                self.n_clusters, self.min_cluster_size, self.n_entities
            )));
        }
        let (lo, hi) = self.sigma_sq_range;
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "variance range [{lo}, {hi}] must be positive and ordered"
            )));
        }
        Ok(())
    }
}

/// Parses an `NxM-K` name such as `500x10-3`.
pub fn named_config(name: &str) -> Result<SyntheticConfig> {
    let bad = || Error::InvalidParameter(format!("'{name}' is not of the form NxM-K"));
    let (size, k) = name.trim().split_once('-').ok_or_else(bad)?;
    let (n, m) = size.split_once('x').ok_or_else(bad)?;
    let parse = |s: &str| s.parse::<usize>().map_err(|_| bad());
    let cfg = SyntheticConfig::new(parse(n)?, parse(m)?, parse(k)?);
    cfg.validate()?;
    Ok(cfg)
}

/// Everything drawn while generating a dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub config: SyntheticConfig,
    pub sigma_sq: Vec<f64>,
    pub centroids: Vec<Vec<f64>>,
    pub cardinalities: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticData {
    pub dataset: Dataset,
    pub provenance: Provenance,
}

/// Draws a labelled dataset of spherical Gaussian clusters. Entities are
/// stored cluster by cluster.
pub fn generate_synthetic(cfg: &SyntheticConfig, seed: u64) -> Result<SyntheticData> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = cfg.n_clusters;
    let m = cfg.n_features;
    let (lo, hi) = cfg.sigma_sq_range;

    let sigma_sq: Vec<f64> = (0..k).map(|_| rng.random_range(lo..=hi)).collect();
    let centroids: Vec<Vec<f64>> = (0..k)
        .map(|_| (0..m).map(|_| StandardNormal.sample(&mut rng)).collect())
        .collect();
    let cardinalities = draw_cardinalities(cfg, &mut rng)?;

    let mut values = Vec::with_capacity(cfg.n_entities * m);
    let mut ids = Vec::with_capacity(cfg.n_entities);
    for (cluster, &size) in cardinalities.iter().enumerate() {
        let sd = sigma_sq[cluster].sqrt();
        for _ in 0..size {
            for centre in &centroids[cluster] {
                let z: f64 = StandardNormal.sample(&mut rng);
                values.push(Value::Num(centre + sd * z));
            }
            ids.push(cluster);
        }
    }
    let features = (0..m).map(|v| Feature::numeric(format!("x{v}"))).collect();
    let schema = Schema::new(features, Some("class".into()))?;
    let labels = Labels {
        ids,
        names: (0..k).map(|c| format!("cluster_{c}")).collect(),
    };
    let dataset = Dataset::from_flat(schema, values, cfg.n_entities, Some(labels))?;
    Ok(SyntheticData {
        dataset,
        provenance: Provenance {
            seed,
            config: cfg.clone(),
            sigma_sq,
            centroids,
            cardinalities,
        },
    })
}

/// Uniform random split of `n_entities` into `n_clusters` parts: draw K
/// uniform weights, apportion by largest remainder, redraw until every part
/// reaches the minimum size.
fn draw_cardinalities(cfg: &SyntheticConfig, rng: &mut impl Rng) -> Result<Vec<usize>> {
    let n = cfg.n_entities;
    for _ in 0..MAX_CARDINALITY_DRAWS {
        let weights: Vec<f64> = (0..cfg.n_clusters).map(|_| rng.random::<f64>()).collect();
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            continue;
        }
        let quotas: Vec<f64> = weights.iter().map(|w| w / total * n as f64).collect();
        let mut sizes: Vec<usize> = quotas.iter().map(|q| q.floor() as usize).collect();
        let assigned: usize = sizes.iter().sum();
        let mut order: Vec<usize> = (0..sizes.len()).collect();
        order.sort_by(|&a, &b| {
            let ra = quotas[a] - quotas[a].floor();
            let rb = quotas[b] - quotas[b].floor();
            rb.total_cmp(&ra).then(a.cmp(&b))
        });
        for &c in order.iter().take(n.saturating_sub(assigned)) {
            sizes[c] += 1;
        }
        if sizes.iter().all(|&s| s >= cfg.min_cluster_size) {
            return Ok(sizes);
        }
    }
    Err(Error::Infeasible(format!(
        "no cardinality split with every cluster >= {} found in {MAX_CARDINALITY_DRAWS} draws",
        cfg.min_cluster_size
    )))
}
