//! Feature-weighted K-Means: AWK, WK-Means, EW-KM, IK-P, iMWK-Means and
//! FWSA on a shared clustering engine, plus the data preparation, scoring
//! and sweep harness used to compare them.

pub mod algorithms;
pub mod bench;
pub mod dataset;
pub mod engine;
pub mod error;
pub mod evaluation;
pub mod metrics;

pub use algorithms::{
    run_awk, run_ewkm, run_fwsa, run_ikp, run_imwk, run_wkmeans, AlgorithmId, Dispersion, Smoothing, WkmMode,
};
pub use dataset::{Dataset, Feature, FeatureKind, Labels, Schema, Value};
pub use engine::{run_kmeans, Centroids, Partition, RunResult, StopRule, WeightMatrix};
pub use error::{Error, Result};
pub use evaluation::{ari, contingency, Contingency};
pub use metrics::Exponent;
