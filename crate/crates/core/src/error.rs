use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    /// A cell or header in an input file could not be interpreted.
    #[error("parse error at row {row}, column '{column}': {message}")]
    Parse {
        row: usize,
        column: String,
        message: String,
    },

    #[error("invalid schema: {0}")]
    Schema(String),

    #[error("no entities")]
    NoEntities,

    #[error("no informative features")]
    NoInformativeFeatures,

    #[error("feature '{0}' has zero range; run drop_zero_range first")]
    ZeroRange(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("empty cluster {0}")]
    EmptyCluster(usize),

    #[error("unable to find {0} clusters")]
    UnsustainableClusters(usize),

    #[error("anomalous init yielded {found} < {wanted}")]
    AnomalousInit { found: usize, wanted: usize },

    #[error("non-finite distance for entity {entity} and cluster {cluster}")]
    NonFinite { entity: usize, cluster: usize },

    #[error("feature '{0}' has zero within-cluster separation")]
    ZeroSeparation(String),

    #[error("dataset has no ground-truth labels")]
    NoLabels,

    #[error("every run failed: {0}")]
    AllRunsFailed(String),

    #[error("{0}")]
    Infeasible(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures of the algorithm itself, as opposed to bad input.
    pub fn is_runtime_failure(&self) -> bool {
        matches!(
            self,
            Error::EmptyCluster(_)
                | Error::UnsustainableClusters(_)
                | Error::AnomalousInit { .. }
                | Error::NonFinite { .. }
                | Error::ZeroSeparation(_)
                | Error::AllRunsFailed(_)
        )
    }
}
