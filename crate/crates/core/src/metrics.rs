//! Per-feature dissimilarities and the matching centre computations.

use serde::{Deserialize, Serialize};

use crate::dataset::FeatureKind;
use crate::error::{Error, Result};

const GOLDEN_TOLERANCE: f64 = 1e-9;

/// Minkowski exponent, `p >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Exponent(f64);

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_finite() && p >= 1.0 {
            Ok(Exponent(p))
        } else {
            Err(Error::InvalidParameter(format!(
                "Minkowski exponent must be >= 1, got {p}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Exponent {
    type Error = Error;

    fn try_from(p: f64) -> Result<Self> {
        Exponent::new(p)
    }
}

impl From<Exponent> for f64 {
    fn from(p: Exponent) -> f64 {
        p.0
    }
}

/// `|a - b|^p`.
#[inline]
pub fn minkowski_component(a: f64, b: f64, p: Exponent) -> f64 {
    abs_pow((a - b).abs(), p.0)
}

#[inline]
pub(crate) fn abs_pow(x: f64, p: f64) -> f64 {
    if p == 2.0 {
        x * x
    } else if p == 1.0 {
        x
    } else {
        x.powf(p)
    }
}

/// 0 when the categories agree, 1 otherwise.
#[inline]
pub fn simple_match(a: usize, b: usize) -> f64 {
    if a == b {
        0.0
    } else {
        1.0
    }
}

/// The value minimising `sum_i |values_i - c|^p`.
///
/// `p = 1` gives the lower median and `p = 2` the mean; any other exponent
/// is handled by golden-section search over `[min, max]`, where the
/// objective is convex.
pub fn minkowski_center(values: &[f64], p: Exponent) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::InvalidParameter("Minkowski centre of an empty set".into()));
    }
    let p = p.0;
    if p == 2.0 {
        return Ok(values.iter().sum::<f64>() / values.len() as f64);
    }
    if p == 1.0 {
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        return Ok(sorted[(sorted.len() - 1) / 2]);
    }
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
        (lo.min(x), hi.max(x))
    });
    let objective = |c: f64| values.iter().map(|&x| abs_pow((x - c).abs(), p)).sum::<f64>();
    Ok(golden_section(objective, lo, hi))
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > GOLDEN_TOLERANCE {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (a + b);
    // The bracket ends are candidates too: the minimiser may sit on them.
    [(mid, f(mid)), (x1, f1), (x2, f2)]
        .into_iter()
        .min_by(|l, r| l.1.total_cmp(&r.1))
        .unwrap()
        .0
}

/// In-cluster frequency of each category of a feature, indexed like the
/// feature's category list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryWeights {
    weights: Vec<f64>,
}

impl CategoryWeights {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|w| !(0.0..=1.0).contains(w)) || (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(
                "category weights must lie in [0, 1] and sum to 1".into(),
            ));
        }
        Ok(CategoryWeights { weights })
    }

    /// Weight concentrated on one category.
    pub fn pure(category: usize, n_categories: usize) -> Self {
        let mut weights = vec![0.0; n_categories.max(category + 1)];
        weights[category] = 1.0;
        CategoryWeights { weights }
    }

    pub fn get(&self, category: usize) -> f64 {
        self.weights.get(category).copied().unwrap_or(0.0)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }
}

/// Frequency of every category among the values of one cluster.
pub fn distributed_centroid(cluster_values: &[usize], feature: &FeatureKind) -> Result<CategoryWeights> {
    let n_categories = feature
        .categories()
        .ok_or_else(|| Error::InvalidParameter("distributed centroid of a numeric feature".into()))?
        .len();
    if cluster_values.is_empty() {
        return Err(Error::InvalidParameter(
            "distributed centroid of an empty cluster".into(),
        ));
    }
    let mut counts = vec![0usize; n_categories];
    for &c in cluster_values {
        if c >= n_categories {
            return Err(Error::InvalidParameter(format!("category index {c} out of range")));
        }
        counts[c] += 1;
    }
    let share = 1.0 / cluster_values.len() as f64;
    Ok(CategoryWeights {
        weights: counts.into_iter().map(|c| c as f64 * share).collect(),
    })
}

/// Total weight of the categories that differ from `value`.
#[inline]
pub fn ikp_categorical_distance(value: usize, cw: &CategoryWeights) -> f64 {
    let others: f64 = cw
        .weights
        .iter()
        .enumerate()
        .filter(|&(c, _)| c != value)
        .map(|(_, w)| w)
        .sum();
    others.min(1.0)
}
