//! Column-wise preprocessing: zero-range removal, range standardization,
//! binary expansion of categorical features and noise injection.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Dataset, Feature, FeatureKind, Schema, Value};
use crate::error::{Error, Result};

/// Removes numeric features whose max equals their min and categorical
/// features with a single observed category.
pub fn drop_zero_range(d: &Dataset) -> Result<Dataset> {
    let keep: Vec<usize> = (0..d.n_features())
        .filter(|&v| match &d.schema().feature(v).kind {
            FeatureKind::Numeric => {
                let (lo, hi) = min_max(d, v);
                hi > lo
            }
            FeatureKind::Categorical(_) => observed_categories(d, v).len() > 1,
        })
        .collect();
    if keep.is_empty() {
        return Err(Error::NoInformativeFeatures);
    }
    if keep.len() == d.n_features() {
        return Ok(d.clone());
    }
    d.select_features(&keep)
}

/// Maps every numeric cell to `(y - mean) / range` column by column.
/// Categorical columns are left untouched.
pub fn standardize_numeric(d: &Dataset) -> Result<Dataset> {
    let mask: Vec<bool> = d.schema().features().iter().map(|f| f.kind.is_numeric()).collect();
    standardize_columns(d, &mask)
}

pub(crate) fn standardize_columns(d: &Dataset, mask: &[bool]) -> Result<Dataset> {
    let n = d.n_entities();
    let m = d.n_features();
    let mut shift = vec![0.0; m];
    let mut scale = vec![1.0; m];
    for v in 0..m {
        if !mask[v] || !d.schema().feature(v).kind.is_numeric() {
            continue;
        }
        let (lo, hi) = min_max(d, v);
        let range = hi - lo;
        if range <= 0.0 {
            return Err(Error::ZeroRange(d.schema().feature(v).name.clone()));
        }
        let sum: f64 = (0..n).map(|i| d.value(i, v).as_num().unwrap()).sum();
        shift[v] = sum / n as f64;
        scale[v] = range;
    }
    let (schema, mut values, n, labels) = d.clone().into_parts();
    for (idx, cell) in values.iter_mut().enumerate() {
        let v = idx % m;
        if let Value::Num(x) = cell {
            if mask[v] {
                *x = (*x - shift[v]) / scale[v];
            }
        }
    }
    Dataset::from_flat(schema, values, n, labels)
}

/// Replaces each categorical feature with one centred indicator column per
/// observed category (lexicographic order). A column holds `1 - f` for the
/// entities carrying its category and `-f` elsewhere, `f` being the
/// category's frequency.
pub fn expand_categorical(d: &Dataset) -> Result<Dataset> {
    if d.is_all_numeric() {
        return Ok(d.clone());
    }
    let n = d.n_entities();
    // Each output column is either a copy of a numeric input column or an
    // indicator of (input column, category).
    enum Source {
        Copy(usize),
        Indicator(usize, usize, f64),
    }
    let mut features = Vec::new();
    let mut sources = Vec::new();
    for (v, feature) in d.schema().features().iter().enumerate() {
        match &feature.kind {
            FeatureKind::Numeric => {
                features.push(feature.clone());
                sources.push(Source::Copy(v));
            }
            FeatureKind::Categorical(cats) => {
                let mut counts = vec![0usize; cats.len()];
                for i in 0..n {
                    counts[d.value(i, v).as_cat().unwrap()] += 1;
                }
                let mut observed: Vec<usize> = (0..cats.len()).filter(|&c| counts[c] > 0).collect();
                observed.sort_by(|&a, &b| cats[a].cmp(&cats[b]));
                for c in observed {
                    features.push(Feature {
                        name: format!("{}={}", feature.name, cats[c]),
                        kind: FeatureKind::Numeric,
                        noise: feature.noise,
                    });
                    sources.push(Source::Indicator(v, c, counts[c] as f64 / n as f64));
                }
            }
        }
    }
    let schema = Schema::new(features, d.schema().label().map(str::to_string))?;
    let mut values = Vec::with_capacity(n * sources.len());
    for i in 0..n {
        for source in &sources {
            values.push(match *source {
                Source::Copy(v) => d.value(i, v),
                Source::Indicator(v, c, freq) => {
                    let hit = if d.value(i, v) == Value::Cat(c) { 1.0 } else { 0.0 };
                    Value::Num(hit - freq)
                }
            });
        }
    }
    Dataset::from_flat(schema, values, n, d.labels().cloned())
}

/// Appends one noise feature per original feature: uniform reals over
/// `[min, max]` of a numeric source, uniform draws from the observed
/// categories of a categorical source. Noise columns are flagged in the
/// schema; original cells are untouched.
pub fn inject_noise(d: &Dataset, seed: u64) -> Result<Dataset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = d.n_entities();
    let m = d.n_features();
    let mut features = d.schema().features().to_vec();
    let mut columns: Vec<Vec<Value>> = Vec::with_capacity(m);
    for v in 0..m {
        let source = d.schema().feature(v);
        let column = match &source.kind {
            FeatureKind::Numeric => {
                let (lo, hi) = min_max(d, v);
                (0..n)
                    .map(|_| Value::Num(if hi > lo { rng.random_range(lo..=hi) } else { lo }))
                    .collect()
            }
            FeatureKind::Categorical(_) => {
                let observed = observed_categories(d, v);
                (0..n)
                    .map(|_| Value::Cat(observed[rng.random_range(0..observed.len())]))
                    .collect()
            }
        };
        columns.push(column);
        features.push(Feature {
            name: unique_name(&features, &format!("noise_{}", source.name)),
            kind: source.kind.clone(),
            noise: true,
        });
    }
    let schema = Schema::new(features, d.schema().label().map(str::to_string))?;
    let mut values = Vec::with_capacity(n * 2 * m);
    for i in 0..n {
        values.extend_from_slice(d.row(i));
        values.extend(columns.iter().map(|c| c[i]));
    }
    Dataset::from_flat(schema, values, n, d.labels().cloned())
}

/// Flags for [`prepare`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PrepOptions {
    pub standardize: bool,
    pub expand: bool,
    /// Inject noise features with this seed.
    pub noise_seed: Option<u64>,
}

/// The experimental preprocessing pipeline: zero-range removal, then
/// standardization, noise injection (noise columns standardized the same
/// way as the originals) and categorical expansion, each as requested.
pub fn prepare(d: &Dataset, opts: PrepOptions) -> Result<Dataset> {
    let mut out = drop_zero_range(d)?;
    if opts.standardize {
        out = standardize_numeric(&out)?;
    }
    if let Some(seed) = opts.noise_seed {
        out = inject_noise(&out, seed)?;
        if opts.standardize {
            let mask = out.schema().noise_mask();
            out = standardize_columns(&out, &mask)?;
        }
    }
    if opts.expand {
        out = expand_categorical(&out)?;
    }
    Ok(out)
}

fn min_max(d: &Dataset, v: usize) -> (f64, f64) {
    (0..d.n_entities())
        .map(|i| d.value(i, v).as_num().unwrap())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)))
}

fn observed_categories(d: &Dataset, v: usize) -> Vec<usize> {
    let mut seen: Vec<usize> = (0..d.n_entities()).map(|i| d.value(i, v).as_cat().unwrap()).collect();
    seen.sort_unstable();
    seen.dedup();
    seen
}

fn unique_name(features: &[Feature], base: &str) -> String {
    let taken = |name: &str| features.iter().any(|f| f.name == name);
    if !taken(base) {
        return base.to_string();
    }
    (2..).map(|k| format!("{base}_{k}")).find(|n| !taken(n)).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Labels;
    use proptest::prelude::*;

    fn numeric(columns: &[&[f64]]) -> Dataset {
        let features = (0..columns.len()).map(|v| Feature::numeric(format!("f{v}"))).collect();
        let schema = Schema::new(features, None).unwrap();
        let n = columns[0].len();
        let rows = (0..n)
            .map(|i| columns.iter().map(|c| Value::Num(c[i])).collect())
            .collect();
        Dataset::new(schema, rows, None).unwrap()
    }

    fn categorical(cells: &[&str]) -> Dataset {
        let mut cats: Vec<String> = cells.iter().map(|s| s.to_string()).collect();
        cats.sort();
        cats.dedup();
        let rows = cells
            .iter()
            .map(|s| vec![Value::Cat(cats.iter().position(|c| c == s).unwrap())])
            .collect();
        let schema = Schema::new(vec![Feature::categorical("c", cats)], None).unwrap();
        Dataset::new(schema, rows, None).unwrap()
    }

    fn column(d: &Dataset, v: usize) -> Vec<f64> {
        d.numeric_column(v).unwrap()
    }

    #[test]
    fn drop_zero_range_removes_constant_columns() {
        let d = numeric(&[&[5.0, 5.0, 5.0], &[1.0, 2.0, 3.0]]);
        let out = drop_zero_range(&d).unwrap();
        assert_eq!(out.n_features(), 1);
        assert_eq!(out.schema().feature(0).name, "f1");

        let varied = numeric(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert_eq!(drop_zero_range(&varied).unwrap(), varied);

        let constant = numeric(&[&[5.0, 5.0]]);
        assert!(matches!(drop_zero_range(&constant), Err(Error::NoInformativeFeatures)));

        let single_cat = categorical(&["a", "a"]);
        assert!(matches!(
            drop_zero_range(&single_cat),
            Err(Error::NoInformativeFeatures)
        ));
    }

    #[test]
    fn standardize_by_range() {
        let d = numeric(&[&[0.0, 5.0, 10.0]]);
        let out = standardize_numeric(&d).unwrap();
        assert_eq!(column(&out, 0), vec![-0.5, 0.0, 0.5]);

        let fixed = numeric(&[&[-0.5, 0.0, 0.5]]);
        assert_eq!(standardize_numeric(&fixed).unwrap(), fixed);

        let flat = numeric(&[&[2.0, 2.0]]);
        let err = standardize_numeric(&flat).unwrap_err();
        assert!(err.to_string().contains("drop_zero_range"));
    }

    #[test]
    fn expand_centres_indicators() {
        let d = categorical(&["a", "a", "b"]);
        let out = expand_categorical(&d).unwrap();
        assert!(out.is_all_numeric());
        assert_eq!(out.n_features(), 2);
        let a = column(&out, 0);
        let b = column(&out, 1);
        let third = 1.0 / 3.0;
        for (got, want) in a.iter().zip([third, third, -2.0 * third]) {
            assert!((got - want).abs() < 1e-15);
        }
        for (got, want) in b.iter().zip([-third, -third, 2.0 * third]) {
            assert!((got - want).abs() < 1e-15);
        }
        assert_eq!(out.schema().feature(0).name, "c=a");

        let num = numeric(&[&[1.0, 2.0]]);
        assert_eq!(expand_categorical(&num).unwrap(), num);
    }

    #[test]
    fn expand_uses_observed_categories_in_lexicographic_order() {
        let schema = Schema::new(
            vec![Feature::categorical("c", vec!["z".into(), "m".into(), "a".into()])],
            None,
        )
        .unwrap();
        let d = Dataset::new(schema, vec![vec![Value::Cat(0)], vec![Value::Cat(2)]], None).unwrap();
        let out = expand_categorical(&d).unwrap();
        let names: Vec<_> = out.schema().features().iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names, vec!["c=a", "c=z"]);
    }

    #[test]
    fn noise_doubles_features_within_domain() {
        let d = numeric(&[
            &[-0.5, 0.0, 0.5, 0.1],
            &[1.0, 2.0, 3.0, 4.0],
            &[0.0, 1.0, 0.0, 1.0],
            &[9.0, 8.0, 7.0, 6.0],
        ]);
        let out = inject_noise(&d, 7).unwrap();
        assert_eq!(out.n_features(), 8);
        assert_eq!(out.schema().noise_mask().iter().filter(|&&b| b).count(), 4);
        let noise = column(&out, 4);
        assert!(noise.iter().all(|&x| (-0.5..=0.5).contains(&x)));
        assert_eq!(inject_noise(&d, 7).unwrap(), out);
        assert_ne!(inject_noise(&d, 8).unwrap(), out);
    }

    #[test]
    fn categorical_noise_draws_observed_categories() {
        let schema = Schema::new(
            vec![Feature::categorical("c", vec!["a".into(), "b".into(), "unused".into()])],
            None,
        )
        .unwrap();
        let rows = (0..50).map(|i| vec![Value::Cat(i % 2)]).collect();
        let d = Dataset::new(schema, rows, None).unwrap();
        let out = inject_noise(&d, 1).unwrap();
        let noise = out.categorical_column(1).unwrap();
        assert!(noise.iter().all(|&c| c < 2));
        assert!(noise.contains(&0) && noise.contains(&1));
    }

    #[test]
    fn prepare_pipeline() {
        let d = numeric(&[&[3.0, 3.0, 3.0], &[1.0, 4.0, 10.0]])
            .with_labels(Some(Labels::from_names(&["x", "y", "y"])))
            .unwrap();
        let plain = prepare(&d, PrepOptions::default()).unwrap();
        assert_eq!(plain.n_features(), 1);
        let full = prepare(
            &d,
            PrepOptions {
                standardize: true,
                expand: true,
                noise_seed: Some(3),
            },
        )
        .unwrap();
        assert_eq!(full.n_features(), 2);
        for v in 0..2 {
            let c = column(&full, v);
            let mean: f64 = c.iter().sum::<f64>() / 3.0;
            let range = c.iter().cloned().fold(f64::MIN, f64::max) - c.iter().cloned().fold(f64::MAX, f64::min);
            assert!(mean.abs() < 1e-12);
            assert!((range - 1.0).abs() < 1e-12);
        }
        assert!(full.labels().is_some());
    }

    proptest! {
        #[test]
        fn standardize_is_idempotent(cells in prop::collection::vec(-1e3f64..1e3, 2..40)) {
            prop_assume!(cells.iter().cloned().fold(f64::MIN, f64::max) > cells.iter().cloned().fold(f64::MAX, f64::min));
            let d = numeric(&[&cells]);
            let once = standardize_numeric(&d).unwrap();
            let twice = standardize_numeric(&once).unwrap();
            let c1 = column(&once, 0);
            let mean: f64 = c1.iter().sum::<f64>() / c1.len() as f64;
            prop_assert!(mean.abs() < 1e-12);
            for (a, b) in c1.iter().zip(column(&twice, 0)) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }

        #[test]
        fn expansion_columns_sum_to_zero(cells in prop::collection::vec(0usize..4, 1..60)) {
            let names: Vec<String> = cells.iter().map(|c| format!("k{c}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let d = categorical(&refs);
            let out = expand_categorical(&d).unwrap();
            prop_assert_eq!(out.n_entities(), cells.len());
            let mut distinct = cells.clone();
            distinct.sort();
            distinct.dedup();
            prop_assert_eq!(out.n_features(), distinct.len());
            for v in 0..out.n_features() {
                let sum: f64 = column(&out, v).iter().sum();
                prop_assert!(sum.abs() < 1e-12);
            }
        }

        #[test]
        fn noise_preserves_originals(seed in any::<u64>(), cells in prop::collection::vec(-5.0f64..5.0, 2..30)) {
            let d = numeric(&[&cells]);
            let out = inject_noise(&d, seed).unwrap();
            prop_assert_eq!(column(&out, 0), cells);
            prop_assert_eq!(out, inject_noise(&d, seed).unwrap());
        }
    }
}
