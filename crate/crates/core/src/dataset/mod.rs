//! Data model and preprocessing.
//!
//! A [`Dataset`] is an N×M table whose cells are either reals (numeric
//! features) or indices into a feature's category list (categorical
//! features), together with its [`Schema`] and optional ground-truth labels.

mod io;
mod prep;
mod synthetic;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use io::{load_dataset, load_schema, read_dataset, save_schema, write_csv, write_dataset};
pub use prep::{drop_zero_range, expand_categorical, inject_noise, prepare, standardize_numeric, PrepOptions};
pub use synthetic::{generate_synthetic, named_config, Provenance, SyntheticConfig, SyntheticData};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeatureKind {
    Numeric,
    /// Declared category list; cells store indices into it.
    Categorical(Vec<String>),
}

impl FeatureKind {
    pub fn is_numeric(&self) -> bool {
        matches!(self, FeatureKind::Numeric)
    }

    pub fn categories(&self) -> Option<&[String]> {
        match self {
            FeatureKind::Numeric => None,
            FeatureKind::Categorical(c) => Some(c),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Feature {
    pub name: String,
    pub kind: FeatureKind,
    /// Set on columns appended by [`inject_noise`].
    pub noise: bool,
}

impl Feature {
    pub fn numeric(name: impl Into<String>) -> Self {
        Feature {
            name: name.into(),
            kind: FeatureKind::Numeric,
            noise: false,
        }
    }

    pub fn categorical(name: impl Into<String>, categories: Vec<String>) -> Self {
        Feature {
            name: name.into(),
            kind: FeatureKind::Categorical(categories),
            noise: false,
        }
    }
}

/// Ordered feature list plus the optional name of the label column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSchema", into = "RawSchema")]
pub struct Schema {
    features: Vec<Feature>,
    label: Option<String>,
}

impl Schema {
    pub fn new(features: Vec<Feature>, label: Option<String>) -> Result<Self> {
        let mut seen = HashSet::new();
        for f in &features {
            if !seen.insert(f.name.as_str()) {
                return Err(Error::Schema(format!("duplicate feature name '{}'", f.name)));
            }
            if let FeatureKind::Categorical(cats) = &f.kind {
                if cats.is_empty() {
                    return Err(Error::Schema(format!(
                        "categorical feature '{}' has an empty category list",
                        f.name
                    )));
                }
                let unique: HashSet<_> = cats.iter().collect();
                if unique.len() != cats.len() {
                    return Err(Error::Schema(format!(
                        "categorical feature '{}' lists a category twice",
                        f.name
                    )));
                }
            }
        }
        if let Some(label) = &label {
            if seen.contains(label.as_str()) {
                return Err(Error::Schema(format!(
                    "label column '{label}' is also listed as a feature"
                )));
            }
        }
        Ok(Schema { features, label })
    }

    pub fn features(&self) -> &[Feature] {
        &self.features
    }

    pub fn feature(&self, v: usize) -> &Feature {
        &self.features[v]
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn is_all_numeric(&self) -> bool {
        self.features.iter().all(|f| f.kind.is_numeric())
    }

    pub fn noise_mask(&self) -> Vec<bool> {
        self.features.iter().map(|f| f.noise).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct RawFeature {
    name: String,
    kind: RawKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    categories: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    noise: bool,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum RawKind {
    Numeric,
    Categorical,
}

#[derive(Serialize, Deserialize)]
struct RawSchema {
    features: Vec<RawFeature>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl TryFrom<RawSchema> for Schema {
    type Error = Error;

    fn try_from(raw: RawSchema) -> Result<Self> {
        let features = raw
            .features
            .into_iter()
            .map(|f| {
                let kind = match (f.kind, f.categories) {
                    (RawKind::Numeric, None) => FeatureKind::Numeric,
                    (RawKind::Numeric, Some(_)) => {
                        return Err(Error::Schema(format!(
                            "numeric feature '{}' must not list categories",
                            f.name
                        )))
                    }
                    (RawKind::Categorical, Some(c)) => FeatureKind::Categorical(c),
                    // Filled in from the data when the file is loaded.
                    (RawKind::Categorical, None) => FeatureKind::Categorical(Vec::new()),
                };
                Ok(Feature {
                    name: f.name,
                    kind,
                    noise: f.noise,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        // Validation of category lists is deferred to load time, when
        // undeclared lists have been inferred.
        let mut seen = HashSet::new();
        for f in &features {
            if !seen.insert(f.name.clone()) {
                return Err(Error::Schema(format!("duplicate feature name '{}'", f.name)));
            }
        }
        if let Some(label) = &raw.label {
            if seen.contains(label) {
                return Err(Error::Schema(format!(
                    "label column '{label}' is also listed as a feature"
                )));
            }
        }
        Ok(Schema {
            features,
            label: raw.label,
        })
    }
}

impl From<Schema> for RawSchema {
    fn from(s: Schema) -> Self {
        RawSchema {
            features: s
                .features
                .into_iter()
                .map(|f| {
                    let (kind, categories) = match f.kind {
                        FeatureKind::Numeric => (RawKind::Numeric, None),
                        FeatureKind::Categorical(c) => (RawKind::Categorical, Some(c)),
                    };
                    RawFeature {
                        name: f.name,
                        kind,
                        categories,
                        noise: f.noise,
                    }
                })
                .collect(),
            label: s.label,
        }
    }
}

/// One cell of a dataset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Num(f64),
    /// Index into the feature's category list.
    Cat(usize),
}

impl Value {
    #[inline]
    pub fn as_num(self) -> Option<f64> {
        match self {
            Value::Num(x) => Some(x),
            Value::Cat(_) => None,
        }
    }

    #[inline]
    pub fn as_cat(self) -> Option<usize> {
        match self {
            Value::Cat(c) => Some(c),
            Value::Num(_) => None,
        }
    }
}

/// Ground-truth class of every entity, as indices into `names`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labels {
    pub ids: Vec<usize>,
    pub names: Vec<String>,
}

impl Labels {
    /// Builds labels from raw class identifiers; class indices follow the
    /// lexicographic order of the identifiers.
    pub fn from_names<S: AsRef<str>>(raw: &[S]) -> Self {
        let mut names: Vec<String> = raw.iter().map(|s| s.as_ref().to_string()).collect();
        names.sort();
        names.dedup();
        let ids = raw
            .iter()
            .map(|s| names.binary_search_by(|n| n.as_str().cmp(s.as_ref())).unwrap())
            .collect();
        Labels { ids, names }
    }

    pub fn n_classes(&self) -> usize {
        self.names.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    schema: Schema,
    values: Vec<Value>,
    n: usize,
    labels: Option<Labels>,
}

impl Dataset {
    /// Builds a dataset from row-major cells, checking every row against the
    /// schema.
    pub fn new(schema: Schema, rows: Vec<Vec<Value>>, labels: Option<Labels>) -> Result<Self> {
        let m = schema.len();
        let n = rows.len();
        let mut values = Vec::with_capacity(n * m);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != m {
                return Err(Error::Shape(format!("row {i} has {} cells, expected {m}", row.len())));
            }
            values.extend(row);
        }
        Self::from_flat(schema, values, n, labels)
    }

    pub(crate) fn from_flat(schema: Schema, values: Vec<Value>, n: usize, labels: Option<Labels>) -> Result<Self> {
        let m = schema.len();
        if n == 0 {
            return Err(Error::NoEntities);
        }
        if m == 0 {
            return Err(Error::NoInformativeFeatures);
        }
        debug_assert_eq!(values.len(), n * m);
        for (idx, value) in values.iter().enumerate() {
            let (i, v) = (idx / m, idx % m);
            let feature = schema.feature(v);
            match (&feature.kind, value) {
                (FeatureKind::Numeric, Value::Num(x)) if x.is_finite() => {}
                (FeatureKind::Numeric, _) => {
                    return Err(Error::Parse {
                        row: i,
                        column: feature.name.clone(),
                        message: "expected a finite number".into(),
                    })
                }
                (FeatureKind::Categorical(cats), Value::Cat(c)) if *c < cats.len() => {}
                (FeatureKind::Categorical(_), _) => {
                    return Err(Error::Parse {
                        row: i,
                        column: feature.name.clone(),
                        message: "category outside the declared list".into(),
                    })
                }
            }
        }
        if let Some(labels) = &labels {
            if labels.ids.len() != n {
                return Err(Error::Shape(format!("{} labels for {n} entities", labels.ids.len())));
            }
        }
        Ok(Dataset {
            schema,
            values,
            n,
            labels,
        })
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn n_entities(&self) -> usize {
        self.n
    }

    pub fn n_features(&self) -> usize {
        self.schema.len()
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    pub fn is_all_numeric(&self) -> bool {
        self.schema.is_all_numeric()
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Value] {
        let m = self.n_features();
        &self.values[i * m..(i + 1) * m]
    }

    #[inline]
    pub fn value(&self, i: usize, v: usize) -> Value {
        self.values[i * self.n_features() + v]
    }

    /// Cells of feature `v`, if it is numeric.
    pub fn numeric_column(&self, v: usize) -> Option<Vec<f64>> {
        if !self.schema.feature(v).kind.is_numeric() {
            return None;
        }
        Some((0..self.n).map(|i| self.value(i, v).as_num().unwrap()).collect())
    }

    pub fn categorical_column(&self, v: usize) -> Option<Vec<usize>> {
        if self.schema.feature(v).kind.is_numeric() {
            return None;
        }
        Some((0..self.n).map(|i| self.value(i, v).as_cat().unwrap()).collect())
    }

    pub fn with_labels(mut self, labels: Option<Labels>) -> Result<Self> {
        if let Some(l) = &labels {
            if l.ids.len() != self.n {
                return Err(Error::Shape(format!("{} labels for {} entities", l.ids.len(), self.n)));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    pub(crate) fn into_parts(self) -> (Schema, Vec<Value>, usize, Option<Labels>) {
        (self.schema, self.values, self.n, self.labels)
    }

    /// Builds a copy keeping only the listed features, in order.
    pub(crate) fn select_features(&self, keep: &[usize]) -> Result<Self> {
        let features = keep.iter().map(|&v| self.schema.feature(v).clone()).collect();
        let schema = Schema::new(features, self.schema.label.clone())?;
        let mut values = Vec::with_capacity(self.n * keep.len());
        for i in 0..self.n {
            values.extend(keep.iter().map(|&v| self.value(i, v)));
        }
        Dataset::from_flat(schema, values, self.n, self.labels.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_rejects_duplicates_and_label_clash() {
        let dup = Schema::new(vec![Feature::numeric("a"), Feature::numeric("a")], None);
        assert!(matches!(dup, Err(Error::Schema(_))));
        let clash = Schema::new(vec![Feature::numeric("a")], Some("a".into()));
        assert!(matches!(clash, Err(Error::Schema(_))));
        let empty_cats = Schema::new(vec![Feature::categorical("c", vec![])], None);
        assert!(matches!(empty_cats, Err(Error::Schema(_))));
        let dup_cats = Schema::new(vec![Feature::categorical("c", vec!["x".into(), "x".into()])], None);
        assert!(matches!(dup_cats, Err(Error::Schema(_))));
    }

    #[test]
    fn schema_json_shape() {
        let schema = Schema::new(
            vec![
                Feature::numeric("x"),
                Feature::categorical("c", vec!["a".into(), "b".into()]),
            ],
            Some("class".into()),
        )
        .unwrap();
        let json = serde_json::to_value(&schema).unwrap();
        assert_eq!(json["features"][0]["kind"], "numeric");
        assert_eq!(json["features"][1]["kind"], "categorical");
        assert_eq!(json["label"], "class");
        let back: Schema = serde_json::from_value(json).unwrap();
        assert_eq!(back, schema);
    }

    #[test]
    fn dataset_rejects_bad_cells() {
        let schema = Schema::new(
            vec![Feature::numeric("x"), Feature::categorical("c", vec!["a".into()])],
            None,
        )
        .unwrap();
        assert!(Dataset::new(schema.clone(), vec![], None).is_err());
        let ragged = Dataset::new(schema.clone(), vec![vec![Value::Num(1.0)]], None);
        assert!(matches!(ragged, Err(Error::Shape(_))));
        let bad_cat = Dataset::new(schema.clone(), vec![vec![Value::Num(1.0), Value::Cat(3)]], None);
        assert!(bad_cat.is_err());
        let nan = Dataset::new(schema, vec![vec![Value::Num(f64::NAN), Value::Cat(0)]], None);
        assert!(nan.is_err());
    }

    #[test]
    fn labels_are_indexed_lexicographically() {
        let l = Labels::from_names(&["b", "a", "b", "c"]);
        assert_eq!(l.names, vec!["a", "b", "c"]);
        assert_eq!(l.ids, vec![1, 0, 1, 2]);
    }
}
