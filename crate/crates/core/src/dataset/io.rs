//! CSV tables with a JSON schema sidecar.

use std::fs;
use std::path::Path;

use super::{Dataset, Feature, FeatureKind, Labels, Schema, Value};
use crate::error::{Error, Result};

/// Reads a schema sidecar. Categorical features may omit their category
/// list, in which case it is inferred when the data are loaded.
pub fn load_schema(path: impl AsRef<Path>) -> Result<Schema> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn save_schema(schema: &Schema, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut text = serde_json::to_string_pretty(schema)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Loads a CSV file whose header names every schema feature (and the label
/// column, when the schema has one). Extra columns are ignored.
pub fn load_dataset(path: impl AsRef<Path>, schema: &Schema) -> Result<Dataset> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(file);
    let header = reader.headers()?.clone();
    let position = |name: &str| -> Result<usize> {
        header
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| Error::Schema(format!("missing column '{name}'")))
    };
    let columns = schema
        .features()
        .iter()
        .map(|f| position(&f.name))
        .collect::<Result<Vec<_>>>()?;
    let label_column = schema.label().map(position).transpose()?;

    let mut raw_rows: Vec<Vec<String>> = Vec::new();
    let mut raw_labels: Vec<String> = Vec::new();
    for record in reader.records() {
        let record = record?;
        raw_rows.push(
            columns
                .iter()
                .map(|&c| record.get(c).unwrap_or("").trim().to_string())
                .collect(),
        );
        if let Some(c) = label_column {
            raw_labels.push(record.get(c).unwrap_or("").trim().to_string());
        }
    }
    if raw_rows.is_empty() {
        return Err(Error::NoEntities);
    }

    // Resolve undeclared category lists from the observed cells.
    let mut features = schema.features().to_vec();
    for (v, feature) in features.iter_mut().enumerate() {
        if let FeatureKind::Categorical(cats) = &mut feature.kind {
            if cats.is_empty() {
                let mut observed: Vec<String> = raw_rows.iter().map(|r| r[v].clone()).collect();
                observed.sort();
                observed.dedup();
                *cats = observed;
            }
        }
    }
    let resolved = Schema::new(features, schema.label().map(str::to_string))?;

    let mut rows = Vec::with_capacity(raw_rows.len());
    for (i, raw) in raw_rows.iter().enumerate() {
        let row = raw
            .iter()
            .zip(resolved.features())
            .map(|(cell, f)| parse_cell(cell, f, i + 1))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let labels = label_column.map(|_| Labels::from_names(&raw_labels));
    Dataset::new(resolved, rows, labels)
}

fn parse_cell(cell: &str, feature: &Feature, row: usize) -> Result<Value> {
    match &feature.kind {
        FeatureKind::Numeric => match cell.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(Value::Num(x)),
            _ => Err(Error::Parse {
                row,
                column: feature.name.clone(),
                message: format!("'{cell}' is not a number"),
            }),
        },
        FeatureKind::Categorical(cats) => {
            cats.iter()
                .position(|c| c == cell)
                .map(Value::Cat)
                .ok_or_else(|| Error::Parse {
                    row,
                    column: feature.name.clone(),
                    message: format!("unknown category '{cell}'"),
                })
        }
    }
}

/// Loads a CSV + schema sidecar pair.
pub fn read_dataset(csv_path: impl AsRef<Path>, schema_path: impl AsRef<Path>) -> Result<Dataset> {
    let schema = load_schema(schema_path)?;
    load_dataset(csv_path, &schema)
}

/// Writes the table (and label column, if any) as CSV. Numbers use the
/// shortest representation that parses back to the same `f64`.
pub fn write_csv(d: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(file);
    let schema = d.schema();
    let label_name = d.labels().map(|_| schema.label().unwrap_or("class").to_string());
    let mut header: Vec<String> = schema.features().iter().map(|f| f.name.clone()).collect();
    header.extend(label_name);
    writer.write_record(&header)?;
    for i in 0..d.n_entities() {
        let mut record: Vec<String> = d
            .row(i)
            .iter()
            .zip(schema.features())
            .map(|(value, f)| match (value, &f.kind) {
                (Value::Num(x), _) => format!("{x}"),
                (Value::Cat(c), FeatureKind::Categorical(cats)) => cats[*c].clone(),
                (Value::Cat(c), FeatureKind::Numeric) => c.to_string(),
            })
            .collect();
        if let Some(labels) = d.labels() {
            record.push(labels.names[labels.ids[i]].clone());
        }
        writer.write_record(&record)?;
    }
    writer.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Writes the CSV + schema pair. A labelled dataset whose schema has no
/// label column gets one named `class`.
pub fn write_dataset(d: &Dataset, csv_path: impl AsRef<Path>, schema_path: impl AsRef<Path>) -> Result<()> {
    write_csv(d, csv_path)?;
    let schema = match (d.labels(), d.schema().label()) {
        (Some(_), None) => Schema::new(d.schema().features().to_vec(), Some("class".into()))?,
        _ => d.schema().clone(),
    };
    save_schema(&schema, schema_path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
        let p = dir.join(name);
        fs::File::create(&p).unwrap().write_all(text.as_bytes()).unwrap();
        p
    }

    fn numeric_schema() -> Schema {
        Schema::new(vec![Feature::numeric("x"), Feature::numeric("y")], Some("class".into())).unwrap()
    }

    #[test]
    fn loads_numeric_with_labels() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "d.csv", "x,y,class\n1,2,a\n3.5,-1,b\n");
        let d = load_dataset(&p, &numeric_schema()).unwrap();
        assert_eq!(d.n_entities(), 2);
        assert_eq!(d.value(1, 0), Value::Num(3.5));
        assert_eq!(d.labels().unwrap().ids, vec![0, 1]);
    }

    #[test]
    fn empty_file_has_no_entities() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "d.csv", "x,y,class\n");
        let err = load_dataset(&p, &numeric_schema()).unwrap_err();
        assert_eq!(err.to_string(), "no entities");
    }

    #[test]
    fn non_numeric_cell_names_row_and_column() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "d.csv", "x,y,class\n1,2,a\n1,abc,b\n");
        let err = load_dataset(&p, &numeric_schema()).unwrap_err();
        match err {
            Error::Parse { row, column, .. } => {
                assert_eq!(row, 2);
                assert_eq!(column, "y");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn missing_column_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "d.csv", "x,class\n1,a\n");
        let err = load_dataset(&p, &numeric_schema()).unwrap_err();
        assert!(err.to_string().contains("missing column 'y'"));
    }

    #[test]
    fn categories_inferred_or_checked() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "d.csv", "c\nz\na\nz\n");
        let schema: Schema = serde_json::from_str(r#"{"features":[{"name":"c","kind":"categorical"}]}"#).unwrap();
        let d = load_dataset(&p, &schema).unwrap();
        assert_eq!(
            d.schema().feature(0).kind,
            FeatureKind::Categorical(vec!["a".into(), "z".into()])
        );
        assert_eq!(d.value(0, 0), Value::Cat(1));

        let declared = Schema::new(vec![Feature::categorical("c", vec!["a".into()])], None).unwrap();
        let err = load_dataset(&p, &declared).unwrap_err();
        assert!(err.to_string().contains("unknown category 'z'"));
    }

    #[test]
    fn write_then_read_is_lossless() {
        let dir = tempfile::tempdir().unwrap();
        let schema = Schema::new(
            vec![
                Feature::numeric("x"),
                Feature::categorical("c", vec!["p".into(), "q".into()]),
            ],
            Some("class".into()),
        )
        .unwrap();
        let d = Dataset::new(
            schema,
            vec![
                vec![Value::Num(0.1 + 0.2), Value::Cat(1)],
                vec![Value::Num(-1e-17), Value::Cat(0)],
            ],
            Some(Labels::from_names(&["k1", "k2"])),
        )
        .unwrap();
        let csv = dir.path().join("d.csv");
        let sch = dir.path().join("d.schema.json");
        write_dataset(&d, &csv, &sch).unwrap();
        let back = read_dataset(&csv, &sch).unwrap();
        assert_eq!(back, d);
    }
}
