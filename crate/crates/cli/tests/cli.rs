use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn fwkm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fwkm"))
        .args(args)
        .env_remove("FWKM_SEED")
        .output()
        .unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = fwkm(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn iris() -> String {
    data("iris.csv").to_string_lossy().into_owned()
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn run_rejects_parameter_for_fwsa() {
    let out = fwkm(&["run", "--algo", "fwsa", "--param", "2", "--data", &iris()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("fwsa takes no parameter"));
}

#[test]
fn run_rejects_out_of_domain_beta() {
    let out = fwkm(&["run", "--algo", "wkm", "--param", "0.5", "--data", &iris()]);
    assert_eq!(code(&out), 2);
    ok(&["run", "--algo", "wkm", "--param", "1", "--data", &iris()]);
}

#[test]
fn unknown_algorithm_is_a_usage_error() {
    assert_eq!(code(&fwkm(&["run", "--algo", "nope", "--data", &iris()])), 2);
}

#[test]
fn runtime_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("flat.csv");
    fs::write(&csv, "x,class\n1,a\n1,a\n1,b\n").unwrap();
    fs::write(
        dir.path().join("flat.schema.json"),
        r#"{"features":[{"name":"x","kind":"numeric"}],"label":"class"}"#,
    )
    .unwrap();
    assert_eq!(code(&fwkm(&["run", "--algo", "fwsa", "--data", s(&csv)])), 3);
}

#[test]
fn imwk_run_is_deterministic_with_ari() {
    let args = ["run", "--algo", "imwk", "--param", "1.1", "--data", &iris()];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    let json: serde_json::Value = serde_json::from_str(&a).unwrap();
    let ari = json["ari"].as_f64().unwrap();
    assert!((-1.0..=1.0).contains(&ari));
    assert!(json["seed"].is_null());
    assert_eq!(json["assignments"].as_array().unwrap().len(), 150);

    let seeded = fwkm(&[
        "run",
        "--algo",
        "imwk",
        "--param",
        "1.1",
        "--seed",
        "9",
        "--data",
        &iris(),
    ]);
    assert!(String::from_utf8_lossy(&seeded.stderr).contains("seed ignored"));
    assert_eq!(String::from_utf8(seeded.stdout).unwrap(), a);
}

#[test]
fn generate_writes_reproducible_triples() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        ok(&[
            "generate",
            "--config",
            "500x10-3",
            "--count",
            "20",
            "--seed",
            "5",
            "--out",
            s(out),
        ]);
    }
    let mut names: Vec<_> = fs::read_dir(&a).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 60);
    for name in names {
        assert_eq!(fs::read(a.join(&name)).unwrap(), fs::read(b.join(&name)).unwrap());
    }
    let rows = csv_rows(&a.join("500x10-3_007.csv"));
    assert_eq!(rows.len(), 501);
    assert_eq!(rows[0].len(), 11);
}

#[test]
fn generate_accepts_json_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"n_entities":60,"n_features":2,"n_clusters":2,"min_cluster_size":20,"sigma_sq_range":[0.5,1.5]}"#;
    ok(&["generate", "--config", cfg, "--out", s(dir.path())]);
    assert_eq!(csv_rows(&dir.path().join("60x2-2_000.csv")).len(), 61);
}

#[test]
fn generate_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        code(&fwkm(&[
            "generate",
            "--config",
            "500x10-3",
            "--count",
            "0",
            "--out",
            s(dir.path())
        ])),
        2
    );
    assert_eq!(
        code(&fwkm(&["generate", "--config", "five", "--out", s(dir.path())])),
        2
    );
}

#[test]
fn prep_standardizes_and_adds_noise() {
    let dir = tempfile::tempdir().unwrap();
    let std_csv = dir.path().join("std.csv");
    ok(&["prep", "--data", &iris(), "--standardize", "--out", s(&std_csv)]);
    let rows = csv_rows(&std_csv);
    assert_eq!(rows[0].len(), 5);
    for v in 0..4 {
        let mean: f64 = rows[1..].iter().map(|r| r[v].parse::<f64>().unwrap()).sum::<f64>() / 150.0;
        assert!(mean.abs() < 1e-9, "column {v}: {mean}");
    }
    assert!(dir.path().join("std.schema.json").exists());

    let noisy = dir.path().join("noisy.csv");
    ok(&[
        "prep",
        "--data",
        &iris(),
        "--standardize",
        "--noise",
        "--seed",
        "2",
        "--out",
        s(&noisy),
    ]);
    assert_eq!(csv_rows(&noisy)[0].len(), 9);

    let plain = dir.path().join("plain.csv");
    ok(&["prep", "--data", &iris(), "--out", s(&plain)]);
    let (orig, kept) = (csv_rows(&data("iris.csv")), csv_rows(&plain));
    assert_eq!(orig[0], kept[0]);
    assert_eq!(orig.len(), kept.len());
}

#[test]
fn sweep_output_is_independent_of_jobs() {
    let base = [
        "sweep",
        "--algo",
        "awk",
        "--data",
        &iris(),
        "--min",
        "2",
        "--max",
        "3",
        "--restarts",
        "15",
        "--seed",
        "4",
    ];
    let one = ok(&[&["--jobs", "1"], &base[..]].concat());
    let eight = ok(&[&["--jobs", "8"], &base[..]].concat());
    assert_eq!(one, eight);
    assert_eq!(one, ok(&[&["--jobs", "8"], &base[..]].concat()));
}

#[test]
fn report_formats_agree() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("sweep.json");
    ok(&[
        "sweep",
        "--algo",
        "wkm",
        "--data",
        &iris(),
        "--min",
        "3.5",
        "--max",
        "3.9",
        "--step",
        "0.2",
        "--restarts",
        "10",
        "--out",
        s(&json),
    ]);
    let csv = ok(&["report", "--input", s(&json), "--format", "csv"]);
    let md = ok(&["report", "--input", s(&json), "--format", "markdown"]);
    let from_csv: Vec<Vec<String>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    let from_md: Vec<Vec<String>> = md
        .lines()
        .skip(2)
        .map(|l| l.trim_matches('|').split('|').map(|c| c.trim().to_string()).collect())
        .collect();
    assert_eq!(from_csv.len(), 3);
    assert_eq!(from_csv, from_md);
}

#[test]
fn bench_synthetic_smoke() {
    let out = ok(&[
        "bench-synthetic",
        "--algo",
        "ewkm",
        "--configs",
        "500x4-2",
        "--per-config",
        "2",
        "--restarts",
        "5",
        "--format",
        "markdown",
    ]);
    assert!(out.lines().any(|l| l.starts_with("| 500x4-2 | 2 |")), "{out}");
}
