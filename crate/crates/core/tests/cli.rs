use std::path::Path;
use std::process::{Command, Output};

fn sforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sforge"))
        .args(args)
        .env_remove("SFORGE_DENSITY_TABLE")
        .output()
        .expect("run sforge")
}

fn field(out: &Output, key: &str) -> String {
    let text = String::from_utf8_lossy(&out.stdout);
    text.lines()
        .find_map(|l| l.strip_prefix(key).filter(|r| r.starts_with(' ')).map(|r| r.trim().to_string()))
        .unwrap_or_else(|| panic!("missing {key}: {text}"))
}

fn d(out: &Output) -> f64 {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    field(out, "d").parse().unwrap()
}

#[test]
fn design_examples() {
    let out = sforge(&["design", "--dim", "4", "--points", "20", "--candidates", "8", "--seed", "1"]);
    assert!((d(&out) - 0.917).abs() < 1e-3);
    assert_eq!(field(&out, "b"), "1,5");

    let out = sforge(&["design", "--dim", "2", "--points", "4", "--candidates", "1", "--seed", "0"]);
    assert!((d(&out) - 2f64.sqrt()).abs() < 1e-12);
    assert_eq!(field(&out, "b"), "1");
}

#[test]
fn exhaustive_examples() {
    for (n, m, expected) in [("4", "10", 1.224), ("4", "50", 0.628), ("6", "10", 1.414)] {
        let out = sforge(&["exhaustive", "--dim", n, "--points", m]);
        assert!((d(&out) - expected).abs() < 1e-3, "n={n} M={m}");
    }
    let out = sforge(&["exhaustive", "--dim", "16", "--points", "1024"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("estimate"));
}

#[test]
fn evaluate_examples() {
    assert!((d(&sforge(&["evaluate", "--dim", "4", "--points", "20", "--b", "1,5"])) - 0.917).abs() < 1e-3);
    let a = d(&sforge(&["evaluate", "--dim", "4", "--points", "25", "--b", "3,11"]));
    let b = d(&sforge(&["evaluate", "--dim", "4", "--points", "25", "--b", "1,2"]));
    assert!((a - b).abs() < 1e-9);
    let out = sforge(&["evaluate", "--dim", "4", "--points", "10", "--b", "2,4"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(sforge(&["evaluate", "--dim", "3", "--points", "10", "--b", "1"]).status.code(), Some(2));
    assert_eq!(sforge(&["evaluate", "--dim", "4", "--points", "ten", "--b", "1,3"]).status.code(), Some(2));
}

#[test]
fn bound_and_density_override() {
    let out = sforge(&["bound", "--dim", "4", "--points", "10"]);
    assert!(out.status.success());
    assert!((field(&out, "d_check").parse::<f64>().unwrap() - 1.474).abs() < 1e-3);

    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("t.csv");
    std::fs::write(&table, "k,lambda,source\n2,0.25,square\n").unwrap();
    let t = table.to_str().unwrap();
    let flag = sforge(&["bound", "--dim", "4", "--points", "10", "--density-table", t]);
    assert_eq!(field(&flag, "lambda_k"), "0.25");
    let env = Command::new(env!("CARGO_BIN_EXE_sforge"))
        .args(["bound", "--dim", "4", "--points", "10"])
        .env("SFORGE_DENSITY_TABLE", &table)
        .output()
        .unwrap();
    assert_eq!(field(&env, "lambda_k"), "0.25");

    let missing = sforge(&["bound", "--dim", "4", "--points", "10", "--density-table", "/nonexistent/t.csv"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/nonexistent/t.csv"));
}

fn csv_rows(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path).unwrap().lines().skip(1).map(str::to_string).collect()
}

#[test]
fn lattice_and_chart_files() {
    let dir = tempfile::tempdir().unwrap();
    let plot = dir.path().join("l.csv");
    let out = sforge(&["lattice", "--dim", "4", "--points", "25", "--b", "1,2", "--out", plot.to_str().unwrap()]);
    assert!(out.status.success());
    let rows = csv_rows(&plot);
    assert_eq!(rows.len(), 25);
    assert!(rows.iter().all(|r| r.ends_with(",rep")));

    let out = sforge(&["lattice", "--dim", "4", "--points", "20", "--b", "1,5", "--shell", "--out", plot.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(csv_rows(&plot).iter().any(|r| r.ends_with(",shell")));

    let catalog = dir.path().join("c.jsonl");
    let c = catalog.to_str().unwrap();
    for (m, b) in [("20", "1,5"), ("10", "1,3"), ("25", "1,2")] {
        assert!(sforge(&["evaluate", "--dim", "4", "--points", m, "--b", b, "--out", c]).status.success());
    }
    let chart = dir.path().join("chart.csv");
    let ratios = dir.path().join("ratio.csv");
    let out = sforge(&["chart", "--catalog", c, "--out", chart.to_str().unwrap(), "--ratios", ratios.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let header = std::fs::read_to_string(&chart).unwrap();
    assert!(header.starts_with("M,n,d,rho,K,R,series\n"));
    assert_eq!(csv_rows(&chart).len(), 3 + 2);
    assert_eq!(csv_rows(&ratios).len(), 3);

    let bad = sforge(&["chart", "--catalog", c, "--out", "/nonexistent/dir/chart.csv"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("/nonexistent/dir/chart.csv"));
}

#[test]
fn identical_flags_give_identical_records() {
    let dir = tempfile::tempdir().unwrap();
    let catalog = dir.path().join("c.jsonl");
    let c = catalog.to_str().unwrap();
    for _ in 0..2 {
        let out = sforge(&["design", "--dim", "8", "--points", "97", "--candidates", "32", "--seed", "4", "--out", c]);
        assert!(out.status.success());
    }
    let lines: Vec<serde_json::Value> = std::fs::read_to_string(&catalog)
        .unwrap()
        .lines()
        .map(|l| {
            let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
            v.as_object_mut().unwrap().remove("created_at");
            v
        })
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], lines[1]);
    assert_eq!(lines[0]["method"], "heuristic");
    assert_eq!(lines[0]["Q"], 32);
}
