use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magicfiber"))
        .arg("--no-cache")
        .args(args)
        .output()
        .unwrap()
}

fn run_with_cache(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magicfiber"))
        .env("MAGICFIBER_CACHE", cache)
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn bracket(v: &Value) -> (f64, f64) {
    let lo: f64 = v["lo"].as_str().unwrap().parse().unwrap();
    let hi: f64 = v["hi"].as_str().unwrap().parse().unwrap();
    (lo, hi)
}

#[test]
fn class_report() {
    let v = json(&run(&["class", "18", "17", "7"]));
    let r = &v["result"];
    assert_eq!(r["fiber"]["genus"], 8);
    assert_eq!(r["thurston_norm"], 28);
    let (lo, hi) = bracket(&r["dilatation"]);
    assert!(lo < 1.104040 && hi > 1.104039 && hi - lo < 1e-11);
    assert!(r["dilatation"]["value"].as_str().unwrap().contains(" ± "));

    let v = json(&run(&["class", "1", "1", "0"]));
    let r = &v["result"];
    assert_eq!(r["fiber"]["genus"], 0);
    assert_eq!(r["singularities"]["prong_total"], 4);
    let entries = r["singularities"]["entries"].as_array().unwrap();
    assert!(entries.iter().all(|e| e["prongs"] == 1));
    let (lo, hi) = bracket(&r["dilatation"]);
    let root = 2.0 + 3f64.sqrt();
    assert!(lo <= root + 1e-12 && root - 1e-12 <= hi);
}

#[test]
fn negative_coordinates() {
    let v = json(&run(&["class", "4", "2", "-3"]));
    assert_eq!(v["result"]["orientable"], true);
    let v = json(&run(&["family", "A", "4", "-3"]));
    assert_eq!(v["result"]["one_prong"], true);
}

#[test]
fn domain_errors_exit_2() {
    let out = run(&["class", "1", "0", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("y > 0 violated"));

    let out = run(&["class", "2", "2", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not primitive"));

    for args in [
        &["family", "A", "4", "2"][..],
        &["family", "Q", "4", "1"],
        &["min-table", "--fill=1/2"],
        &["min-table", "--fill=-3/2", "--genus-from=9", "--genus-to=4"],
        &["verify", "--suite=bogus"],
        &["--width=1e-9", "class", "1", "1", "0"],
        &["class", "1", "1"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn family_reports() {
    let r = json(&run(&["family", "A", "9", "2"]))["result"].clone();
    assert_eq!(r["orientable"], true);
    assert_eq!(r["closed_genus"], 7);
    assert_eq!(r["hyperbolicity"]["status"], "Hyperbolic");
    let (lo, hi) = bracket(&r["dilatation"]);
    assert!(lo < 1.115490 && hi > 1.115480);

    let r = json(&run(&["family", "A", "2", "1"]))["result"].clone();
    assert_eq!(r["one_prong"], true);
    assert_eq!(r["hyperbolicity"]["status"], "NonHyperbolic");

    let r = json(&run(&["family", "R", "4", "1"]))["result"].clone();
    assert_eq!(r["closed_genus"], 4);
    assert_eq!(r["orientable"], false);
    let (lo, hi) = bracket(&r["dilatation"]);
    assert!(lo < 1.280645 && hi > 1.280635);
}

#[test]
fn min_tables() {
    let v = json(&run(&["min-table", "--fill=-3/2", "--genus-from=5", "--genus-to=7"]));
    let argmins: Vec<(i64, i64)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["argmins"][0]["k"].as_i64().unwrap(), r["argmins"][0]["l"].as_i64().unwrap()))
        .collect();
    assert_eq!(argmins, vec![(7, 1), (8, 1), (9, 2)]);

    let v = json(&run(&["min-table", "--fill=-3/2", "--genus-from=7", "--orientable"]));
    assert_eq!(v["rows"][0]["argmins"][0]["k"], 9);

    let v = json(&run(&["min-table", "--fill", "-1/2", "--genus-from=3", "--genus-to=3"]));
    assert_eq!(v["rows"][0]["argmins"][0]["k"], 4);
    assert_eq!(v["rows"][0]["argmins"][0]["l"], 3);

    let v = json(&run(&["min-table", "--fill=-3/2", "--genus-from=4", "--orientable"]));
    assert_eq!(v["rows"][0]["argmins"].as_array().unwrap().len(), 0);
    assert_eq!(v["rows"][0]["lambda"], Value::Null);
}

#[test]
fn csv_output() {
    let out = run(&["min-table", "--fill=2", "--genus-from=3", "--genus-to=6", "--format=csv"]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let headers: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        headers,
        ["g", "fill", "family", "k", "l", "lambda_lo", "lambda_hi", "orientable", "candidates_examined"]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert!(rows.len() >= 4);
    for row in &rows {
        assert_eq!(&row[2], "R");
        let lo: f64 = row[5].parse().unwrap();
        let hi: f64 = row[6].parse().unwrap();
        assert!(lo <= hi);
    }
}

#[test]
fn json_round_trip_is_byte_identical() {
    for args in [
        &["class", "27", "21", "8"][..],
        &["family", "P", "7", "3"],
        &["bounds", "--genus-from=7", "--genus-to=9"],
        &["ent-face", "--fill=-3/2", "--max-denominator=5"],
        &["verify", "--suite=equalities"],
    ] {
        let out = run(args);
        assert!(out.status.success(), "{args:?}: {}", stderr(&out));
        let text = String::from_utf8(out.stdout).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(again, text, "{args:?}");
    }
}

#[test]
fn bounds_and_entropy() {
    let v = json(&run(&["bounds", "--genus-from=8", "--genus-to=8"]));
    let row = &v["rows"][0];
    assert_eq!(row["sources"][0]["kind"], "magic");
    assert_eq!(row["sources"][0]["class"]["x"], 18);

    let v = json(&run(&["ent-face", "--fill=2", "--max-denominator=6"]));
    assert_eq!(v["minimum"]["s"], "0");
    let (lo, _) = bracket(&v["minimum"]["ent"]);
    assert!((lo - 1.924847).abs() < 1e-6);
}

#[test]
fn verify_exit_codes_and_flag() {
    let out = run(&["verify", "--suite=equalities"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["summary"]["pass"], 2);

    let out = run(&["verify", "--suite=inequalities"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["flag"], 1);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(stderr(&out).lines().filter(|l| l.starts_with("FLAG")).count(), 1);

    let out = run(&["verify", "--suite=congruences", "--genus-to=20", "--format=text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("[FAIL]"));
}

#[test]
fn warm_cache_gives_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("roots.json");
    let args = ["min-table", "--fill=-3/2", "--genus-from=3", "--genus-to=12"];
    let cold = run_with_cache(&path, &args);
    assert!(cold.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["schema"], "magicfiber-root-cache/v1");
    assert!(!doc["cells"].as_object().unwrap().is_empty());

    let warm = run_with_cache(&path, &args);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(json(&run(&args))["rows"], json(&warm)["rows"]);

    std::fs::write(&path, "{\"schema\": \"magicfiber-root-cache/v1\", \"cells\": {\"0:1\": {}}}").unwrap();
    let corrupt = run_with_cache(&path, &args);
    assert!(stderr(&corrupt).contains("warning: ignoring root cache"));
    assert_eq!(corrupt.stdout, cold.stdout);

    let no_cache_dir = tempfile::tempdir().unwrap();
    let untouched = no_cache_dir.path().join("roots.json");
    let out = Command::new(env!("CARGO_BIN_EXE_magicfiber"))
        .env("MAGICFIBER_CACHE", &untouched)
        .args(["--no-cache", "class", "2", "2", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(!untouched.exists());
}

#[test]
fn width_controls_precision() {
    let coarse = json(&run(&["--width=2^-20", "family", "P", "5", "3"]));
    let fine = json(&run(&["--width=2^-80", "family", "P", "5", "3"]));
    let (clo, chi) = bracket(&coarse["result"]["dilatation"]);
    let (flo, fhi) = bracket(&fine["result"]["dilatation"]);
    assert!(clo <= flo && fhi <= chi);
    assert_eq!(fine["result"]["dilatation"]["width"], "2^-80");
}
