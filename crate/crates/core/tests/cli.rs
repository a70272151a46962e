use std::process::{Command, Output};

use serde_json::Value;

fn carleson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carleson"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = carleson(&all);
    let doc = serde_json::from_slice(&out.stdout).expect("one JSON document");
    (out.status.code().unwrap(), doc)
}

fn field(doc: &Value, key: &str) -> f64 {
    doc[key]
        .as_f64()
        .unwrap_or_else(|| panic!("{key} missing in {doc}"))
}

#[test]
fn interval_examples() {
    let (code, doc) = json(&["interval", "--h", "0.5", "--which", "iii"]);
    assert_eq!(code, 0);
    assert!((field(&doc, "lower") - 1.267035098361).abs() < 1e-11);
    assert_eq!(field(&doc, "upper"), 2.0);

    let (code, doc) = json(&["interval", "--h", "0.9", "--which", "iii"]);
    assert_eq!(code, 0);
    assert_eq!(doc["kind"], "empty");
    assert!(doc.get("lower").is_none());

    let (_, doc) = json(&["interval", "--h", "0.85", "--which", "ii"]);
    assert!((field(&doc, "lower") - 1.144527901474).abs() < 1e-11);
    assert!((field(&doc, "upper") - 1.176470588235).abs() < 1e-11);

    let (_, doc) = json(&["interval", "--h", "0.5", "--which", "i"]);
    assert_eq!(doc["kind"], "ray");
    assert_eq!(doc["upper"], "inf");
}

#[test]
fn interval_rejects_bad_height() {
    for h in ["0", "1", "1.5", "-0.1"] {
        let out = carleson(&["interval", "--h", h, "--which", "i"]);
        assert_eq!(out.status.code(), Some(2), "h={h}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn check_exit_codes() {
    let (code, doc) = json(&[
        "check", "--h", "0.5", "--c", "1.3", "--which", "i", "--oracle",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["analytic"], true);
    assert_eq!(doc["oracle"], true);

    let (code, doc) = json(&[
        "check", "--h", "0.5", "--c", "1.2", "--which", "i", "--oracle",
    ]);
    assert_eq!(code, 1);
    assert_eq!(doc["analytic"], false);
    assert_eq!(doc["oracle"], false);
    assert_eq!(doc["agree"], true);
    assert!(doc["window_in_set_witness_x"].is_f64());

    let (code, doc) = json(&["check", "--h", "0.85", "--c", "1.16", "--which", "iii"]);
    assert_eq!(code, 0);
    assert_eq!(doc["analytic"], true);

    let (code, doc) = json(&[
        "check", "--h", "0.85", "--c", "1.16", "--which", "iii", "--oracle",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["window_in_set_oracle"], "verified");
    assert_eq!(doc["set_in_window_oracle"], "verified");

    let out = carleson(&[
        "check", "--h", "0.5", "--c", "1.3", "--which", "i", "--margin", "-1", "--oracle",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_with_rotated_base() {
    // c must exceed 1
    let out = carleson(&[
        "check",
        "--h",
        "0.6",
        "--c",
        "1.0",
        "--which",
        "ii",
        "--b-angle",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let (code, _) = json(&[
        "check",
        "--h",
        "0.6",
        "--c",
        "1.004",
        "--which",
        "ii",
        "--oracle",
        "--b-angle",
        "2",
    ]);
    assert_eq!(code, 1);
    let (code, _) = json(&[
        "check",
        "--h",
        "0.6",
        "--c",
        "1.2",
        "--which",
        "ii",
        "--oracle",
        "--b-angle",
        "-2",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn h0_record() {
    let (code, doc) = json(&["h0", "--tol", "1e-10"]);
    assert_eq!(code, 0);
    let v = field(&doc, "value");
    assert!(v > 0.82 && v < 0.83);
    assert!((v - 0.82056).abs() < 5e-5);
    assert!(field(&doc, "residual").abs() <= 1e-10);
    assert!(doc["iterations"].as_u64().unwrap() <= 200);
}

#[test]
fn sweep_table() {
    let a = carleson(&["sweep"]);
    let b = carleson(&["sweep"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let mut rdr = csv::Reader::from_reader(a.stdout.as_slice());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header,
        ["h", "f_inv", "k", "g", "lower_iii", "upper_iii", "empty"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 19);
    for row in &rows {
        let h: f64 = row[0].parse().unwrap();
        if (h - 0.5).abs() < 1e-9 {
            assert_eq!(&row[3], &row[1], "g = f_inv at 0.5");
        }
        if (h - 0.85).abs() < 1e-9 {
            assert_eq!(&row[3], &row[2], "g = k at 0.85");
        }
        let expect_empty = if h > 0.8660254 { "1" } else { "0" };
        assert_eq!(&row[6], expect_empty, "h={h}");
    }
}

#[test]
fn witness_predicates() {
    for h in ["0.6", "0.1"] {
        let (code, doc) = json(&["witness", "--h", h]);
        assert_eq!(code, 0);
        assert_eq!(doc["in_set"], true);
        assert_eq!(doc["in_window"], false);
    }
    let (_, doc) = json(&["witness", "--h", "0.9", "--b-angle", "1.5707963267948966"]);
    assert_eq!(doc["in_set"], true);
    assert_eq!(doc["in_window"], false);
    assert!(field(&doc, "y") > 0.0);
    assert_eq!(carleson(&["witness", "--h", "1.0"]).status.code(), Some(2));
}

#[test]
fn render_to_file_and_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig3.svg");
    let path_str = path.to_str().unwrap();
    let (code, doc) = json(&[
        "render", "--kind", "fig3", "--h", "0.5", "--c", "1.3", "--out", path_str,
    ]);
    assert_eq!(code, 0);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(doc["bytes"].as_u64().unwrap() as usize, svg.len());
    assert!(svg.contains(r#"viewBox="-1.150000 -1.150000 2.300000 2.300000""#));

    let out = carleson(&["render", "--kind", "fig3", "--h", "0.5", "--c", "1.3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), svg);

    assert_eq!(
        carleson(&["render", "--kind", "fig2", "--h", "0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        carleson(&["render", "--kind", "fig3", "--h", "0.5", "--c", "2.5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn text_output_is_key_value() {
    let out = carleson(&["h0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let keys: Vec<&str> = text.lines().map(|l| l.split_once('=').unwrap().0).collect();
    assert_eq!(keys, ["command", "value", "residual", "iterations"]);
}
