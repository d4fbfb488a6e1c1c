use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use semipos::ratmat::parse_rational;
use semipos::{RatMatrix, Rational};
use serde_json::Value;
use tempfile::TempDir;

fn semipos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semipos"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}):\n{}\nstderr:\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn parse_matrix_value(v: &Value) -> RatMatrix {
    let rows: Vec<Vec<Rational>> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            r.as_array()
                .unwrap()
                .iter()
                .map(|x| parse_rational(x.as_str().unwrap()).unwrap())
                .collect()
        })
        .collect();
    RatMatrix::from_rows(rows).unwrap()
}

const ID3: &str = "1 0 0\n0 1 0\n0 0 1\n";
const X3: &str = "# rows of both sign kinds\n1 0 0\n0 -1 0\n1 1 1\n";

#[test]
fn build_np_reproduces_the_worked_example() {
    let out = semipos(&["build", "np", "--v", "1 0 -5 -1", "--w", "3 2 -10 0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let b = parse_matrix_value(&doc["result"]["b"]);
    assert_eq!(
        b,
        RatMatrix::from_i64(&[&[3, 0, 0, 0], &[2, 1, 0, 0], &[0, 0, 1, 5], &[1, 0, 0, 1]])
    );
    assert_eq!(
        doc["result"]["trace"]["middle_rows"],
        serde_json::json!(["c", "e"])
    );
    assert_eq!(doc["status"], "yes");
    assert_eq!(doc["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn classify_identity_reports_every_class() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "id3.mat", ID3);
    let out = semipos(&["classify", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    for key in [
        "semipositive",
        "minimally_semipositive",
        "monomial",
        "row_positive",
        "inverse_nonnegative",
    ] {
        assert_eq!(r[key], Value::Bool(true), "{key}");
    }
}

#[test]
fn into_sp_rejects_rows_of_opposite_sign_with_a_certificate() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "ex3.mat", X3);
    let y = write(&dir, "id3.mat", ID3);
    let out = semipos(&["preserver", "into-sp", "--x", s(&x), "--y", s(&y)]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    let v = &doc["result"]["verdict"];
    assert_eq!(v["status"], "no");
    assert_eq!(v["certificate"]["case"], "opposite-rows");
    let a = parse_matrix_value(&v["certificate"]["a"]);
    let image = parse_matrix_value(&v["certificate"]["violation"]["image"]);
    let x_m = RatMatrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[1, 1, 1]]);
    assert_eq!(x_m.matmul(&a).unwrap(), image);
    assert!(semipos::classify::is_semipositive(&a));
    assert!(!semipos::classify::is_semipositive(&image));
}

#[test]
fn falsify_and_preserver_agree() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.mat", "2 1\n1 1\n");
    let y = write(&dir, "y.mat", "1 0\n0 1\n");
    let out = semipos(&["falsify", "into-msp", "--x", s(&x), "--y", s(&y)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json(&out)["result"]["certificate"]["class"],
        "minimally-semipositive"
    );
    let out = semipos(&["preserver", "into-msp", "--x", s(&x), "--y", s(&y)]);
    assert_eq!(out.status.code(), Some(1));

    // A preserver has nothing to falsify.
    let out = semipos(&["falsify", "into-msp", "--x", s(&y), "--y", s(&y)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["certificate"], Value::Null);
}

#[test]
fn tall_space_outside_theory_is_unknown_or_decided() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.mat", "1 1\n1 1\n");
    let y = write(&dir, "y.mat", "1\n");
    let out = semipos(&[
        "preserver",
        "into-msp",
        "--x",
        s(&x),
        "--y",
        s(&y),
        "--m",
        "2",
        "--n",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    // m < n has no characterization.
    let y3 = write(&dir, "y3.mat", ID3);
    let out = semipos(&["preserver", "into-msp", "--x", s(&x), "--y", s(&y3)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["status"], "unknown");
}

#[test]
fn malformed_file_is_an_input_error_naming_the_line() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.mat", "1 2\n# comment\n3 x\n");
    let out = semipos(&["classify", s(&f)]);
    assert_eq!(out.status.code(), Some(64));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");

    let ragged = write(&dir, "ragged.mat", "1 2\n3\n");
    let out = semipos(&["classify", s(&ragged)]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn non_square_factor_is_an_input_error_naming_the_line() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.mat", "1 0\n0 1\n1 1\n");
    let y = write(&dir, "y.mat", "1\n");
    let out = semipos(&["preserver", "into-sp", "--x", s(&x), "--y", s(&y)]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let out = semipos(&[
        "preserver",
        "into-sp",
        "--x",
        s(&y),
        "--y",
        s(&y),
        "--m",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn bad_arguments_are_input_errors() {
    assert_eq!(
        semipos(&["build", "np", "--v", "1 2"]).status.code(),
        Some(64)
    );
    assert_eq!(semipos(&["frobnicate"]).status.code(), Some(64));
    // v is not mixed.
    let out = semipos(&["build", "np", "--v", "1 2", "--w", "1 1"]);
    assert_eq!(out.status.code(), Some(64));
    assert_eq!(
        semipos(&["fuzz", "no-such-campaign"]).status.code(),
        Some(64)
    );
}

#[test]
fn rationals_round_trip_through_the_report() {
    let dir = TempDir::new().unwrap();
    let text = "1/3 -2/7 0.25\n-5 7/2 1\n2 1 -1/9\n";
    let f = write(&dir, "r.mat", text);
    let out = semipos(&["classify", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    let a = semipos::ratmat::parse_matrix(text).unwrap();
    if let Some(inv) = r["inverse"].as_array() {
        assert!(!inv.is_empty());
        let inv = parse_matrix_value(&r["inverse"]);
        assert!(a.matmul(&inv).unwrap().is_identity());
    }
    for (i, row) in r["semipositivity_vector"]
        .as_array()
        .into_iter()
        .flatten()
        .enumerate()
    {
        let x = parse_rational(row.as_str().unwrap()).unwrap();
        assert_eq!(
            semipos::ratmat::format_rational(&x),
            row.as_str().unwrap(),
            "entry {i}"
        );
    }
}

#[test]
fn witness_and_mixed_sign_outputs_check_out() {
    let dir = TempDir::new().unwrap();
    let neg = write(&dir, "neg.mat", "-1 0\n0 -1\n");
    let out = semipos(&["witness", "sp", s(&neg)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["witness"], "none");

    let x = write(&dir, "x.mat", "1 1\n1 -1\n");
    let out = semipos(&["key1", s(&x)]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let xv: Vec<Rational> = doc["result"]["xv"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| parse_rational(e.as_str().unwrap()).unwrap())
        .collect();
    assert!(xv.iter().all(|e| *e >= Rational::from_integer(0.into())));
}

#[test]
fn fuzz_and_basis_report_summaries() {
    let out = semipos(&["fuzz", "np", "--seed", "3", "--trials", "25"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["result"]["passed"], doc["result"]["checks"]);

    let out = semipos(&["basis", "--m", "2", "--n", "2", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["basis"].as_array().unwrap().len(), 4);
}

#[test]
fn table_mode_prints_matrix_rows() {
    let out = semipos(&["--table", "build", "pos", "--v", "1 0", "--w", "1 1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("status: yes"), "{text}");
    assert!(text.contains("[ "), "{text}");
}
