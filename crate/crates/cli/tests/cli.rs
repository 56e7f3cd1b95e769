use std::process::{Command, Output};

use qsobolev::export::PolyDocument;
use qsobolev::scalar::rat;
use qsobolev::{Poly, QContext, ZRat};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsobolev")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_passes_on_defaults() {
    let o = run(&["verify", "--n-max", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains(", 0 fail,"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn injected_fault_fails_with_witness() {
    let o = run(&["verify", "--n-max", "3", "--inject-fault", "c1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failed: Vec<_> = v["records"].as_array().unwrap().iter().filter(|r| r["status"] == "fail").collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|r| r["witness"].as_str().is_some_and(|w| !w.is_empty())));
}

#[test]
fn unknown_fault_is_a_usage_error() {
    assert_eq!(run(&["verify", "--inject-fault", "nonsense"]).status.code(), Some(2));
}

#[test]
fn bad_parameters_exit_two() {
    assert_eq!(run(&["poly", "--n", "2", "--q", "3/2"]).status.code(), Some(2));
    assert_eq!(run(&["poly", "--n", "2", "--a", "1/2"]).status.code(), Some(2));
    assert_eq!(run(&["poly", "--n", "2", "--q", "half"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n-max", "13"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--backend", "approx"]).status.code(), Some(2));
}

#[test]
fn cap_can_be_raised() {
    let o = Command::new(env!("CARGO_BIN_EXE_qsobolev"))
        .args(["poly", "--n", "13", "--lambda", "0", "--mu", "0", "--family", "asc"])
        .env("QSOBOLEV_NMAX_CAP", "20")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn poly_json_round_trips() {
    let o = run(&["poly", "--n", "2", "--q", "1/3", "--a", "-2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = PolyDocument::from_json(&stdout(&o)).unwrap();
    let ctx = doc.context.to_ctx().unwrap();
    assert_eq!(ctx, QContext::parse("1/3", "-2", "1", "1", 2).unwrap());
    // x² + (-aq - a - q - 1)x + a²q + aq + a + q at q = 1/3, a = -2
    let expect = Poly::<ZRat>::from_rationals(&[rat(-1, 1), rat(4, 3), rat(1, 1)]);
    assert_eq!(doc.to_poly().unwrap(), expect);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let o = run(&["table", "--kind", "recurrence", "--n-max", "2", "--ell", "1", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("n,ell,alpha,beta,gamma"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn plot_data_covers_grid() {
    let o = run(&["plot-data", "--n-list", "1,3", "--grid-points", "11", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 22);
    assert!(rows[0].starts_with("-1,1,"));
    assert!(rows[10].starts_with("1,1,"));
}

#[test]
fn plot_data_backends_agree() {
    let parse = |backend: &str| -> Vec<f64> {
        let o = run(&["plot-data", "--n-max", "3", "--grid-points", "9", "--format", "csv", "--backend", backend]);
        assert_eq!(o.status.code(), Some(0));
        stdout(&o).lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect()
    };
    let (exact, approx) = (parse("exact"), parse("approx"));
    assert_eq!(exact.len(), approx.len());
    for (e, a) in exact.iter().zip(&approx) {
        assert!((e - a).abs() <= 1e-9 * e.abs().max(1e-12), "{e} vs {a}");
    }
}

#[test]
fn jfrac_convergents_all_equal() {
    let o = run(&["jfrac", "--n-max", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2 * 2 * 4);
    assert!(rows.iter().all(|r| r["equal"] == true));
}

#[test]
fn norms_table_text() {
    let o = run(&["table", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
}
