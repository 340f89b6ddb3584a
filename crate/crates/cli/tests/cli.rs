use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn entdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entdist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("UTF-8 output")
}

fn ok(args: &[&str]) -> String {
    let out = entdist(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("scenario,axis1,axis2,e_in,e_com,e_fin,delta_e,classification")
    );
    lines.map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).expect("JSON output")
}

#[test]
fn fig3_has_one_row_per_grid_point_and_no_initial_entanglement() {
    let rows = data_rows(&ok(&["figure", "fig3"]));
    assert_eq!(rows.len(), 101);
    assert!(rows.iter().all(|r| r[3] == "0"));
}

#[test]
fn step_override_changes_resolution() {
    assert_eq!(data_rows(&ok(&["figure", "fig4", "--step", "0.005"])).len(), 201);
}

#[test]
fn pinned_channel_gives_two_axis_grids() {
    let rows = data_rows(&ok(&["figure", "fig7", "--channel", "dephasing:0.3"]));
    assert_eq!(rows.len(), 2 * 101);
    assert!(rows.iter().all(|r| r[2] == "0.3"));
    assert!(rows.iter().all(|r| r[0].starts_with("indirect/dephasing/")));
}

#[test]
fn figure_output_is_reproducible_across_schedules() {
    let a = ok(&["figure", "fig5"]);
    let b = ok(&["figure", "fig5"]);
    let c = ok(&["--sequential", "figure", "fig5"]);
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert!(!a.contains('\r'));
}

#[test]
fn gnuplot_script_is_written_next_to_the_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fig4.csv");
    ok(&["figure", "fig4", "--out", csv.to_str().unwrap(), "--gnuplot"]);
    let script = fs::read_to_string(dir.path().join("fig4.gp")).unwrap();
    assert!(script.contains("plot 'fig4.csv'"));
    assert_eq!(entdist(&["figure", "fig4", "--gnuplot"]).status.code(), Some(2));
}

#[test]
fn table1_shows_both_regimes() {
    let text = ok(&["table1"]);
    let row = |q: &str| {
        text.lines()
            .find(|l| l.split_whitespace().next() == Some(q))
            .unwrap()
            .split_whitespace()
            .skip(1)
            .collect::<Vec<_>>()
    };
    assert_eq!(row("0.3"), ["PPT", "PPT", "PPT", "NPT", "NPT", "NPT"]);
    assert_eq!(row("0.7"), ["NPT", "NPT", "PPT", "NPT", "NPT", "NPT"]);
    assert_eq!(text, ok(&["table1"]));

    let csv = ok(&["table1", "--q", "0.5", "--csv"]);
    let boundary = csv.lines().find(|l| l.contains(",2:1345,")).unwrap();
    let n: f64 = boundary.split(',').nth(2).unwrap().parse().unwrap();
    assert!(n.abs() < 1e-6);
}

#[test]
fn protocol_examples() {
    let r = json(&["protocol", "ame", "--q", "0.45", "--grouping", "1,4,5:2:3"]);
    assert_eq!(r["classification"], "Excessive");
    assert_eq!(r["measure"], "log_negativity");

    let r = json(&["protocol", "indirect", "--p", "0.34", "--s", "1", "--channel", "identity"]);
    assert_eq!(r["classification"], "NonExcessive");

    let r = json(&["protocol", "ame", "--q", "0", "--grouping", "2,4,5:1:3"]);
    assert_eq!(r["classification"], "NonExcessive");
    let gap = r["delta_e"].as_f64().unwrap() - r["e_com"].as_f64().unwrap();
    assert!(gap.abs() < 1e-9);

    let r = json(&["protocol", "direct_then_indirect", "--p", "0.5", "--s", "1", "--channel", "depolarizing:0.2"]);
    assert!(r["e_after_direct"].is_number());
    let r = json(&["protocol", "noisy_labs", "--p", "0.34", "--channel", "ad:0.2", "--local-delta", "0.1"]);
    assert_eq!(r["parameters"]["local_delta"], 0.1);
}

#[test]
fn invalid_input_exits_with_usage_code() {
    for args in [
        vec!["protocol", "ame", "--q", "0.3", "--grouping", "1:2"],
        vec!["protocol", "ame", "--q", "1.5"],
        vec!["protocol", "ame"],
        vec!["protocol", "indirect", "--p", "0.3", "--s", "0.5", "--q", "0.2"],
        vec!["protocol", "indirect", "--p", "0.3", "--s", "0.5", "--channel", "warp:0.1"],
        vec!["figure", "fig8"],
        vec!["figure", "fig4", "--step", "0"],
        vec!["verify", "everything"],
        vec!["search", "--da", "3", "--trials", "0"],
        vec!["table1", "--bogus"],
    ] {
        let out = entdist(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_reports_golden_checks_and_honours_tolerance() {
    let text = stdout(&entdist(&["verify", "paper"]));
    assert!(text.contains("PASS [ 1]"));
    assert!(text.contains("PASS [ 2]"));

    let strict = entdist(&["verify", "paper", "--tol", "1e-15"]);
    assert_eq!(strict.status.code(), Some(1));
    assert!(stdout(&strict).contains("FAIL [ 2]"));
}

#[test]
fn verify_properties_is_deterministic() {
    let args = ["verify", "properties", "--trials", "40", "--seed", "7"];
    assert_eq!(stdout(&entdist(&args)), stdout(&entdist(&args)));
}

fn witness_files(dir: &Path) -> Vec<(String, String)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let path = e.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&path).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn search_writes_reproducible_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = (dir.path().join("a"), dir.path().join("b"), dir.path().join("c"));

    ok(&["search", "--da", "2", "--trials", "1000", "--residual", "theorem1", "--out", a.to_str().unwrap()]);
    assert!(witness_files(&a).is_empty());

    let qutrit = ["search", "--da", "3", "--trials", "400", "--seed", "3"];
    ok(&[&qutrit[..], &["--out", b.to_str().unwrap()]].concat());
    ok(&[&qutrit[..], &["--out", c.to_str().unwrap()], &["--sequential"]].concat());
    let found = witness_files(&b);
    assert!(!found.is_empty());
    assert_eq!(found, witness_files(&c));

    let w: Value = serde_json::from_str(&found[0].1).unwrap();
    assert_eq!(w["dims"], serde_json::json!([3, 2, 2]));
    assert!(w["residual"].as_f64().unwrap() < -1e-9);
    assert_eq!(w["re"].as_array().unwrap().len(), 12);
}

#[test]
fn thread_count_comes_from_the_environment() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_entdist"))
            .args(["figure", "fig3"])
            .env("ENTDIST_THREADS", threads)
            .output()
            .unwrap()
    };
    assert_eq!(run("1").stdout, run("3").stdout);
    assert_eq!(run("many").status.code(), Some(2));
}
