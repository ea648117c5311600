use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_susy-pct"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("susy-pct-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn partner_column(csv: &str) -> Vec<String> {
    csv.lines().skip(1).map(|l| l.split(',').nth(2).unwrap().to_string()).collect()
}

fn report(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

#[test]
fn spectrum_of_square_root_family() {
    let o = run(&["spectrum", "--model", "ho-sqrt", "--n-max", "2"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "n,seed_energy,partner_energy,sigma_n\n0,0.5,0,0.5\n1,1.5,7.11111111111111,1.5\n2,2.5,7.68,2.5\n"
    );
}

#[test]
fn energy_dependent_spectrum_reduces_at_zero_lambda() {
    let sqrt = run(&["spectrum", "--model", "ho-sqrt", "--n-max", "2"]);
    let edp = run(&["spectrum", "--model", "edp", "--lambda", "0", "--n-max", "2"]);
    assert_eq!(partner_column(&stdout(&sqrt)), partner_column(&stdout(&edp)));
}

#[test]
fn identity_spectrum_is_evenly_spaced() {
    let o = run(&["spectrum", "--model", "ho-identity", "--n-max", "3"]);
    assert_eq!(partner_column(&stdout(&o)), ["0", "2", "4", "6"]);
}

#[test]
fn spectrum_json_table() {
    let o = run(&["spectrum", "--n", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["columns"][2], "partner_energy");
    assert!((v["rows"][0][2].as_f64().unwrap() - 64.0 / 9.0).abs() < 1e-14);
}

#[test]
fn configuration_errors_exit_with_two() {
    assert_eq!(run(&["spectrum", "--grid", "1:0:10"]).status.code(), Some(2));
    assert_eq!(run(&["wavefn", "--branch", "sideways"]).status.code(), Some(2));
    assert_eq!(run(&["wavefn", "--model", "edp", "--branch", "plus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--m", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["wavefn", "--branch", "minus", "--grid", "-1:1:5"]).status.code(), Some(2));
}

#[test]
fn minus_densities_vanish_at_origin() {
    let o = run(&["wavefn", "--branch", "minus", "--n", "0..3", "--grid", "0.001:8:8001"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4 * 8001 + 1);
    for n in 0..4 {
        let first: f64 = text
            .lines()
            .find(|l| l.starts_with(&format!("{n},0.001,")))
            .and_then(|l| l.split(',').nth(3))
            .unwrap()
            .parse()
            .unwrap();
        assert!(first < 0.5, "n={n} density {first}");
    }
}

#[test]
fn plus_even_densities_grow_toward_origin() {
    let o = run(&["wavefn", "--branch", "plus", "--n", "0,2", "--grid", "0.0001:1:11", "--wide"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "x,phi_0,density_0,phi_2,density_2");
    let first: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    let second: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert!(first[2] > second[2] && first[4] > second[4]);
}

#[test]
fn riccati_suite_passes() {
    let o = run(&["verify", "--suite", "riccati"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["overall"], true);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["id"].as_str().unwrap().starts_with("riccati.")));
}

#[test]
fn intertwine_suite_passes() {
    let o = run(&["verify", "--suite", "intertwine", "--n-max", "5"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn printed_argument_regression_suite_passes() {
    let o = run(&["verify", "--suite", "eq20-regression"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    let printed = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "eq20-regression.printed_residual_n2")
        .unwrap();
    assert!(printed["value"].as_f64().unwrap() > 1e-2);
}

#[test]
fn mixed_parity_overlaps_fail_normalization_suite() {
    let o = run(&["verify", "--suite", "normalization", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let r = report(&o);
    assert_eq!(r["overall"], false);
    let failed: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["normalization.overlap_mixed_parity"]);
}

#[test]
fn csv_report_format() {
    let o = run(&["verify", "--suite", "spectrum", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "id,value,tolerance,passed\nspectrum.anchors,0,1e-12,true\nspectrum.formula,0,1e-12,true\n"
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["wavefn", "--branch", "plus", "--n", "1,3", "--grid", "0.01:4:400"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["verify", "--suite", "edp,spectrum"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn flags_override_config_file() {
    let dir = scratch("config");
    let path = dir.join("run.json");
    std::fs::write(&path, r#"{"model": "ho-identity", "n_max": 1, "format": "json"}"#).unwrap();
    let p = path.to_str().unwrap();
    let from_file = run(&["spectrum", "--config", p]);
    let v: serde_json::Value = serde_json::from_slice(&from_file.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    let overridden = run(&["spectrum", "--config", p, "--format", "csv", "--model", "ho-sqrt"]);
    assert_eq!(
        stdout(&overridden),
        "n,seed_energy,partner_energy,sigma_n\n0,0.5,0,0.5\n1,1.5,7.11111111111111,1.5\n"
    );
    std::fs::write(&path, r#"{"colour": "blue"}"#).unwrap();
    assert_eq!(run(&["spectrum", "--config", p]).status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn export_writes_figure_data() {
    let dir = scratch("export");
    let out = dir.join("figs");
    let o = run(&["export", "--out", out.to_str().unwrap(), "--grid", "0.001:8:801"]);
    assert!(o.status.success());
    for name in ["fig1_minus.csv", "fig2_plus_even.csv", "fig3_plus_odd.csv", "spectrum.csv"] {
        let text = std::fs::read_to_string(out.join(name)).unwrap();
        assert!(text.len() > 20, "{name}");
    }
    let fig2 = std::fs::read_to_string(out.join("fig2_plus_even.csv")).unwrap();
    assert_eq!(fig2.lines().count(), 4 * 801 + 1);
    assert!(fig2.lines().skip(1).all(|l| ["0,", "2,", "4,", "6,"].iter().any(|p| l.starts_with(p))));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn riccati_profile_columns() {
    let o = run(&["riccati", "--grid", "0.5:5:10"]);
    let text = stdout(&o);
    assert!(text.starts_with("x,xi,w,residual\n"));
    for line in text.lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        assert!((cols[1] - 2.0 * 2f64.sqrt()).abs() < 1e-14);
        assert!(cols[3].abs() < 1e-12);
    }
    assert_eq!(run(&["riccati", "--model", "ho-identity"]).status.code(), Some(2));
}

#[test]
fn riccati_general_member_is_clipped_at_pole() {
    // C = 5 puts the pole inside [0.05, 2]
    let o = run(&["riccati", "--constant", "5", "--grid", "0.05:2:40"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let first_x: f64 = text.lines().nth(1).unwrap().split(',').next().unwrap().parse().unwrap();
    assert!(first_x > 0.05);
    assert!(String::from_utf8(o.stderr).unwrap().contains("pole"));
}
