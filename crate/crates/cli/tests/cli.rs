use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use skewbound::{formats, quantum};

fn skewbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("skewbound-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_channels(q: f64) -> Vec<String> {
    quantum::example_channels(q)
        .unwrap()
        .iter()
        .map(|ch| {
            let path = scratch(&format!("{}-{q}.json", ch.name()));
            fs::write(&path, formats::channel_to_json(ch).to_string()).unwrap();
            path.to_string_lossy().into_owned()
        })
        .collect()
}

#[test]
fn table1_passes_and_writes_csv() {
    let csv = scratch("table1.csv");
    let o = skewbound(&["table1", "--out", csv.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("PASS: 28 values"), "{text}");
    assert!(text.contains("0.258817"));
    let written = fs::read_to_string(csv).unwrap();
    assert_eq!(written.lines().count(), 5);
}

#[test]
fn sweep_grid_and_header() {
    let o = skewbound(&["sweep", "--q", "0.2", "--steps", "5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theta,sum,ob1,ob2,ob3,lb1,lb2,lb3");
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("0,"));
    assert!(lines[5].starts_with("3.14159265"));
    let mid: Vec<f64> = lines[3].split(',').map(|v| v.parse().unwrap()).collect();
    assert!((mid[1] - 0.283955).abs() < 5e-6);
}

#[test]
fn sweep_rejects_bad_parameters() {
    let o = skewbound(&["sweep", "--alpha", "0.9", "--beta", "0.5"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("error"));
    let o = skewbound(&["sweep", "--steps", "1"]);
    assert!(!o.status.success());
    let o = skewbound(&["sweep", "--q", "1.5"]);
    assert!(!o.status.success());
}

#[test]
fn unitary_sweep_variants() {
    let a = skewbound(&["unitary-sweep", "--steps", "3"]);
    let b = skewbound(&["unitary-sweep", "--steps", "3", "--printed-u3"]);
    assert!(a.status.success() && b.status.success());
    assert!(stdout(&a).starts_with("theta,sum,lb1,lb2,lb3\n"));
    assert!(stderr(&a).contains("grid points"));
    let first_a = stdout(&a).lines().nth(1).unwrap().to_string();
    let first_b = stdout(&b).lines().nth(1).unwrap().to_string();
    assert!(first_a.starts_with("0,0.0516051439"), "{first_a}");
    assert!(first_b.starts_with("0,0.201993554"), "{first_b}");
}

#[test]
fn bounds_report_for_channel_files() {
    let files = write_channels(0.4);
    let mut args = vec!["bounds", "--bloch", "0,0.8660254037844386,0"];
    args.extend(files.iter().map(String::as_str));
    let o = skewbound(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((report["sum"].as_f64().unwrap() - 0.258817).abs() < 5e-6);
    assert!((report["lb3"].as_f64().unwrap() - 0.252654).abs() < 5e-6);
    assert_eq!(report["tuples_searched"].as_u64(), Some(4));
}

#[test]
fn bounds_with_density_file() {
    let files = write_channels(0.2);
    let rho =
        quantum::equatorial_state(quantum::CHANNEL_EXAMPLE_RADIUS, std::f64::consts::FRAC_PI_2)
            .unwrap();
    let rho_path = scratch("rho.json");
    fs::write(&rho_path, formats::density_to_json(&rho).to_string()).unwrap();
    let mut args = vec!["bounds", "--rho", rho_path.to_str().unwrap()];
    args.extend(files.iter().map(String::as_str));
    let o = skewbound(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((report["sum"].as_f64().unwrap() - 0.283955).abs() < 5e-6);
}

#[test]
fn bounds_reports_malformed_entry() {
    let bad = scratch("bad.json");
    fs::write(
        &bad,
        r#"{"name": "x", "kraus": [[[[1, 0], [0, 0]], [[0, 0], [1]]]]}"#,
    )
    .unwrap();
    let good = write_channels(0.4);
    let o = skewbound(&[
        "bounds",
        "--bloch",
        "0,0,0.5",
        bad.to_str().unwrap(),
        &good[0],
    ]);
    assert!(!o.status.success());
    let err = stderr(&o);
    assert!(
        err.contains("kraus[0][1][1]") && err.contains("imaginary"),
        "{err}"
    );
}

#[test]
fn bounds_needs_two_channels_and_a_state() {
    let good = write_channels(0.4);
    assert!(!skewbound(&["bounds", "--bloch", "0,0,0.5", &good[0]])
        .status
        .success());
    assert!(!skewbound(&["bounds", &good[0], &good[1]]).status.success());
    let o = skewbound(&["bounds", "--bloch", "0,0,1.5", &good[0], &good[1]]);
    assert!(!o.status.success());
}

#[test]
fn selftest_passes() {
    let o = skewbound(&["selftest", "--seed", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}
