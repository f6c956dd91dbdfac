use std::path::PathBuf;
use std::process::{Command, Output};

fn geophase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geophase")).args(args).output().expect("spawn geophase")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).filter(|l| !l.starts_with('#')).map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

fn footer(text: &str, key: &str) -> f64 {
    let tag = format!("{key}=");
    let start = text.find(&tag).unwrap_or_else(|| panic!("no {key} in output")) + tag.len();
    let rest = &text[start..];
    let end = rest.find([' ', '\n', ',']).unwrap_or(rest.len());
    rest[..end].parse().unwrap()
}

fn sequence(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "sequences", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn theory_quarter_turn() {
    let o = geophase(&["theory", "--omega", "pi/2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("n,r,gamma_rad,visibility"));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 12);
    let gamma0: f64 = rows[0][2].parse().unwrap();
    assert!((gamma0 - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    let v6: f64 = rows[6][3].parse().unwrap();
    assert!((v6 - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
}

#[test]
fn theory_full_turn_is_pi_everywhere() {
    let o = geophase(&["theory", "--omega", "2pi"]);
    assert_eq!(o.status.code(), Some(0));
    for row in data_rows(&stdout(&o)) {
        let g: f64 = row[2].parse().unwrap();
        assert!((g.abs() - std::f64::consts::PI).abs() < 1e-12, "row {row:?}");
    }
}

#[test]
fn sweep_over_three_angles() {
    let o = geophase(&["sweep", "--theta", "pi/8,pi/4,3pi/8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(
        text.lines().next(),
        Some("omega_rad,theta_rad,n,r,gamma_sim_rad,gamma_theory_rad,visibility_sim,visibility_theory,residual_rad,defined")
    );
    assert_eq!(data_rows(&text).len(), 36);
    assert!(footer(&text, "max_abs_residual_rad") <= 1e-9);
}

#[test]
fn sweep_json_marks_the_null_row() {
    let o = geophase(&["--format", "json", "sweep", "--theta", "pi/4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let row6 = &v["rows"][6];
    assert_eq!(row6["n"], 6);
    assert_eq!(row6["defined"], false);
    assert_eq!(v["rows"].as_array().unwrap().len(), 12);
}

#[test]
fn relaxation_budget_is_reported() {
    let o = geophase(&["sweep", "--theta", "pi/4", "--relaxation", "0.3,0.4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("visibility loss"));
    let loss = footer(&stdout(&o), "max_visibility_error");
    assert!(loss > 0.016 && loss < 0.03, "loss {loss}");
}

#[test]
fn missing_theta_is_a_usage_error() {
    assert_eq!(geophase(&["sweep", "--theta"]).status.code(), Some(2));
    assert_eq!(geophase(&["sweep"]).status.code(), Some(2));
    assert_eq!(geophase(&["simulate", "--theta", "pi/5", "--n", "x"]).status.code(), Some(2));
}

#[test]
fn traced_loop_subtends_pi() {
    let o = geophase(&["trace-path", "--theta", "pi/4", "--branch", "plus"]);
    assert_eq!(o.status.code(), Some(0));
    let omega = footer(&stdout(&o), "solid_angle_rad");
    assert!((omega - std::f64::consts::PI).abs() < 1e-5, "{omega}");
}

#[test]
fn transport_check_passes_and_detects_perturbation() {
    let ok = geophase(&["check-transport", "--theta", "pi/8"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("# PASS"));
    let bad = geophase(&["check-transport", "--theta", "pi/8", "--perturb", "0.01"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("# FAIL"));
}

#[test]
fn parse_reports_event_count() {
    let o = geophase(&["parse", &sequence("prep_pure.pulse")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("events=6"));
    assert_eq!(footer(&text, "total_duration_per_j"), 0.5);
}

#[test]
fn parse_rejects_unknown_spin() {
    let dir = std::env::temp_dir().join(format!("geophase-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.pulse");
    std::fs::write(&path, "pulse c x 90deg\n").unwrap();
    let o = geophase(&["parse", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1:7") && stderr(&o).contains("'c'"), "{}", stderr(&o));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["sweep", "--theta", "pi/8,pi/4,3pi/8"];
    let first = geophase(&args);
    let serial =
        Command::new(env!("CARGO_BIN_EXE_geophase")).args(args).env("RAYON_NUM_THREADS", "1").output().unwrap();
    assert_eq!(first.stdout, serial.stdout);
    assert_eq!(first.stdout, geophase(&args).stdout);
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("geophase-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("theory.csv");
    let piped = geophase(&["theory", "--omega", "3pi/2"]);
    let written = geophase(&["--output", path.to_str().unwrap(), "theory", "--omega", "3pi/2"]);
    assert_eq!(written.status.code(), Some(0));
    assert!(written.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), piped.stdout);
}
