use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twin-cavity")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn simulate_default_scenario() {
    let o = run(&["simulate"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    let deg = v["relative_phase_deg"].as_f64().unwrap();
    assert!((deg - 131.4).abs() < 2.0, "{deg}");
    let rad = v["relative_phase_rad"].as_f64().unwrap();
    assert!((rad.to_degrees() - deg).abs() < 1e-12);
    assert_eq!(v["feasibility"]["passed"], true);
    for key in ["clock", "kinematics", "closed_form_check", "phases_per_segment"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    for key in ["theta_point", "theta_rigid", "theta_mix", "theta_full"] {
        assert!(v["clock"]["decomposition"][key].is_f64(), "missing {key}");
    }
}

#[test]
fn simulate_zero_acceleration() {
    let o = run(&["simulate", "--acceleration", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["relative_phase_deg"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn simulate_six_centimetre_clock_size() {
    let o = run(&["simulate", "--length", "0.06"]);
    let excess = json(&o)["clock_size_excess_deg"].as_f64().unwrap();
    assert!((excess - 3.0).abs() < 0.5, "{excess}");
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, r#"{"cavity": {"length_m": 0.06}, "trajectory": {"repetitions": 100}}"#).unwrap();
    let p = path.to_str().unwrap();
    let v = json(&run(&["simulate", "--config", p]));
    assert_eq!(v["config"]["cavity"]["length_m"], 0.06);
    assert_eq!(v["config"]["trajectory"]["repetitions"], 100);
    let v = json(&run(&["simulate", "--config", p, "--repetitions", "200"]));
    assert_eq!(v["config"]["trajectory"]["repetitions"], 200);
    assert_eq!(v["config"]["cavity"]["length_m"], 0.06);
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"cavity": {"lenght_m": 0.06}}"#).unwrap();
    let o = run(&["simulate", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lenght_m"));
    assert!(o.stdout.is_empty());

    assert_eq!(run(&["simulate", "--length", "-0.01"]).status.code(), Some(2));
    assert_eq!(run(&["simulate", "--config", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["simulate", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--axis", "length", "--min", "0.02", "--max", "0.01"]).status.code(), Some(2));
}

#[test]
fn outside_wedge_exits_3() {
    let o = run(&["simulate", "--acceleration", "1e19"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Rindler"));
    let o = run(&["waveform", "--dt", "1e-10", "--acceleration", "1e19"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn sweep_csv_is_ordered_and_deterministic() {
    let args = ["sweep", "--axis", "length", "--min", "0.01", "--max", "0.1", "--points", "10"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    let text = stdout(&a);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(
        lines[0],
        "axis_value,relative_phase_rad,relative_phase_deg,theta_point,theta_rigid,theta_mix,theta_full,\
         norm_clock_size,norm_with_dce,norm_particle_creation"
    );
    assert_eq!(lines.len(), 11);
    let axis: Vec<f64> = lines[1..].iter().map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert!(axis.windows(2).all(|w| w[1] > w[0]));
    assert_eq!(stdout(&run(&args)), text);
}

#[test]
fn single_point_sweep_equals_simulate() {
    let sweep = stdout(&run(&["sweep", "--axis", "acceleration", "--min", "1.7e15", "--max", "1.7e15", "--points", "1"]));
    let row: Vec<f64> = sweep.lines().nth(1).unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    let sim = json(&run(&["simulate"]));
    let rad = sim["relative_phase_rad"].as_f64().unwrap();
    assert!((row[1] - rad).abs() <= 1e-11 * rad.abs());
}

#[test]
fn meta_line_only_on_request() {
    let args = ["sweep", "--axis", "repetitions", "--min", "1", "--max", "3", "--points", "3"];
    let plain = stdout(&run(&args));
    assert!(!plain.starts_with('#'));
    let mut with_meta: Vec<&str> = args.to_vec();
    with_meta.push("--meta");
    let meta = stdout(&run(&with_meta));
    let (first, rest) = meta.split_once('\n').unwrap();
    assert!(first.starts_with("# twin-cavity "));
    assert!(first.contains("\"length_m\":0.011"));
    assert_eq!(rest, plain);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let o = run(&["sweep", "--axis", "accel-duration", "--min", "1e-9", "--max", "2e-9", "--points", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(Path::new(&path)).unwrap();
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn validate_default_passes() {
    let o = run(&["validate"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("kind,h,m,n,"));
    // 25 pairs at two values of h, then two order rows
    assert_eq!(text.lines().count(), 1 + 50 + 2);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn validate_negative_controls() {
    let o = run(&["validate", "--h-list", "0.01", "--m-max", "3", "--perturb", "2,1,1.1"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).lines().any(|l| l.starts_with("coefficient,") && l.contains(",2,1,") && l.ends_with(",false")));

    let o = run(&["validate", "--quad-tol", "1e-18"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("quadrature_rel_tol"));

    let o = run(&["validate", "--h-list", "0.01", "--m-max", "2", "--bound-factor", "1e-9"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn waveform_static_and_moving() {
    let o = run(&["waveform", "--dt", "1e-9", "--acceleration", "0", "--repetitions", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r[1..] == rows[0][1..]));

    let o = run(&["waveform", "--dt", "1e-11", "--repetitions", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "time_s,left_pos_m,right_pos_m,left_vel_mps,right_vel_mps");
    let right: Vec<f64> = lines[1..].iter().map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    let peak = right.iter().map(|x| (x - right[0]).abs()).fold(0.0, f64::max);
    assert!((peak - 1.7e-3).abs() < 0.03 * 1.7e-3, "{peak}");
    assert_eq!(run(&["waveform", "--dt", "0"]).status.code(), Some(2));
}
