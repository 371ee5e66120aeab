use std::f64::consts::PI;
use std::process::{Command, Output};
use std::time::Instant;

use serde_json::Value;

fn spinharm(args: &[&str]) -> Output {
    spinharm_env(args, &[])
}

fn spinharm_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spinharm"));
    cmd.args(args).env_remove("SPINHARM_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn eval_raw(args: &[&str]) -> (f64, f64) {
    let o = spinharm(&[&["eval"], args, &["--format", "json"]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    (v["raw"]["re"].as_f64().unwrap(), v["raw"]["im"].as_f64().unwrap())
}

#[test]
fn eval_examples() {
    let (re, im) = eval_raw(&["1/2", "1/2", "pi/2", "0"]);
    assert!((re - 1.0).abs() < 1e-15 && im.abs() < 1e-15);
    let (re, im) = eval_raw(&["1", "0", "pi/2", "1.23"]);
    assert!(re.abs() < 1e-15 && im.abs() < 1e-15);
    let (re, im) = eval_raw(&["5/2", "1/2", "pi/3", "0"]);
    assert!(re.abs() < 1e-14 && im.abs() < 1e-15);
    let (re, im) = eval_raw(&["2.5", "-1/2", "1.0", "0.25"]);
    let want = 1.0f64.sin().sqrt() * (1.0 - 4.0 * 1.0f64.cos().powi(2));
    assert!((re - want * (-0.125f64).cos()).abs() < 1e-14);
    assert!((im - want * (-0.125f64).sin()).abs() < 1e-14);
}

#[test]
fn eval_text_output() {
    let o = spinharm(&["eval", "1/2", "1/2", "pi/2", "0"]);
    assert_eq!(stdout(&o), "l,m,theta,phi,raw,normalized\n1/2,1/2,1.5707963267948966,0,1+0i,0.22507907903927651+0i\n");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["eval", "1/2", "1/2", "0", "0"][..],
        &["eval", "1/2", "1/2", "pi", "0"],
        &["eval", "1/2", "1/2", "-pi/2", "0"],
        &["eval", "1/2", "3/2", "1", "0"],
        &["eval", "1/2", "0.3", "1", "0"],
        &["verify", "bogus"],
        &["verify", "oracle", "--h", "0.5"],
        &["verify", "oracle", "--lmax", "3/2", "--nodes", "2"],
        &["table", "--lmax", "27/2"],
        &["table", "--lmax", "-1/2"],
        &["plotdata", "1/2", "1/2", "--ntheta", "0"],
        &["frobnicate"],
    ] {
        let o = spinharm(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(spinharm(&["--help"]).status.code(), Some(0));
}

#[test]
fn cap_from_environment() {
    let o = spinharm_env(&["table", "--lmax", "3/2"], &[("SPINHARM_CAP", "1")]);
    assert_eq!(o.status.code(), Some(2));
    let o = spinharm_env(&["table"], &[("SPINHARM_CAP", "1")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o).as_array().unwrap().len(), 1 + 2 + 3);
    let o = spinharm_env(&["table", "--lmax", "27/2"], &[("SPINHARM_CAP", "27/2")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(spinharm_env(&["table"], &[("SPINHARM_CAP", "nope")]).status.code(), Some(2));
}

fn record(table: &Value, l2: i64, m2: i64) -> &Value {
    table.as_array().unwrap().iter().find(|r| r["l2"] == l2 && r["m2"] == m2).unwrap()
}

#[test]
fn table_up_to_five_halves() {
    let o = spinharm(&["table", "--lmax", "5/2"]);
    assert_eq!(o.status.code(), Some(0));
    let t = json(&o);
    let rows = t.as_array().unwrap();
    let half = rows.iter().filter(|r| r["l2"].as_i64().unwrap() % 2 == 1).count();
    assert_eq!(half, 12);
    assert_eq!(rows.len(), 12 + 1 + 3 + 5);
    let y = record(&t, 5, 1);
    assert_eq!(y["poly"], serde_json::json!(["1", "0", "-4"]));
    assert_eq!(y["phiPeriod"], "4pi");
    assert_eq!(record(&t, 2, 0)["phiPeriod"], "2pi");
    let y = record(&t, 1, 1);
    assert_eq!(y["normSq"], serde_json::json!({"rat": "0", "pi": "0", "pi2": "2"}));
    assert!((y["normConst"].as_f64().unwrap() - 1.0 / (2.0 * PI * PI).sqrt()).abs() < 1e-15);
    let y = record(&t, 3, -3);
    assert_eq!(y["exprJSON"], serde_json::json!([{"coeff": {"re": "1", "im": "0"}, "sin2": 3, "cos": 0, "phi2": -3}]));
    assert!(String::from_utf8_lossy(&o.stderr).contains("4pi for half-odd-integer m"));
}

#[test]
fn table_edge_cases() {
    let t = json(&spinharm(&["table", "--lmax", "0"]));
    assert_eq!(t.as_array().unwrap().len(), 1);
    assert_eq!(t[0]["poly"], serde_json::json!(["1"]));
    let t = json(&spinharm(&["table", "--lmax", "7/2"]));
    // proportional to 3 cos - 6 cos^3
    assert_eq!(record(&t, 7, 1)["poly"], serde_json::json!(["0", "1", "0", "-2"]));
    assert_eq!(record(&t, 7, -1)["poly"], serde_json::json!(["0", "1", "0", "-2"]));
}

#[test]
fn table_csv_to_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = spinharm(&["table", "--lmax", "3/2", "--format", "csv", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let mut reader = csv::Reader::from_path(dir.path().join("harmonics.csv")).unwrap();
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers[0], "l");
    assert_eq!(&headers[6], "expr");
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1 + 2 + 3 + 4);
    let spin_half = rows.iter().find(|r| &r[0] == "1/2" && &r[1] == "-1/2").unwrap();
    let expr: Value = serde_json::from_str(&spin_half[6]).unwrap();
    assert_eq!(expr[0]["phi2"], -1);
    assert_eq!(&spin_half[9], "2");
}

#[test]
fn verify_ladder_reproduces_reference_table() {
    let o = spinharm(&["verify", "ladder", "--lmax", "5/2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = json(&o);
    assert_eq!(s["failures"], 0);
    let golden = s["sections"].as_array().unwrap().iter().find(|x| x["name"] == "ladder-golden").unwrap();
    assert_eq!(golden["checks"], 24);
    assert!(s["notes"].as_array().unwrap().iter().any(|n| n.as_str().unwrap().contains("bounded range")));
}

#[test]
fn verify_eigen_full_range() {
    let o = spinharm(&["verify", "eigen"]);
    assert_eq!(o.status.code(), Some(0));
    let s = json(&o);
    assert_eq!(s["lMax"], "25/2");
    assert_eq!(s["totalChecks"], 351);
    assert_eq!(s["failures"], 0);
}

#[test]
fn verify_all_smallest_sweep() {
    let start = Instant::now();
    let o = spinharm(&["verify", "all", "--lmax", "1/2"]);
    let elapsed = start.elapsed();
    assert_eq!(o.status.code(), Some(0));
    let s = json(&o);
    assert_eq!(s["failures"], 0);
    assert!(s["totalChecks"].as_u64().unwrap() > 100);
    assert!(elapsed.as_secs_f64() < 1.0, "{elapsed:?}");
}

#[test]
fn verification_failure_exits_1() {
    // A step this small drowns second differences in roundoff.
    let o = spinharm(&["verify", "oracle", "--lmax", "3/2", "--h", "1e-6"]);
    assert_eq!(o.status.code(), Some(1));
    let s = json(&o);
    assert!(s["failures"].as_u64().unwrap() > 0);
    assert!(s["failures"].as_u64().unwrap() <= s["totalChecks"].as_u64().unwrap());
}

#[test]
fn verify_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = spinharm(&["verify", "oracle", "--lmax", "3/2", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let summary: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary, json(&o));
    for section in summary["sections"].as_array().unwrap() {
        let path = dir.path().join(section["details"].as_str().unwrap());
        let text = std::fs::read_to_string(path).unwrap();
        assert!(text.ends_with('\n'));
        let rows: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(rows.as_array().unwrap().len() as u64, section["checks"].as_u64().unwrap());
    }
    let oracle: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("oracle.json")).unwrap()).unwrap();
    let row = &oracle[0];
    for key in ["op", "l2", "m2", "maxRelError", "worstTheta", "worstPhi", "samples", "h"] {
        assert!(row.get(key).is_some(), "{key}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [&["verify", "all", "--lmax", "3/2"][..], &["table", "--lmax", "7/2"]] {
        let one = spinharm_env(args, &[("RAYON_NUM_THREADS", "1")]);
        let many = spinharm_env(args, &[("RAYON_NUM_THREADS", "4")]);
        let again = spinharm_env(args, &[("RAYON_NUM_THREADS", "4")]);
        assert_eq!(one.stdout, many.stdout, "{args:?}");
        assert_eq!(many.stdout, again.stdout, "{args:?}");
    }
}

fn plot(args: &[&str]) -> Vec<Vec<f64>> {
    let o = spinharm(&[&["plotdata"], args].concat());
    assert_eq!(o.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(reader.headers().unwrap(), vec!["theta", "phi", "re", "im", "abs2"]);
    reader.records().map(|r| r.unwrap().iter().map(|x| x.parse().unwrap()).collect()).collect()
}

#[test]
fn plot_spin_half() {
    let rows = plot(&["1/2", "1/2", "--ntheta", "5", "--nphi", "9"]);
    assert_eq!(rows.len(), 45);
    for chunk in rows.chunks(9) {
        let first = chunk[0][4];
        assert!(chunk.iter().all(|r| (r[4] - first).abs() < 1e-14));
        assert!(chunk.iter().all(|r| r[0] == chunk[0][0]));
    }
    let last_phi = rows[8][1];
    assert!((last_phi - 4.0 * PI * 8.0 / 9.0).abs() < 1e-12);
}

#[test]
fn plot_constant_and_sign_flip() {
    let rows = plot(&["0", "0", "--ntheta", "3", "--nphi", "3"]);
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r[2] == 1.0 && r[3] == 0.0 && r[4] == 1.0));
    // 8 samples over 4 pi: row j + 4 sits at phi + 2 pi.
    let rows = plot(&["3/2", "1/2", "--ntheta", "4", "--nphi", "8"]);
    for chunk in rows.chunks(8) {
        for j in 0..4 {
            assert!((chunk[j + 4][1] - chunk[j][1] - 2.0 * PI).abs() < 1e-12);
            assert!((chunk[j + 4][2] + chunk[j][2]).abs() < 1e-12);
            assert!((chunk[j + 4][3] + chunk[j][3]).abs() < 1e-12);
        }
    }
}

#[test]
fn plot_to_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = spinharm(&["plotdata", "3/2", "-1/2", "--ntheta", "2", "--nphi", "4", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("plot_3_-1.csv")).unwrap();
    assert_eq!(text.lines().count(), 1 + 8);
}
