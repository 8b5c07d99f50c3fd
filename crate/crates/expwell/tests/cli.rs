use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

const ROOT2: &str = "1.4142135624";

fn expwell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_expwell"))
        .args(args)
        .env_remove("EXPWELL_THREADS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = expwell(&a);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

fn f(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let headers = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (headers, rows)
}

#[test]
fn solve_reproduces_ground_state_bracket() {
    let v = json(&["solve", "--g", ROOT2, "--n", "0", "--tol", "1e-6"]);
    let e = f(&v["results"]["state"]["energy"]);
    assert!(e > -0.81721 && e < -0.81720);
    assert_eq!(v["results"]["state"]["certified"], true);
}

#[test]
fn json_report_layout() {
    let v = json(&["solve", "--g", ROOT2, "--n", "0"]);
    assert_eq!(v["schema"], "expwell.run/1");
    assert_eq!(v["command"], "solve");
    assert!(v["wall_time_ms"].is_u64());
    assert!(v["versions"]["envelope"]["g_max"].is_number());
    let b = v["results"]["state"]["energy_bracket"].as_array().unwrap();
    assert_eq!(b.len(), 2);
    assert!(f(&b[0]) < f(&b[1]));
    let e = f(&v["results"]["state"]["energy"]);
    assert!(f(&b[0]) <= e && e <= f(&b[1]));
}

#[test]
fn envelope_violation_exits_three() {
    let o = expwell(&["solve", "--g", "25", "--n", "0"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("--g"));
}

#[test]
fn domain_errors_exit_two() {
    let o = expwell(&["solve", "--g", "-1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--g"));
    let o = expwell(&["solve", "--g", "0.3", "--n", "1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("no bound state"));
    let o = expwell(&["solve", "--g", "1", "--tol", "1e-14"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--tol"));
}

#[test]
fn error_report_in_json() {
    let o = expwell(&["solve", "--g", "25", "--format", "json"]);
    assert_eq!(code(&o), 3);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"]["error"]["code"], 3);
}

#[test]
fn g_squared_is_equivalent() {
    let a = json(&["solve", "--g-squared", "2", "--n", "1"]);
    let b = json(&["solve", "--g", "1.4142135623730951", "--n", "1"]);
    assert_eq!(a["results"]["state"], b["results"]["state"]);
    let o = expwell(&["solve", "--g", "1", "--g-squared", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn spectrum_is_ordered() {
    let v = json(&["spectrum", "--g", "5", "--nmax", "6"]);
    let states = v["results"]["states"].as_array().unwrap();
    assert_eq!(states.len(), 6);
    assert_eq!(v["results"]["count"], 6);
    for (i, s) in states.iter().enumerate() {
        assert_eq!(s["n"], i);
        assert_eq!(s["parity"], if i % 2 == 0 { "even" } else { "odd" });
        if i > 0 {
            assert!(f(&states[i - 1]["energy"]) < f(&s["energy"]));
        }
    }
}

#[test]
fn spectrum_matches_solve() {
    let a = json(&["spectrum", "--g", ROOT2, "--nmax", "0"]);
    let b = json(&["solve", "--g", ROOT2, "--n", "0"]);
    assert_eq!(a["results"]["states"][0], b["results"]["state"]);
}

#[test]
fn spectrum_against_reference() {
    let v = json(&["spectrum", "--g", "5", "--nmax", "6", "--check-oracle"]);
    let o = &v["results"]["oracle"];
    assert_eq!(o["all_agree"], true);
    for l in o["levels"].as_array().unwrap() {
        assert!(f(&l["delta"]) <= 1e-4);
    }
    let t = stdout(&expwell(&["spectrum", "--g", "5", "--nmax", "6", "--check-oracle"]));
    assert!(t.lines().next().unwrap().contains("delta"));
}

#[test]
fn figure_one_constants_from_cli() {
    let v = json(&["hobound", "--g", ROOT2, "--omega", "1", "--n", "0"]);
    let e = &v["results"]["estimate"];
    assert!((f(&e["shift"]) - 1.455_938_091).abs() < 1e-8);
    assert!((f(&e["bound"]) + 0.455_938_091).abs() < 1e-8);
    assert!((f(&e["omega"]) - 1.0).abs() < 1e-9);
}

#[test]
fn optimized_bound_from_cli() {
    let v = json(&["hobound", "--g", ROOT2, "--optimize", "--n", "0"]);
    let b = f(&v["results"]["estimate"]["bound"]);
    assert!(b > -0.8172 && b < -0.455_938);
    assert_eq!(v["results"]["optimization"]["branch"], "useful");
}

#[test]
fn critical_coupling_from_cli() {
    let v = json(&["hobound", "--g", "0.60988", "--optimize"]);
    let o = &v["results"]["optimization"];
    assert!((f(&o["xi0"]) - 3.0).abs() < 1e-6);
    assert_eq!(o["branch"], "critical");
}

#[test]
fn weak_coupling_optimization_exits_two() {
    let o = expwell(&["hobound", "--g", "0.5", "--optimize", "--format", "json"]);
    assert_eq!(code(&o), 2);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"]["optimization"]["interior"], false);
    assert!(stderr(&o).contains("no interior minimum"));
}

#[test]
fn hobound_needs_exactly_one_majorant() {
    assert_eq!(code(&expwell(&["hobound", "--g", "1"])), 2);
    assert_eq!(code(&expwell(&["hobound", "--g", "1", "--xi", "1", "--omega", "1"])), 2);
    assert_eq!(code(&expwell(&["hobound", "--g", "1", "--xi", "0"])), 2);
}

#[test]
fn figure_one_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.csv");
    let v = json(&["figdata", "fig1", "--out", path.to_str().unwrap()]);
    assert_eq!(v["results"]["figure"], "fig1");
    let (headers, rows) = read_csv(&path);
    assert_eq!(headers, ["x", "V", "V_ho"]);
    let mut best = (f64::INFINITY, 0.0);
    for r in &rows {
        let x: f64 = r[0].parse().unwrap();
        let gap = r[2].parse::<f64>().unwrap() - r[1].parse::<f64>().unwrap();
        assert!(gap >= -1e-10);
        if gap < best.0 {
            best = (gap, x);
        }
    }
    assert!(best.0 <= 1e-8);
    assert!((best.1.abs() - 0.5671).abs() < 1e-4);
}

#[test]
fn figure_two_minimum_is_useful() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig2.csv");
    let g = "1.4142135623730951";
    let o = expwell(&[
        "figdata", "fig2", "--g-min", g, "--g-max", "3", "--g-steps", "4", "--xi-steps", "590",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (headers, rows) = read_csv(&path);
    assert_eq!(headers, ["g", "xi", "bound"]);
    let row_min = rows
        .iter()
        .filter(|r| (r[0].parse::<f64>().unwrap() - 1.414_213_562_37).abs() < 1e-9)
        .map(|r| (r[2].parse::<f64>().unwrap(), r[1].parse::<f64>().unwrap()))
        .fold((f64::INFINITY, 0.0), |a, b| if b.0 < a.0 { b } else { a });
    assert!(row_min.1 < 3.0);
    assert!((row_min.1 - 0.831).abs() < 0.01);
    assert_eq!(rows.len(), 5 * 591);
}

#[test]
fn curve_minimum_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let o = expwell(&["figdata", "curve", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let (_, rows) = read_csv(&path);
    let best = rows
        .iter()
        .min_by(|a, b| a[1].parse::<f64>().unwrap().total_cmp(&b[1].parse::<f64>().unwrap()))
        .unwrap();
    assert!((best[0].parse::<f64>().unwrap() - 3.0).abs() < 1e-9);
    assert_eq!(best[2], "critical");
}

#[test]
fn figure_data_to_stdout() {
    let o = expwell(&["figdata", "curve", "--xi-steps", "9", "--format", "csv"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("xi0,g,branch"));
    assert_eq!(text.lines().count(), 11);
    let v = json(&["figdata", "curve", "--xi-steps", "9"]);
    let rows = v["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[0].as_array().unwrap().len(), 3);
}

#[test]
fn unwritable_output_exits_four() {
    let o = expwell(&["figdata", "fig1", "--out", "/nonexistent-dir/fig1.csv"]);
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("/nonexistent-dir/fig1.csv"));
}

#[test]
fn oracle_with_eigenvector_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("psi.csv");
    let v = json(&[
        "oracle", "--g", ROOT2, "--points", "4001", "--nmax", "3", "--eigenvector", "0", "--out",
        path.to_str().unwrap(),
    ]);
    let levels = v["results"]["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 2);
    assert!((f(&levels[0]["extrapolated"]) + 0.817_208_76).abs() < 1e-6);
    assert!(f(&levels[0]["richardson_error"]) > 0.0);
    let (headers, rows) = read_csv(&path);
    assert_eq!(headers, ["x", "value"]);
    assert_eq!(rows.len(), 4001);
    assert!(rows.iter().all(|r| r[1].parse::<f64>().unwrap() > 0.0));
}

#[test]
fn oracle_rejects_even_point_count() {
    assert_eq!(code(&expwell(&["oracle", "--g", "1", "--points", "4000"])), 2);
    assert_eq!(code(&expwell(&["oracle", "--g", "5", "--half-width", "10"])), 3);
}

#[test]
fn selfcheck_specfun() {
    for args in [&["selfcheck", "--suite", "specfun"][..], &["selfcheck", "specfun"][..]] {
        let mut a = args.to_vec();
        a.extend(["--format", "json"]);
        let o = expwell(&a);
        assert_eq!(code(&o), 0);
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        let w = v["results"]["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == "wronskian")
            .unwrap()
            .clone();
        assert!(f(&w["worst"]) < 1e-11);
    }
}

#[test]
fn selfcheck_solver_includes_ground_state_bracket() {
    let v = json(&["selfcheck", "--suite", "solver"]);
    let names: Vec<&str> = v["results"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"ground_state_bracket"));
    assert!(v["results"]["failed"].as_array().unwrap().is_empty());
}

#[test]
fn rerun_from_json_inputs_is_identical() {
    let first = json(&["spectrum", "--g", "3", "--nmax", "4", "--tol", "1e-9"]);
    let inputs = &first["inputs"];
    let g = f(&inputs["g"]).to_string();
    let nmax = inputs["nmax"].as_u64().unwrap().to_string();
    let tol = f(&inputs["tol"]).to_string();
    let second = json(&["spectrum", "--g", &g, "--nmax", &nmax, "--tol", &tol]);
    assert_eq!(first["results"], second["results"]);
    assert_eq!(first["inputs"], second["inputs"]);
}

#[test]
fn thread_cap_does_not_change_results() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_expwell"))
            .args(["spectrum", "--g", "4", "--format", "csv"])
            .env("EXPWELL_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    let bad = run("0");
    assert_eq!(code(&bad), 2);
    assert!(stderr(&bad).contains("EXPWELL_THREADS"));
}

fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("EXPWELL_UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

#[test]
fn golden_help_texts() {
    golden("help.txt", &stdout(&expwell(&["--help"])));
    for sub in ["solve", "spectrum", "hobound", "figdata", "oracle", "selfcheck"] {
        golden(&format!("help-{sub}.txt"), &stdout(&expwell(&[sub, "--help"])));
    }
}

#[test]
fn golden_outputs() {
    golden(
        "hobound-fig1.txt",
        &stdout(&expwell(&["hobound", "--g-squared", "2", "--omega", "1"])),
    );
    golden(
        "solve-root2.csv",
        &stdout(&expwell(&["solve", "--g-squared", "2", "--n", "0", "--tol", "1e-6", "--format", "csv"])),
    );
    golden(
        "spectrum-g2.txt",
        &stdout(&expwell(&["spectrum", "--g", "2", "--tol", "1e-9"])),
    );
}
