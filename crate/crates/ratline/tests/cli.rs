use std::path::Path;
use std::process::{Command, Output};

use ratline::core::osc::OscPart;
use ratline::core::MobiusMap;
use ratline::io::{self, Envelope};
use ratline::report::ConvergenceReport;
use ratline::testfn::by_name;

fn ratline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratline"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = ratline(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn table(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    io::read_csv(std::fs::File::open(path).unwrap()).unwrap()
}

#[test]
fn approx_round_trips_coefficientwise() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    ok(&["approx", "--function", "appendixA", "--n", "90", "--beta", "0.75", "--out", path.to_str().unwrap()]);
    let env: Envelope<Vec<OscPart>> = io::read_json(&path).unwrap();
    assert_eq!(env.meta.n, Some(90));
    assert_eq!(env.meta.function, "appendixA");
    let loaded = io::from_parts(env.meta.beta, env.data).unwrap();
    let fresh = by_name("appendixA").unwrap().interpolate(90, MobiusMap::new(0.75).unwrap()).unwrap();
    assert_eq!(loaded, fresh);

    // and once more through the writer
    let again = dir.path().join("b.json");
    let mut f = std::fs::File::create(&again).unwrap();
    io::write_json(&mut f, &Envelope { meta: env.meta.clone(), data: io::to_parts(&loaded) }).unwrap();
    let env2: Envelope<Vec<OscPart>> = io::read_json(&again).unwrap();
    assert_eq!(io::from_parts(env2.meta.beta, env2.data).unwrap(), loaded);
}

#[test]
fn loaded_expansion_gives_identical_transforms() {
    let dir = tempfile::tempdir().unwrap();
    let exp = dir.path().join("g.json");
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    ok(&["approx", "--function", "gaussian", "--n", "64", "--out", exp.to_str().unwrap()]);
    ok(&["fourier", "--input", exp.to_str().unwrap(), "--k", "-2:2:0.5", "--out", a.to_str().unwrap()]);
    ok(&["fourier", "--function", "gaussian", "--n", "64", "--k", "-2:2:0.5", "--out", b.to_str().unwrap()]);
    let (ha, ra) = table(&a);
    let (hb, rb) = table(&b);
    assert_eq!(ha, ["k", "re", "im"]);
    assert_eq!(&hb[..3], &ha[..]);
    for (x, y) in ra.iter().zip(&rb) {
        assert_eq!(x[..], y[..3]);
    }
}

#[test]
fn fourier_trace_shows_the_jump() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ft.csv");
    ok(&["fourier", "--function", "appendixA", "--k", "-10:10:0.05", "--n", "130", "--out", out.to_str().unwrap()]);
    let (_, rows) = table(&out);
    assert_eq!(rows.len(), 401);
    let value = |k: f64| {
        let r = rows.iter().find(|r| (r[0] - k).abs() < 1e-9).unwrap();
        (r[1], r[2])
    };
    let (a, b) = (value(2.95), value(3.05));
    assert!((a.0 - b.0).hypot(a.1 - b.1) > 5.0);
    for r in &rows {
        if (r[0] - 3.0).abs() > 0.01 {
            assert!((r[1] - r[3]).hypot(r[2] - r[4]) < 1e-7, "k = {}", r[0]);
        }
    }
}

#[test]
fn convergence_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    ok(&["convergence", "--function", "gaussian", "--n", "10:130:8", "--beta", "1", "--xmax", "60", "--out", out.to_str().unwrap()]);
    let env: Envelope<ConvergenceReport> = io::read_json(&out).unwrap();
    let r = env.data;
    assert_eq!(r.n_values.len(), 16);
    assert!(r.n_values.windows(2).all(|w| w[0] < w[1]));
    assert!(r.errors.iter().all(|e| e.sup >= 0.0 && e.l2 >= 0.0 && e.h1 >= 0.0 && e.l1_derivative >= 0.0));
    assert_eq!(r.fitted_orders.len(), 15);
    assert!(r.errors.last().unwrap().sup < 1e-9);
}

#[test]
fn kernel_norm_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("norms.csv");
    ok(&["kernel-norms", "--p", "1,2,4", "--orders", "0,1", "--n", "8:1024:dyadic", "--out", out.to_str().unwrap()]);
    let (h, rows) = table(&out);
    assert_eq!(h, ["n", "p", "order", "norm"]);
    assert_eq!(rows.len(), 8 * 3 * 2);
    assert!(rows.iter().all(|r| r[3] > 0.0));
}

#[test]
fn cauchy_and_diff_with_oracle() {
    let text = ok(&["cauchy", "--function", "r1", "--n", "16", "--x", "0", "--y", "1", "--oracle"]);
    let (h, rows) = io::read_csv(text.as_bytes()).unwrap();
    assert_eq!(h, ["x", "y", "re", "im", "degraded", "oracle_re", "oracle_im", "oracle_err"]);
    assert!((rows[0][2] + 1.0).abs() < 1e-12 && (rows[0][5] + 1.0).abs() < 1e-8);

    let text = ok(&["cauchy", "--function", "appendixA", "--n", "130", "--x", "-2:2:1", "--side", "minus", "--oracle", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["meta"]["function"], "appendixA");
    for row in v["data"].as_array().unwrap() {
        let d = (row["re"].as_f64().unwrap() - row["oracle_re"].as_f64().unwrap())
            .hypot(row["im"].as_f64().unwrap() - row["oracle_im"].as_f64().unwrap());
        assert!(d < 1e-8);
    }

    let text = ok(&["diff", "--function", "lorentzian", "--n", "128", "--x", "-3:3:0.5"]);
    let (_, rows) = io::read_csv(text.as_bytes()).unwrap();
    for r in rows {
        assert!((r[1] - r[3]).hypot(r[2] - r[4]) < 1e-10);
    }
}

#[test]
fn failures_exit_nonzero() {
    assert_eq!(ratline(&["fourier", "--function", "gaussian", "--k", "1", "--bogus"]).status.code(), Some(2));
    assert_eq!(ratline(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ratline(&["fourier", "--function", "nope", "--k", "1"]).status.code(), Some(1));
    assert_eq!(ratline(&["fourier", "--function", "gaussian", "--k", "1:0:1"]).status.code(), Some(1));
    assert_eq!(ratline(&["cauchy", "--function", "gaussian", "--x", "0", "--y", "0"]).status.code(), Some(1));
    assert_eq!(ratline(&["approx", "--function", "gaussian", "--n", "8", "--beta=-1"]).status.code(), Some(1));
    assert_eq!(ratline(&["kernel-norms", "--p", "0.5", "--n", "8"]).status.code(), Some(1));
    let out = ratline(&["fourier", "--function", "r1", "--n", "8", "--k", "1", "--oracle", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("did not converge"));
    let missing = ratline(&["fourier", "--input", "/nonexistent/e.json", "--k", "1"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn run_command_in_process() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.csv");
    let status = ratline::cli::run_command(["ratline", "diff", "--function", "r1", "--n", "8", "--x", "0,1", "--out", out.to_str().unwrap()]);
    assert_eq!(status, 0);
    let (_, rows) = table(&out);
    assert_eq!(rows.len(), 2);
}
