use solvops::operators::OperatorSpec;
use solvops::verify::GreenResidualReport;
use solvops_cli::table::{read_csv, write_csv, Row};
use std::f64::consts::PI;
use std::process::{Command, Output};

fn solvops(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_solvops"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn solvops_threads(threads: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_solvops"))
        .env("SOLVOPS_THREADS", threads)
        .args(args)
        .output()
        .expect("binary runs")
}

fn rows(out: &Output) -> Vec<Row> {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    read_csv(out.stdout.as_slice()).expect("CSV parses")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON parses")
}

#[test]
fn macdonald_half_order_is_elementary() {
    let r = rows(&solvops(&["eval", "--fn", "macdonald_k2d", "--m", "0.5,0", "--at", "1.0"]));
    assert_eq!(r.len(), 1);
    let expected = (PI / 2.0).sqrt() * (-1.0f64).exp();
    assert!((r[0].re - expected).abs() < 1e-14 * expected, "{:?}", r[0]);
    assert!(r[0].im.abs() < 1e-15);
    assert_eq!((r[0].x, r[0].y), (1.0, 0.0));
}

#[test]
fn regularized_f01_at_zero_is_one() {
    let r = rows(&solvops(&["eval", "--fn", "f01_reg", "--c", "1,0", "--at", "0"]));
    assert!((r[0].re - 1.0).abs() < 1e-15 && r[0].im.abs() < 1e-15, "{:?}", r[0]);
}

#[test]
fn weber_k_on_negative_axis_uses_connection() {
    let r = rows(&solvops(&["eval", "--fn", "weber_k", "--beta", "0.37,0", "--at", "-1.2"]));
    assert!(r[0].re.is_finite() && r[0].im.is_finite());
    assert_eq!(r[0].path, "connection_formula");
}

#[test]
fn eval_range_and_repeated_points() {
    let r = rows(&solvops(&[
        "eval", "--fn", "bessel_j2d", "--m", "0", "--at", "0.5,0.5", "--at", "2", "--range", "1:3:5",
    ]));
    assert_eq!(r.len(), 7);
    assert_eq!((r[0].x, r[0].y), (0.5, 0.5));
    assert_eq!(r[6].x, 3.0);
}

#[test]
fn coulomb_spectrum() {
    let r = rows(&solvops(&["spectrum", "--family", "whittaker", "--beta", "2,0", "--m", "0.5,0", "--count", "3"]));
    let expected = [-1.0, -0.25, -1.0 / 9.0];
    assert_eq!(r.len(), 3);
    for (row, e) in r.iter().zip(expected) {
        assert!((row.re - e).abs() < 1e-12 && row.im.abs() < 1e-12, "{row:?}");
    }
}

#[test]
fn harmonic_spectrum_as_json() {
    let out = solvops(&["spectrum", "--family", "harmonic", "--k", "1", "--count", "4", "--format", "json"]);
    let v = json(&out);
    let ev: Vec<f64> = v["point"].as_array().unwrap().iter().map(|p| p["eigenvalue"][0].as_f64().unwrap()).collect();
    assert_eq!(ev, vec![1.0, 3.0, 5.0, 7.0]);
}

#[test]
fn bessel_verify_passes() {
    let out = solvops(&["verify", "--family", "bessel", "--m", "0.7,0", "--z", "-1,0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: GreenResidualReport = serde_json::from_slice(&out.stdout).expect("report parses");
    assert!(report.rel_l2_error < 1e-3, "{report:?}");
    assert!(report.jump_error < 1e-7);
    assert_eq!(report.spec, OperatorSpec::bessel(num_complex::Complex64::new(0.7, 0.0)).unwrap());
}

#[test]
fn exponential_bessel_transmutation() {
    let out = solvops(&["transmute", "--pair", "exp-bessel", "--k", "1,0.2", "--m", "0.7,0", "--x", "0.3", "--y", "0.9"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["rel_mismatch"].as_f64().unwrap() < 1e-10, "{v}");
    assert_eq!(v["pass"], true);
}

#[test]
fn negative_exponential_transmutation() {
    let out = solvops(&[
        "transmute", "--pair", "negexp-bessel", "--ell", "0.8", "--gamma", "0.5,0.5", "--m", "0.6,0.1", "--x", "-0.4",
        "--y", "0.7",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn exit_codes_follow_failure_class() {
    let code = |args: &[&str]| solvops(args).status.code();
    // Validation: bad parameter, unknown function, missing flag, malformed complex.
    assert_eq!(code(&["kernel", "--family", "exponential", "--k", "-1,0", "--z", "-1", "--x", "1", "--y", "2"]), Some(2));
    assert_eq!(code(&["eval", "--fn", "no_such_function", "--at", "1"]), Some(2));
    assert_eq!(code(&["spectrum", "--family", "whittaker", "--m", "0.5"]), Some(2));
    assert_eq!(code(&["eval", "--fn", "f01_reg", "--c", "1, 0", "--at", "1"]), Some(2));
    assert_eq!(code(&["kernel", "--family", "bessel", "--m", "0.7", "--z", "-1", "--x", "-1", "--y", "2"]), Some(2));
    assert_eq!(code(&["verify", "--family", "bessel", "--m", "0.7", "--z", "-1", "--format", "csv"]), Some(2));
    // Spectral point.
    assert_eq!(code(&["kernel", "--family", "bessel", "--m", "0.7", "--z", "1,0", "--x", "1", "--y", "2"]), Some(3));
    // Threshold exceeded; the report is still written.
    let out = solvops(&["verify", "--family", "bessel", "--m", "0.7,0", "--z", "-1,0", "--max-rel-l2", "1e-14"]);
    assert_eq!(out.status.code(), Some(5));
    assert!(json(&out)["rel_l2_error"].as_f64().is_some());
    let out = solvops(&[
        "transmute", "--pair", "exp-bessel", "--k", "1,0.2", "--m", "0.7,0", "--x", "0.3", "--y", "0.9", "--tol", "0",
    ]);
    assert_eq!(out.status.code(), Some(5));
    // Bad thread cap.
    assert_eq!(solvops_threads("zero", &["spectrum", "--family", "harmonic", "--k", "1"]).status.code(), Some(2));
}

const SCAN: &[&str] = &[
    "scan", "--family", "exponential", "--plane", "c", "--re", "-2:2:9", "--im", "-1:1:5", "--z", "-1,0.3", "--x",
    "0.1", "--y", "0.4",
];

#[test]
fn scan_output_is_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for (i, threads) in ["1", "4", "4"].iter().enumerate() {
        let path = dir.path().join(format!("scan{i}.csv"));
        let p = path.to_str().unwrap();
        let mut args = SCAN.to_vec();
        args.extend(["--output", p]);
        let out = solvops_threads(threads, &args);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
        files.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(files[0], files[1]);
    assert_eq!(files[1], files[2]);
}

#[test]
fn scan_marks_the_excluded_half_of_the_c_plane() {
    let r = rows(&solvops(SCAN));
    assert_eq!(r.len(), 45);
    // Row-major: imaginary part outer.
    assert!(r.windows(2).all(|w| w[0].y < w[1].y || (w[0].y == w[1].y && w[0].x < w[1].x)));
    for row in &r {
        if row.y == 0.0 && row.x < 0.0 {
            // c < 0 gives k = √c on the imaginary axis, outside Re k > 0.
            assert_eq!(row.path, "invalid_parameter", "{row:?}");
            assert!(row.re.is_nan());
        } else {
            assert_eq!(row.path, "closed_form", "{row:?}");
            assert!(row.re.is_finite());
        }
    }
}

#[test]
fn csv_and_json_round_trip_without_loss() {
    let csv_out = solvops(SCAN);
    let from_csv = rows(&csv_out);
    let mut rewritten = Vec::new();
    write_csv(&from_csv, &mut rewritten).unwrap();
    assert_eq!(rewritten, csv_out.stdout);
    assert!(!csv_out.stdout.contains(&b'\r'));

    let mut args = SCAN.to_vec();
    args.extend(["--format", "json"]);
    let from_json: Vec<Row> = serde_json::from_slice(&solvops(&args).stdout).unwrap();
    assert_eq!(from_json.len(), from_csv.len());
    let bits = |v: f64| if v.is_nan() { u64::MAX } else { v.to_bits() };
    for (a, b) in from_csv.iter().zip(&from_json) {
        for (p, q) in [(a.x, b.x), (a.y, b.y), (a.re, b.re), (a.im, b.im), (a.err_est, b.err_est)] {
            assert_eq!(bits(p), bits(q));
        }
        assert_eq!(a.path, b.path);
    }
}

#[test]
fn kernel_table_is_symmetric() {
    let r = rows(&solvops(&[
        "kernel", "--family", "morse", "--beta", "0.5", "--k", "1,0.3", "--z", "-0.64", "--x", "-1:1:3", "--y",
        "-1:1:3",
    ]));
    assert_eq!(r.len(), 9);
    let at = |x: f64, y: f64| r.iter().find(|row| row.x == x && row.y == y).unwrap();
    for (x, y) in [(-1.0, 0.0), (-1.0, 1.0), (0.0, 1.0)] {
        assert_eq!((at(x, y).re, at(x, y).im), (at(y, x).re, at(y, x).im));
    }
}
