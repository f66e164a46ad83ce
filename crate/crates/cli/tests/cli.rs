//! End-to-end checks of the command-line surface: exit codes, report
//! shapes, reproducibility, cache behavior.

use std::path::Path;
use std::process::{Command, Output};

fn stlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn joint_emits_report_rows() {
    let out = stlab(&[
        "joint",
        "--curve",
        "11a1",
        "--curve2",
        "37a1",
        "--xmax",
        "5000",
        "--interval",
        "0:1.5708",
        "--interval2",
        "0:1.5708",
        "--checkpoints",
        "1000",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("# profile:"));
    assert!(text.contains("x,interval_lo,interval_hi,interval2_lo"));
    // one row per checkpoint (1000 and 5000)
    let data_rows = text.lines().filter(|l| l.starts_with(char::is_numeric)).count();
    assert_eq!(data_rows, 2);
}

#[test]
fn byte_identical_across_worker_counts_and_runs() {
    let run = |workers: &str| {
        let out = stlab(&[
            "joint",
            "--curve",
            "11a1",
            "--curve2",
            "43a1",
            "--xmax",
            "3000",
            "--workers",
            workers,
        ]);
        assert!(out.status.success());
        stdout(&out)
    };
    let a = run("1");
    let b = run("4");
    let c = run("1");
    assert_eq!(a, b, "worker count leaked into the report");
    assert_eq!(a, c, "rerun not reproducible");
}

#[test]
fn invalid_config_exits_one() {
    let out = stlab(&["joint", "--curve", "nosuchcurve", "--curve2", "37a1", "--xmax", "100"]);
    assert_eq!(out.status.code(), Some(1));
    let out = stlab(&["joint", "--curve", "11a1", "--curve2", "37a1", "--xmax", "100", "--interval", "bogus"]);
    assert_eq!(out.status.code(), Some(1));
    let out = stlab(&["angles", "--curve", "11a1", "--xmax", "2"]);
    assert_eq!(out.status.code(), Some(1));
    // singular custom curve is a data error, not config parsing
    let out = stlab(&["ap", "--curve", "0,0,0,0,0", "--xmax", "100"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn data_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "prime,normalized_trace\n4,0.5\n").unwrap();
    let out = stlab(&["ingest", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn ingest_accepts_valid_file_with_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("forms.csv");
    std::fs::write(
        &csv,
        "# sample data\nprime,normalized_trace\n5,0.2236\n7,-0.5\n11,0.9\n",
    )
    .unwrap();
    std::fs::write(
        dir.path().join("forms.meta.json"),
        r#"{"label":"sample","field_degree":1,"conductor_norm":99,"y_param":0}"#,
    )
    .unwrap();
    let out = stlab(&["ingest", "--input", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# label: sample"));
    assert!(text.contains("prime,angle"));
    assert_eq!(text.lines().filter(|l| l.starts_with(char::is_numeric)).count(), 3);
}

#[test]
fn cache_round_trip_via_cli() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let args = [
        "angles",
        "--curve",
        "37a1",
        "--xmax",
        "2000",
        "--cache-dir",
        cache.to_str().unwrap(),
    ];
    let first = stlab(&args);
    assert!(first.status.success());
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
    let second = stlab(&args);
    assert!(second.status.success());
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn discrepancy_with_checkpoints_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("single.svg");
    let out = stlab(&[
        "discrepancy",
        "--curve",
        "389a1",
        "--xmax",
        "4000",
        "--interval",
        "0.5:2.5",
        "--checkpoints",
        "1000,2000",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    // second interval column reports the full range for single sequences
    assert!(text.contains(",0,3.141592653589793,"));
    assert_eq!(text.lines().filter(|l| l.starts_with(char::is_numeric)).count(), 3);
    assert!(svg.exists());
}

#[test]
fn cache_dir_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("envcache");
    let out = Command::new(env!("CARGO_BIN_EXE_stlab"))
        .args(["angles", "--curve", "43a1", "--xmax", "1000"])
        .env("STLB_CACHE_DIR", &cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
}

#[test]
fn cg_verify_reports_residuals() {
    let out = stlab(&["cg-verify", "--max-mn", "3", "--samples", "500", "--seed", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("product_identity"));
    assert!(text.contains("degree_ledger,0"));
    // reproducible per seed
    let again = stlab(&["cg-verify", "--max-mn", "3", "--samples", "500", "--seed", "7"]);
    assert_eq!(text, stdout(&again));
}

#[test]
fn majorant_check_emits_rows() {
    let out = stlab(&[
        "majorant-check",
        "--degrees",
        "4,8",
        "--pairs",
        "20",
        "--grid",
        "60",
        "--seed",
        "3",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("degree,i1_lo"));
    assert_eq!(text.lines().filter(|l| l.starts_with(char::is_numeric)).count(), 40);
}

#[test]
fn bound_table_and_json_format() {
    let out = stlab(&["bound", "--profile", "default", "--xmax", "1e6", "--y", "0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("x,bound,cutoff"));
    let out = stlab(&["bound", "--xmax", "1e4", "--points", "4", "--format", "json"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"meta\""));
    // unknown presets are config errors
    let out = stlab(&["bound", "--profile", "nosuch", "--xmax", "1e4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn svg_written_when_requested() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("plot.svg");
    let out = stlab(&[
        "report",
        "--curve",
        "11a1",
        "--curve2",
        "37a1",
        "--xmax",
        "5000",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = std::fs::read_to_string(&svg).unwrap();
    assert!(doc.starts_with("<svg"));
    assert!(doc.contains("abs_error"));
}

#[test]
fn pnt_rows_cover_the_grid() {
    let out = stlab(&[
        "pnt",
        "--curve",
        "11a1",
        "--curve2",
        "37a1",
        "--xmax",
        "3000",
        "--max-mn",
        "2",
        "--include-ell2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("m,n,x,re_sum,im_sum,primes,normalized,bound_ratio"));
    assert!(text.contains("# ell2_mass_1_1:"));
    // (m,n) pairs excluding (0,0): 8, one checkpoint each
    assert_eq!(text.lines().filter(|l| l.starts_with(char::is_numeric)).count(), 8);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let out = stlab(&[
        "ap",
        "--curve",
        "11a1",
        "--xmax",
        "100",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.contains("prime,trace"));
    assert!(Path::new(&path).exists());
}
