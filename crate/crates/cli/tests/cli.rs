use std::path::Path;
use std::process::{Command, Output};

use gupent_cli::table::Table;

fn gupent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gupent"))
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

fn read_table(path: &Path) -> Table {
    Table::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn verify_passes_and_reports_every_check() {
    let o = gupent(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    for name in gupent_cli::verify::check_names() {
        assert!(
            out.lines()
                .any(|l| l.starts_with("PASS") && l.contains(name)),
            "{name} missing"
        );
    }
    assert!(!out.contains("FAIL"));
}

#[test]
fn fast_verify_is_fast() {
    let start = std::time::Instant::now();
    let o = gupent(&["verify", "--fast"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(start.elapsed().as_secs_f64() <= 5.0);
}

#[test]
fn injected_g5_fault_is_caught() {
    let o = gupent(&["verify", "--fast", "--inject-fault", "g5-sign"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let line = out
        .lines()
        .find(|l| l.contains("normalization-identity"))
        .unwrap();
    assert!(line.starts_with("FAIL"), "{line}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        gupent(&["figure", "7", "--out", "x.csv"]).status.code(),
        Some(2)
    );
    assert_eq!(gupent(&["entropy", "--gamma", "2"]).status.code(), Some(2));
    assert_eq!(gupent(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn figure_is_written_once_without_force() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.csv");
    let p = path.to_str().unwrap();
    assert_eq!(gupent(&["figure", "1", "--out", p]).status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# params: k0=1 m=1 hbar=1\nJ,alpha=0,alpha=0.2,alpha=0.4\n"));

    let refused = gupent(&["figure", "1", "--out", p]);
    assert_eq!(refused.status.code(), Some(1));
    assert!(stderr(&refused).contains("--force"));
    assert_eq!(
        gupent(&["figure", "1", "--out", p, "--force"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
}

#[test]
fn figure_csv_equals_library_values() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["1", "2", "3a", "3b"] {
        let path = dir.path().join(format!("fig{id}.csv"));
        assert_eq!(
            gupent(&["figure", id, "--out", path.to_str().unwrap()])
                .status
                .code(),
            Some(0)
        );
        let built = gupent_cli::figures::build(id.parse().unwrap()).unwrap();
        assert_eq!(read_table(&path), built.table, "figure {id}");
    }
}

#[test]
fn figure_output_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for threads in ["1", "4"] {
        let path = dir.path().join(format!("fig3b-{threads}.csv"));
        let o = Command::new(env!("CARGO_BIN_EXE_gupent"))
            .args(["figure", "3b", "--out", path.to_str().unwrap()])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success());
        texts.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
}

#[test]
fn entropy_reports_eof_at_order_one() {
    let o = gupent(&["entropy", "--gamma", "1", "--j", "1", "--alpha", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("kind = eof_limit"));
    assert!(out.contains("c1 = 0\n"));
    let value: f64 = out
        .lines()
        .find_map(|l| l.strip_prefix("value = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - 0.0943925).abs() < 1e-7);
    assert!(stderr(&o).contains("entanglement of formation"));
}

#[test]
fn entropy_continuation_is_flagged() {
    let o = gupent(&["entropy", "--gamma", "0.7", "--j", "10", "--alpha", "0.2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("kind = continuation"));
    assert_eq!(
        gupent(&["entropy", "--gamma=-1", "--j", "1", "--alpha", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        gupent(&["entropy", "--gamma", "2", "--j", "1", "--alpha=-0.1"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn sweep_writes_long_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let o = gupent(&[
        "sweep",
        "--quantity",
        "trace-power",
        "--n",
        "3",
        "--j-values",
        "0,1,5",
        "--alpha-values",
        "0,0.1",
        "--k0",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t = read_table(&path);
    assert_eq!(t.header, ["J", "alpha", "c0", "c1", "value"]);
    assert_eq!(t.rows.len(), 6);
    assert!(t.params.contains(&("k0".to_string(), "2".to_string())));
    assert!(t.params.contains(&("n".to_string(), "3".to_string())));
    assert_eq!(t.rows[0][2], 1.0);
}

#[test]
fn sweep_validation_failures_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let p = path.to_str().unwrap();
    let base = [
        "sweep",
        "--j-values",
        "1",
        "--alpha-values",
        "0",
        "--out",
        p,
    ];
    let with = |extra: &[&str]| {
        let mut args = base.to_vec();
        args.extend_from_slice(extra);
        gupent(&args).status.code()
    };
    assert_eq!(with(&["--quantity", "renyi"]), Some(1));
    assert_eq!(with(&["--quantity", "trace-power", "--n", "1"]), Some(1));
    assert_eq!(with(&["--quantity", "entropy"]), Some(2));
    assert_eq!(with(&["--quantity", "energy", "--m", "0"]), Some(1));
    assert!(!path.exists());
}

#[test]
fn strained_truncation_warns_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.csv");
    let o = gupent(&[
        "sweep",
        "--quantity",
        "energy",
        "--j-values",
        "1",
        "--alpha-values",
        "0.01,0.5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let err = stderr(&o);
    assert_eq!(
        err.lines().filter(|l| l.starts_with("warning:")).count(),
        1,
        "{err}"
    );
}
