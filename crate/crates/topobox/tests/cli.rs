//! End-to-end checks of the command line: exit-code contract, output
//! determinism, and the file formats.

use std::path::Path;
use std::process::{Command, Output};

fn topobox(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topobox"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gen_writes_dimacs_and_set_system_json() {
    let dir = tempdir();
    let out = topobox(&["gen", "kneser", "5", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("p edge 10 15"), "{text}");

    let out = topobox(
        &["gen", "schrijver", "5", "2", "--format", "json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"n\": 5"));

    let out = topobox(&["gen", "complete", "1"], dir.path());
    assert!(stdout(&out).starts_with("p edge 1 0"));
}

#[test]
fn gen_output_roundtrips_through_file_instances() {
    let dir = tempdir();
    let g = topobox(
        &["gen", "cycle", "5", "--out", "c5.dimacs"],
        dir.path(),
    );
    assert_eq!(g.status.code(), Some(0));
    let out = topobox(&["bounds", "file", "c5.dimacs"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("\"chi_exact\": 3"));

    let g = topobox(
        &["gen", "kneser", "5", "2", "--format", "json", "--out", "f.json"],
        dir.path(),
    );
    assert_eq!(g.status.code(), Some(0));
    let out = topobox(&["bounds", "file", "f.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"presentation\": \"given\""), "{text}");
    assert!(text.contains("\"dolnikov_kriz\": 3"));
}

#[test]
fn identical_configuration_gives_byte_identical_output() {
    let dir = tempdir();
    let args = ["bounds", "random", "8", "0.5", "42", "--out", "report.json"];
    topobox(&args, dir.path());
    let first = std::fs::read(dir.path().join("report.json")).unwrap();
    topobox(&args, dir.path());
    let second = std::fs::read(dir.path().join("report.json")).unwrap();
    assert_eq!(first, second);
    assert!(!first.is_empty());
}

#[test]
fn bounds_reports_kneser_values() {
    let dir = tempdir();
    let out = topobox(&["bounds", "kneser", "5", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["dolnikov_kriz"], 3);
    assert_eq!(report["chi_exact"], 3);

    // On 20 vertices the no-condition box complex holds a 2^20-face
    // simplex per shore, beyond the default cap: the report is partial
    // (exit 2) but every set-system bound is still present.
    let out = topobox(&["bounds", "schrijver", "8", "2"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["barany"], 6);
    assert_eq!(report["dolnikov_kriz"], 4);
    assert_eq!(report["chi_exact"], 6);
    assert!(report["incomplete"][0]
        .as_str()
        .unwrap()
        .starts_with("box0_interval"));
}

#[test]
fn bounds_csv_format() {
    let dir = tempdir();
    let out = topobox(&["bounds", "cycle", "5", "--format", "csv"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("instance,"));
    assert!(lines.next().unwrap().starts_with("cycle(5),5,"));
}

#[test]
fn tiny_cap_yields_resource_exit_code() {
    let dir = tempdir();
    let out = topobox(&["bounds", "cycle", "5", "--cap", "4"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("incomplete"));
}

#[test]
fn verify_maps_passes_on_cycle_and_reports_preconditions() {
    let dir = tempdir();
    let out = topobox(&["verify-maps", "cycle", "5", "all"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    // A graph with a 4-cycle cannot run the collapse; the row is an error
    // and the exit code marks the precondition failure.
    let out = topobox(&["verify-maps", "complete", "4", "c4free"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("4-cycle"));

    let out = topobox(&["verify-maps", "complete", "4", "M8", "M9"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn homology_command_reports_betti_and_interval() {
    let dir = tempdir();
    let betti = |args: &[&str]| -> (serde_json::Value, serde_json::Value) {
        let out = topobox(args, dir.path());
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        (v["betti"].clone(), v["index_interval"].clone())
    };
    let (b, iv) = betti(&["homology", "complete", "4", "--variant", "B0"]);
    assert_eq!(b, serde_json::json!([0, 0, 0, 1]));
    assert_eq!(iv["lower"], 3);
    assert_eq!(iv["upper"], 3);

    let (b, _) = betti(&["homology", "cycle", "5", "--variant", "B1"]);
    assert_eq!(b, serde_json::json!([0, 1]));

    // A 3-sphere pattern with the top reduced group trivial.
    let (b, _) = betti(&["homology", "complete", "4", "--variant", "B"]);
    assert_eq!(b, serde_json::json!([0, 0, 1, 0]));

    let (b, _) = betti(&["homology", "cycle", "5", "--variant", "N"]);
    assert_eq!(b, serde_json::json!([0, 1]));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = tempdir();
    let out = topobox(&["bounds", "kneser", "5"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = topobox(&["gen", "nonsense", "3"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

fn tempdir() -> TempDir {
    TempDir::new()
}

/// Minimal scoped temporary directory.
struct TempDir(std::path::PathBuf);

impl TempDir {
    fn new() -> Self {
        let mut base = std::env::temp_dir();
        let unique = format!(
            "topobox-cli-{}-{:?}",
            std::process::id(),
            std::thread::current().id()
        );
        base.push(unique);
        std::fs::create_dir_all(&base).unwrap();
        TempDir(base)
    }

    fn path(&self) -> &Path {
        &self.0
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}
