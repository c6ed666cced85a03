use std::fs;
use std::process::{Command, Output};

fn permcount(dir: &std::path::Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permcount"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .env_remove("PERMCOUNT_OUT_DIR")
        .output()
        .expect("spawn permcount")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn build_both_reports_equivalence() {
    let dir = tempfile::tempdir().unwrap();
    let out = permcount(dir.path(), &["build", "--n", "4", "--method", "both"]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("n=4 equivalence PASS"));
    let text = fs::read_to_string(dir.path().join("matrix_n4.txt")).unwrap();
    let header = text.lines().next().unwrap();
    let nnz: usize = header.rsplit_once("nnz=").unwrap().1.parse().unwrap();
    assert!(header.starts_with("perm-count-matrix n=4 dim=136 "));
    assert_eq!(text.lines().count(), nnz + 1);
}

#[test]
fn build_header_at_n5() {
    let dir = tempfile::tempdir().unwrap();
    let out = permcount(dir.path(), &["build", "--n", "5", "--method", "closed_form"]);
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("matrix_n5.txt")).unwrap();
    assert!(text.starts_with("perm-count-matrix n=5 dim=325 nnz="));
}

#[test]
fn build_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for (path, method) in [(&a, "closed_form"), (&b, "brute_force")] {
        let out = permcount(dir.path(), &["build", "--n", "5", "--method", method, "--output", path.to_str().unwrap()]);
        assert!(out.status.success());
    }
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn brute_force_budget_and_size_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = permcount(dir.path(), &["build", "--n", "10", "--method", "brute_force"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));

    let out = permcount(dir.path(), &["report", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported"));
}

#[test]
fn eigvecs_counts_and_verification() {
    let dir = tempfile::tempdir().unwrap();
    for (n, family, count, lambda) in [("4", "1", 1, "36/1"), ("4", "2", 9, "4/1"), ("5", "4", 16, "60/1")] {
        let out = permcount(dir.path(), &["eigvecs", "--n", n, "--family", family]);
        assert!(out.status.success(), "{out:?}");
        let s = stdout(&out);
        let verified = s.lines().filter(|l| l.contains(&format!("lambda={lambda} verified"))).count();
        assert_eq!(verified, count, "{s}");
        let prefix = format!("eigvec_n{n}_f{family}_");
        let files = fs::read_dir(dir.path())
            .unwrap()
            .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().starts_with(&prefix))
            .count();
        assert_eq!(files, count);
    }
    let first = fs::read_to_string(dir.path().join("eigvec_n4_f1_000.txt")).unwrap();
    assert!(first.starts_with("eigvec n=4 family=1 lambda=36/1"));
}

#[test]
fn unknown_family_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = permcount(dir.path(), &["eigvecs", "--n", "4", "--family", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_range_passes_and_json_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let out = permcount(dir.path(), &["report", "--n", "4..5"]);
    assert!(out.status.success(), "{out:?}");
    let s = stdout(&out);
    assert_eq!(s.matches("overall PASS").count(), 2);
    assert!(s.contains("rank=23 nullity=113"));
    assert!(s.contains("rank=78 nullity=247"));

    let j1 = permcount(dir.path(), &["report", "--n", "4", "--json"]);
    let j2 = permcount(dir.path(), &["report", "--n", "4", "--json"]);
    assert_eq!(j1.stdout, j2.stdout);
    let v: serde_json::Value = serde_json::from_slice(&j1.stdout).unwrap();
    assert_eq!(v[0]["rank"], 23);
    assert_eq!(v[0]["psd"], true);
    assert!(v[0].get("timing").is_none());
}

#[test]
fn export_writes_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let out = permcount(dir.path(), &["export", "--n", "4"]);
    assert!(out.status.success(), "{out:?}");
    let bundle = dir.path().join("n4");
    assert!(bundle.join("matrix.txt").exists());
    assert!(bundle.join("report.json").exists());
    let vectors = fs::read_dir(&bundle)
        .unwrap()
        .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().starts_with("eigvec_"))
        .count();
    assert_eq!(vectors, 1 + 9 + 4 + 9);
}
