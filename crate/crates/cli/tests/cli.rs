use std::path::PathBuf;
use std::process::{Command, Output};

fn qdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdiff")).args(args).output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qdiff-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn fermion_m_verifies() {
    let o = qdiff(&["preset", "fermion", "--variant", "m", "--verify", "-L", "3"]);
    let s = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{s}");
    assert!(s.contains("relations (2):\n  b*b = 0\n  t*b+b*t = 0\n"), "{s}");
    assert!(s.contains("bialgebra: PASS") && s.contains("coaction: PASS"));
    assert!(s.ends_with("result: PASS\n"));
}

#[test]
fn qplane_derives_six_relations() {
    let o = qdiff(&["preset", "qplane", "--q", "symbolic", "-D", "2", "--derive-mq2"]);
    let s = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{s}");
    assert!(s.contains("relations (6):"));
    for r in ["b*a-q*a*b = 0", "c*a-q*a*c = 0", "c*b-b*c = 0", "d*b-q*b*d = 0", "d*c-q*c*d = 0"] {
        assert!(s.contains(r), "missing {r} in {s}");
    }
}

#[test]
fn braided_line_r_passes() {
    let o = qdiff(&["check-r", "--preset", "braided_line", "-D", "4"]);
    let s = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{s}");
    assert!(s.contains("qybe: PASS") && s.contains("covariance: PASS"));
}

#[test]
fn roots_export_groups_normalized_relations() {
    let o = qdiff(&["export", "--preset", "rootsof1:2", "--variant", "m"]);
    let s = stdout(&o);
    assert_eq!(o.status.code(), Some(0));
    assert!(s.contains("[ok] (b+t)^2 = 1") && s.contains("[ok] (b-t)^2 = 1"), "{s}");
}

#[test]
fn finite_set_export_has_three_projector_rows() {
    let o = qdiff(&["export", "--preset", "finiteset:3"]);
    let s = stdout(&o);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(s.matches("projector row").count(), 3);
    assert_eq!(s.matches("[ok] ").count(), 27);
}

#[test]
fn json_round_trip_is_identical() {
    for preset in ["rootsof1:2", "qplane", "braided_line", "anyon:3"] {
        let a = scratch(&format!("{}-a.json", preset.replace(':', "_")));
        let b = scratch(&format!("{}-b.json", preset.replace(':', "_")));
        assert_eq!(qdiff(&["export", "--preset", preset, "--format", "json", "--out", a.to_str().unwrap()]).status.code(), Some(0));
        assert_eq!(qdiff(&["export", a.to_str().unwrap(), "--format", "json", "--out", b.to_str().unwrap()]).status.code(), Some(0));
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "{preset}");
    }
}

#[test]
fn output_is_byte_stable() {
    let args = ["preset", "braided_line", "-D", "2", "--verify", "--format", "json"];
    assert_eq!(qdiff(&args).stdout, qdiff(&args).stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qdiff(&["preset", "nonsense"]).status.code(), Some(2));
    assert_eq!(qdiff(&["preset", "fermion", "--variant", "m7"]).status.code(), Some(2));
    assert_eq!(qdiff(&["preset", "anyon:3", "--field", "rational"]).status.code(), Some(2));
    assert_eq!(qdiff(&["preset", "qplane", "--field", "rational"]).status.code(), Some(2));
    assert_eq!(qdiff(&["validate", &data("truncated.json")]).status.code(), Some(2));
    assert_eq!(qdiff(&["validate", &data("missing.json")]).status.code(), Some(2));
    assert_eq!(qdiff(&["check-r"]).status.code(), Some(2));
}

#[test]
fn validate_flags_nonassociative_algebra() {
    assert_eq!(qdiff(&["validate", &data("x2.json")]).status.code(), Some(0));
    let o = qdiff(&["validate", &data("nonassoc.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] associative"));
}

#[test]
fn build_from_file_matches_oracle() {
    let o = qdiff(&["build", &data("x2.json"), "--variant", "m", "--oracle", "--verify", "-L", "3"]);
    let s = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{s}");
    assert!(s.contains("universal_check: PASS"));
    let o = qdiff(&["verify", &data("x2.json"), "--variant", "m1", "--field", "rational"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn failed_verification_exits_1_with_witness() {
    let o = qdiff(&["preset", "anyon:3", "--variant", "m0", "--verify"]);
    let s = stdout(&o);
    assert_eq!(o.status.code(), Some(1));
    assert!(s.contains("relation t^1_2 against t^2_1"), "{s}");
}

#[test]
fn r_matrix_file_round_trip() {
    let path = scratch("r.json");
    assert_eq!(qdiff(&["check-r", "--preset", "conformal_line", "-D", "3", "--format", "json", "--out", path.to_str().unwrap()]).status.code(), Some(0));
    let o = qdiff(&["check-r", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("qybe: PASS"));
}

#[test]
fn coinvariants_of_two_points() {
    let o = qdiff(&["coinv", "twopoint", "-L", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[ok] span {1, b_1}"));
}
