use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triconic")).args(args).output().expect("spawn")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_classify_render() {
    let dir = tempfile::tempdir().unwrap();
    let scene = dir.path().join("scene.json");
    let o = run(&["construct", "--triangle", "0,0 4,0 1,3", "--triad", "p-hyp", "--point", "1.4,1.1", "--out", s(&scene)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["classify", "--scene", s(&scene), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.to_string().contains("p_hyperbola"));
    let svg = dir.path().join("fig.svg");
    let o = run(&["render", "--scene", s(&scene), "--out", s(&svg)]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert_eq!(doc.root_element().tag_name().name(), "svg");
}

#[test]
fn right_triangle_yiu_conic_is_two_lines() {
    let dir = tempfile::tempdir().unwrap();
    let scene = dir.path().join("r.json");
    assert_eq!(code(&run(&["construct", "--triangle", "0,3 4,0 0,0", "--triad", "v-ell", "--out", s(&scene)])), 0);
    let o = run(&["classify", "--scene", s(&scene)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("degenerate_two_lines"), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["construct", "--triangle", "0,0 1,0 2,0", "--triad", "v-ell"])), 2);
    assert_eq!(code(&run(&["construct", "--triangle", "0,0 1,0", "--triad", "v-ell"])), 2);
    assert_eq!(code(&run(&["construct", "--triangle", "0,0 1,0 0,1", "--triad", "p-ell"])), 2);
    assert_eq!(code(&run(&["verify", "--prop", "P9.9-nothing"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn verify_single_check_and_negative_control() {
    let o = run(&["verify", "--prop", "T3.1-pellipse-six-point", "--trials", "50", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    let o = run(&["--tol", "1e-20", "verify", "--prop", "T3.1-pellipse-six-point", "--trials", "50"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn verify_output_is_thread_independent() {
    let args = ["verify", "--prop", "P4.2-soddy-x175-x176", "--trials", "40", "--format", "json"];
    let one = run(&[&["--threads", "1"][..], &args[..]].concat());
    let two = run(&[&["--threads", "2"][..], &args[..]].concat());
    assert_eq!(code(&one), 0);
    assert_eq!(stdout(&one), stdout(&two));
}

#[test]
fn verify_lists_checks() {
    let o = run(&["verify", "--list"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().count() >= 40);
    assert!(stdout(&o).contains("J5.1-x55-conjecture"));
}

#[test]
fn locus_and_regions_write_files() {
    let dir = tempfile::tempdir().unwrap();
    let locus = dir.path().join("x478.json");
    let o = run(&["locus", "--kind", "x478", "--samples", "30", "--out", s(&locus)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&locus).unwrap()).unwrap();
    assert!(v.to_string().contains("center"));
    let ppm = dir.path().join("map.ppm");
    let o = run(&["regions", "--kind", "p-ell", "--grid", "16x12", "--out", s(&ppm)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(std::fs::read_to_string(&ppm).unwrap().starts_with("P3"));
    assert_eq!(code(&run(&["regions", "--kind", "p-ell", "--grid", "16by12", "--out", s(&ppm)])), 2);
}
