use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn corners(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corners")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn catalog_lists_all_entries() {
    let o = corners(&["catalog"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("120cell\tdim 4\tf-vector 600,1200,720,120"));
    assert_eq!(s.lines().count(), 5);
}

#[test]
fn catalog_unknown_name_is_input_error() {
    assert_eq!(corners(&["catalog", "icosahedron"]).status.code(), Some(2));
}

#[test]
fn build_reports_facets() {
    let o = corners(&["build", p(&fixture("pentagon_pair.tess"))]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("euler 0"));
    assert!(s.contains("facet 0 slots 2 isolated"));
}

#[test]
fn missing_file_exits_2() {
    assert_eq!(corners(&["build", "/nonexistent/x.tess"]).status.code(), Some(2));
}

#[test]
fn malformed_tessellation_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.tess");
    std::fs::write(&f, "dim 2; polytope pentagon; chambers 2\nglue 0.0 : nonsense\n").unwrap();
    assert_eq!(corners(&["build", p(&f)]).status.code(), Some(2));
}

#[test]
fn orbit_then_homology_genus_three() {
    let dir = tempfile::tempdir().unwrap();
    let o = corners(&["--out", p(dir.path()), "orbit", p(&fixture("pentagon_pair.tess")), p(&fixture("pentagon_pair.col"))]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("cells 20,40,16"));
    let dump = dir.path().join("quotient.dump");
    let h = corners(&["--json", "homology", p(&dump), "--fast"]);
    assert!(h.status.success());
    let v: serde_json::Value = serde_json::from_slice(&h.stdout).unwrap();
    assert_eq!(v["betti"]["gf2"], serde_json::json!([1, 6, 1]));
    assert_eq!(v["betti"]["rational"], serde_json::json!([1, 6, 1]));
    assert_eq!(v["fast_rational"], serde_json::json!([1, 6, 1]));
    assert_eq!(v["euler"], -4);
}

#[test]
fn homology_single_field() {
    let dir = tempfile::tempdir().unwrap();
    corners(&["--out", p(dir.path()), "orbit", p(&fixture("pentagon_pair.tess")), p(&fixture("pentagon_pair.col"))]);
    let h = corners(&["homology", p(&dir.path().join("quotient.dump")), "--field", "gf2"]);
    let s = stdout(&h);
    assert!(s.contains("betti_gf2=1,6,1"));
    assert!(!s.contains("betti_rational"));
}

#[test]
fn thicken_closed_pentagon_surface_mirrors() {
    let dir = tempfile::tempdir().unwrap();
    corners(&["--out", p(dir.path()), "orbit", p(&fixture("pentagon_pair.tess")), p(&fixture("pentagon_pair.col"))]);
    let o = corners(&["--out", p(dir.path()), "thicken", p(&dir.path().join("closed.tess"))]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("mirrored chambers 32"));
    assert!(dir.path().join("mirrored.tess").exists());
}

#[test]
fn thicken_hexagon_surface_names_non_embedded_facet() {
    let dir = tempfile::tempdir().unwrap();
    corners(&["--out", p(dir.path()), "orbit", p(&fixture("hexagon.tess")), p(&fixture("hexagon.col"))]);
    let o = corners(&["thicken", p(&dir.path().join("closed.tess"))]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("non-embedded facet "), "{err}");
}

#[test]
fn thicken_rejects_open_complex() {
    assert_eq!(corners(&["thicken", p(&fixture("pentagon_pair.tess"))]).status.code(), Some(1));
}

#[test]
fn colour_symmetric_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = corners(&["--out", p(dir.path()), "--json", "colour", p(&fixture("pentagon_pair.tess")), "--colours", "3", "--symmetric"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["outcome"], "found");
    let c: Vec<u64> = serde_json::from_value(v["colouring"].clone()).unwrap();
    assert_eq!(c.len(), 4);
    assert!(dir.path().join("colouring.txt").exists());
    assert!(dir.path().join("mirrored.tess").exists());
}

#[test]
fn colour_too_few_exits_1() {
    let o = corners(&["colour", p(&fixture("pentagon_pair.tess")), "--colours", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn certify_fig8() {
    let o = corners(&["certify", p(&fixture("fig8.cert")), "--census", p(&fixture("fig8_census.tsv"))]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("root: VERIFIED-L"));
}

#[test]
fn certify_without_census_is_unproven() {
    let o = corners(&["certify", p(&fixture("fig8.cert"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("root: UNPROVEN"));
}

#[test]
fn parse_log_with_census() {
    let o = corners(&["--json", "parse-log", p(&fixture("index15.log")), "--census", p(&fixture("fig8_census.tsv"))]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["nodes"], 16);
    assert_eq!(v["leaves"].as_array().unwrap().len(), 6);
    assert_eq!(v["result"], true);
}

#[test]
fn parse_log_writes_skeleton() {
    let dir = tempfile::tempdir().unwrap();
    let o = corners(&["--out", p(dir.path()), "parse-log", p(&fixture("index15.log"))]);
    assert!(o.status.success());
    let skel = std::fs::read_to_string(dir.path().join("skeleton.cert")).unwrap();
    assert!(skel.lines().any(|l| l == "qht T drills M"));
}

#[test]
fn threads_flag_accepted() {
    assert!(corners(&["--threads", "2", "catalog"]).status.success());
}
