use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use z2tri::{isomorphic, Triangulation};

fn z2tri(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_z2tri")).current_dir(dir).args(args).output().expect("binary runs")
}

fn ok_json(dir: &Path, args: &[&str]) -> Value {
    let out = z2tri(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

fn read(dir: &Path, name: &str) -> Triangulation {
    Triangulation::parse(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

#[test]
fn construct_lst_writes_two_tetrahedra() {
    let dir = tempfile::tempdir().unwrap();
    let v = ok_json(dir.path(), &["construct", "lst", "--p", "1", "--q", "3", "-o", "t.tri"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["result"]["tet_count"], 2);
    let t = read(dir.path(), "t.tri");
    assert_eq!(t.tet_count(), 2);
    assert!(isomorphic(&t, &z2tri::build::lst(1, 3).unwrap().0));
    let side: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("t.json")).unwrap()).unwrap();
    assert_eq!(side["params"]["q"], 3);
}

#[test]
fn construct_without_output_prints_tri() {
    let dir = tempfile::tempdir().unwrap();
    let out = z2tri(dir.path(), &["construct", "loop", "--n", "4", "--twisted"]);
    assert!(out.status.success());
    let t = Triangulation::parse(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(t.tet_count(), 4);
}

#[test]
fn family_m111_report() {
    let dir = tempfile::tempdir().unwrap();
    ok_json(dir.path(), &["construct", "family", "--tag", "M", "-k", "1", "-m", "1", "-n", "1", "-o", "m111.tri"]);
    let r = ok_json(dir.path(), &["analyze", "m111.tri", "--json"]);
    assert_eq!(r["tet_count"], 8);
    assert_eq!(r["z2_rank"], 1);
    assert_eq!(r["classes"][0]["surface"]["chi"], -3);
    assert_eq!(r["lsts"].as_array().unwrap().len(), 3);
    assert_eq!(r["lint"]["degree_sum"], 6);
}

#[test]
fn reports_match_schema_and_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok_json(d, &["construct", "family", "--tag", "Mprime", "-k", "1", "-m", "2", "-n", "1", "-o", "a.tri"]);
    ok_json(d, &["construct", "family", "--tag", "Q", "-k", "6", "-o", "q.tri"]);
    ok_json(d, &["construct", "fold", "--p", "1", "--q", "6", "--edge", "q", "-o", "l.tri"]);
    ok_json(d, &["construct", "lst", "--p", "2", "--q", "5", "-o", "s.tri"]);
    let schema: Value =
        serde_json::from_str(include_str!("../schema/report.schema.json")).expect("schema is valid JSON");
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    for f in ["a.tri", "q.tri", "l.tri", "s.tri"] {
        let first = z2tri(d, &["analyze", f, "--json"]);
        let second = z2tri(d, &["analyze", f, "--json"]);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout, "{f}");
        let v: Value = serde_json::from_slice(&first.stdout).unwrap();
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| format!("{e} at {}", e.instance_path())).collect();
        assert!(errors.is_empty(), "{f}: {errors:?}");
    }
}

#[test]
fn fold_file_along_q() {
    let dir = tempfile::tempdir().unwrap();
    ok_json(dir.path(), &["construct", "lst", "--p", "1", "--q", "2", "-o", "t.tri"]);
    let v = ok_json(dir.path(), &["fold", "t.tri", "--edge", "q", "-o", "f.tri"]);
    assert_eq!(v["result"]["h1_order"], 4);
    assert_eq!(v["result"]["fold_edge_weight"], 2);
    assert!(read(dir.path(), "f.tri").is_closed());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(z2tri(d, &["bogus"]).status.code(), Some(2));
    assert_eq!(z2tri(d, &["construct", "lst", "--p", "1"]).status.code(), Some(2));
    assert_eq!(z2tri(d, &["construct", "lst", "--p", "2", "--q", "4"]).status.code(), Some(1));
    assert_eq!(z2tri(d, &["analyze", "missing.tri"]).status.code(), Some(1));
    ok_json(d, &["construct", "family", "--tag", "M", "-k", "1", "-m", "1", "-n", "1", "-o", "m.tri"]);
    assert_eq!(z2tri(d, &["surface", "m.tri", "--class", "111"]).status.code(), Some(2));
    assert_eq!(z2tri(d, &["verify", "--only", "nonsense"]).status.code(), Some(2));
    assert_eq!(z2tri(d, &["moves", "m.tri", "--kind", "32"]).status.code(), Some(2));
}

#[test]
fn verify_only_runs_the_named_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = z2tri(dir.path(), &["verify", "--only", "chi"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1);
    assert!(lines[0].starts_with("[PASS]") && lines[0].contains("chi"));
}

#[test]
fn verify_pinpoints_corrupted_gluing() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok_json(d, &["construct", "lst", "--p", "1", "--q", "3", "-o", "t.tri"]);
    let text = std::fs::read_to_string(d.join("t.tri")).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    // retarget one gluing of tetrahedron 1 without touching its partner
    let last = lines[2].rsplit_once(' ').unwrap().0.to_string();
    lines[2] = format!("{last} 0:0123");
    std::fs::write(d.join("bad.tri"), lines.join("\n") + "\n").unwrap();
    let out = z2tri(d, &["verify", "--only", "lint", "--file", "bad.tri", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let errors = v["result"]["input_errors"].as_array().unwrap();
    assert_eq!(errors.len(), 1);
    let msg = errors[0].as_str().unwrap();
    assert!(msg.starts_with("bad.tri: line "), "{msg}");
    assert!(msg.contains("non-involutive"), "{msg}");
}

#[test]
fn every_subcommand_emits_json() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok_json(d, &["construct", "family", "--tag", "M", "-k", "1", "-m", "1", "-n", "1", "-o", "m.tri"]);
    ok_json(d, &["construct", "augmented", "--slope", "3,4", "--slope", "5,6", "--slope", "3,-2", "-o", "a.tri"]);
    // the slopes of M(1,2,1)
    assert_eq!(read(d, "a.tri").tet_count(), 10);
    ok_json(d, &["construct", "family", "--tag", "P", "-k", "1", "-o", "p.tri"]);

    let c = ok_json(d, &["colourings", "m.tri"]);
    assert_eq!(c["result"]["basis"].as_array().unwrap().len(), 1);
    let s = ok_json(d, &["surface", "m.tri"]);
    assert_eq!(s["result"]["chi"], -3);
    let b = ok_json(d, &["bounds", "m.tri", "--family", "M"]);
    let bounds = b["result"]["certificate"]["bounds"].as_array().unwrap();
    assert!(bounds.iter().any(|x| x["form"] == "2+2|phi|" && x["certified"] == true));
    let m = ok_json(d, &["moves", "m.tri", "--kind", "23", "--tet", "0", "--facet", "2", "-o", "m2.tri"]);
    assert_eq!(m["result"]["tet_count_after"], 9);
    assert_eq!(m["result"]["homology_preserved"], true);
    let p = ok_json(d, &["promote", "m.tri", "-o", "mp.tri"]);
    assert!(!p["result"]["log"].as_array().unwrap().is_empty());
    assert_eq!(read(d, "mp.tri").tet_count(), 8);
    let l = ok_json(d, &["find-lst", "p.tri"]);
    assert_eq!(l["result"]["lsts"].as_array().unwrap().len(), 1);
    ok_json(d, &["twisted-squares", "m.tri"]);
    let g = ok_json(d, &["lgraph", "--depth", "4"]);
    assert_eq!(g["result"].as_array().unwrap().len(), 15);
    let e = ok_json(d, &["enumerate-lens", "--depth", "8"]);
    assert!(!e["result"].as_array().unwrap().is_empty());
    let text = z2tri(d, &["analyze", "m.tri"]);
    assert!(text.status.success());
    assert!(String::from_utf8(text.stdout).unwrap().contains("8 tetrahedra"));
}
