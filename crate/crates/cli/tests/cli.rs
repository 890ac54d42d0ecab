use std::path::PathBuf;
use std::process::{Command, Output};

use statone::document::Document;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn statone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_statone"))
        .args(args)
        .env_remove("STATONE_TABLE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn check_exit_codes() {
    for (name, code) in [
        ("boolean_triple.json", 0),
        ("chains_243.json", 0),
        ("stone_abc.json", 0),
        ("bauer_funnels.json", 0),
        ("cube_triangle.json", 0),
        ("table_s2.json", 0),
        ("swap.json", 1),
        ("table_s1_corrupted.json", 1),
        ("malformed.json", 2),
    ] {
        let o = statone(&["check", &fixture(name)]);
        assert_eq!(o.status.code(), Some(code), "{name}: {}{}", stdout(&o), stderr(&o));
    }
}

#[test]
fn check_reports_the_violated_law() {
    let swap = statone(&["check", &fixture("swap.json")]);
    assert!(stdout(&swap).contains("FAIL  σ∘σ=σ: idempotence: σ(σ(0))=0≠σ(0)=1"));
    let corrupted = statone(&["check", &fixture("table_s1_corrupted.json")]);
    assert!(stdout(&corrupted).contains("FAIL  x⊕1=1"));
}

#[test]
fn missing_file_is_a_parse_error() {
    let o = statone(&["check", "/nonexistent/statone.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dualize_boolean_product_to_stone() {
    let o = statone(&["dualize", &fixture("boolean_triple.json")]);
    assert_eq!(o.status.code(), Some(0));
    match Document::parse(&stdout(&o)).unwrap() {
        Document::Stone { points, g } => {
            assert_eq!(points.len(), 3);
            assert_eq!(g, vec![0, 0, 2]);
        }
        other => panic!("unexpected {}", other.kind()),
    }
}

#[test]
fn dualize_twice_returns_an_isomorphic_object() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("space.json");
    let second = dir.path().join("algebra.json");
    let o = statone(&[
        "dualize",
        &fixture("boolean_triple.json"),
        "--out",
        first.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = statone(&["dualize", first.to_str().unwrap(), "--out", second.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let back = Document::parse(&std::fs::read_to_string(&second).unwrap()).unwrap();
    assert_eq!(
        back,
        Document::Product {
            chains: vec![1, 1, 1],
            sigma: Some(vec![0, 0, 2])
        }
    );

    let cube = dir.path().join("cube.json");
    let bauer = dir.path().join("bauer.json");
    statone(&[
        "dualize",
        &fixture("bauer_funnels.json"),
        "--out",
        cube.to_str().unwrap(),
    ]);
    statone(&["dualize", cube.to_str().unwrap(), "--out", bauer.to_str().unwrap()]);
    assert_eq!(
        Document::parse(&std::fs::read_to_string(&bauer).unwrap()).unwrap(),
        Document::Bauer {
            vertices: 4,
            g: vec![0, 0, 2, 2]
        }
    );
}

#[test]
fn dualize_rejects_non_boolean_and_wrong_direction() {
    let o = statone(&["dualize", &fixture("chains_243.json")]);
    assert_eq!(o.status.code(), Some(2));
    let o = statone(&["dualize", &fixture("stone_abc.json"), "--direction", "algebra-to-space"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn roundtrip_certificates_replay() {
    let dir = tempfile::tempdir().unwrap();
    for name in [
        "boolean_triple.json",
        "boolean_square.json",
        "chains_243.json",
        "stone_abc.json",
        "stone_single.json",
        "bauer_triangle.json",
        "bauer_point.json",
        "cube_triangle.json",
    ] {
        let cert = dir.path().join(format!("cert_{name}"));
        let o = statone(&["roundtrip", &fixture(name), "--out", cert.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
        let o = statone(&["check", cert.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
    }
}

#[test]
fn corrupted_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    statone(&["roundtrip", &fixture("stone_abc.json"), "--out", cert.to_str().unwrap()]);
    let mut json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    json["certificate"]["space_side"]["g_prime"] = serde_json::json!([0, 1, 2]);
    std::fs::write(&cert, json.to_string()).unwrap();
    let o = statone(&["check", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn enumerate_structural_and_table() {
    let o = statone(&["enumerate", &fixture("chains_243.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("[0, 0, 2]") && out.contains("[0, 1, 2]"));
    assert!(out.contains("count: 2"));

    let o = statone(&["enumerate", &fixture("boolean_triple.json")]);
    assert!(stdout(&o).contains("count: 10"));

    let o = statone(&["enumerate", "--mode", "table", &fixture("boolean_square.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("count: 3"));
    assert!(!stdout(&o).contains("no structural counterpart"));

    let o = statone(&["enumerate", "--mode", "table", &fixture("table_s2.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("count: 1"));
}

#[test]
fn enumerate_table_respects_the_cap() {
    let o = Command::new(env!("CARGO_BIN_EXE_statone"))
        .args(["enumerate", "--mode", "table", &fixture("boolean_triple.json")])
        .env("STATONE_TABLE_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("STATONE_TABLE_CAP"));
}

#[test]
fn export_dot_draws_g() {
    let o = statone(&["export-dot", &fixture("stone_abc.json")]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("\"b\" -> \"a\";"));
    assert_eq!(dot.matches("->").count(), 3);

    let o = statone(&["export-dot", &fixture("bauer_funnels.json")]);
    assert!(stdout(&o).contains("\"v3\" -> \"v2\";"));

    let o = statone(&["export-dot", &fixture("chains_243.json")]);
    assert_eq!(o.status.code(), Some(2));
}
