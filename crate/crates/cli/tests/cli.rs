use std::path::Path;
use std::process::{Command, Output};

fn hollow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hollow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn analyze_z12_text_and_json() {
    let o = hollow(&["analyze", "zn:12"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("dclk dimension  1"), "{text}");
    assert!(text.contains("derived dim     2"), "{text}");

    let o = hollow(&["analyze", "zn:12", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["dclk_dim"], 1);
    assert_eq!(v["derived_dim"], 2);
    assert_eq!(v["distributive"], true);
}

#[test]
fn analyze_named_and_products() {
    let v = json(&hollow(&["analyze", "m3", "--format", "json"]));
    assert_eq!(
        (v["dclk_dim"].as_i64(), v["derived_dim"].as_i64()),
        (Some(-1), Some(0))
    );
    let v = json(&hollow(&["analyze", "prod(zn:4,zn:9)", "--format", "json"]));
    assert_eq!(v["size"], 9);
    assert_eq!(v["dclk_dim"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(hollow(&["analyze", "zn:0"]).status.code(), Some(1));
    assert_eq!(hollow(&["analyze", "bogus:3"]).status.code(), Some(1));
    assert_eq!(hollow(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(hollow(&["--help"]).status.code(), Some(0));
    assert_eq!(
        hollow(&["analyze", "file:/nonexistent/missing.json"])
            .status
            .code(),
        Some(1)
    );

    let refused = hollow(&["verify", "--exhaustive", "9"]);
    assert_eq!(refused.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("exceeds"));
}

#[test]
fn invalid_lattice_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fence.json");
    // two minimal elements and no bottom
    std::fs::write(
        &path,
        r#"{"n": 3, "relation": "covers", "pairs": [[0, 2], [1, 2]]}"#,
    )
    .unwrap();
    let o = hollow(&["analyze", &format!("file:{}", path.display())]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bottom"));
}

#[test]
fn verify_small_corpus() {
    let o = hollow(&["verify", "--exhaustive", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all asserted claims hold"));

    let o = hollow(&[
        "verify", "--rings", "zn:2..30", "--random", "20", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["instances"], 49);
    assert_eq!(v["asserted_failures"], 0);
}

#[test]
fn verify_json_is_deterministic() {
    let args = [
        "verify",
        "--exhaustive",
        "5",
        "--random",
        "10",
        "--seed",
        "7",
        "--format",
        "json",
    ];
    assert_eq!(hollow(&args).stdout, hollow(&args).stdout);
}

#[test]
fn enumerate_counts() {
    let o = hollow(&["enumerate", "--exhaustive", "6"]);
    assert!(stdout(&o).ends_with("25 lattices\n"));
    let v = json(&hollow(&[
        "enumerate",
        "--exhaustive",
        "4",
        "--labeled",
        "--format",
        "json",
    ]));
    // every labeling: 1 + 2 + 3! + (4! chains + 12 squares)
    assert_eq!(v.as_array().unwrap().len(), 45);
}

fn count_edges(dot: &str) -> usize {
    dot.lines().filter(|l| l.contains("->")).count()
}

#[test]
fn dot_exports() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name);
    for (what, file) in [
        ("hasse", "h.dot"),
        ("strata", "s.dot"),
        ("topology", "t.dot"),
    ] {
        let o = hollow(&["export", "zn:12", what, p(file).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{what}");
    }
    let read = |f: &str| std::fs::read_to_string(p(f)).unwrap();
    let hasse = read("h.dot");
    assert!(hasse.starts_with("digraph"));
    assert_eq!(count_edges(&hasse), 7);
    let strata = read("s.dot");
    assert!(strata.contains("(3)\\nS_1"));
    assert_eq!(count_edges(&read("t.dot")), 7);

    let o = hollow(&["analyze", "zn:12", "--format", "dot"]);
    assert_eq!(stdout(&o), hasse);
}

#[test]
fn exported_lattice_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for spec in ["zn:12", "n5", "prod(m3,chain:3)"] {
        let path = dir.path().join("l.json");
        let o = hollow(&["export", spec, "lattice", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let direct = json(&hollow(&["analyze", spec, "--format", "json"]));
        let file_spec = format!("file:{}", path.display());
        let reread = json(&hollow(&["analyze", &file_spec, "--format", "json"]));
        for key in [
            "size",
            "sh_count",
            "points",
            "dclk_dim",
            "derived_dim",
            "strata",
            "y_levels",
        ] {
            assert_eq!(direct[key], reread[key], "{spec}: {key}");
        }
    }
}

#[test]
fn witness_dir_stays_empty_when_claims_hold() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w");
    let o = hollow(&[
        "verify",
        "--exhaustive",
        "4",
        "--witness-dir",
        w.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(Path::new(&w).is_dir());
    assert_eq!(std::fs::read_dir(&w).unwrap().count(), 0);
}
