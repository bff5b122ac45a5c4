use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

const C4: &str = r#"{"vertices":[1,2,3,4],"edges":[[0,1,2],[1,2,3],[2,3,4],[3,1,4]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tiered-tutte"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn weightpoly_text_and_json() {
    let o = run(&["weightpoly", "--partition", "2,2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "q + 4\n");
    let o = run(&["weightpoly", "--partition", "(1,1,2)", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["text"], "q^2 + 5*q + 11");
    assert_eq!(v["poly"], serde_json::json!([[2, 1], [1, 5], [0, 11]]));
}

#[test]
fn tutte_of_four_cycle() {
    let g = file(C4);
    let o = run(&["tutte", "--graph", path(&g), "--at-x", "1"]);
    assert_eq!(stdout(&o), "y + 3\n");
    let full = stdout(&run(&["tutte", "--graph", path(&g)]));
    assert_eq!(full, "x^3 + x^2 + x + y\n");
    for omega in ["omega1", "omega2", "random:9"] {
        let o = run(&[
            "tutte",
            "--graph",
            path(&g),
            "--method",
            "activities",
            "--omega",
            omega,
        ]);
        assert!(o.status.success(), "{omega}");
        assert_eq!(stdout(&o), full);
    }
}

#[test]
fn tutte_rejects_bad_requests() {
    let g = file(C4);
    let o = run(&["tutte", "--graph", path(&g), "--omega", "omega1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "tutte",
        "--graph",
        path(&g),
        "--method",
        "activities",
        "--omega",
        "sideways",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let split = file(r#"{"vertices":[1,2,3],"edges":[[0,1,2]]}"#);
    let o = run(&["tutte", "--graph", path(&split), "--method", "activities"]);
    assert_eq!(o.status.code(), Some(2));
    let bad = file("{not json");
    assert_eq!(
        run(&["tutte", "--graph", path(&bad)]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["tutte", "--graph", "/nonexistent/g.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn enumerate_streams() {
    let all = stdout(&run(&["enumerate", "--partition", "2,2"]));
    assert_eq!(all.lines().count(), 6);
    let connected = stdout(&run(&[
        "enumerate",
        "--partition",
        "2,2",
        "--connected-only",
    ]));
    assert_eq!(connected.lines().count(), 2);
    let trees = stdout(&run(&["enumerate", "--partition", "2,2", "--trees-only"]));
    let weights: Vec<u64> = trees
        .lines()
        .map(|l| {
            serde_json::from_str::<serde_json::Value>(l).unwrap()["weight"]
                .as_u64()
                .unwrap()
        })
        .collect();
    assert_eq!(weights.len(), 5);
    assert_eq!(weights.iter().sum::<u64>(), 1);
    let o = run(&["enumerate", "--partition", "1,1", "--vertices", "3,7"]);
    assert!(stdout(&o).contains(r#""tiers":{"3":1,"7":2}"#));
    let o = run(&["enumerate", "--partition", "1,1", "--vertices", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dual_of_drawn_tree() {
    let t = file(
        r#"{"vertices":[2,3,4,5,6,7,8],"edges":[[0,2,5],[1,3,5],[2,4,5],[3,4,8],[4,6,8],[5,6,7]],"tiers":{"2":1,"3":1,"4":1,"6":1,"5":2,"7":2,"8":2}}"#,
    );
    let o = run(&["dual", "--graph", path(&t)]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let pairs: Vec<(u64, u64)> = v["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e[1].as_u64().unwrap(), e[2].as_u64().unwrap()))
        .collect();
    assert_eq!(pairs, [(2, 4), (2, 6), (3, 4), (5, 6), (5, 7), (5, 8)]);
    assert_eq!(v["tiers"]["2"], 1);
    assert_eq!(v["tiers"]["3"], 1);
    assert_eq!(v["tiers"]["5"], 1);
    // applying it twice gives the tree back
    let d = file(&stdout(&o));
    let back: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["dual", "--graph", path(&d)]))).unwrap();
    let orig: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(t.path()).unwrap()).unwrap();
    assert_eq!(back["tiers"], orig["tiers"]);
}

#[test]
fn dual_of_quasi_tree() {
    // host path 1-2, tiered edge 2-3 with 2 in the bottom tier
    let t = file(r#"{"vertices":[1,2,3],"edges":[[0,1,2],[1,2,3]],"tiers":{"2":1,"3":2}}"#);
    let o = run(&["dual", "--graph", path(&t), "--e0", "0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["e0"], serde_json::json!([0]));
    assert_eq!(v["forest"]["tiers"], serde_json::json!({"2": 1, "3": 2}));
    // E0 empty leaves vertex 1 disconnected
    let o = run(&["dual", "--graph", path(&t), "--e0", ""]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_reports_and_exit_codes() {
    let o = run(&["verify", "thm14", "--p1", "2", "--p2", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(
        v["lhs"],
        serde_json::json!([[4, 1], [3, 6], [2, 22], [1, 51], [0, 66]])
    );

    for args in [
        vec!["verify", "eq14", "--max-n", "4"],
        vec!["verify", "perm", "--max-n", "4"],
        vec!["verify", "perm", "--partition", "1,1,2", "--perm", "3,2,1"],
        vec!["verify", "lemma71", "--max-n", "3"],
        vec!["verify", "lemma71", "--r", "2", "--u1", "1", "--u2", "4"],
        vec!["verify", "lemma72"],
        vec!["verify", "thm14", "--max-n", "4"],
        vec![
            "verify",
            "thm13",
            "--max-vertices",
            "3",
            "--random",
            "5",
            "--jobs",
            "2",
        ],
        vec!["verify", "phi", "--max-vertices", "3"],
    ] {
        let o = run(&args);
        assert!(o.status.success(), "{args:?}");
        assert!(
            stdout(&o).lines().all(|l| l.contains(r#""pass":true"#)),
            "{args:?}"
        );
    }

    let host = file(r#"{"vertices":[1,2,3,4],"edges":[[0,1,4],[1,2,3]]}"#);
    for id in ["thm13", "phi"] {
        let o = run(&["verify", id, "--graph", path(&host), "--partition", "2,2"]);
        assert!(o.status.success(), "{id}");
    }
    let o = run(&[
        "verify",
        "phi",
        "--graph",
        path(&host),
        "--partition",
        "2,2",
        "--e0",
        "1",
    ]);
    assert_eq!(stdout(&o).lines().count(), 1);

    assert_eq!(
        run(&["verify", "thm14", "--p1", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "perm", "--partition", "1,2", "--perm", "1,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "eq14", "--jobs", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = run(&[
        "verify",
        "thm13",
        "--max-vertices",
        "3",
        "--random",
        "4",
        "--jobs",
        "3",
    ]);
    let b = run(&[
        "verify",
        "thm13",
        "--max-vertices",
        "3",
        "--random",
        "4",
        "--jobs",
        "1",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["enumerate", "--partition", "2,1,2", "--trees-only"]);
    let b = run(&["enumerate", "--partition", "2,1,2", "--trees-only"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("memo.jsonl");
    let cache = cache.to_str().unwrap();
    let g = file(C4);
    let first = run(&["--cache", cache, "tutte", "--graph", path(&g)]);
    assert!(first.status.success());
    let saved = std::fs::read_to_string(cache).unwrap();
    assert!(!saved.is_empty());
    let second = run(&["--cache", cache, "tutte", "--graph", path(&g)]);
    assert_eq!(first.stdout, second.stdout);

    std::fs::write(cache, "{\"key\": 1}\n").unwrap();
    let o = run(&["--cache", cache, "tutte", "--graph", path(&g)]);
    assert_eq!(o.status.code(), Some(2));
}
