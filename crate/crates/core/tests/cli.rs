use std::process::{Command, Output};

fn oddcore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oddcore"))
        .args(args)
        .env_remove("ODDCORE_ORACLE_BOUND")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("oddcore-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn gen_then_analyze_fig2() {
    let out = oddcore(&["gen", "--model", "fixture", "--name", "fig2"]);
    assert!(out.status.success());
    let path = temp_file("fig2.txt", &stdout(&out));
    let out = oddcore(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["oddcore_report"], 1);
    assert_eq!(v["alpha"], 7);
    assert_eq!(v["mu"], 6);
    assert_eq!(v["ke"], false);
    assert_eq!(v["core"], serde_json::json!([8, 9]));
    assert_eq!(v["n_of_core"], serde_json::json!([2]));
    assert_eq!(v["d"], 1);
    assert_eq!(v["provenance"]["id"], "exhaustive_search");
}

#[test]
fn oracle_bound_flag_and_env() {
    let path = temp_file("c5.txt", "p 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
    let out = oddcore(&["analyze", path.to_str().unwrap(), "--json", "--oracle-bound", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["provenance"]["id"], "witness");
    assert_eq!(v["alpha"], 2);

    let out = Command::new(env!("CARGO_BIN_EXE_oddcore"))
        .args(["oracle", path.to_str().unwrap()])
        .env("ODDCORE_ORACLE_BOUND", "4")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("alpha: out of bound"));
    let out = oddcore(&["oracle", path.to_str().unwrap()]);
    assert!(stdout(&out).contains("alpha: 2"));
}

#[test]
fn input_errors_exit_with_two() {
    let bad = temp_file("bad.txt", "p 3\n0 0\n");
    for args in [
        vec!["analyze", bad.to_str().unwrap()],
        vec!["analyze", "/nonexistent/graph.txt"],
        vec!["verify", "--corpus", "exhaustive:12"],
        vec!["verify", "--corpus", "fixtures", "--checks", "T99"],
        vec!["gen", "--model", "fixture", "--name", "petersen"],
        vec!["gen", "--model", "almost-bipartite", "--cycle-len", "4"],
        vec!["frobnicate"],
    ] {
        let out = oddcore(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = oddcore(&["analyze", bad.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn gen_is_seeded() {
    let run = |seed: &str| stdout(&oddcore(&["gen", "--model", "almost-bipartite", "--seed", seed]));
    assert_eq!(run("5"), run("5"));
    assert_ne!(run("5"), run("6"));
    let g = oddcore::parse_edge_list(&run("5")).unwrap();
    assert!(oddcore::classify(&g).is_almost_bipartite());
}

#[test]
fn gen_writes_to_file() {
    let path = std::env::temp_dir().join(format!("oddcore-gen-{}.txt", std::process::id()));
    let out = oddcore(&["gen", "--model", "general", "--n", "6", "--p", "0.5", "--seed", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let g = oddcore::parse_edge_list(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(g.n(), 6);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn verify_reports_counts() {
    let out = oddcore(&["verify", "--corpus", "exhaustive:4", "--checks", "T1,T10", "--seed", "0", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["graphs"], 64);
    let t1 = &v["checks"][0];
    assert_eq!(t1["id"], "T1");
    assert_eq!(t1["pass"], 64);
    assert!(v.get("elapsed").is_none());
    assert!(v["failures"].as_array().unwrap().is_empty());
}
