use std::process::{Command, Output};

fn fockkl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fockkl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = fockkl(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn partition_maps() {
    assert_eq!(stdout(&["hat", "--n", "3", "--r", "3", "6,2,1"]), "12,6,3\n");
    assert_eq!(stdout(&["tilde", "--n", "3", "--r", "3", "8,1"]), "12,5,4\n");
    assert_eq!(stdout(&["ellmu", "--n", "3", "--r", "3", "6,2,1"]), "0\n");
    assert_eq!(stdout(&["core", "--n", "2", "3,1"]), "[]\n");
    assert_eq!(stdout(&["core", "--n", "3", "3,1"]), "3,1\n");
    assert_eq!(stdout(&["core", "--n", "3", "4,1"]), "1,1\n");
    assert_eq!(stdout(&["hat", "--n", "3", "--r", "3", "--format", "json", "6,2,1"]), "[\n  12,\n  6,\n  3\n]\n");
}

#[test]
fn single_polynomial() {
    assert_eq!(stdout(&["dpoly", "--n", "2", "--r", "2", "1,1", "2"]), "q\n");
    assert_eq!(stdout(&["dpoly", "--n", "2", "2", "1,1"]), "0\n");
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["dpoly", "--n", "2", "--format", "json", "1,1", "2"])).unwrap();
    assert_eq!(v["poly"], serde_json::json!({"1": 1}));
}

#[test]
fn worked_example_column() {
    let out = stdout(&["gplus", "--n", "3", "--r", "3", "--mu-conj", "6,2,1"]);
    assert_eq!(
        out,
        "|3,2,1,1,1,1> + (q)|3,1,1,1,1,1,1> + (q)|2,2,2,1,1,1> + (q^2)|2,1,1,1,1,1,1,1>\n"
    );
    assert_eq!(stdout(&["gplus", "--n", "2", "2"]), "|2> + (q)|1,1>\n");
}

#[test]
fn matrices() {
    let csv = stdout(&["dmat", "--n", "3", "--m", "9", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "# m=9 n=3 r=9 order=reverse-lexicographic");
    assert_eq!(lines.len(), 32);
    assert!(lines[1].starts_with("lambda\\mu,9,\"8,1\""));
    assert_eq!(
        stdout(&["emat", "--n", "2", "--m", "2", "--format", "csv"]),
        "# m=2 n=2 r=2 order=reverse-lexicographic\nlambda\\mu,2,\"1,1\"\n2,1,q\n\"1,1\",0,1\n"
    );
    let j: serde_json::Value =
        serde_json::from_str(&stdout(&["dmat", "--n", "2", "--m", "2", "--format", "json"])).unwrap();
    assert_eq!(j["entries"]["1,1"]["2"], serde_json::json!({"1": 1}));
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let a = stdout(&["dmat", "--n", "2", "--m", "5", "--format", "csv"]);
    let b = stdout(&["dmat", "--n", "2", "--m", "5", "--format", "csv", "--jobs", "1"]);
    assert_eq!(a, b);
    let dir = std::env::temp_dir().join(format!("fockkl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("d.csv");
    let out = stdout(&["dmat", "--n", "2", "--m", "5", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), a);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "th2", "--n", "3", "--m", "9", "--r", "3"][..],
        &["verify", "th1", "--n", "2", "--m", "5", "--r", "3"],
        &["verify", "inverse", "--n", "2", "--m", "4"],
        &["verify", "routes", "--n", "2", "--m", "3"],
        &["verify", "oracle", "--n", "3", "--m", "5"],
        &["verify", "recursion", "--n", "2", "--m", "0", "--r", "3"],
    ] {
        let out = fockkl(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains("failed 0"), "{text}");
        // progress goes to stderr only
        assert!(!text.contains("done"));
    }
    let rep: serde_json::Value = serde_json::from_str(&stdout(&[
        "verify", "routes", "--n", "3", "--m", "4", "--r", "3", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(rep["command"], "verify routes");
    assert_eq!(rep["params"], serde_json::json!({"m": 4, "n": 3, "r": 3}));
    assert_eq!(rep["failed"], 0);
    assert!(rep["checked"].as_u64().unwrap() > 0);
    assert_eq!(rep["counterexamples"], serde_json::json!([]));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["dpoly", "--n", "2", "1,x", "2"][..],
        &["dpoly", "--n", "2", "1,1", "2,1"],
        &["dmat", "--n", "1", "--m", "2"],
        &["hat", "--n", "3", "--r", "2", "1,1,1"],
        &["hat", "--n", "3", "--format", "csv", "1"],
        &["verify", "nothing", "--n", "2", "--m", "2"],
        &["gplus", "--n", "2", "--r", "1", "--mu-conj", "1,1"],
        &["bogus"],
        &[],
    ] {
        let out = fockkl(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}
