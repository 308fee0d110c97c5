use serde_json::Value;
use std::path::Path;
use std::process::Command;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout)
            .unwrap_or_else(|e| panic!("bad JSON ({e}): {}", self.stdout))
    }
}

fn edgecsp(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_edgecsp"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
    }
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).expect("write input");
    path.to_str().expect("utf-8 path").to_string()
}

const M_S: &str = r#"{"entries":[["0","*"],["*","1"]]}"#;
const M_B: &str = r#"{"entries":[["0","*"],["*","0"]]}"#;
const EXAMPLE_A: &str = r#"{"entries":[["0","1","1"],["1","1","0"],["1","0","1"]]}"#;
/// Red loops, blue triangle.
const THREE_A: &str = r#"{"n":3,"red":[[0,0],[1,1],[2,2]],"blue":[[0,1],[0,2],[1,2]]}"#;
const THREE_B: &str = r#"{"n":3,"red":[[0,0],[1,1],[1,2]],"blue":[[0,1],[0,2],[1,2],[2,2]]}"#;
/// (K1+K2)*: a red-looped vertex 0 joined in red to the blue-looped
/// *-edge {1,2}.
const K1_K2_STAR: &str = r#"{"n":3,"red":[[0,0],[0,1],[0,2],[1,2]],"blue":[[1,1],[2,2],[1,2]]}"#;

/// nu of a cycle: blue cycle edges, red everywhere else between distinct vertices.
fn nu_cycle(n: usize) -> String {
    let mut blue = Vec::new();
    let mut red = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let edge = v == u + 1 || (u == 0 && v == n - 1);
            let pair = format!("[{u},{v}]");
            if edge {
                blue.push(pair);
            } else {
                red.push(pair);
            }
        }
    }
    format!(
        r#"{{"n":{n},"blue":[{}],"red":[{}]}}"#,
        blue.join(","),
        red.join(",")
    )
}

#[test]
fn classify_split_matrix_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "ms.json", M_S);
    let run = edgecsp(&["classify", &path]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let report = run.json();
    assert_eq!(report["verdict"], "P");
    assert!(report["decomposition"].is_object());
}

#[test]
fn classify_example_a_as_np_complete_with_pp_certificate() {
    let run = edgecsp(&["classify", "--matrix", EXAMPLE_A]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let report = run.json();
    assert_eq!(report["verdict"], "NP-complete");
    assert_eq!(report["certificate"]["kind"], "pp_odd_cycle");
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.json", r#"{"entries": [["0","*"]"#);
    let run = edgecsp(&["classify", &path]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.starts_with("error:"), "{}", run.stderr);
    assert!(run.stdout.is_empty());

    let missing = edgecsp(&["classify", "/nonexistent/template.json"]);
    assert_eq!(missing.code, 2);
    let asymmetric = edgecsp(&["classify", r#"{"entries":[["0","1"],["*","1"]]}"#]);
    assert_eq!(asymmetric.code, 2);
    let unknown = edgecsp(&["frobnicate"]);
    assert_eq!(unknown.code, 2);
}

#[test]
fn solve_bipartite_partition() {
    let run = edgecsp(&["solve", M_B, &nu_cycle(4)]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let report = run.json();
    assert_eq!(report["satisfiable"], true);
    assert_eq!(report["route"], "polynomial");
    let map: Vec<u64> = serde_json::from_value(report["witness"].clone()).unwrap();
    assert_eq!(map.len(), 4);
    for i in 0..4 {
        assert_ne!(
            map[i],
            map[(i + 1) % 4],
            "adjacent cycle vertices share a part"
        );
    }
}

#[test]
fn solve_odd_cycle_is_unsatisfiable() {
    let run = edgecsp(&["solve", M_B, &nu_cycle(5)]);
    assert_eq!(run.code, 1, "{}", run.stderr);
    let report = run.json();
    assert_eq!(report["satisfiable"], false);
    assert_eq!(report["witness"], Value::Null);
}

#[test]
fn solve_respects_lists() {
    let run = edgecsp(&[
        "solve",
        M_B,
        &nu_cycle(4),
        "--lists",
        r#"{"0":[1],"1":[1]}"#,
    ]);
    assert_eq!(run.code, 1, "{}", run.stderr);
    let run = edgecsp(&["solve", M_B, &nu_cycle(4), "--lists", r#"{"0":[1]}"#]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.json()["witness"][0], 1);
    let bad = edgecsp(&["solve", M_B, &nu_cycle(4), "--lists", r#"{"0":[7]}"#]);
    assert_eq!(bad.code, 2);
}

#[test]
fn intractable_template_needs_oracle() {
    let refused = edgecsp(&["solve", THREE_A, &nu_cycle(3)]);
    assert_eq!(refused.code, 3);
    assert!(
        refused.stderr.contains("NP-complete") && refused.stderr.contains("--oracle"),
        "{}",
        refused.stderr
    );
    assert!(refused.stdout.is_empty());

    let run = edgecsp(&["solve", "--oracle", THREE_A, &nu_cycle(3)]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.json()["route"], "oracle");
}

#[test]
fn sandwich_examples() {
    // C5 mandatory and allowed: not bipartite, no slack.
    let c5 = r#"{"n":5,"mandatory":[[0,1],[1,2],[2,3],[3,4],[0,4]],"allowed":[[0,1],[1,2],[2,3],[3,4],[0,4]]}"#;
    let run = edgecsp(&["sandwich", M_B, c5]);
    assert_eq!(run.code, 1, "{}", run.stderr);
    assert_eq!(run.json()["satisfiable"], false);

    // C4 mandatory, everything allowed: a split supergraph exists.
    let c4 = r#"{"n":4,"mandatory":[[0,1],[1,2],[2,3],[0,3]],"allowed":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#;
    let run = edgecsp(&["sandwich", M_S, c4]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let report = run.json();
    let edges: Vec<[usize; 2]> = serde_json::from_value(report["edges"].clone()).unwrap();
    for e in [[0, 1], [1, 2], [2, 3], [0, 3]] {
        assert!(
            edges.contains(&e),
            "mandatory edge {e:?} missing from {edges:?}"
        );
    }
    assert!(edges.len() > 4, "a chord is needed");

    let k3 = r#"{"entries":[["0","1","1"],["1","0","1"],["1","1","0"]]}"#;
    let refused = edgecsp(&["sandwich", k3, c4]);
    assert_eq!(refused.code, 3);
    let bad = edgecsp(&[
        "sandwich",
        M_S,
        r#"{"n":2,"mandatory":[[0,1]],"allowed":[]}"#,
    ]);
    assert_eq!(bad.code, 2);
}

#[test]
fn fullhom_path_is_np_complete() {
    let p4 = r#"{"n":4,"edges":[[0,1],[1,2],[2,3]]}"#;
    let run = edgecsp(&["fullhom", p4]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let report = run.json();
    assert_eq!(report["verdict"], "NP-complete");
    assert_eq!(report["forbidden"]["kind"], "P4");

    let k1_k2 = r#"{"n":3,"edges":[[1,2]]}"#;
    assert_eq!(edgecsp(&["fullhom", k1_k2]).json()["verdict"], "P");
}

#[test]
fn certify_3b_gives_a_siggers_triangle() {
    let run = edgecsp(&["certify", THREE_B]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let cert = &run.json()["certificate"];
    assert_eq!(cert["kind"], "star_odd_cycle");
    assert_eq!(cert["arena"], "siggers");
    assert_eq!(cert["cycle"].as_array().unwrap().len(), 3);

    let none = edgecsp(&["certify", M_S]);
    assert_eq!(none.code, 1);
    assert_eq!(none.json()["certificate"], Value::Null);
}

#[test]
fn decompose_and_core() {
    let run = edgecsp(&["decompose", K1_K2_STAR]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let report = run.json();
    assert_eq!(report["tractable"], true);
    assert_eq!(
        report["decomposition"]["blocks"].as_array().unwrap().len(),
        2
    );

    let rejected = edgecsp(&["decompose", THREE_A]).json();
    assert_eq!(rejected["tractable"], false);
    assert!(rejected["reject"].is_object());

    // Two red-looped vertices joined by red retract onto either one.
    let core = edgecsp(&["core", r#"{"n":2,"red":[[0,0],[1,1],[0,1]],"blue":[]}"#]).json();
    assert_eq!(core["vertices"].as_array().unwrap().len(), 1);
    assert_eq!(core["retraction"].as_array().unwrap().len(), 2);
}

#[test]
fn text_format() {
    let run = edgecsp(&["--format", "text", "classify", M_S]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.starts_with("verdict: P\n"), "{}", run.stdout);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["classify", EXAMPLE_A],
        vec!["certify", THREE_B],
        vec!["solve", M_B, "{}"],
    ] {
        let mut args = args;
        let cycle = nu_cycle(6);
        if args[0] == "solve" {
            args[2] = &cycle;
        }
        let first = edgecsp(&args);
        let second = edgecsp(&args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.code, second.code);
    }
}

#[test]
fn audit_small_sizes() {
    let run = edgecsp(&["audit", "--max-n", "2"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let report = run.json();
    let classes = report["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 3 + 18);
    assert!(classes.iter().all(|c| c["verdict"] == "P"));

    let run = edgecsp(&["audit", "--max-n", "3"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let report = run.json();
    assert_eq!(report["classes"].as_array().unwrap().len(), 3 + 18 + 165);
    assert_eq!(report["exceptions"], Value::Array(Vec::new()));
}

#[test]
fn audit_is_independent_of_job_count() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.json");
    let four = dir.path().join("four.json");
    let a = edgecsp(&[
        "audit",
        "--max-n",
        "3",
        "--jobs",
        "1",
        "--out",
        one.to_str().unwrap(),
    ]);
    let b = edgecsp(&[
        "audit",
        "--max-n",
        "3",
        "--jobs",
        "4",
        "--out",
        four.to_str().unwrap(),
    ]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read(&one).unwrap(), std::fs::read(&four).unwrap());
}

#[test]
fn audit_guard() {
    let run = edgecsp(&["audit", "--max-n", "5"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("--force"), "{}", run.stderr);
}
