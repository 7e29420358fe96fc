use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn lietool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lietool")).args(args).env_remove("LIETOOL_CAP").output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn run_ok(args: &[&str]) -> Value {
    let out = lietool(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["schema"], "lietool/1");
    v
}

#[test]
fn fusion_example_matches_hand_count() {
    // sp4: 4 ⊗ 5 = 16 ⊕ 4, and at level 2 the charge leaves room for the
    // source, so the fusion coefficient is the tensor multiplicity.
    let v = run_ok(&["fusion", "--algebra", "C2", "--level", "2", "--charge", "1,0", "--source", "0,1", "--target", "1,1"]);
    assert_eq!(v["rule"], 1);
    assert_eq!(v["oracle"], 1);
    assert_eq!(v["agree"], true);
    assert_eq!(v["target"]["coords"], serde_json::json!(["1", "1"]));
    let v = run_ok(&["fusion", "--algebra", "G2", "--level", "2", "--charge", "0,1", "--source", "1,0", "--target", "1,0"]);
    assert_eq!(v["rule"], "unsupported");
    assert_eq!(v["agree"], Value::Null);
}

#[test]
fn verify_e8_reports_branching() {
    let v = run_ok(&["verify-e8"]);
    assert_eq!(v["multiplicities"], serde_json::json!({"0,0": 52, "1,0": 26, "0,1": 1}));
    assert_eq!(v["dims"]["g2"], 14);
    assert_eq!(v["dims"]["f4"], 52);
    assert_eq!(v["cartan"]["g2"], serde_json::json!([[2, -1], [-3, 2]]));
    assert!(v["claims"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

fn g2_rule(a: (i64, i64), b: (i64, i64)) -> bool {
    // Nonzero weights of the 7-dimensional module in Dynkin labels, and the
    // zero weight contributing only off the wall.
    let steps = [(1, 0), (-1, 0), (-1, 1), (1, -1), (2, -1), (-2, 1)];
    let d = (b.0 - a.0, b.1 - a.1);
    steps.contains(&d) || (d == (0, 0) && a.0 > 0)
}

#[test]
fn tensor_graph_dot_follows_the_rule() {
    let out = lietool(&["tensor-graph", "--height", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph "));
    let mut nodes = Vec::new();
    let mut edges = BTreeSet::new();
    for line in dot.lines() {
        if let Some(rest) = line.trim().strip_suffix("\"];") {
            let label = rest.split("(").nth(1).unwrap().trim_end_matches(')');
            let xs: Vec<i64> = label.split(',').map(|x| x.parse().unwrap()).collect();
            nodes.push((xs[0], xs[1]));
        } else if let Some((a, b)) = line.trim().trim_end_matches(';').split_once(" -- ") {
            let idx = |s: &str| s.trim_start_matches('n').parse::<usize>().unwrap();
            edges.insert((idx(a), idx(b)));
        }
    }
    // Level a + 2b with comarks (1, 2).
    let expect_nodes: BTreeSet<(i64, i64)> =
        (0..=4).flat_map(|a| (0..=2).map(move |b| (a, b))).filter(|&(a, b)| a + 2 * b <= 4).collect();
    assert_eq!(nodes.iter().copied().collect::<BTreeSet<_>>(), expect_nodes);
    for i in 0..nodes.len() {
        for j in i..nodes.len() {
            assert_eq!(edges.contains(&(i, j)), g2_rule(nodes[i], nodes[j]), "{:?} {:?}", nodes[i], nodes[j]);
        }
    }
    let v = run_ok(&["tensor-graph", "--height", "4", "--json"]);
    assert_eq!(v["edges"].as_array().unwrap().len(), edges.len());
}

#[test]
fn usage_errors_exit_two() {
    let out = lietool(&["fusion", "--algebra", "C2", "--bogus", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--bogus"));
    let out = lietool(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lietool(&["rootsys", "--algebra", "Q7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json_of(&out)["error"].as_str().unwrap().contains("Q7"));
    let out = lietool(&["weights", "--algebra", "B2", "--weight", "1/2,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn weights_and_tensor() {
    let v = run_ok(&["weights", "--algebra", "B3", "--weight", "0,0,1"]);
    assert_eq!(v["dim"], 8);
    assert_eq!(v["weyl_dim"], 8);
    // sl3: 3 ⊗ 3̄ = 8 ⊕ 1.
    let v = run_ok(&["tensor", "--algebra", "A2", "--charge", "1,0", "--source", "0,1"]);
    let parts: BTreeSet<(String, i64)> = v["decomposition"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p["weight"]["coords"].to_string(), p["multiplicity"].as_i64().unwrap()))
        .collect();
    assert_eq!(parts, [("[\"0\",\"0\"]".to_string(), 1), ("[\"1\",\"1\"]".to_string(), 1)].into());
    // G2: the adjoint appears once in 7 ⊗ 7.
    let v = run_ok(&["tensor", "--algebra", "G2", "--charge", "1,0", "--source", "1,0", "--target", "0,1"]);
    assert_eq!(v["oracle"], 1);
    assert_eq!(v["k_subspace"], 1);
    assert_eq!(v["agree"], true);
}

#[test]
fn cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_lietool"))
        .args(["weights", "--algebra", "B3", "--weight", "0,0,1"])
        .env("LIETOOL_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(json_of(&out)["error"].as_str().unwrap().contains("cap"));
    let v = run_ok(&["weights", "--algebra", "B3", "--weight", "0,0,1", "--cap", "8"]);
    assert_eq!(v["dim"], 8);
}

#[test]
fn rootsys_and_compress_check() {
    let v = run_ok(&["rootsys", "--algebra", "G2"]);
    assert_eq!(v["cartan"], serde_json::json!([[2, -1], [-3, 2]]));
    assert_eq!(v["dim"], 14);
    assert_eq!(v["dual_coxeter"], 4);
    // (ϑ1|θ) = 1 leaves no room at level 1.
    let v = run_ok(&["compress-check", "--algebra", "G2", "--level", "1", "--charge", "1,0", "--source", "1,0", "--target", "1,0"]);
    assert_eq!(v["truncation"]["applicable"], false);
    let v = run_ok(&[
        "compress-check", "--algebra", "A1", "--level", "3", "--charge", "1", "--source", "1", "--target", "2",
        "--rho", "0", "--mu1", "1", "--nu1", "2",
    ]);
    assert_eq!(v["truncation"]["applicable"], true);
    assert_eq!(v["truncation"]["fusion"], 1);
    assert_eq!(v["reduction"]["condition_a"], true);
}

#[test]
fn lattice_operations() {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("a2_gram.json");
    std::fs::write(&path, "[[2,-1],[-1,2]]").unwrap();
    let p = path.to_str().unwrap();
    let v = run_ok(&["lattice", "--gram", p, "--op", "dual"]);
    assert_eq!(v["discriminant"], 3);
    assert_eq!(v["dual_basis"], serde_json::json!([["2/3", "1/3"], ["1/3", "2/3"]]));
    let v = run_ok(&["lattice", "--gram", p, "--op", "cocycle", "--seed", "3"]);
    assert_eq!(v["values"], serde_json::json!([[1, 1], [-1, 1]]));
    assert_eq!(v["check"]["passed"], true);
    let v = run_ok(&["lattice", "--gram", p, "--op", "fusion", "--charge", "2/3,1/3", "--source", "1/3,2/3", "--target", "0,0"]);
    assert_eq!(v["fusion"], 1);
    let v = run_ok(&["lattice", "--gram", p, "--op", "fusion", "--charge", "2/3,1/3", "--source", "0,0", "--target", "-1,0"]);
    assert_eq!(v["fusion"], 0);
    let odd = dir.join("odd_gram.json");
    std::fs::write(&odd, "[[1]]").unwrap();
    assert_eq!(lietool(&["lattice", "--gram", odd.to_str().unwrap(), "--op", "dual"]).status.code(), Some(2));
}

#[test]
fn probe_verdicts() {
    let v = run_ok(&["probe", "--charge", "1", "--order", "0", "--cutoffs", "8,12,16", "--max-mode", "6"]);
    assert_eq!(v["verdict"], "PASS");
    let table = v["cutoffs"].as_object().unwrap();
    assert_eq!(table.keys().cloned().collect::<BTreeSet<_>>(), ["8", "12", "16"].map(String::from).into());
    assert_eq!(table["8"].as_object().unwrap().len(), 13);
    // (α|α) = 2 without the energy weight grows with the cutoff.
    let out = lietool(&["probe", "--norms", "2", "--charge", "1", "--order", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["verdict"], "FAIL");
    let v = run_ok(&["probe", "--norms", "2", "--charge", "1", "--order", "1"]);
    assert_eq!(v["verdict"], "PASS");
}

#[test]
fn verify_paper_is_deterministic() {
    let args = ["verify-paper", "--seed", "7", "--cap", "24"];
    let a = lietool(&args);
    let b = lietool(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    let claims = v["claims"].as_array().unwrap();
    let assumed: Vec<&Value> = claims.iter().filter(|c| c["status"] == "assumed").collect();
    assert_eq!(assumed.len(), 1);
    assert_eq!(assumed[0]["id"], "kac-walton-identification");
    assert!(claims.iter().filter(|c| c["status"] != "assumed").all(|c| c["status"] == "pass"));
    let criteria: BTreeSet<u64> = claims.iter().map(|c| c["criterion"].as_u64().unwrap()).collect();
    assert_eq!(criteria, (1..=10).collect());
    let ids: BTreeSet<&str> = claims.iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids.len(), claims.len());
}
