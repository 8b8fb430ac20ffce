//! End-to-end tests of the binary: subcommand outputs, exit codes, file
//! formats and report determinism.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_shatter")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (Value, Output) {
    let out = run(args);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let value: Value = serde_json::from_str(&stdout)
        .unwrap_or_else(|e| panic!("stdout is not json ({e}): {stdout}"));
    (value, out)
}

fn write_fixture(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.display().to_string()
}

#[test]
fn bound_comb_matches_worked_example() {
    let (v, out) = run_json(&["bound", "comb", "--n", "8", "--r", "3", "--d", "2"]);
    assert!(out.status.success());
    assert_eq!(v["result"]["rhs"]["exact"], "256");
    assert_eq!(v["result"]["formula"], "comb");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn bound_hy_reports_side_condition_note() {
    let (v, out) = run_json(&["bound", "hy", "--n", "8", "--r", "2", "--d", "1"]);
    assert!(out.status.success());
    assert!(v["result"]["rhs"]["approx"].as_f64().unwrap() > 0.0);
    assert!(!v["result"]["notes"].as_array().unwrap().is_empty());
}

#[test]
fn reports_are_deterministic_and_rerunnable() {
    let (first, _) = run_json(&["bound", "comb", "--n", "12", "--r", "4", "--d", "3"]);
    let (second, _) = run_json(&["bound", "comb", "--n", "12", "--r", "4", "--d", "3"]);
    // The result payload must be bit-identical across runs.
    assert_eq!(first["result"], second["result"]);
    assert_eq!(first["input_digest"], second["input_digest"]);
    // Re-running with the recorded parameters reproduces the payload.
    let p = &first["parameters"];
    let (third, _) = run_json(&[
        "bound",
        "comb",
        "--n",
        &p["n"].to_string(),
        "--r",
        &p["r"].to_string(),
        "--d",
        &p["d"].to_string(),
    ]);
    assert_eq!(first["result"], third["result"]);
}

#[test]
fn net_build_cover_and_verify_flow() {
    let dir = tempfile::tempdir().unwrap();
    let class = write_fixture(dir.path(), "k3.cls", "r=2 n=2\n1,*\n2,1\n2,2\n");

    let (built, out) = run_json(&["net", "build", "--file", &class, "--check"]);
    assert!(out.status.success());
    assert!(built["result"]["value"].as_u64().unwrap() >= 1);
    let checks = built["oracle_checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["pass"].as_bool().unwrap()));

    let (cover, out) = run_json(&["cover", "exact", "--file", &class, "--check"]);
    assert!(out.status.success());
    assert_eq!(cover["result"]["value"], 3);
    assert_eq!(cover["result"]["witness"].as_array().unwrap().len(), 3);

    // The built net is a valid candidate for `net verify`.
    let witness_lines: Vec<String> = built["result"]["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w.as_str().unwrap().to_string())
        .collect();
    let candidate = write_fixture(
        dir.path(),
        "candidate.cls",
        &format!("r=2 n=2\n{}\n", witness_lines.join("\n")),
    );
    let (verify, out) = run_json(&["net", "verify", "--file", &class, "--candidate", &candidate]);
    assert!(out.status.success());
    assert_eq!(verify["result"]["is_net"], true);

    // A deliberately bad candidate is reported false but exits 0.
    let bad = write_fixture(dir.path(), "bad.cls", "r=2 n=2\n1,1\n");
    let (verify, out) = run_json(&["net", "verify", "--file", &class, "--candidate", &bad]);
    assert!(out.status.success());
    assert_eq!(verify["result"]["is_net"], false);
}

#[test]
fn graph_subcommands_on_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write_fixture(dir.path(), "k3.graph", "v=3 e=3\n0 1\n0 2\n1 2\n");

    let (chi, out) = run_json(&["graph", "chi", "--file", &k3]);
    assert!(out.status.success());
    assert_eq!(chi["result"]["chi"], 3);

    let (bp, out) = run_json(&["graph", "bp", "--file", &k3]);
    assert!(out.status.success());
    assert_eq!(bp["result"]["value"], 2);

    let (lemma, out) = run_json(&["graph", "check-lemma", "--file", &k3]);
    assert!(out.status.success());
    assert_eq!(lemma["result"]["vc"], 1);
    assert_eq!(lemma["result"]["covering"], 3);
    assert_eq!(lemma["result"]["chi"], 3);
    assert_eq!(lemma["result"]["holds"], true);

    // K_{2,2} with an explicit witness in the file.
    let k22 = write_fixture(
        dir.path(),
        "k22.graph",
        "v=4 e=4\n0 2\n0 3\n1 2\n1 3\npart: L={0,1} R={2,3}\n",
    );
    let (lemma, out) = run_json(&["graph", "check-lemma", "--file", &k22]);
    assert!(out.status.success());
    assert_eq!(lemma["result"]["covering"], 2);
    assert_eq!(lemma["result"]["chi"], 2);
    assert_eq!(lemma["result"]["witness_computed"], false);

    // to-class writes a parseable class file.
    let out_path = dir.path().join("k3.cls");
    let (_, out) = run_json(&[
        "graph",
        "to-class",
        "--file",
        &k3,
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let class_text = std::fs::read_to_string(&out_path).unwrap();
    assert!(class_text.starts_with("r=2 n=2"));

    // Hypergraph input goes through the same commands.
    let h = write_fixture(
        dir.path(),
        "tri.hgraph",
        "r=3 v=3 e=1\n0 1 2\npart: {0} {1} {2}\n",
    );
    let (lemma, out) = run_json(&["graph", "check-lemma", "--file", &h]);
    assert!(out.status.success());
    assert_eq!(lemma["result"]["chi"], 2);
    assert_eq!(lemma["result"]["holds"], true);
}

#[test]
fn word_subcommands_on_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let per12 = write_fixture(dir.path(), "per12.word", "kind=periodic\nr=2\ncycle=12\n");

    let (pcount, out) = run_json(&["word", "pcount", "--file", &per12, "--offsets", "0,1"]);
    assert!(out.status.success());
    assert_eq!(pcount["result"]["count"], 2);
    assert_eq!(pcount["result"]["exact"], true);

    let (pstar, out) = run_json(&["word", "pstar", "--file", &per12, "--n", "5"]);
    assert!(out.status.success());
    assert_eq!(pstar["result"]["value"], 2);
    assert_eq!(pstar["result"]["witness"].as_array().unwrap().len(), 5);

    let (classify, out) = run_json(&["word", "classify", "--file", &per12, "--n", "5"]);
    assert!(out.status.success());
    assert_eq!(classify["result"]["ell_estimate"], 1);
    assert_eq!(classify["result"]["alternative"]["id"], "b");

    let (toclass, out) =
        run_json(&["word", "to-class", "--file", &per12, "--offsets", "0,1,2"]);
    assert!(out.status.success());
    assert_eq!(toclass["result"]["count"], 2);
    let embedded = toclass["result"]["class_file"].as_str().unwrap();
    assert!(embedded.contains("1,2,1"));
    assert!(embedded.contains("2,1,2"));

    // CSV mode renders the classify profile as a table.
    let out = run(&["--csv", "word", "classify", "--file", &per12, "--n", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("n,pstar,exact"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn natarajan_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let class = write_fixture(dir.path(), "t.cls", "r=3 n=1\n1\n2\n3\n");

    let (dim, out) = run_json(&["natarajan", "dim", "--file", &class, "--k", "2"]);
    assert!(out.status.success());
    assert_eq!(dim["result"]["dim"], 1);

    let (bound, out) =
        run_json(&["natarajan", "bound", "--n", "4", "--r", "2", "--k", "2", "--d", "2"]);
    assert!(out.status.success());
    // r = k = 2 collapses to the binomial sum: C(4,0)+C(4,1)+C(4,2) = 11.
    assert_eq!(bound["result"]["rhs"]["exact"], "11");

    let stage_dir = dir.path().join("stages");
    let (branch, out) = run_json(&[
        "natarajan",
        "branch",
        "--file",
        &class,
        "--k",
        "2",
        "--dump-stages",
        stage_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(branch["result"]["stages"], 2);
    assert_eq!(branch["result"]["verified"], true);
    let final_stage = std::fs::read_to_string(stage_dir.join("stage-001.txt")).unwrap();
    assert!(final_stage.contains("b1"));
    assert!(final_stage.contains("c{1,2}"));
    assert!(final_stage.contains("c{1,3}"));

    let (tf, out) = run_json(&[
        "natarajan",
        "tight-family",
        "--n",
        "4",
        "--r",
        "3",
        "--k",
        "2",
        "--d",
        "1",
    ]);
    assert!(out.status.success());
    assert_eq!(tf["result"]["size"], 9);
    assert_eq!(tf["result"]["dim"], 1);
}

#[test]
fn verify_suite_runs_seeded() {
    let (v, out) = run_json(&["verify-suite", "--cases", "15", "--seed", "7"]);
    assert!(out.status.success());
    assert_eq!(v["seed"], 7);
    assert_eq!(v["result"]["all_pass"], true);
    let checks = v["result"]["checks"].as_array().unwrap();
    assert!(checks.len() >= 6);

    // Same seed, same payload.
    let (again, _) = run_json(&["verify-suite", "--cases", "15", "--seed", "7"]);
    assert_eq!(v["result"], again["result"]);
}

#[test]
fn thread_pool_size_does_not_change_reports() {
    let (one, _) = run_json(&["--threads", "1", "verify-suite", "--cases", "20"]);
    let (four, _) = run_json(&["--threads", "4", "verify-suite", "--cases", "20"]);
    assert_eq!(one["result"], four["result"]);
}

#[test]
fn exit_codes_follow_the_contract() {
    // 2: usage error (clap).
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));

    // 3: parse error (malformed file).
    let dir = tempfile::tempdir().unwrap();
    let bad = write_fixture(dir.path(), "bad.cls", "r=2 n=2\n1,2,3\n");
    let out = run(&["net", "build", "--file", &bad]);
    assert_eq!(out.status.code(), Some(3));

    // 3: unreadable input file.
    let out = run(&["net", "build", "--file", "/nonexistent/x.cls"]);
    assert_eq!(out.status.code(), Some(3));

    // 4: validation error (corrupt partition witness).
    let broken = write_fixture(
        dir.path(),
        "broken.graph",
        "v=3 e=3\n0 1\n0 2\n1 2\npart: L={0} R={1,2}\n",
    );
    let out = run(&["graph", "check-lemma", "--file", &broken]);
    assert_eq!(out.status.code(), Some(4));

    // 4: argument error (k out of range).
    let cls = write_fixture(dir.path(), "c.cls", "r=2 n=1\n1\n");
    let out = run(&["natarajan", "dim", "--file", &cls, "--k", "5"]);
    assert_eq!(out.status.code(), Some(4));

    // 5: resource budget exceeded.
    let out = run(&["cover", "exact", "--file", &cls, "--budget", "1"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn env_var_overrides_default_budget() {
    let dir = tempfile::tempdir().unwrap();
    let cls = write_fixture(dir.path(), "c.cls", "r=2 n=3\n1,2,*\n");
    let out = Command::new(bin())
        .env("SHATTER_BUDGET", "2")
        .args(["cover", "exact", "--file", &cls])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(5));

    // The explicit flag wins over the environment.
    let out = Command::new(bin())
        .env("SHATTER_BUDGET", "2")
        .args(["cover", "exact", "--file", &cls, "--budget", "1048576"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
