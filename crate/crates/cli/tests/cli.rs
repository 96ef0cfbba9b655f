//! End-to-end tests for the `mlcol` binary: exit codes, determinism,
//! certificate round trips, and table shapes.

use std::process::{Command, Output};

fn mlcol() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mlcol"))
}

fn run(args: &[&str]) -> Output {
    mlcol().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn usage_exit_codes() {
    assert_eq!(code_of(&run(&["--help"])), 0);
    assert_eq!(code_of(&run(&["--version"])), 0);
    assert_eq!(code_of(&run(&["bogus-subcommand"])), 3);
    assert_eq!(code_of(&run(&["sweep", "--format", "dot"])), 3);
    assert_eq!(code_of(&run(&["gadget", "q"])), 3);
    // audit needs a mode flag
    assert_eq!(code_of(&run(&["audit", "--m", "1"])), 3);
}

#[test]
fn lemma1_upheld_and_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let first = run(&["verify", "lemma1", "--m", "1", "--out", a.to_str().unwrap()]);
    assert_eq!(code_of(&first), 0);
    let second = run(&["verify", "lemma1", "--m", "1", "--out", b.to_str().unwrap()]);
    assert_eq!(code_of(&second), 0);
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert_eq!(bytes_a, bytes_b, "primary outputs must be byte-identical");

    // Timing lives in the sidecar, not the certificate.
    let cert = String::from_utf8(bytes_a).unwrap();
    assert!(!cert.contains("wall_ms"));
    let stats = std::fs::read_to_string(a.with_extension("stats.json")).unwrap();
    let stats: serde_json::Value = serde_json::from_str(&stats).unwrap();
    assert!(stats["legs"]["blocked"]["wall_ms"].is_u64());
}

#[test]
fn lemma1_certificate_round_trips_through_checker() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    assert_eq!(
        code_of(&run(&["verify", "lemma1", "--m", "1", "--out", cert.to_str().unwrap()])),
        0
    );
    let check = run(&["check-certificate", "--file", cert.to_str().unwrap()]);
    assert_eq!(code_of(&check), 0);
    assert!(stdout_of(&check).contains("overall: PASS"));

    // Tampering with the verdict must be caught (exit 1).
    let text = std::fs::read_to_string(&cert).unwrap();
    let tampered_path = dir.path().join("tampered.json");
    std::fs::write(&tampered_path, text.replace("\"upheld\"", "\"refuted\"")).unwrap();
    let bad = run(&["check-certificate", "--file", tampered_path.to_str().unwrap()]);
    assert_eq!(code_of(&bad), 1);
    assert!(stdout_of(&bad).contains("overall: FAIL"));

    // Malformed input is a usage-level failure, not a refutation.
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "not json").unwrap();
    assert_eq!(code_of(&run(&["check-certificate", "--file", junk.to_str().unwrap()])), 3);
}

#[test]
fn theorem1_both_modes_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for mode in ["exhaustive", "representative"] {
        let cert = dir.path().join(format!("{mode}.json"));
        let verify = run(&[
            "verify", "theorem1", "--m", "1", "--mode", mode,
            "--out", cert.to_str().unwrap(),
        ]);
        assert_eq!(code_of(&verify), 0, "mode {mode}");
        let check = run(&["check-certificate", "--file", cert.to_str().unwrap()]);
        assert_eq!(code_of(&check), 0, "mode {mode}");
        assert!(stdout_of(&check).contains("verdict=blocked"));
    }
}

#[test]
fn sweep_table_shape_and_empty_range() {
    let out = run(&["sweep", "--m-from", "1", "--m-to", "2"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 4, "header + separator + two data rows");
    assert!(rows[2].contains("| 1 | 0 | 3 | UNSAT | SAT | upheld |"));
    assert!(rows[3].contains("| 2 | 0 | 6 | UNSAT | SAT | upheld |"));

    let csv = run(&["sweep", "--m-from", "1", "--m-to", "1", "--format", "csv"]);
    assert_eq!(
        stdout_of(&csv),
        "m,e,list_size,blocked_verdict,open_verdict,claim\n1,0,3,UNSAT,SAT,upheld\n"
    );

    // Inverted range: empty table, still exit 0.
    let empty = run(&["sweep", "--m-from", "5", "--m-to", "4"]);
    assert_eq!(code_of(&empty), 0);
    assert_eq!(stdout_of(&empty).lines().count(), 2, "header and separator only");
}

#[test]
fn export_then_solve_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let exp = dir.path().join("exp");
    let export = run(&[
        "export", "h", "--m", "1", "--e-override", "1",
        "--out-dir", exp.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&export), 0);
    let graph = exp.join("h_m1_e1.graph.json");
    let lists = exp.join("h_m1_e1.lists.json");
    assert!(graph.exists() && lists.exists());
    assert!(exp.join("h_m1_e1.embedding.json").exists());
    assert!(exp.join("h_m1_e1.graph.dot").exists());

    // The widened instance is satisfiable: exit 0.
    let sat = run(&[
        "solve", "--graph", graph.to_str().unwrap(),
        "--lists", lists.to_str().unwrap(), "--b", "1",
    ]);
    assert_eq!(code_of(&sat), 0);
    assert!(stdout_of(&sat).contains("\"verdict\": \"SAT\""));

    // The standard instance is blocked: exit 1.
    let blocked_dir = dir.path().join("blocked");
    run(&["export", "h", "--m", "1", "--out-dir", blocked_dir.to_str().unwrap()]);
    let unsat = run(&[
        "solve",
        "--graph", blocked_dir.join("h_m1_e0.graph.json").to_str().unwrap(),
        "--lists", blocked_dir.join("h_m1_e0.lists.json").to_str().unwrap(),
        "--b", "1",
    ]);
    assert_eq!(code_of(&unsat), 1);
}

#[test]
fn budget_exhaustion_is_inconclusive() {
    let flag = run(&["verify", "lemma1", "--m", "1", "--budget-nodes", "1"]);
    assert_eq!(code_of(&flag), 2);

    // The same budget must flow in through the environment variable.
    let env = mlcol()
        .args(["verify", "lemma1", "--m", "1"])
        .env("MLCOL_BUDGET_NODES", "1")
        .output()
        .expect("binary runs");
    assert_eq!(code_of(&env), 2);
}

#[test]
fn gadget_outputs_parse() {
    let h = run(&["gadget", "h", "--m", "2"]);
    assert_eq!(code_of(&h), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&h)).unwrap();
    assert_eq!(doc["kind"], "gadget-h");
    assert_eq!(doc["graph"]["vertices"].as_array().unwrap().len(), 16);
    assert_eq!(doc["graph"]["edges"].as_array().unwrap().len(), 27);
    assert_eq!(doc["face_count"], 13);

    let g = run(&["gadget", "g", "--m", "1"]);
    assert_eq!(code_of(&g), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&g)).unwrap();
    assert_eq!(doc["kind"], "gadget-g");
    assert_eq!(doc["p"], "3");
    assert_eq!(doc["pairs"].as_array().unwrap().len(), 9);
    assert_eq!(doc["graph"]["vertices"].as_array().unwrap().len(), 128);

    let dot = run(&["gadget", "h", "--format", "dot"]);
    assert!(stdout_of(&dot).starts_with("graph g {"));
}

#[test]
fn audit_enumerate_blocks_everything() {
    let out = run(&["audit", "--m", "1", "--enumerate"]);
    assert_eq!(code_of(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["total"], 4);
    assert_eq!(doc["blocked"], 4);
    assert_eq!(doc["all_blocked"], true);
}

#[test]
fn audit_coloring_replays_chain_on_witness() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    run(&["verify", "lemma1", "--m", "1", "--out", cert.to_str().unwrap()]);
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    let witness = &doc["legs"]["open"]["outcome"]["witness"];
    let coloring = dir.path().join("witness.json");
    std::fs::write(&coloring, serde_json::to_string(witness).unwrap()).unwrap();

    let out = run(&[
        "audit", "--m", "1", "--e-override", "1",
        "--coloring", coloring.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["verdict"]["kind"], "consistent");
    assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn chif_pins_the_five_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = dir.path().join("c5.json");
    std::fs::write(
        &c5,
        r#"{"vertices":[{"id":0,"role":"a0"},{"id":1,"role":"a1"},{"id":2,"role":"a2"},
            {"id":3,"role":"a3"},{"id":4,"role":"a4"}],
            "edges":[[0,1],[1,2],[2,3],[3,4],[0,4]]}"#,
    )
    .unwrap();
    let out = run(&["chif", "--graph", c5.to_str().unwrap(), "--max-b", "3"]);
    assert_eq!(code_of(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["lower"], "5/2");
    assert_eq!(doc["upper"], "5/2");
    assert_eq!(doc["alpha"], 2);
    assert_eq!(doc["open"], false);
}
