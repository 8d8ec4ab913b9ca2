use std::path::Path;
use std::process::{Command, Output};

use tmlab::format::dimacs::from_dimacs;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

fn tmlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tmlab"))
        .args(args)
        .current_dir(FIXTURES)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn reduce_then_solve_uses_solver_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let sat = dir.path().join("sat.cnf");
    let unsat = dir.path().join("unsat.cnf");
    let o = tmlab(&[
        "reduce",
        "-m",
        "m_accept1.tm",
        "-i",
        "1",
        "-T",
        "2",
        "-o",
        sat.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    tmlab(&[
        "reduce",
        "-m",
        "m_accept1.tm",
        "-i",
        "0",
        "-T",
        "2",
        "-o",
        unsat.to_str().unwrap(),
    ]);

    let o = tmlab(&["solve", sat.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(10));
    assert!(stdout(&o).starts_with("s SATISFIABLE\nv "));
    let o = tmlab(&["solve", unsat.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(20));
    assert_eq!(stdout(&o), "s UNSATISFIABLE\n");
}

#[test]
fn bruteforce_refuses_large_formulas() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.cnf");
    std::fs::write(&f, "p cnf 30 1\n1 0\n").unwrap();
    assert_eq!(
        tmlab(&["solve", "--bruteforce", f.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        tmlab(&["solve", f.to_str().unwrap()]).status.code(),
        Some(10)
    );
}

#[test]
fn reduce_parts_split_the_formula() {
    let count = |part: &str| {
        let o = tmlab(&[
            "reduce",
            "-m",
            "m_accept1.tm",
            "-i",
            "1",
            "-T",
            "1",
            "--part",
            part,
        ]);
        from_dimacs(&stdout(&o)).unwrap().formula.clauses().len()
    };
    assert_eq!(count("input"), 4);
    assert_eq!(count("input") + count("run"), count("all"));
}

#[test]
fn verify_examples() {
    let o = tmlab(&["verify", "-m", "m_accept1.tm", "-i", "0", "-T", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "oracle=reject, sat=UNSAT, agree\n");
    let o = tmlab(&["verify", "-m", "m_parity.tm", "-i", "11", "-T", "3"]);
    assert_eq!(stdout(&o), "oracle=accept, sat=SAT, agree\n");
    let o = tmlab(&["verify", "-m", "m_loop.tm", "-i", "01", "-T", "4"]);
    assert_eq!(stdout(&o), "oracle=reject, sat=UNSAT, agree\n");
}

#[test]
fn history_witness_encode_extract() {
    let dir = tempfile::tempdir().unwrap();
    let hist = dir.path().join("h.hist");
    let model = dir.path().join("model.txt");
    let machine = Path::new(FIXTURES).join("m_parity.tm");
    let o = tmlab(&[
        "history",
        "witness",
        "-m",
        machine.to_str().unwrap(),
        "-i",
        "11",
        "-T",
        "4",
        "-o",
        hist.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&hist).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("config:")).count(), 4);

    let o = tmlab(&[
        "history",
        "encode",
        "--history",
        hist.to_str().unwrap(),
        "-T",
        "4",
        "--model",
        model.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc = from_dimacs(&stdout(&o)).unwrap();
    let values: Vec<bool> = std::fs::read_to_string(&model)
        .unwrap()
        .lines()
        .nth(1)
        .unwrap()
        .split_whitespace()
        .skip(1)
        .filter_map(|t| t.parse::<i32>().ok())
        .filter(|&v| v != 0)
        .map(|v| v > 0)
        .collect();
    let a = tmlab_core::Assignment::from_values(values);
    assert!(doc.formula.is_satisfied_by(&a));

    let o = tmlab(&["history", "extract", "--history", hist.to_str().unwrap()]);
    assert_eq!(
        stdout(&o),
        "start: even\nrule: even 1 -> odd 1 R\nrule: odd 1 -> even 1 R\nrule: even _ -> acc _ S\n"
    );

    let o = tmlab(&[
        "history",
        "witness",
        "-m",
        "m_loop.tm",
        "-i",
        "1",
        "-T",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn extract_rejects_illegal_history() {
    let dir = tempfile::tempdir().unwrap();
    let hist = dir.path().join("bad.hist");
    std::fs::write(
        &hist,
        "input: 1\nblank: _\nconfig: q0 0 1\nconfig: qacc 0 0 _\n",
    )
    .unwrap();
    let o = tmlab(&[
        "history",
        "extract",
        "-m",
        "m_accept1.tm",
        "--history",
        hist.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn merge_prints_selector_table() {
    let o = tmlab(&["merge", "-a", "m_accept1.tm", "-b", "m_nd.tm"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("start: q_start\nselect: q_start -> q0.a q0.b\n"));
    assert!(out.ends_with("deterministic: false\n"));
}

#[test]
fn kim_commands() {
    let lib = ["--library", "library", "--base", "m_accept1.tm", "-T", "4"];
    let args = |head: &[&'static str], tail: &[&'static str]| -> Vec<&'static str> {
        head.iter()
            .chain(lib.iter())
            .chain(tail.iter())
            .copied()
            .collect()
    };
    let o = tmlab(&args(&["kim", "run"], &["-i", "1", "--json"]));
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counter"], 2);
    assert_eq!(v["accept"], false);
    assert_eq!(v["instances"][2]["verdict"], "incompatible");
    assert_eq!(v["instances"][0]["groups"]["G4"], 7);
    assert_eq!(v["claims"]["i_gt_j"], true);
    assert_eq!(v["claims"]["j_gt_k"], true);

    let o = tmlab(&args(&["kim", "run"], &["-i", "0", "--json"]));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counter"], 0);
    assert_eq!(v["metrics"], serde_json::Value::Null);

    let o = tmlab(&args(&["kim", "metrics"], &["-i", "1", "--chosen", "1"]));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("instance 1: i="));
    let o = tmlab(&args(&["kim", "metrics"], &["-i", "1", "--chosen", "2"]));
    assert_eq!(o.status.code(), Some(2));
    let o = tmlab(&args(&["kim", "run"], &["-i", "2"]));
    assert_eq!(o.status.code(), Some(2));

    let o = tmlab(&args(&["kim", "build"], &["--json"]));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 3);
    assert_eq!(v["entries"][0]["groups"]["G4"], 0);
}

#[test]
fn argue_exit_codes() {
    let o = tmlab(&["argue"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("vacuous=true premise_set_satisfiable=false"));
    let o = tmlab(&["argue", "--schema", "modus_tollens.arg"]);
    assert_eq!(
        (o.status.code(), stdout(&o)),
        (Some(0), "valid=true vacuous=false\n".into())
    );
    let o = tmlab(&["argue", "--schema", "affirming_consequent.arg"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o),
        "valid=false vacuous=false\ncounterexample: p=false q=true\n"
    );
}

#[test]
fn file_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tm");
    std::fs::write(&bad, "states: q0\nrule: nonsense\n").unwrap();
    let o = tmlab(&["reduce", "-m", bad.to_str().unwrap(), "-i", "1", "-T", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(tmlab(&["solve", "missing.cnf"]).status.code(), Some(3));
    assert_eq!(
        tmlab(&["reduce", "-m", "m_accept1.tm", "-T", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        tmlab(&["reduce", "-m", "m_accept1.tm", "-i", "1", "-T", "x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        tmlab(&["reduce", "-m", "m_accept1.tm", "-i", "1111", "-T", "1"])
            .status
            .code(),
        Some(2)
    );
}
