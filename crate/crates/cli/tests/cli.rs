use std::process::{Command, Output};

use branchkit_cli::record::{QueryEcho, ResultValue};
use branchkit_cli::OutputRecord;

fn branchkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_branchkit"))
        .args(args)
        .env_remove("BRANCHKIT_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn record(o: &Output) -> OutputRecord {
    OutputRecord::from_json(stdout(o).trim_end()).expect("valid record")
}

fn count(o: &Output) -> u64 {
    match record(o).result {
        Some(ResultValue::Count(c)) => c,
        other => panic!("expected a count, got {other:?}"),
    }
}

fn decomposition(o: &Output) -> Vec<(String, u64)> {
    match record(o).result {
        Some(ResultValue::Decomposition(m)) => m.into_iter().collect(),
        other => panic!("expected a decomposition, got {other:?}"),
    }
}

#[test]
fn branch_examples() {
    let o = branchkit(&["branch", "--pair", "o-in-gl", "-n", "6", "--big", "[2]/[]", "--small", "[]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(count(&o), 1);
    assert!(record(&o).stable_range);

    let o = branchkit(&["branch", "--pair", "gl-diag", "-n", "4", "--big", "[2]/[]", "--small", "[1]/[]", "[1]/[]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(count(&o), 1);
}

#[test]
fn stable_range_violation_exits_2() {
    let o = branchkit(&["branch", "--pair", "o-diag", "-n", "3", "--big", "[1]", "--small", "[1]", "[1]"]);
    assert_eq!(o.status.code(), Some(2));
    let r = record(&o);
    assert!(r.result.is_none());
    let e = r.error.expect("error recorded");
    assert_eq!(e.rule.as_deref(), Some("o-diag"));
    assert!(e.inequality.unwrap().contains("ℓ(μ)+ℓ(ν)"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("stable range violation"));
}

#[test]
fn unsafe_flag_marks_the_record() {
    let o = branchkit(&["branch", "--pair", "o-diag", "-n", "3", "--big", "[1]", "--small", "[1]", "[1]", "--unsafe"]);
    assert_eq!(o.status.code(), Some(0));
    let r = record(&o);
    assert!(!r.stable_range);
    assert!(r.result.is_some());

    let o = branchkit(&["branch", "--pair", "o-in-gl", "-n", "6", "--big", "[2]/[]", "--small", "[]", "--unsafe"]);
    assert!(record(&o).stable_range);
}

#[test]
fn decompose_examples() {
    let o = branchkit(&["decompose", "--pair", "o-in-gl", "-n", "6", "--big", "[2]/[]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(decomposition(&o), vec![("[2]".to_string(), 1), ("[]".to_string(), 1)]);

    let o = branchkit(&["decompose", "--pair", "sp-diag", "-n", "2", "--mu", "[]", "--nu", "[]"]);
    assert_eq!(decomposition(&o), vec![("[]".to_string(), 1)]);

    let o = branchkit(&["decompose", "--pair", "gl-sum", "-n", "2", "-m", "2", "--big", "[1]/[]"]);
    let d = decomposition(&o);
    assert_eq!(d.len(), 2);
    assert!(d.iter().all(|(_, m)| *m == 1));
}

#[test]
fn decompose_diagonal_needs_mu_and_nu() {
    let o = branchkit(&["decompose", "--pair", "o-diag", "-n", "4", "--big", "[1]"]);
    assert_eq!(o.status.code(), Some(1));
    let o = branchkit(&["decompose", "--pair", "o-diag", "-n", "3", "--mu", "[1]", "--nu", "[1]"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lr_examples() {
    for (outer, left, right, want) in [
        ("[3,2,1]", "[2,1]", "[2,1]", 2),
        ("[1]", "[1]", "[]", 1),
        ("[2]", "[1]", "[1,1]", 0),
    ] {
        let o = branchkit(&["lr", "--outer", outer, "--left", left, "--right", right]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(count(&o), want, "{outer} {left} {right}");
    }
}

#[test]
fn parse_errors_exit_1() {
    let o = branchkit(&["lr", "--outer", "[2,3]", "--left", "[1]", "--right", "[1]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());

    let o = branchkit(&["branch", "--pair", "o-in-gl", "-n", "6", "--big", "[2]", "--small", "[1]/[]"]);
    assert_eq!(o.status.code(), Some(1));

    let o = branchkit(&["branch", "--pair", "o-in-gl", "-n", "6"]);
    assert_eq!(o.status.code(), Some(1));

    let o = branchkit(&["decompose", "--pair", "gl-sum", "-n", "2", "--big", "[1]"]);
    assert_eq!(o.status.code(), Some(1));

    let o = branchkit(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_examples() {
    let o = branchkit(&["verify", "--pair", "o-diag", "--max-size", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let line = text.lines().next().unwrap();
    assert!(line.starts_with("o-diag: ") && line.ends_with(" cases, 0 mismatches"), "{line}");

    let o = branchkit(&["verify", "--pair", "all", "--max-size", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for id in ["gl-diag", "o-diag", "sp-diag", "gl-sum", "o-sum", "sp-sum", "gl-in-o", "gl-in-sp", "o-in-gl", "sp-in-gl"] {
        assert!(text.lines().any(|l| l.starts_with(&format!("{id}: "))), "{id} missing");
    }
    assert!(text.contains("duality: "));

    let o = branchkit(&["verify", "--pair", "bogus"]);
    assert_eq!(o.status.code(), Some(1));

    let o = branchkit(&["verify", "--pair", "gl-sum", "--max-size", "3", "--seed", "7", "--samples", "50"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn json_round_trips_byte_identically() {
    let runs = [
        vec!["branch", "--pair", "gl-diag", "-n", "4", "--big", "[2]/[]", "--small", "[1]/[]", "[1]/[]"],
        vec!["branch", "--pair", "o-diag", "-n", "3", "--big", "[1]", "--small", "[1]", "[1]"],
        vec!["decompose", "--pair", "gl-sum", "-n", "2", "-m", "3", "--big", "[1]/[1]"],
        vec!["decompose", "--pair", "o-diag", "-n", "5", "--mu", "[1]", "--nu", "[2]"],
        vec!["lr", "--outer", "[3,2,1]", "--left", "[2,1]", "--right", "[2,1]"],
    ];
    for args in runs {
        let o = branchkit(&args);
        let printed = stdout(&o);
        let printed = printed.trim_end();
        let typed = OutputRecord::from_json(printed).unwrap();
        assert_eq!(typed.to_json(), printed, "{args:?}");
        let generic: serde_json::Value = serde_json::from_str(printed).unwrap();
        assert_eq!(serde_json::to_string(&generic).unwrap(), printed, "{args:?}");
    }
}

#[test]
fn query_echo_matches_the_request() {
    let o = branchkit(&["decompose", "--pair", "gl-sum", "-n", "2", "-m", "3", "--big", "[1]/[1]"]);
    match record(&o).query {
        QueryEcho::Decompose { pair, ranks, g } => {
            assert_eq!(pair, "gl-sum");
            assert_eq!((ranks.n, ranks.m), (2, Some(3)));
            assert_eq!(g.len(), 1);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn tsv_output() {
    let o = branchkit(&["decompose", "--pair", "o-in-gl", "-n", "6", "--big", "[2]/[]", "--format", "tsv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "pair\tn\tm\tg\th\tmultiplicity\tstable_range");
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.split('\t').count() == 7));
}

#[test]
fn cache_file_persists_lr_coefficients() {
    let dir = std::env::temp_dir().join(format!("branchkit-cache-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("lr.cache");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_branchkit"))
            .args(["lr", "--outer", "[4,2,1]", "--left", "[2,1]", "--right", "[2,1,1]"])
            .env("BRANCHKIT_CACHE", &path)
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(count(&first), 1);
    let saved = std::fs::read_to_string(&path).unwrap();
    assert!(saved.lines().any(|l| l == "4,2,1;2,1;2,1,1;1"), "{saved}");
    let second = run();
    assert_eq!(count(&second), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn selftest_passes() {
    let o = branchkit(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
