//! Runs the binary and compares its output with the files in `tests/golden`.
//! Set `SENTENTIAL_BLESS=1` to rewrite them.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

const CASES: &[(&str, &[&str], i32)] = &[
    ("parse", &["parse", "--formula", "(p→(q∨¬p))"], 0),
    ("parse_prefix", &["parse", "--notation", "prefix", "--formula", "→ p ∨ q ¬ p"], 0),
    ("eval_l3", &["eval", "--matrix", "l3", "--formula", "(p→¬p)", "--valuation", "p=τ"], 0),
    ("valid_l3_excluded_middle", &["valid", "--matrix", "l3", "--formula", "(p∨¬p)"], 0),
    ("valid_b2_peirce", &["valid", "--matrix", "b2", "--formula", "(((p→q)→p)→p)"], 0),
    ("valid_turquette", &["valid", "--matrix", "l3_tau", "--formula", "(¬(p→¬p)∨¬(¬p→p))"], 0),
    ("conseq_modus_ponens", &["conseq", "--matrix", "godel(3)", "--premises", "p;(p→q)", "--formula", "q"], 0),
    ("conseq_fails", &["conseq", "--matrix", "b2", "--premises", "(p∨q)", "--formula", "p"], 0),
    ("lc_valid_prelinearity", &["lc-valid", "--formula", "((p→q)∨(q→p))"], 0),
    ("lc_valid_peirce", &["lc-valid", "--formula", "(((p→q)→p)→p)"], 0),
    ("derive_check_ok", &["derive-check", "--calculus", "hilbert_cl", "--proof", "tests/fixtures/identity_proof.json"], 0),
    (
        "derive_check_broken",
        &["derive-check", "--calculus", "hilbert_cl", "--proof", "tests/fixtures/broken_proof.json", "--formula", "(p→p)"],
        0,
    ),
    ("confirm3_conjunction", &["confirm3-check", "--proof", "tests/fixtures/conjunction.json"], 0),
    ("confirm3_excluded_middle", &["confirm3-check", "--proof", "tests/fixtures/excluded_middle.json"], 0),
    ("search_identity", &["search", "--calculus", "hilbert_cl", "--formula", "(p→p)"], 0),
    ("search_refuted", &["search", "--formula", "(p→q)"], 0),
    ("horn_int", &["horn", "--calculus", "hilbert_int"], 0),
    ("cn_lab_two", &["cn-lab", "--universe", "2", "--seed", "7"], 0),
    ("lt_cl_rank1", &["lt-cl", "--rank", "1"], 0),
    ("rn_classify", &["rn", "--formula", "(¬¬p→p)"], 0),
    ("rn_prefix", &["rn", "--count", "6"], 0),
    ("countermodel_double_negation", &["countermodel", "--formula", "(¬¬p→p)"], 0),
    ("countermodel_none", &["countermodel", "--formula", "(p→(q→p))", "--worlds", "4"], 0),
    ("tree_assemble", &["tree-assemble", "--proof", "tests/fixtures/tree_pairs.json"], 0),
    ("identities_l3", &["identities", "--matrix", "l3", "--suite", "lattice_l1_l4"], 0),
    ("budget_exceeded", &["valid", "--matrix", "godel(8)", "--formula", "((((p∧q)∧r)∧s)→p)", "--budget", "100"], 2),
    ("bad_formula", &["valid", "--matrix", "b2", "--formula", "(p∨"], 1),
];

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_sentential")).args(args).current_dir(dir()).output().expect("binary runs");
    (String::from_utf8(out.stdout).expect("utf-8"), out.status.code().unwrap_or(-1))
}

fn bless() -> bool {
    std::env::var_os("SENTENTIAL_BLESS").is_some()
}

fn compare(path: PathBuf, actual: &str) {
    if bless() {
        fs::write(&path, actual).expect("write golden");
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(actual, expected, "{} differs", path.display());
}

#[test]
fn verdicts_match_golden_files() {
    for &(name, args, code) in CASES {
        let (stdout, status) = run(args);
        assert_eq!(status, code, "{name}: exit status");
        let mut v: Value = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{name}: {e}\n{stdout}"));
        v["stats"]["elapsed_ms"] = Value::Null;
        let text = serde_json::to_string_pretty(&v).expect("serializes") + "\n";
        compare(dir().join("tests/golden").join(format!("{name}.json")), &text);
    }
}

#[test]
fn diagrams_match_golden_files() {
    for (name, args) in [
        ("lt_cl_rank1", &["lt-cl", "--rank", "1", "--dot"][..]),
        ("lt_cl_rank2", &["lt-cl", "--rank", "2", "--dot"][..]),
        ("rn_prefix12", &["rn", "--count", "12", "--dot"][..]),
        ("countermodel_peirce", &["countermodel", "--formula", "(((p→q)→p)→p)", "--dot"][..]),
    ] {
        let (stdout, status) = run(args);
        assert_eq!(status, 0, "{name}");
        compare(dir().join("tests/golden").join(format!("{name}.dot")), &stdout);
    }
}

#[test]
fn witnesses_round_trip_through_json() {
    let (stdout, _) = run(&["search", "--formula", "((p∧q)→p)"]);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    let proof = std::env::temp_dir().join(format!("sentential-proof-{}.json", std::process::id()));
    fs::write(&proof, serde_json::to_string(&v["witness"]).unwrap()).unwrap();
    let (stdout, status) = run(&["derive-check", "--proof", proof.to_str().unwrap(), "--formula", "((p∧q)→p)"]);
    fs::remove_file(&proof).ok();
    assert_eq!(status, 0);
    let checked: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(checked["result"]["verified"], Value::Bool(true));
}

#[test]
fn output_is_independent_of_threads() {
    let args = ["cn-lab", "--universe", "3", "--budget", "2000", "--seed", "11", "--json"];
    let strip = |s: String| {
        let mut v: Value = serde_json::from_str(&s).unwrap();
        v["stats"]["elapsed_ms"] = Value::Null;
        v
    };
    let one = strip(run(&[&args[..], &["--threads", "1"]].concat()).0);
    let four = strip(run(&[&args[..], &["--threads", "4"]].concat()).0);
    assert_eq!(one["result"], four["result"]);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["valid"]).1, 1);
    assert_eq!(run(&["no-such-command"]).1, 1);
    assert_eq!(run(&["valid", "--matrix", "nope", "--formula", "p"]).1, 1);
    assert_eq!(run(&["--help"]).1, 0);
}
