use std::path::Path;
use std::process::Command;

use dbakit::cli::{run, CommandResult, EXIT_BUDGET, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use dbakit::constructions::{glued_sum, powerset_boolean};
use dbakit::format::render_algebra;
use tempfile::TempDir;

fn dbakit(args: &[&str]) -> CommandResult {
    run(std::iter::once("dbakit").chain(args.iter().copied()))
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const X_CONTEXT: &str = "objects: g\nattributes: m\nX\n";

#[test]
fn check_exit_codes() {
    assert_eq!(dbakit(&["check", "fixture:singleton"]).code, EXIT_OK);
    let out = dbakit(&["check", "fixture:cex-5ab", "--suite", "dcore"]);
    assert_eq!(out.code, EXIT_FAILED);
    assert_eq!(out.get("5a"), Some("FAIL x=b y=b"));
    assert!(out.get("5b").unwrap().starts_with("FAIL"));
    assert_eq!(dbakit(&["check", "/nonexistent/file.dba"]).code, EXIT_USAGE);
    let dir = TempDir::new().unwrap();
    let junk = write(&dir, "junk.dba", "elements: a b\nmeet: a\n");
    assert_eq!(dbakit(&["check", &junk]).code, EXIT_USAGE);
    assert_eq!(dbakit(&["check", "fixture:singleton", "--suite", "nope"]).code, EXIT_USAGE);
}

#[test]
fn classify_reports_flags() {
    let out = dbakit(&["classify", "fixture:glued-chain"]);
    assert_eq!((out.code, out.get("pure"), out.get("trivial")), (EXIT_OK, Some("true"), Some("true")));
    let out = dbakit(&["classify", "fixture:cex-5ab"]);
    assert_eq!((out.code, out.get("dba")), (EXIT_OK, Some("false")));

    let dir = TempDir::new().unwrap();
    let cxt = write(&dir, "k.cxt", "objects: g1 g2\nattributes: m1 m2\nX.\nXX\n");
    let dba = dir.path().join("k.dba");
    let out = dbakit(&["protoconcepts", &cxt, "--emit-algebra", dba.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    let out = dbakit(&["classify", dba.to_str().unwrap()]);
    assert_eq!(out.get("fully_contextual"), Some("true"));
}

#[test]
fn protoconcept_listing() {
    let dir = TempDir::new().unwrap();
    let cxt = write(&dir, "x.cxt", X_CONTEXT);
    let proto = dbakit(&["protoconcepts", &cxt]);
    assert_eq!(proto.get("count"), Some("4"));
    // ⊤ = (G, ∅) and ⊥ = (∅, M).
    assert!(proto.report.lines().any(|l| l.trim() == "(g|)"), "{}", proto.report);
    assert!(proto.report.lines().any(|l| l.trim() == "(|m)"), "{}", proto.report);
    let semi = dbakit(&["protoconcepts", &cxt, "--kind", "semi"]);
    assert_eq!(semi.get("count"), Some("3"));
    let concept = dbakit(&["protoconcepts", &cxt, "--kind", "concept"]);
    assert_eq!(concept.get("count"), Some("1"));
    let bad = write(&dir, "bad.cxt", "objects: g\n");
    assert_eq!(dbakit(&["protoconcepts", &bad]).code, EXIT_USAGE);
    let out = dir.path().join("c.dba");
    assert_eq!(dbakit(&["protoconcepts", &cxt, "--kind", "concept", "--emit-algebra", out.to_str().unwrap()]).code, EXIT_USAGE);
}

#[test]
fn construct_commands() {
    let out = dbakit(&["construct", "glued-sum", "pow:2", "pow:1"]);
    assert_eq!((out.code, out.get("size"), out.get("pure")), (EXIT_OK, Some("5"), Some("true")));
    let out = dbakit(&["construct", "gen-glued-sum", "pow:1", "pow:1"]);
    assert_eq!((out.code, out.get("size"), out.get("orders_agree")), (EXIT_OK, Some("4"), Some("true")));
    let out = dbakit(&["construct", "gen-glued-sum", "pow:1", "pow:1", "--overlap", "a=0"]);
    assert_eq!((out.code, out.get("generalized_dcore")), (EXIT_OK, Some("true")));
    // e is not a section of r: r(e(1)) = r(0) = 0.
    let out = dbakit(&[
        "construct", "from-booleans", "--carrier", "2", "--p", "pow:1", "--r", "0,1", "--e", "0,0", "--q", "pow:1",
        "--r2", "0,1", "--e2", "0,1",
    ]);
    assert_eq!(out.code, EXIT_USAGE, "{}", out.render());
    let out = dbakit(&[
        "construct", "from-booleans", "--carrier", "2", "--p", "pow:1", "--r", "0,1", "--e", "0,1", "--q", "pow:1",
        "--r2", "0,1", "--e2", "0,1",
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.render());
    assert_eq!(out.get("conditions"), Some("hold"));
}

#[test]
fn represent_exit_codes() {
    let out = dbakit(&["represent", "fixture:glued-chain"]);
    assert_eq!((out.code, out.get("verdict")), (EXIT_OK, Some("PASS")), "{}", out.render());
    let out = dbakit(&["represent", "fixture:boolean-square", "--verify", "embedding"]);
    assert_eq!(out.get("embedding"), Some("PASS"));
    assert_eq!(dbakit(&["represent", "fixture:cex-5ab"]).code, EXIT_USAGE);

    let dir = TempDir::new().unwrap();
    let (p, q) = (powerset_boolean(4).unwrap(), powerset_boolean(3).unwrap());
    let big = write(&dir, "big.dba", &render_algebra(&glued_sum(&p, &q).unwrap()));
    let out = dbakit(&["represent", &big]);
    assert_eq!((out.code, out.get("size")), (EXIT_BUDGET, Some("23")));
}

#[test]
fn logic_commands() {
    let out = dbakit(&["prove", "x => x"]);
    assert_eq!((out.code, out.get("verdict"), out.get("depth")), (EXIT_OK, Some("proved"), Some("0")));
    let out = dbakit(&["prove", "T => T & T", "--depth", "2"]);
    assert_eq!((out.code, out.get("verdict")), (EXIT_OK, Some("not found")));
    let out = dbakit(&["prove", "x & y => y & x", "--max-nodes", "10"]);
    assert_eq!(out.code, EXIT_BUDGET);
    assert_eq!(dbakit(&["prove", "x => => y"]).code, EXIT_USAGE);

    assert_eq!(dbakit(&["checkproof", "fixture:lemma-idem-meet"]).code, EXIT_OK);
    let dir = TempDir::new().unwrap();
    let wrong = write(&dir, "w.proof", "system: L\n1: x & y => y  axiom(meet-elim-l)\n");
    let out = dbakit(&["checkproof", &wrong]);
    assert_eq!((out.code, out.get("failing_line")), (EXIT_FAILED, Some("1")));
    let garbled = write(&dir, "g.proof", "system: Q\n");
    assert_eq!(dbakit(&["checkproof", &garbled]).code, EXIT_USAGE);

    let out = dbakit(&["refute", "T => T & T"]);
    assert_eq!((out.code, out.get("model")), (EXIT_OK, Some("glued-chain")));
    let out = dbakit(&["refute", "x => x", "--models", "contexts:2"]);
    assert_eq!(out.get("verdict"), Some("no countermodel"));
    assert_eq!(dbakit(&["refute", "x => x", "--models", "everything"]).code, EXIT_USAGE);
}

#[test]
fn search_commands() {
    let out = dbakit(&["search", "--size", "1", "--require", "dba"]);
    assert_eq!((out.code, out.get("models")), (EXIT_OK, Some("1")));
    let out = dbakit(&["search", "--size", "2", "--equivalence"]);
    assert_eq!((out.code, out.get("candidates"), out.get("disagreements")), (EXIT_OK, Some("16384"), Some("0")));
    assert_eq!(dbakit(&["search", "--size", "4", "--require", "dba"]).code, EXIT_BUDGET);
    let out = dbakit(&["search", "--size", "3", "--require", "dba", "--max-nodes", "50"]);
    assert_eq!((out.code, out.get("complete")), (EXIT_BUDGET, Some("false")));
    assert_eq!(dbakit(&["search", "--size", "2", "--require", "dba", "--fail", "99z"]).code, EXIT_USAGE);
}

fn binary(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dbakit")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn binary_exit_codes_and_determinism() {
    assert!(Path::new(env!("CARGO_BIN_EXE_dbakit")).exists());
    let (code, first) = binary(&["check", "fixture:cex-5ab", "--suite", "dcore"]);
    assert_eq!(code, 1);
    assert!(first.contains("\n---\n"));
    assert_eq!(binary(&["check", "fixture:cex-5ab", "--suite", "dcore"]).1, first);
    assert_eq!(binary(&["classify", "fixture:singleton"]).0, 0);
    assert_eq!(binary(&["no-such-command"]).0, 2);
    assert_eq!(binary(&["search", "--size", "5"]).0, 3);
    let (code, help) = binary(&["--help"]);
    assert_eq!(code, 0);
    assert!(help.contains("represent"));
}
