//! End-to-end tests of the binary: worked examples, output formats and
//! the exit code contract (0 pass, 1 verification failure, 2 usage or
//! parse error).

use assert_cmd::Command;
use predicates::prelude::*;

fn heis() -> Command {
    Command::cargo_bin("heis").unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn sym_mul_pieri_example() {
    heis()
        .args(["sym", "mul", "s[1]", "s[1]"])
        .assert()
        .success()
        .stdout("s[2] + s[1,1]\n");
}

#[test]
fn sym_convert_and_pair() {
    heis()
        .args(["sym", "convert", "e3", "--to", "s"])
        .assert()
        .success()
        .stdout("s[1,1,1]\n");
    heis()
        .args(["sym", "pair", "s[2,1]", "s[2,1]"])
        .assert()
        .success()
        .stdout("1\n");
    heis()
        .args(["sym", "coprod", "s[2]"])
        .assert()
        .success()
        .stdout("s[]⊗s[2] + s[1]⊗s[1] + s[2]⊗s[]\n");
    heis()
        .args(["sym", "skew", "h1", "s[2]"])
        .assert()
        .success()
        .stdout("s[1]\n");
}

#[test]
fn heis_product_of_tensor_generators() {
    heis()
        .args(["heis", "product", "e1 (x) h1", "e1 (x) h1"])
        .assert()
        .success()
        .stdout(
            "s[1]⊗s[1] + s[2]⊗s[2] + s[2]⊗s[1,1] + s[1,1]⊗s[2] + s[1,1]⊗s[1,1]\n",
        );
}

#[test]
fn heis_commutator_of_adjoint_generators_is_the_identity() {
    heis()
        .args(["heis", "commutator", "D(h1)", "m(e1)", "--max-degree", "3"])
        .assert()
        .success()
        .stdout(predicate::str::contains("s[2,1] -> s[2,1]"));
}

#[test]
fn heis_check_relations_passes() {
    heis()
        .args([
            "heis",
            "check-relations",
            "--max-m",
            "2",
            "--max-n",
            "2",
            "--max-degree",
            "6",
        ])
        .assert()
        .success();
}

#[test]
fn diag_roundtrip_and_normalize() {
    heis()
        .args(["diag", "parse", "on \"-+\": capLR@0 ; cupLR@0"])
        .assert()
        .success()
        .stdout("capLR@0 ; cupLR@0\n");
    heis()
        .args(["diag", "normalize", "on \"+\": cupLR@0 ; x@1 ; capLR@0"])
        .assert()
        .success()
        .stdout("0 : + -> +\n");
    heis()
        .args(["diag", "compose", "on \"-+\": capLR@0", "on \"\": cupLR@0"])
        .assert()
        .success()
        .stdout("capLR@0 ; cupLR@0\n");
    heis().args(["diag", "check-splitting"]).assert().success();
    heis()
        .args(["diag", "decat", "-+", "--max-degree", "2"])
        .assert()
        .success()
        .stdout(predicate::str::contains("s[1] -> 2*s[1]"));
}

#[test]
fn bc_check_follows_exit_code_contract() {
    heis()
        .args(["bc", "check", "--square", &fixture("hopf4221.json")])
        .assert()
        .success()
        .stdout("BC: true\n");
    heis()
        .args(["bc", "check", "--square", &fixture("empty_corner.json")])
        .assert()
        .code(1)
        .stdout(predicate::str::contains("BC: false"))
        .stdout(predicate::str::contains("singular block"));
    heis()
        .args(["bc", "mate", "--square", &fixture("hopf4221.json")])
        .assert()
        .success()
        .stdout(predicate::str::contains("invertible: true"));
}

#[test]
fn cube_commands_pass_on_commuting_fixture() {
    let cube = fixture("stacked4221.json");
    heis()
        .args(["cube", "check", "--cube", &cube])
        .assert()
        .success()
        .stdout("hexagon: true\n");
    heis().args(["cube", "complete", "--cube", &cube]).assert().success();
    heis()
        .args(["cube", "mate-check", "--cube", &cube, "--direction", "z"])
        .assert()
        .success()
        .stdout("mate-check (z): true\n");
    heis()
        .args(["cube", "mate-check", "--cube", &cube])
        .assert()
        .success()
        .stdout(predicate::str::contains("mate-check (x): true"));
}

#[test]
fn usage_and_parse_errors_exit_with_two() {
    heis().args(["sym", "mul", "s[", "s[1]"]).assert().code(2);
    heis().args(["frobnicate"]).assert().code(2);
    heis().args(["sym", "mul", "s[1]"]).assert().code(2);
    heis()
        .args(["bc", "check", "--square", "no-such-file.json"])
        .assert()
        .code(2);
    heis()
        .args(["diag", "parse", "on \"+\": nonsense@0"])
        .assert()
        .code(2);
    heis()
        .args(["heis", "commutator", "m(e1", "m(e1)"])
        .assert()
        .code(2);
    heis()
        .args(["verify", "all", "--max-degree", "0"])
        .assert()
        .code(2);
}

#[test]
fn malformed_square_file_is_a_parse_error() {
    let dir = tempfile_dir();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{\"top\": 3}").unwrap();
    heis()
        .args(["bc", "check", "--square", path.to_str().unwrap()])
        .assert()
        .code(2);
    // A well-formed file describing a non-commuting square is also
    // rejected at parse time.
    let noncommuting = r#"{
        "top": {"source": 1, "target": 2, "table": [0]},
        "left": {"source": 1, "target": 1, "table": [0]},
        "right": {"source": 2, "target": 2, "table": [0, 1]},
        "bottom": {"source": 1, "target": 2, "table": [1]}
    }"#;
    let path2 = dir.join("noncommuting.json");
    std::fs::write(&path2, noncommuting).unwrap();
    heis()
        .args(["bc", "check", "--square", path2.to_str().unwrap()])
        .assert()
        .code(2);
    std::fs::remove_dir_all(dir).unwrap();
}

fn tempfile_dir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("heis-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn verify_all_small_passes_and_fault_injection_fails() {
    heis()
        .args(["verify", "all", "--max-degree", "2"])
        .assert()
        .success()
        .stdout(predicate::str::ends_with("verify all: PASS\n"));
    heis()
        .args(["verify", "all", "--max-degree", "2", "--inject-fault"])
        .assert()
        .code(1)
        .stdout(predicate::str::contains("psh-axioms"))
        .stdout(predicate::str::ends_with("verify all: FAIL\n"));
}

#[test]
fn verify_json_report_round_trips() {
    let out = heis()
        .args(["verify", "all", "--max-degree", "2", "--format", "json"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let text = String::from_utf8(out).unwrap();
    let report: heis_core::verify::VerifyReport = serde_json::from_str(&text).unwrap();
    assert!(report.passed());
    let reparsed: heis_core::verify::VerifyReport =
        serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, reparsed);
}

#[test]
fn psh_check_reports_every_axiom() {
    heis()
        .args(["psh", "check", "--max-degree", "4", "--format", "json"])
        .assert()
        .success()
        .stdout(predicate::str::contains("self-adjointness"));
}
