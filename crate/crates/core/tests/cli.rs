//! End-to-end checks of the command-line interface: the exit-code contract
//! (0 = success, 1 = counterexample, 2 = usage/parse/guard error) and the
//! byte-identical-stdout guarantee for fixed flags and seeds.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nashimpl"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.push("tests/data");
    path.push(name);
    path.to_string_lossy().into_owned()
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn solve_liberal_demo_profile() {
    let out = run(&[
        "solve",
        "--profile",
        &data("demo62.prof"),
        "--pairs",
        "2,4;3,6;1,5",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("equilibrium outcomes: {4, 5, 6}"), "{text}");
    assert!(text.contains("naming mechanism"), "{text}");
}

#[test]
fn solve_constant_matrix() {
    let out = run(&[
        "solve",
        "--profile",
        &data("two.prof"),
        "--matrix",
        &data("const1.gf"),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("equilibrium outcomes: {1}"));
}

#[test]
fn solve_requires_exactly_one_game_form_source() {
    let both = run(&[
        "solve",
        "--profile",
        &data("demo62.prof"),
        "--pairs",
        "1,2;3,4;5,6",
        "--matrix",
        &data("const1.gf"),
    ]);
    assert_eq!(code(&both), 2);
    let neither = run(&["solve", "--profile", &data("demo62.prof")]);
    assert_eq!(code(&neither), 2);
}

#[test]
fn solve_reports_parse_errors_with_exit_2() {
    let out = run(&[
        "solve",
        "--profile",
        &data("const1.gf"), // a matrix file is not a profile
        "--pairs",
        "1,2;3,4;5,6",
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn verify_small_run_passes_and_is_reproducible() {
    let args = [
        "verify",
        "--n",
        "3",
        "--m",
        "6",
        "--samples",
        "500",
        "--seed",
        "7",
    ];
    let first = run(&args);
    assert_eq!(code(&first), 0);
    let text = stdout(&first);
    assert!(text.contains("tested=509 violations=0 seed=7"), "{text}");
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout, "stdout must be byte-identical");
}

#[test]
fn verify_rejects_too_few_players_or_outcomes() {
    assert_eq!(code(&run(&["verify", "--n", "2", "--m", "4"])), 2);
    assert_eq!(code(&run(&["verify", "--n", "3", "--m", "5"])), 2);
}

#[test]
fn verify_threads_flag_keeps_output_identical() {
    let seq = run(&[
        "verify",
        "--n",
        "3",
        "--m",
        "6",
        "--samples",
        "400",
        "--seed",
        "11",
    ]);
    let par = run(&[
        "verify",
        "--n",
        "3",
        "--m",
        "6",
        "--samples",
        "400",
        "--seed",
        "11",
        "--threads",
        "4",
    ]);
    assert_eq!(code(&seq), 0);
    assert_eq!(seq.stdout, par.stdout);
}

#[test]
fn witness_on_the_shared_book_assignment() {
    let out = run(&["witness", "--n", "3", "--m", "4", "--pairs", "1,4;2,4;3,4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("share outcome 4"), "{text}");
    assert!(text.contains("validated"), "{text}");
}

#[test]
fn witness_auto_generates_an_overlap_when_outcomes_are_short() {
    let out = run(&["witness", "--n", "3", "--m", "5"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("share outcome 1"));
}

#[test]
fn witness_rejects_disjoint_assignments() {
    let explicit = run(&["witness", "--n", "3", "--m", "6", "--pairs", "1,2;3,4;5,6"]);
    assert_eq!(code(&explicit), 2);
    let canonical = run(&["witness", "--n", "3", "--m", "6"]);
    assert_eq!(code(&canonical), 2);
}

#[test]
fn search2p_small_bounds() {
    let out = run(&["search2p", "--rows", "1", "--cols", "1", "--m", "4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("forms=4 refuted=4 unrefuted=0"));
}

#[test]
fn search2p_guard_limit_exit_2() {
    let out = run(&["search2p", "--rows", "5", "--cols", "5", "--m", "4"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("guard limit"));
}

#[test]
fn demos_self_check() {
    for which in ["6.1", "6.2", "6.3"] {
        let out = run(&["demo", which]);
        assert_eq!(code(&out), 0, "demo {which}");
    }
    let twice_a = run(&["demo", "6.2"]);
    let twice_b = run(&["demo", "6.2"]);
    assert_eq!(twice_a.stdout, twice_b.stdout);
}

#[test]
fn demo_rejects_unknown_ids() {
    assert_eq!(code(&run(&["demo", "9.9"])), 2);
}

#[test]
fn demo_outputs_quote_the_expected_sets() {
    let out = run(&["demo", "6.2"]);
    let text = stdout(&out);
    assert!(text.contains("liberal rule output: {4, 5, 6}"), "{text}");
    assert!(
        text.contains("equilibrium outcomes over all 216 strategy profiles: {4, 5, 6}"),
        "{text}"
    );
    let out = run(&["demo", "6.1"]);
    assert!(stdout(&out).contains("outcome 4 is forced in"));
    let out = run(&["demo", "6.3"]);
    assert!(stdout(&out).contains("row 1 contains only outcome 1"));
}
