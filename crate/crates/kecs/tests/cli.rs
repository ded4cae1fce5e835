//! End-to-end runs of the kecs binary: output shapes, exit codes, and the
//! files each subcommand leaves behind.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn kecs(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kecs"))
        .args(args)
        .current_dir(dir)
        .env_remove("KECS_BUDGET_EDGES")
        .output()
        .expect("binary runs")
}

fn kecs_env(dir: &Path, args: &[&str], budget: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kecs"))
        .args(args)
        .current_dir(dir)
        .env("KECS_BUDGET_EDGES", budget)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Writes the two-clause formula (x1 v x2)(!x1 v !x2) and returns its path.
fn mixed_pair_cnf(dir: &Path) -> PathBuf {
    let path = dir.join("pair.cnf");
    std::fs::write(&path, "p cnf 2 2\n1 2 0\n-1 -2 0\n").expect("write cnf");
    path
}

#[test]
fn solve_prints_the_optimum_and_writes_a_checkable_coloring() {
    let dir = tempfile::tempdir().expect("tempdir");
    let gen = kecs(dir.path(), &["gen", "fig1"]);
    assert_eq!(code(&gen), 0);
    let graph = dir.path().join("tree.kecs");
    std::fs::write(&graph, gen.stdout).expect("write graph");

    let solve = kecs(dir.path(), &["solve", "--k", "2", "tree.kecs"]);
    assert_eq!(code(&solve), 0, "stderr: {}", stderr(&solve));
    assert_eq!(stdout(&solve), "8\n");
    let coloring = dir.path().join("tree.coloring");
    assert!(coloring.exists());
    assert!(stderr(&solve).contains("wrote"));

    let check = kecs(dir.path(), &["check", "--k", "2", "tree.kecs", "tree.coloring"]);
    assert_eq!(code(&check), 0);
    assert_eq!(stdout(&check), "valid k=2 colored=8\n");
}

#[test]
fn solve_notes_the_brute_fallback_off_structure() {
    let dir = tempfile::tempdir().expect("tempdir");
    let gen = kecs(dir.path(), &["gen", "petersen"]);
    std::fs::write(dir.path().join("pet.kecs"), gen.stdout).expect("write graph");

    let solve = kecs(dir.path(), &["solve", "--k", "2", "pet.kecs"]);
    assert_eq!(code(&solve), 0);
    assert_eq!(stdout(&solve), "9\n");
    assert!(stderr(&solve).contains("using brute"));
}

#[test]
fn explicit_method_mismatch_is_a_usage_error() {
    let dir = tempfile::tempdir().expect("tempdir");
    let gen = kecs(dir.path(), &["gen", "petersen"]);
    std::fs::write(dir.path().join("pet.kecs"), gen.stdout).expect("write graph");

    let flow = kecs(dir.path(), &["solve", "--k", "2", "--method", "flow", "pet.kecs"]);
    assert_eq!(code(&flow), 1);
    assert!(stderr(&flow).starts_with("error[usage]:"));

    let dp = kecs(dir.path(), &["solve", "--k", "2", "--method", "forest-dp", "pet.kecs"]);
    assert_eq!(code(&dp), 1);
    assert!(stderr(&dp).contains("forest"));
}

#[test]
fn spectrum_reports_the_four_edge_path() {
    let dir = tempfile::tempdir().expect("tempdir");
    let gen = kecs(dir.path(), &["gen", "path", "--n", "5"]);
    std::fs::write(dir.path().join("p4.kecs"), gen.stdout).expect("write graph");

    let spec = kecs(dir.path(), &["spectrum", "p4.kecs"]);
    assert_eq!(code(&spec), 0);
    let text = stdout(&spec);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("nu=2 ell=1 L=2"));
    let ell = lines.next().expect("ell witness line");
    let big = lines.next().expect("L witness line");
    assert!(ell.starts_with("ell_witness=("));
    assert!(big.starts_with("L_witness=("));
    // both witnesses are maximum matchings of the host path
    assert_eq!(ell.matches("(").count(), 2);
    assert_eq!(big.matches("(").count(), 2);
}

#[test]
fn gen_repeats_byte_for_byte_under_one_seed() {
    let dir = tempfile::tempdir().expect("tempdir");
    let args = ["gen", "random-bipartite", "--n", "9", "--p", "0.4", "--seed", "7"];
    let first = kecs(dir.path(), &args);
    let second = kecs(dir.path(), &args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);

    let other = kecs(
        dir.path(),
        &["gen", "random-bipartite", "--n", "9", "--p", "0.4", "--seed", "8"],
    );
    assert_ne!(first.stdout, other.stdout);
}

#[test]
fn gen_rejects_an_undersized_cycle() {
    let dir = tempfile::tempdir().expect("tempdir");
    let out = kecs(dir.path(), &["gen", "cycle", "--n", "2"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).starts_with("error[usage]:"));
}

#[test]
fn reduce_emits_the_instance_directory() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cnf = mixed_pair_cnf(dir.path());

    let out = kecs(
        dir.path(),
        &["reduce", "min2sat", "--K", "1", "--q", "4", cnf.to_str().unwrap(), "inst"],
    );
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("kind=min2sat-weighted"));
    assert!(text.contains("threshold=132"));
    assert!(text.contains("vertices=32"));
    assert!(text.contains("edges=37"));

    let meta = std::fs::read_to_string(dir.path().join("inst/meta.txt")).expect("meta");
    assert_eq!(meta, "kind=min2sat-weighted\nm=2\nn=2\nK=1\nq=4\nthreshold=132\n");
    let graph = std::fs::read_to_string(dir.path().join("inst/graph.kecs")).expect("graph");
    assert!(graph.starts_with("graph 32\n"));
    assert!(dir.path().join("inst/roles.tsv").exists());
}

#[test]
fn reduce_confines_the_exponent_flag_to_min2sat() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cnf = mixed_pair_cnf(dir.path());
    let out = kecs(
        dir.path(),
        &["reduce", "max2sat", "--K", "1", "--q", "4", cnf.to_str().unwrap(), "inst"],
    );
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("min2sat"));
}

#[test]
fn verify_equality_exits_clean() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cnf = mixed_pair_cnf(dir.path());
    let out = kecs(dir.path(), &["verify", "lemma2", "--K", "1", cnf.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("nu2w=38 expected=38"));
    assert!(text.trim_end().ends_with("VERDICT: equality"));
}

#[test]
fn verify_counterexample_exits_four_with_the_report() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cnf = mixed_pair_cnf(dir.path());
    let out = kecs(dir.path(), &["verify", "thm1", "--K", "1", cnf.to_str().unwrap()]);
    assert_eq!(code(&out), 4);
    let text = stdout(&out);
    assert!(text.contains("L=16 expected_L=15"));
    assert!(text.trim_end().ends_with("VERDICT: counterexample"));
}

#[test]
fn verify_budget_flag_and_env_var_gate_the_run() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cnf = mixed_pair_cnf(dir.path());
    let path = cnf.to_str().unwrap();

    let flagged = kecs(
        dir.path(),
        &["verify", "thm1", "--K", "1", "--budget-edges", "10", path],
    );
    assert_eq!(code(&flagged), 3);
    assert!(stderr(&flagged).starts_with("error[budget]:"));

    let env_only = kecs_env(dir.path(), &["verify", "thm1", "--K", "1", path], "10");
    assert_eq!(code(&env_only), 3);

    // the flag outranks the environment
    let both = kecs_env(
        dir.path(),
        &["verify", "thm1", "--K", "1", "--budget-edges", "100", path],
        "10",
    );
    assert_eq!(code(&both), 4);

    let garbage = kecs_env(dir.path(), &["verify", "thm1", "--K", "1", path], "soon");
    assert_eq!(code(&garbage), 1);
    assert!(stderr(&garbage).starts_with("error[usage]:"));
}

#[test]
fn verify_confines_the_exponent_flag_to_thm3() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cnf = mixed_pair_cnf(dir.path());
    let out = kecs(
        dir.path(),
        &["verify", "thm1", "--K", "1", "--q", "8", cnf.to_str().unwrap()],
    );
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).starts_with("error[usage]:"));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().expect("tempdir");
    let missing_flag = kecs(dir.path(), &["solve", "x.kecs"]);
    assert_eq!(code(&missing_flag), 1);
    assert!(stderr(&missing_flag).starts_with("error[usage]:"));

    let unknown = kecs(dir.path(), &["dance"]);
    assert_eq!(code(&unknown), 1);

    let absent = kecs(dir.path(), &["solve", "--k", "1", "nonexistent.kecs"]);
    assert_eq!(code(&absent), 1);
    assert!(stderr(&absent).contains("cannot read"));
}

#[test]
fn malformed_files_exit_two() {
    let dir = tempfile::tempdir().expect("tempdir");
    std::fs::write(dir.path().join("bad.kecs"), "graph two\n").expect("write");
    let graph = kecs(dir.path(), &["solve", "--k", "1", "bad.kecs"]);
    assert_eq!(code(&graph), 2);
    assert!(stderr(&graph).starts_with("error[format]:"));

    std::fs::write(dir.path().join("bad.cnf"), "p cnf 1 1\n1 2 3 0\n").expect("write");
    let cnf = kecs(dir.path(), &["verify", "thm1", "--K", "1", "bad.cnf"]);
    assert_eq!(code(&cnf), 2);

    std::fs::write(dir.path().join("ok.kecs"), "graph 2\nedge 0 1\n").expect("write");
    std::fs::write(dir.path().join("bad.coloring"), "color 0 1 two\n").expect("write");
    let col = kecs(dir.path(), &["check", "--k", "1", "ok.kecs", "bad.coloring"]);
    assert_eq!(code(&col), 2);
}

#[test]
fn check_reports_each_violation_and_exits_four() {
    let dir = tempfile::tempdir().expect("tempdir");
    std::fs::write(dir.path().join("path.kecs"), "graph 3\nedge 0 1\nedge 1 2\n")
        .expect("write");
    std::fs::write(dir.path().join("clash.coloring"), "color 0 1 1\ncolor 1 2 1\n")
        .expect("write");
    let out = kecs(dir.path(), &["check", "--k", "1", "path.kecs", "clash.coloring"]);
    assert_eq!(code(&out), 4);
    let text = stdout(&out);
    assert!(text.starts_with("invalid k=1 violations=1\n"));
    assert!(text.contains("vertex 1 carries color 1 on 2 edges"));
}

#[test]
fn help_and_version_exit_zero() {
    let dir = tempfile::tempdir().expect("tempdir");
    let help = kecs(dir.path(), &["--help"]);
    assert_eq!(code(&help), 0);
    assert!(stdout(&help).contains("solve"));

    let version = kecs(dir.path(), &["--version"]);
    assert_eq!(code(&version), 0);
    assert!(stdout(&version).starts_with("kecs "));
}

#[test]
fn weighted_bipartite_input_routes_to_weighted_flow() {
    let dir = tempfile::tempdir().expect("tempdir");
    // a 6-cycle is bipartite but no forest, so weights force the flow route
    std::fs::write(
        dir.path().join("c6.kecs"),
        "graph 6\nedge 0 1 weight 5\nedge 1 2\nedge 2 3 weight 5\nedge 3 4\nedge 4 5 weight 5\nedge 5 0\n",
    )
    .expect("write");
    let out = kecs(dir.path(), &["solve", "--k", "1", "c6.kecs"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "15\n");
    assert!(stderr(&out).contains("weighted-flow"));

    let check = kecs(dir.path(), &["check", "--k", "1", "c6.kecs", "c6.coloring"]);
    assert_eq!(code(&check), 0);
    assert_eq!(stdout(&check), "valid k=1 colored=3\n");
}
