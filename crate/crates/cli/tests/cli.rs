use std::path::PathBuf;
use std::process::{Command, Output};

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("stablesect-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(cache: &PathBuf, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stablesect"))
        .args(args)
        .env("STABLESECT_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn standard_representation_on_the_plane_is_zero() {
    let dir = scratch("formula-zero");
    let o = run(&dir, &["formula", "--sigma", "1", "--dim", "2", "--profile", "P2", "--q", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("# stablesect formula sigma=(1) dim=2 side=point q=2"));
    assert!(out.lines().last().unwrap().ends_with(": 0 [exact]"), "{out}");
}

#[test]
fn symbolic_formula_matches_golden_file() {
    let dir = scratch("formula-golden");
    let o = run(&dir, &["formula", "--sigma", "1,1", "--dim", "2", "--symbolic"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), include_str!("golden/formula_sigma_1_1_dim_2.txt"));
}

#[test]
fn motivic_specialization_and_expression_output() {
    let dir = scratch("formula-motivic");
    let o = run(&dir, &["formula", "--sigma", "1", "--dim", "3", "--profile", "P3", "--side", "motivic", "--expr"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("\nexpr: ("));
    assert!(out.contains("value (P3): 0 [exact]"), "{out}");
}

#[test]
fn formula_errors() {
    let dir = scratch("formula-errors");
    for args in [
        vec!["formula", "--sigma", "1", "--dim", "1"],
        vec!["formula", "--sigma", "1,x", "--dim", "2"],
        vec!["formula", "--dim", "2"],
        vec!["formula", "--sigma", "1", "--dim", "2", "--profile", "P3", "--q", "2"],
        vec!["formula", "--sigma", "1", "--dim", "2", "--profile", "P2"],
        vec!["formula", "--sigma", "1", "--dim", "2", "--side", "sideways"],
    ] {
        let o = run(&dir, &args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).starts_with("error:"), "{args:?}");
    }
}

#[test]
fn census_over_budget_is_refused() {
    let dir = scratch("census-budget");
    let o = run(&dir, &["census", "--q", "2", "--n", "2", "--d", "12"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("budget"), "{}", stderr(&o));
    assert!(std::fs::read_dir(&dir).unwrap().next().is_none());
}

#[test]
fn binary_census_is_cached_and_reproducible() {
    let dir = scratch("census-binary");
    let csv = dir.join("hist.csv");
    let args = ["census", "--q", "2", "--n", "1", "--d", "8", "--K", "2", "--csv", csv.to_str().unwrap()];
    let first = run(&dir, &args);
    assert!(first.status.success(), "{}", stderr(&first));
    assert!(stderr(&first).contains("computed"));
    assert!(dir.join("census_q2_n1_d8_K2.bin").is_file());
    let out = stdout(&first);
    assert!(out.contains("forms: 512 [exact]"));
    // squarefree binary octics over F_2: 2^9 (1 - 1/2) (1 - 1/4) = 192
    assert!(out.contains("smooth: 192 [exact]"), "{out}");
    assert!(std::fs::read_to_string(&csv).unwrap().lines().count() > 1);

    let second = run(&dir, &args);
    assert!(stderr(&second).contains("loaded from cache"));
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn worker_count_does_not_change_the_report() {
    let (a, b) = (scratch("workers-1"), scratch("workers-3"));
    let one = run(&a, &["census", "--q", "3", "--n", "2", "--d", "2", "--workers", "1", "--cache-dir", a.to_str().unwrap()]);
    let three = run(&b, &["census", "--q", "3", "--n", "2", "--d", "2", "--workers", "3", "--cache-dir", b.to_str().unwrap()]);
    assert!(one.status.success() && three.status.success());
    let body = |o: &Output| stdout(o).lines().skip(1).filter(|l| !l.starts_with("cache:")).collect::<Vec<_>>().join("\n");
    assert_eq!(body(&one), body(&three));
}

#[test]
fn config_file_fills_in_and_flags_win() {
    let dir = scratch("config");
    let cfg = dir.join("run.conf");
    std::fs::write(&cfg, "# plane, standard representation\nsigma = 1\ndim = 2\nprofile = P2\nq = 3\n").unwrap();
    let o = run(&dir, &["--config", cfg.to_str().unwrap(), "formula", "--q", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains(" q=2 ") && out.contains("value (P2, q=2): 0 [exact]"), "{out}");

    std::fs::write(&cfg, "sigma = 1\ndim = 2\nsuite = powident\n").unwrap();
    let o = run(&dir, &["formula", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("suite"));
}

#[test]
fn power_identity_suite() {
    let dir = scratch("powident");
    let o = run(&dir, &["verify", "--suite", "powident", "--q", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS") && l.ends_with("exact")).count(), 4);
    assert!(out.contains("all 4 checks pass"));
}

#[test]
fn schur_oracle_suite() {
    let dir = scratch("schur");
    let o = run(&dir, &["verify", "--suite", "schur-oracle"]);
    assert!(o.status.success());
    let out = stdout(&o);
    // second exterior power minus the trivial summand: binom(2r, 2) - 1
    let row = out.lines().find(|l| l.contains("Sp (1,1) ranks 2..5")).unwrap();
    let fields: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(fields[0], "PASS");
    assert_eq!(fields.iter().filter(|&&f| f == "5,14,27,44").count(), 2, "{row}");
    assert!(out.contains("all 48 checks pass"));
}

#[test]
fn conf_limit_suite() {
    let dir = scratch("conf");
    let o = run(&dir, &["verify", "--suite", "conf-limit", "--q", "2", "--m", "8"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("all 4 checks pass"));
}

#[test]
fn average_suite_on_plane_quintics() {
    let dir = scratch("average");
    let o = run(&dir, &["verify", "--suite", "average", "--q", "2", "--d", "5"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    let row = out.lines().find(|l| l.contains("E[#Z(F_q)]")).unwrap();
    assert!(row.starts_with("PASS") && row.contains(" 3 ") && row.contains("toleranced"), "{row}");

    // the other census suites reuse the cached quintic census
    for suite in ["independence", "fallingmoments"] {
        let o = run(&dir, &["verify", "--suite", suite, "--d", "5"]);
        assert!(o.status.success(), "{suite}: {}", stdout(&o));
        assert!(stderr(&o).contains("loaded from cache"));
    }
}

#[test]
fn failing_checks_exit_nonzero() {
    let dir = scratch("fail");
    // lines and conics are far from the limiting density
    let o = run(&dir, &["verify", "--suite", "poonen", "--d", "1,2"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn verify_errors() {
    let dir = scratch("verify-errors");
    assert_eq!(run(&dir, &["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&dir, &["verify"]).status.code(), Some(2));
    let o = run(&dir, &["verify", "--suite", "average", "--d", "12"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("budget"));
}
