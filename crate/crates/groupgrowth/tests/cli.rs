//! End-to-end command-line tests through the public `cli::run` entry point.

use groupgrowth::cli::run;

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("groupgrowth").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn growth_csv_golden() {
    let (code, out, _) = run_cli(&["growth", "--group", "Z:2", "--radius", "3", "--no-cache"]);
    assert_eq!(code, 0);
    assert_eq!(out, "n,gamma\n0,1\n1,5\n2,13\n3,25\n");
}

#[test]
fn growth_uses_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = [
        "growth", "--group", "heisenberg", "--radius", "4", "--cache-dir", cache,
    ];
    let (code, first, _) = run_cli(&args);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let (code, second, _) = run_cli(&args);
    assert_eq!(code, 0);
    assert_eq!(first, second);
}

#[test]
fn phi_reports_both_variants() {
    let (code, out, _) = run_cli(&[
        "phi", "--group", "Z:2", "--radius", "4", "--no-cache", "--t", "10",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("phi 2"), "{out}");
    assert!(out.contains("phi_strict 2"), "{out}");

    // saturated finite group: strict variant reports why it is undefined
    let (code, out, _) = run_cli(&[
        "phi", "--group", "cyclic:5", "--radius", "4", "--no-cache", "--t", "5",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("phi 2"), "{out}");
    assert!(out.contains("phi_strict undefined"), "{out}");
}

#[test]
fn boundary_subset_literal() {
    let (code, out, _) = run_cli(&[
        "boundary",
        "--group",
        "Z:2",
        "--radius",
        "3",
        "--no-cache",
        "--subset",
        "ball:1",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("interior 4"), "{out}");
    assert!(out.contains("exterior 8"), "{out}");
    assert!(out.contains("sandwich_pass true"), "{out}");
}

#[test]
fn witness_passes_checks() {
    let (code, out, _) = run_cli(&[
        "witness",
        "--group",
        "Z:2",
        "--radius",
        "4",
        "--no-cache",
        "--subset",
        "ball:1",
        "--lambda",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("n 2"), "{out}");
    assert!(out.contains("checks_pass true"), "{out}");
}

#[test]
fn bound_theorem1_and_best() {
    let (code, out, _) = run_cli(&[
        "bound", "theorem1", "--group", "Z:2", "--radius", "4", "--no-cache", "--size", "5",
        "--lambda", "2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("bound 1.25000000000000e0"), "{out}");

    let (code, out, _) = run_cli(&[
        "bound", "theorem1", "--group", "Z:2", "--radius", "4", "--no-cache", "--size", "5",
        "--best",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("lambda 13/5"), "{out}");
    assert!(out.contains("k 2"), "{out}");
}

#[test]
fn bound_exp_with_numeric_cross_check() {
    let (code, out, _) = run_cli(&[
        "bound", "exp", "--C", "1", "--b", "1", "--alpha", "1", "--v", "100", "--numeric",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("mu "), "{out}");
    assert!(out.contains("numeric_F "), "{out}");
}

#[test]
fn mu_table() {
    let (code, out, _) = run_cli(&["mu", "--alpha", "1", "100", "10000"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2);
    assert!(out.contains("mu 6.02901011"), "{out}");
}

#[test]
fn json_output_parses_for_every_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r");
    let report = report.to_str().unwrap();
    let config = dir.path().join("cfg.toml");
    std::fs::write(
        &config,
        r#"
schema = 1
group = "Z:2"
table_radius = 5

[[subsets]]
source = "ball:1"

[lambdas]
mode = "list"
values = ["2"]
"#,
    )
    .unwrap();
    let config = config.to_str().unwrap();

    let cases: Vec<Vec<&str>> = vec![
        vec!["growth", "--group", "Z:2", "--radius", "2", "--no-cache"],
        vec!["phi", "--group", "Z:2", "--radius", "3", "--no-cache", "--t", "7/2"],
        vec!["boundary", "--group", "Z:2", "--radius", "3", "--no-cache", "--subset", "{(0,0),(1,0)}"],
        vec!["witness", "--group", "Z:2", "--radius", "4", "--no-cache", "--subset", "ball:1", "--lambda", "3/2"],
        vec!["bound", "theorem1", "--group", "Z:2", "--radius", "4", "--no-cache", "--size", "5", "--best"],
        vec!["bound", "poly", "--C", "1", "--d", "2", "--v", "64"],
        vec!["bound", "exp", "--C", "1", "--b", "1", "--alpha", "1", "--v", "50"],
        vec!["lambert", "--", "-0.1", "-0.2"],
        vec!["mu", "--alpha", "1", "1000"],
        vec!["verify", "--config", config, "--no-cache", "--output", report],
        vec!["lemma-check", "--group", "Z:2", "--radius", "4", "--no-cache"],
    ];
    for case in cases {
        let mut args = case.clone();
        // global flag goes right after the subcommand tokens, before any
        // flags or trailing positionals
        let insert_at = args
            .iter()
            .position(|a| a.starts_with('-') || a.starts_with('{'))
            .unwrap_or(args.len());
        args.splice(insert_at..insert_at, ["--format", "json"]);
        let (code, out, err) = run_cli(&args);
        assert_eq!(code, 0, "{case:?}: {err}");
        for line in out.lines() {
            serde_json::from_str::<serde_json::Value>(line)
                .unwrap_or_else(|e| panic!("{case:?}: bad json line {line:?}: {e}"));
        }
    }
}

#[test]
fn verify_config_writes_reports_and_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("exp.toml");
    std::fs::write(
        &config,
        r#"
schema = 1
group = "cyclic:8"
table_radius = 5

[[subsets]]
source = "exhaustive"

[lambdas]
mode = "max"
"#,
    )
    .unwrap();
    let base = dir.path().join("out/report");
    let (code, out, err) = run_cli(&[
        "verify",
        "--config",
        config.to_str().unwrap(),
        "--no-cache",
        "--output",
        base.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("all_pass true"), "{out}");
    let jsonl = std::fs::read_to_string(base.with_extension("jsonl")).unwrap();
    assert_eq!(jsonl.lines().count(), 255); // 254 records + summary
    let csv = std::fs::read_to_string(base.with_extension("csv")).unwrap();
    assert!(csv.starts_with("group,size_d,boundary,ext_boundary,lambda,bound,pass\n"));
    assert_eq!(csv.lines().count(), 255); // header + 254 rows
}

#[test]
fn verify_rejects_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.toml");
    std::fs::write(&config, "schema = 1\ngroup = \"Z:0\"").unwrap();
    let (code, _, err) = run_cli(&["verify", "--config", config.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    let (code, _, _) = run_cli(&["bound", "theorem1", "--group", "Z:2", "--radius", "3", "--size", "5"]);
    assert_eq!(code, 2); // neither --lambda nor --best
    let (code, _, _) = run_cli(&["nonsense"]);
    assert_eq!(code, 2);
    let (code, _, err) = run_cli(&["growth", "--group", "Z:0", "--radius", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("1 <= d"), "{err}");
}

#[test]
fn lemma_check_passes() {
    let (code, out, _) = run_cli(&["lemma-check", "--group", "free:2", "--radius", "5", "--no-cache"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("PASS").count(), 3);
}

#[test]
fn shipped_configs_stay_valid() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            groupgrowth::verify::ExperimentConfig::from_toml_file(&path)
                .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            seen += 1;
        }
    }
    assert!(seen >= 3);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "witness", "--group", "free:2", "--radius", "4", "--no-cache", "--subset",
        "random:6:99", "--sample-ball", "3", "--lambda", "2",
    ];
    let (c1, out1, _) = run_cli(&args);
    let (c2, out2, _) = run_cli(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(out1.as_bytes(), out2.as_bytes());
}
