use bressoud_over::classes::{count_series, Family};
use bressoud_over::cli::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use bressoud_over::qseries::unitbp2_pair;
use bressoud_over::Params;
use num_rational::BigRational;
use num_traits::One;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["bressoud-over"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

const P3710: &str = "eta=10,alphas=3:7,k=4,r=3,j=0";

#[test]
fn count_distinct_parts() {
    let (code, out, _) = call(&["count", "D", "--params", "eta=1,k=1,r=1", "--max-weight", "9"]);
    assert_eq!(code, EXIT_PASS);
    let counts: Vec<&str> = out.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(out.lines().next(), Some("n,count"));
    assert_eq!(counts, ["1", "1", "1", "2", "2", "3", "4", "5", "6", "8"]);
}

#[test]
fn count_matches_library_and_congruence_side() {
    let p = "eta=1,alphas=,k=3,r=2";
    let (_, bbar, _) = call(&["count", "Bbar0", "--params", p, "--max-weight", "10"]);
    let (_, abar, _) = call(&["count", "Abar0", "--params", p, "--max-weight", "10"]);
    assert_eq!(bbar, abar);
    let lib = count_series(Family::Bbar(0), &p.parse::<Params>().unwrap(), 10).unwrap();
    let cli: Vec<u64> = bbar.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(cli, lib);
}

#[test]
fn empty_range_is_header_only() {
    let (code, out, _) = call(&["count", "D", "--params", "eta=1,k=1,r=1", "--min-weight", "5", "--max-weight", "3"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.trim(), "n,count");
}

#[test]
fn json_table() {
    let (code, out, _) = call(&["count", "D", "--params", "eta=2,k=1,r=1", "--max-weight", "4", "--format", "json"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[4]["count"], 1);
    assert_eq!(v[3]["count"], 0);
}

#[test]
fn bad_params_and_unknown_check_exit_two() {
    assert_eq!(call(&["count", "Bbar0", "--params", "eta=10,alphas=3:6,k=4,r=3", "--max-weight", "5"]).0, EXIT_USAGE);
    assert_eq!(call(&["verify", "nonsense"]).0, EXIT_USAGE);
    assert_eq!(call(&["verify", "gf-thm"]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
}

#[test]
fn verify_gf_and_roundtrip() {
    let (code, out, _) = call(&["verify", "gf-thm", "--params", "eta=1,alphas=,k=3,r=2", "--trunc", "100"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "pass");
    let (code, _, _) = call(&["verify", "phi-roundtrip", "--params", P3710, "--max-weight", "60"]);
    assert_eq!(code, EXIT_PASS);
}

#[test]
fn corrupted_pair_fixture_fails() {
    let dir = std::env::temp_dir().join(format!("bressoud-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = unitbp2_pair(6, 40).unwrap();
    let mut bad = good.clone();
    bad.beta[2] = bad.beta[2].perturbed(3, BigRational::one());
    let gp = dir.join("good.json");
    let bp = dir.join("bad.json");
    std::fs::write(&gp, good.to_json()).unwrap();
    std::fs::write(&bp, bad.to_json()).unwrap();
    let (code, _, _) = call(&["verify", "bailey", "--pair", gp.to_str().unwrap(), "--trunc", "40", "--n-max", "6"]);
    assert_eq!(code, EXIT_PASS);
    let (code, out, _) = call(&["verify", "bailey", "--pair", bp.to_str().unwrap(), "--trunc", "40", "--n-max", "6"]);
    assert_eq!(code, EXIT_FAIL);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["counterexample"].as_str().unwrap().starts_with("n=2"));
}

#[test]
fn config_file_with_override() {
    let dir = std::env::temp_dir().join(format!("bressoud-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.json");
    let report = dir.join("report.json");
    let body = serde_json::json!({
        "params": ["eta=1,alphas=,k=3,r=2"],
        "max_weight": 12,
        "checks": ["rel-over1", "abar-equals-bbar"],
        "out": report,
    });
    std::fs::write(&cfg, body.to_string()).unwrap();
    let (code, out, _) = call(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["notes"].as_array().unwrap().len(), 2);
    // A flag replaces the configured params.
    let (code, _, _) = call(&["verify", "--config", cfg.to_str().unwrap(), "--params", "eta=2,alphas=1,k=3,r=2"]);
    assert_eq!(code, EXIT_PASS);
    assert!(std::fs::read_to_string(&report).unwrap().contains("(1;2,3,2)"));
}

#[test]
fn trace_walkthroughs() {
    let (code, out, _) = call(&[
        "trace",
        "phi",
        "--params",
        P3710,
        "--zeta",
        "100,80,50,40,20",
        "--input",
        "87o,80,80,67o,63o,57o,50,50,43o,37o,33o,30,20,20,13o,7o,3o",
    ]);
    assert_eq!(code, EXIT_PASS);
    let stages = out.lines().filter(|l| !l.starts_with("result")).count();
    assert_eq!(stages, 6);
    assert!(out.ends_with("result (100',100,97',90,77',73',70,60',57',50,50,43',37',33',30,23',20,10',7',3')\n"));

    let (_, out, _) =
        call(&["trace", "phi0", "--params", P3710, "--zeta", "50,30,20,10", "--input", "23o,20,7o,3o"]);
    assert_eq!(out.lines().filter(|l| l.contains("combine")).count(), 4);

    let (_, out, _) = call(&["trace", "phi0", "--params", P3710, "--input", "23o,20,7o,3o"]);
    assert_eq!(out.lines().count(), 2);

    let (code, out, _) = call(&["trace", "psi0", "--params", P3710, "--input", "50o,30o,23o,20,20,10o,7o,3o", "--trace"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("zeta=(50,30,20,10) mu=(23',20,7',3')"));
    assert!(out.contains("marks ("));
}

#[test]
fn trace_rejects_class_violations() {
    let (code, _, err) = call(&["trace", "psi", "--params", P3710, "--input", "10o,10o"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.starts_with("error:"));
    let (code, _, _) = call(&["trace", "phi", "--params", P3710, "--zeta", "15", "--input", "3o"]);
    assert_eq!(code, EXIT_USAGE);
}
