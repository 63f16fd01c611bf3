use std::process::{Command, Output};

use nodal_hilb_cli::{emit_report, registry, run_suite, CheckRecord, Module, OutputFormat, Report, Status, SuiteConfig, SweepSpec};
use serde_json::{json, Value};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nodal-hilb")).args(args).env_remove("NODAL_HILB_BUDGET").output().unwrap()
}

fn record(id: &str, status: Status) -> CheckRecord {
    CheckRecord { id: id.into(), module: Module::Euler, params: json!({}), status, details: json!({}), elapsed_ms: 0 }
}

#[test]
fn empty_suite_report() {
    let r = Report::new(json!({}), vec![]);
    let v: Value = serde_json::from_str(&emit_report(&r, OutputFormat::Json)).unwrap();
    assert_eq!(v["checks"], json!([]));
    assert_eq!(v["summary"], json!({ "pass": 0, "fail": 0, "skipped": 0 }));
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn summary_and_exit_contract() {
    let one = Report::new(json!({}), vec![record("a", Status::Pass)]);
    assert_eq!(one.summary.pass, 1);
    let skipped = Report::new(json!({}), vec![record("a", Status::Pass), record("b", Status::Skipped)]);
    assert_eq!(skipped.exit_code(), 0);
    let mixed = Report::new(json!({}), vec![record("b", Status::Fail), record("a", Status::Pass), record("c", Status::Skipped)]);
    assert_eq!((mixed.summary.pass, mixed.summary.fail, mixed.summary.skipped), (1, 1, 1));
    assert_ne!(mixed.exit_code(), 0);
    let ids: Vec<&str> = mixed.checks.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids, ["a", "b", "c"]);
    let text = emit_report(&mixed, OutputFormat::Text);
    assert!(text.contains("1 passed, 1 failed, 1 skipped"));
}

#[test]
fn verify_all_m3_passes_and_is_deterministic() {
    let a = bin(&["verify-all", "--m-max", "3", "--seed", "7", "--json"]);
    let b = bin(&["verify-all", "--m-max", "3", "--seed", "7", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["summary"]["skipped"], 0);
    assert_eq!(v["config"]["seed"], 7);
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for c in v["checks"].as_array().unwrap() {
        for key in ["id", "module", "params", "status", "details", "elapsed_ms"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn seeds_change_samples_not_verdicts() {
    let cfg = |seed| SuiteConfig { seed, m_max: 3, modules: vec![Module::Punctual], ..SuiteConfig::default() };
    let (a, b) = (run_suite(&cfg(1)), run_suite(&cfg(2)));
    assert!(a.passed() && b.passed());
    assert_ne!(a.check("punctual.chain_colength.m3").unwrap().details, b.check("punctual.chain_colength.m3").unwrap().details);
}

#[test]
fn euler_sweep_table() {
    let out = bin(&["euler", "--sweep", "g=0..8,m=1..10", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let sweep = v["checks"].as_array().unwrap().iter().find(|c| c["id"] == "euler.sweep").unwrap();
    let rows = sweep["details"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9 * 10 * 4 * 4);
    assert!(rows.iter().all(|r| r["agree"] == true));

    let text = bin(&["euler", "--sweep", "g=2,m=2,gb=0,sigma=1"]);
    let s = String::from_utf8(text.stdout).unwrap();
    assert!(s.contains("g,gB,m,sigma,closed,stratified,oracle,agree"));
    assert!(s.contains("2,0,2,1,2,2,2,true"));
}

#[test]
fn closed_formula_literal_diff_lists_constant_term() {
    let out = bin(&["taut", "--m", "2", "--compare-theorem2", "literal", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let c = v["checks"].as_array().unwrap().iter().find(|c| c["id"] == "taut.theorem2.m2.literal").unwrap();
    assert_eq!(c["details"]["equal"], false);
    let mism = c["details"]["mismatched"].as_array().unwrap();
    assert!(mism.iter().any(|t| t["factors"] == json!([])), "no constant-term entry");
    assert!(!v["checks"].as_array().unwrap().iter().any(|c| c["id"] == "taut.theorem2.m2.padded"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["verify-all", "--m-max", "0"],
        vec!["frobnicate"],
        vec!["euler", "--sweep", "q=1..2"],
        vec!["taut", "--compare-theorem2", "sideways"],
        vec!["charts", "--spec-count", "0"],
    ] {
        assert_eq!(bin(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn budget_exhaustion_is_skipped_not_failed() {
    let out = Command::new(env!("CARGO_BIN_EXE_nodal-hilb"))
        .args(["punctual", "--m", "3", "--json"])
        .env("NODAL_HILB_BUDGET", "1")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["budget"], 1);
    assert!(v["summary"]["skipped"].as_u64().unwrap() > 0);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(out.status.code(), Some(0));
    let explicit = bin(&["punctual", "--m", "3", "--budget", "1", "--json"]);
    assert_eq!(explicit.stdout, out.stdout);
}

#[test]
fn sweep_spec_parsing() {
    let s: SweepSpec = "g=0..2,m=3,sigma=0;5".parse().unwrap();
    assert_eq!((s.g, s.m, s.sigma, s.gb), (vec![0, 1, 2], vec![3], vec![0, 5], vec![0, 1, 2, 3]));
    assert!("g=3..1".parse::<SweepSpec>().is_err());
    assert!("g".parse::<SweepSpec>().is_err());
}

/// Every id written in the README's registry table exists in the suite.
#[test]
fn readme_registry_completeness() {
    let readme = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md")).unwrap();
    let cfg = SuiteConfig { m_max: 4, ..SuiteConfig::default() };
    let ids: Vec<String> = registry(&cfg).into_iter().map(|s| s.id).collect();
    let prefixes = ["punctual.", "charts.", "vdm.", "euler.", "taut."];
    let mut documented = 0;
    for line in readme.lines().filter(|l| l.starts_with("| `")) {
        let id = line.split('`').nth(1).unwrap();
        if !prefixes.iter().any(|p| id.starts_with(p)) {
            continue;
        }
        documented += 1;
        let concrete = id.replace("{m}", "3").replace("{i}", "2");
        assert!(ids.contains(&concrete), "README lists `{id}` but the registry has no `{concrete}`");
    }
    assert!(documented >= 20);
    // and every registered family is documented
    for id in &ids {
        let family = id.split('.').take(2).collect::<Vec<_>>().join(".");
        assert!(readme.contains(&format!("`{family}")), "{id} undocumented");
    }
}
