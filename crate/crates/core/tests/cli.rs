use std::path::PathBuf;
use std::process::Command;

use gelfand_core::cli::{self, emit_report, Config, Format, Status, VerificationReport};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gelfand"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gelfand-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn exit_codes() {
    let ok = bin().args(["verify", "gamma", "--max-k", "12"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("13 passed, 0 failed"));
    let unknown = bin().args(["verify", "nonsense"]).output().unwrap();
    assert_eq!(unknown.status.code(), Some(2));
    let usage = bin().args(["verify", "gamma", "--max-k", "x"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let bad_row = bin().args(["verify", "carcano", "--row", "kac:99"]).output().unwrap();
    assert_eq!(bad_row.status.code(), Some(2));
}

#[test]
fn failing_cases_exit_one() {
    // S(U(2) x U(2)) on C^2 ⊗ C^2 is not multiplicity free
    let out = bin().args(["verify", "carcano", "--row", "jaw:10", "--rank", "2", "--degree", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("fail jaw:10 at 2"), "{text}");
    assert!(text.contains("0 passed, 1 failed"));
}

#[test]
fn reports_are_deterministic() {
    let a = scratch("a.json");
    let b = scratch("b.json");
    for p in [&a, &b] {
        let code = cli::run([
            "gelfand", "verify", "pfaffian", "--algebra", "heis:2+quat:1", "--seed", "7", "--format", "json", "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let report: VerificationReport = serde_json::from_slice(&ta).unwrap();
    assert_eq!(report.version, 1);
    assert_eq!(report.seed, 7);
    assert!(report.cases.iter().all(|c| c.anchor == report.anchor));
    let v: serde_json::Value = serde_json::from_slice(&ta).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    for k in ["version", "suite", "anchor", "cases", "config", "seed"] {
        assert!(keys.contains(&k), "missing {k}");
    }
}

#[test]
fn heisenberg_pfaffian_from_cli() {
    let out = bin().args(["verify", "pfaffian", "--algebra", "heis:3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("P(t) = t^n: z1^3"));
    let free = bin().args(["verify", "pfaffian", "--algebra", "free:3"]).output().unwrap();
    assert_eq!(free.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&free.stdout).contains("square integrable: false"));
}

#[test]
fn algebra_file_and_config_file() {
    let alg = scratch("h1.txt");
    std::fs::write(&alg, "# h_1\n2 1\n1 2 1 2/3\n").unwrap();
    let cfg = scratch("run.cfg");
    std::fs::write(&cfg, format!("suite = pfaffian\nalgebra = {}\nseed = 3\nformat = csv\n", alg.display())).unwrap();
    let out = bin().args(["verify", "--config", cfg.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("suite,case_id,anchor,status"));
    assert!(text.contains("(2/3)*z1"));
    // flags win over the file
    let out = bin().args(["verify", "--config", cfg.to_str().unwrap(), "--format", "text"]).output().unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("suite pfaffian"));
    let bad = scratch("bad.cfg");
    std::fs::write(&bad, "suite = gamma\nwidth = 3\n").unwrap();
    let out = bin().args(["verify", "--config", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn carcano_row_example() {
    let out = bin().args(["verify", "carcano", "--row", "kac:2", "--rank", "3", "--degree", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("kac:2 at 3, degree <= 4: true"));
}

#[test]
fn emit_formats() {
    let empty = VerificationReport {
        version: 1,
        suite: "none".into(),
        anchor: "nothing".into(),
        cases: vec![],
        config: Config::default(),
        seed: 0,
    };
    let json: serde_json::Value = serde_json::from_str(&emit_report(&empty, Format::Json)).unwrap();
    assert_eq!(json["cases"].as_array().unwrap().len(), 0);
    assert!(emit_report(&empty, Format::Text).contains("0 passed, 0 failed, 0 skipped"));
    let mut failing = empty.clone();
    failing.cases.push(cli::Case::close("x", 1.0, 1.5, 1e-3));
    assert_eq!(failing.cases[0].status, Status::Fail);
    let csv = emit_report(&failing, Format::Csv);
    assert!(csv.contains("fail,1.000000000000e0,1.500000000000e0,1e-3"));
}
