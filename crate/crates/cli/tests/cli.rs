use std::path::{Path, PathBuf};
use std::process::Command as Proc;

use quadp3_cli::{run, AlphaMode, CliError, Command, RunConfig, Status};
use quadp3::multipoly::MonomialOrder;
use quadp3::scalars::Rational;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn config(command: Command, out: &Path) -> RunConfig {
    RunConfig {
        command,
        input: None,
        alpha: AlphaMode::Symbolic,
        order: MonomialOrder::GrevLex,
        budget: 200_000,
        allow_degenerate: false,
        golden: None,
        output: out.to_path_buf(),
    }
}

fn bin() -> Proc {
    Proc::new(env!("CARGO_BIN_EXE_quadp3"))
}

fn status_of(report: &quadp3_cli::Report, name: &str) -> Status {
    report.checks.iter().find(|c| c.name == name).unwrap_or_else(|| panic!("no check {name}")).status
}

#[test]
fn all_on_bundled_fixture_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&config(Command::All, dir.path())).unwrap();
    let failed: Vec<&str> = out.report.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name.as_str()).collect();
    assert!(failed.is_empty(), "{failed:?}");
    assert_eq!(out.exit_code(), 0);
    for name in [
        "point-scheme/golden_match",
        "point-scheme/sigma",
        "line-scheme/golden_match",
        "verify/components",
        "verify/intersections",
        "verify/incidence",
        "hilbert/point-ideal/alpha=3",
        "hilbert/line-ideal/alpha=5",
    ] {
        assert_eq!(status_of(&out.report, name), Status::Pass);
    }
    let sigma = &out.report.checks.iter().find(|c| c.name == "point-scheme/sigma").unwrap().witness;
    assert_eq!(sigma["orbits"], 10);
    let text = std::fs::read_to_string(dir.path().join("line-scheme.txt")).unwrap();
    assert_eq!(text.lines().count(), 46);
    assert_eq!(text.lines().next().unwrap(), "M14*M23 - M13*M24 + M12*M34");
    assert!(dir.path().join("all.json").exists());
}

#[test]
fn degenerate_alpha_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["line-scheme", "--alpha", "1", "-o"]).arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NonGenericError"));
    for bad in ["0", "-1"] {
        let out = bin().args(["point-scheme", "--alpha", bad, "-o"]).arg(dir.path()).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "alpha = {bad}");
    }
}

#[test]
fn allow_degenerate_proceeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["point-scheme", "--alpha", "1", "--allow-degenerate", "-o"]).arg(dir.path()).output().unwrap();
    assert_ne!(out.status.code(), Some(2));
    assert!(dir.path().join("point-scheme.json").exists());
}

#[test]
fn commutative_point_scheme_is_projective_space() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = config(Command::PointScheme, dir.path());
    cfg.input = Some(fixture("commutative.txt"));
    let out = run(&cfg).unwrap();
    assert_eq!(out.exit_code(), 0);
    assert!(out.report.notes.iter().any(|n| n == "point scheme = ℙ³"));
    let zero = out.report.checks.iter().find(|c| c.name == "zero_minors").unwrap();
    assert_eq!(zero.witness["zero"], 15);
    let text = std::fs::read_to_string(dir.path().join("point-scheme.txt")).unwrap();
    assert_eq!(text.lines().collect::<Vec<_>>(), vec!["0"; 15]);
}

#[test]
fn reports_are_deterministic_apart_from_timings() {
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    let mut c1 = config(Command::LineScheme, d1.path());
    c1.alpha = AlphaMode::Value(Rational::from(3));
    let mut c2 = c1.clone();
    c2.output = d2.path().to_path_buf();
    let a = run(&c1).unwrap().report.without_timings().to_json();
    let b = run(&c2).unwrap().report.without_timings().to_json();
    assert_eq!(a, b);
    let t1 = std::fs::read(d1.path().join("line-scheme.txt")).unwrap();
    let t2 = std::fs::read(d2.path().join("line-scheme.txt")).unwrap();
    assert_eq!(t1, t2);
    // keys appear in a fixed order
    let pos = |k: &str| a.find(&format!("\"{k}\"")).unwrap();
    assert!(pos("tool") < pos("version") && pos("version") < pos("input_digest") && pos("input_digest") < pos("checks"));
}

#[test]
fn report_carries_version_and_digest() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&config(Command::PointScheme, dir.path())).unwrap();
    let r = &out.report;
    assert_eq!(r.version, env!("CARGO_PKG_VERSION"));
    assert!(r.input_digest.starts_with("sha256:") && r.input_digest.len() == 7 + 64);
    assert!(r.checks.iter().all(|c| !c.name.is_empty() && c.timing_ms >= 0.0));
    let mut cfg = config(Command::PointScheme, dir.path());
    cfg.input = Some(fixture("a_alpha.txt"));
    assert_eq!(run(&cfg).unwrap().report.input_digest, r.input_digest);
}

#[test]
fn wrong_golden_fails_with_report_written() {
    let dir = tempfile::tempdir().unwrap();
    let golden = dir.path().join("golden.txt");
    std::fs::write(&golden, "x1^4\n").unwrap();
    let out = bin().args(["point-scheme", "--golden"]).arg(&golden).arg("-o").arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("point-scheme.json")).unwrap()).unwrap();
    assert_eq!(json["passed"], false);
    let check = json["checks"].as_array().unwrap().iter().find(|c| c["name"] == "golden_match").unwrap();
    assert_eq!(check["status"], "fail");
    assert_eq!(check["witness"]["unmatched_golden"][0], "x1^4");
}

#[test]
fn emitted_line_list_serves_as_golden() {
    let dir = tempfile::tempdir().unwrap();
    let first = run(&config(Command::LineScheme, dir.path())).unwrap();
    assert_eq!(first.exit_code(), 0);
    let mut cfg = config(Command::LineScheme, &dir.path().join("again"));
    cfg.golden = Some(dir.path().join("line-scheme.txt"));
    let second = run(&cfg).unwrap();
    assert_eq!(status_of(&second.report, "golden_match"), Status::Pass);
}

#[test]
fn groebner_on_line_list_agrees_across_orders() {
    let dir = tempfile::tempdir().unwrap();
    run(&config(Command::LineScheme, dir.path())).unwrap();
    let body = std::fs::read_to_string(dir.path().join("line-scheme.txt")).unwrap();
    let input = dir.path().join("lines.txt");
    std::fs::write(&input, format!("vars: M12 M13 M14 M23 M24 M34\n{body}")).unwrap();
    let mut hilbert = Vec::new();
    for order in [MonomialOrder::GrevLex, MonomialOrder::GrLex] {
        let mut cfg = config(Command::Groebner, &dir.path().join(order.to_string()));
        cfg.input = Some(input.clone());
        cfg.alpha = AlphaMode::Value(Rational::from(3));
        cfg.order = order;
        let out = run(&cfg).unwrap();
        assert_eq!(out.exit_code(), 0);
        let h = &out.report.checks.iter().find(|c| c.name == "hilbert").unwrap().witness;
        hilbert.push((h["dimension"].clone(), h["degree"].clone()));
    }
    assert_eq!(hilbert[0], (1.into(), 20.into()));
    assert_eq!(hilbert[0], hilbert[1]);
}

#[test]
fn groebner_budget_exhaustion_is_a_check_failure() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("p.txt");
    std::fs::write(&input, "vars: x y z\nx^2 - y*z\nx*y - z^2\ny^2 - x*z\n").unwrap();
    let out = bin().arg("groebner").arg(&input).args(["--budget", "1", "-o"]).arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(dir.path().join("groebner.json").exists());
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "gens: x1 x2 x3 x4\nrel: x1*x2*x3 = 0\n").unwrap();
    let out = bin().arg("point-scheme").arg(&bad).arg("-o").arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().arg("groebner").arg(&bad).arg("-o").arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["verify", "--order", "weird"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().arg("point-scheme").arg(dir.path().join("missing.txt")).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = RunConfig::from_cli(&clap::Parser::parse_from(["quadp3", "line-scheme", "--alpha", "-1"])).unwrap_err();
    assert!(matches!(err, CliError::NonGeneric(_)));
}

#[test]
fn ideal_dim_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["ideal-dim", "--delta", "-1", "--epsilon", "1", "-o"]).arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("ideal-dim.json")).unwrap()).unwrap();
    let dims = &json["checks"][1]["witness"]["dims"];
    assert_eq!(dims.as_array().unwrap().len(), 20);
}
