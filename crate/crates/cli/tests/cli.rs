use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hypsep::io::read_paving;
use hypsep::paver::pave;
use hypsep::separator::conic_area;
use hypsep::tdoa::Scenario;
use hypsep::{Box2, ConicParams, ContractorKind};

const Q4: &str = "-1,5,2,-2,30,-2";
const Q2: &str = "-1,1,1,3,30,-2";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypsep")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scenario_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/tdoa_example.json")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn pave_writes_the_paving_it_reports() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, svg) = (dir.path().join("p.csv"), dir.path().join("p.svg"));
    let o = run(&["pave", "--q", Q4, "--frame", "-2,2,-2,2", "--eps", "0.1", "--contractor", "minimal", "--out", s(&csv), "--svg", s(&svg), "--json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();

    let q: ConicParams = Q4.parse().unwrap();
    let frame = Box2::from_bounds(-2.0, 2.0, -2.0, 2.0);
    let expect = pave(conic_area(&q, ContractorKind::Minimal).unwrap().as_ref(), &frame, 0.1).unwrap();
    let back = read_paving(std::fs::File::open(&csv).unwrap(), 0.1).unwrap();
    assert_eq!(back.boxes, expect.boxes);

    let m = expect.metrics();
    assert_eq!(report["n_boxes"], m.n_boxes);
    assert_eq!(report["area_in"].as_f64().unwrap(), m.area_in);
    assert_eq!(report["area_unc"].as_f64().unwrap(), m.area_unc);
    assert!(report["seconds"].as_f64().unwrap() >= 0.0);

    let pic = std::fs::read_to_string(&svg).unwrap();
    for name in ["North", "South", "East", "West"] {
        assert!(pic.contains(&format!("<title>{name}</title>")), "{name}");
    }
}

#[test]
fn two_cardinal_points_on_the_second_hyperbola() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("p.svg");
    let o = run(&["pave", "--q", Q2, "--eps", "0.1", "--svg", s(&svg)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("2 cardinal points"));
    let pic = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(pic.matches("<title>").count(), 2);
    assert!(pic.contains("<title>East</title>") && pic.contains("<title>West</title>"));
}

#[test]
fn cardinal_prints_points_on_the_curve() {
    let o = run(&["cardinal", "--q", Q4]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().filter(|l| l.contains("|f| =")).collect();
    assert_eq!(lines.len(), 4, "{out}");
    for l in lines {
        let f: f64 = l.rsplit('=').next().unwrap().trim().parse().unwrap();
        assert!(f <= 1e-9, "{l}");
    }
    let o = run(&["cardinal", "--q", Q2]);
    assert!(stdout(&o).contains("North/South: none; East/West: present"));
}

#[test]
fn tdoa_emits_three_pavings() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("run.csv");
    let o = run(&["tdoa", "--scenario", s(&scenario_path()), "--contractor", "minimal", "--out", s(&stem), "--svg", s(&dir.path().join("run.svg"))]);
    assert!(o.status.success(), "{}", stderr(&o));
    for label in ["ab", "ac", "X"] {
        assert!(dir.path().join(format!("run_{label}.csv")).exists(), "{label}");
        assert!(dir.path().join(format!("run_{label}.svg")).exists(), "{label}");
    }
    let x = read_paving(std::fs::File::open(dir.path().join("run_X.csv")).unwrap(), 0.05).unwrap();
    assert!(x.metrics().area_in > 0.0);

    let sc = Scenario::load(&scenario_path()).unwrap();
    assert_eq!(sc, Scenario::example());
}

#[test]
fn fwdbwd_leaves_more_uncertainty() {
    let unc = |kind: &str| -> Vec<f64> {
        let o = run(&["tdoa", "--scenario", s(&scenario_path()), "--contractor", kind, "--json"]);
        assert!(o.status.success(), "{}", stderr(&o));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        v.as_array().unwrap().iter().map(|r| r["area_unc"].as_f64().unwrap()).collect()
    };
    let (m, f) = (unc("minimal"), unc("fwdbwd"));
    assert_eq!(m.len(), 3);
    for (a, b) in m.iter().zip(&f) {
        assert!(a < b, "{m:?} vs {f:?}");
    }
}

#[test]
fn compare_reports_a_ratio_below_one() {
    let o = run(&["compare", "--scenario", s(&scenario_path())]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let line = out.lines().find(|l| l.starts_with("uncertain area ratio")).expect("ratio line");
    let ratio: f64 = line.rsplit(' ').next().unwrap().parse().unwrap();
    assert!(ratio > 0.0 && ratio < 1.0, "{out}");
    let o = run(&["compare", "--q", Q4, "--eps", "0.1"]);
    assert!(o.status.success());
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["pave", "--q", Q4, "--eps", "0"]), 2);
    assert_eq!(code(&["pave", "--q", Q4, "--frame", "1,0,0,1"]), 2);
    assert_eq!(code(&["pave", "--q", "1,2,3"]), 2);
    assert_eq!(code(&["pave", "--q", Q4, "--contractor", "fast"]), 2);
    assert_eq!(code(&["pave", "--q", "1,0,0,1,0,1"]), 3);
    assert_eq!(code(&["cardinal", "--q", "1,0,0,1,0,1"]), 3);
    assert_eq!(code(&["tdoa", "--scenario", "/nonexistent/scenario.json"]), 4);
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&["pave", "--q", Q4, "--out", s(&dir.path().join("missing/p.csv"))]), 4);
}

#[test]
fn scenario_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"microphones\": {\n    \"a\": [1.0, oops]\n  }\n}\n").unwrap();
    let o = run(&["tdoa", "--scenario", s(&path)]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}
