use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use hypsep::conic::cardinal_points;
use hypsep::io::{to_svg, write_csv, Markers, SvgStyle};
use hypsep::paver::pave;
use hypsep::separator::conic_area;
use hypsep::tdoa::Scenario;
use hypsep::{Box2, CardinalPoints, ConicParams, ContractorKind, Error, Paving, Sep};

mod report;

use report::{compare_table, RunReport};

#[derive(Parser)]
#[command(name = "hypsep", version, about = "Pave hyperbolic areas and TDoA localization sets")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pave the area f(q, x) <= 0 of a hyperbola.
    Pave(PaveArgs),
    /// Pave each pseudo-distance band of a scenario and their intersection.
    Tdoa(TdoaArgs),
    /// Print the cardinal points of a hyperbola.
    Cardinal {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_q)]
        q: ConicParams,
    },
    /// Pave with both contractors and compare the metrics.
    Compare(CompareArgs),
}

#[derive(Args)]
struct PaveArgs {
    /// Coefficients q0,q1,q2,q3,q4,q5.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_q)]
    q: ConicParams,
    /// Frame x1lo,x1hi,x2lo,x2hi.
    #[arg(long, allow_hyphen_values = true, default_value = "-2,2,-2,2", value_parser = parse_frame)]
    frame: Box2,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value = "minimal", value_parser = parse_kind)]
    contractor: ContractorKind,
    /// Paving CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Paving picture.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TdoaArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long, default_value = "minimal", value_parser = parse_kind)]
    contractor: ContractorKind,
    /// Overrides the accuracy of the scenario.
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<f64>,
    /// CSV path; each paving gets the band label (or `X`) appended to the
    /// file stem, as in `run_ab.csv`, `run_ac.csv`, `run_X.csv`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG path, suffixed the same way.
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_q, conflicts_with = "scenario", required_unless_present = "scenario")]
    q: Option<ConicParams>,
    #[arg(long, allow_hyphen_values = true, default_value = "-2,2,-2,2", value_parser = parse_frame)]
    frame: Box2,
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Defaults to 0.1 for a hyperbola and to the scenario accuracy otherwise.
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<f64>,
}

fn parse_q(s: &str) -> Result<ConicParams, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<ContractorKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_frame(s: &str) -> Result<Box2, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [a, b, c, d] if v.iter().all(|x| x.is_finite()) && a < b && c < d => Ok(Box2::from_bounds(a, b, c, d)),
        [_, _, _, _] => Err("frame bounds must be finite with lo < hi on both axes".into()),
        _ => Err(format!("expected x1lo,x1hi,x2lo,x2hi, got {} numbers", v.len())),
    }
}

/// Failure with its exit status: 2 usage, 3 numeric degeneracy, 4 I/O.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotHyperbola(_)
            | Error::DegenerateLeadingCoefficient { .. }
            | Error::InfeasibleOrdinate { .. }
            | Error::DegenerateBand(_) => 3,
            Error::Io(_) | Error::Scenario(_) => 4,
            Error::InvalidSymmetry(..) | Error::InvalidAccuracy(_) | Error::InvalidFrame(_) | Error::Parse(_) => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn io_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure { code: 4, msg: format!("{}: {e}", path.display()) }
}

fn check_eps(eps: f64) -> Result<f64, Failure> {
    if eps > 0.0 && eps.is_finite() {
        Ok(eps)
    } else {
        Err(Error::InvalidAccuracy(eps).into())
    }
}

/// `dir/run.csv` with label `ab` becomes `dir/run_ab.csv`.
fn suffixed(path: &Path, label: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{label}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{label}"),
    };
    path.with_file_name(name)
}

fn save_csv(p: &Paving, path: &Path) -> Result<(), Failure> {
    let f = File::create(path).map_err(|e| io_failure(path, e))?;
    write_csv(p, BufWriter::new(f)).map_err(|e| io_failure(path, e))
}

fn save_svg(p: &Paving, markers: &Markers, path: &Path) -> Result<(), Failure> {
    std::fs::write(path, to_svg(p, markers, &SvgStyle::default())).map_err(|e| io_failure(path, e))
}

fn timed_pave(sep: &Sep, frame: &Box2, eps: f64) -> Result<(Paving, f64), Failure> {
    let start = Instant::now();
    let p = pave(sep.as_ref(), frame, eps)?;
    Ok((p, start.elapsed().as_secs_f64()))
}

fn print_report(r: &RunReport, json: bool) {
    if json {
        println!("{}", r.to_json());
    } else {
        print!("{r}");
    }
}

fn cmd_pave(a: PaveArgs) -> Result<(), Failure> {
    let eps = check_eps(a.eps)?;
    let sep = conic_area(&a.q, a.contractor)?;
    let (p, secs) = timed_pave(&sep, &a.frame, eps)?;
    let cardinal = cardinal_points(&a.q);
    let mut report = RunReport::new(format!("hyperbola q = {}", a.q), a.contractor, &p, secs);
    report.notes.push(format!("{} cardinal points ({})", cardinal.count(), presence(&cardinal)));
    if let Some(path) = &a.out {
        save_csv(&p, path)?;
        report.outputs.push(path.clone());
    }
    if let Some(path) = &a.svg {
        save_svg(&p, &Markers { cardinal: Some(cardinal), points: vec![] }, path)?;
        report.outputs.push(path.clone());
    }
    print_report(&report, a.json);
    Ok(())
}

fn load_scenario(path: &Path, eps: Option<f64>) -> Result<Scenario, Failure> {
    let mut s = Scenario::load(path).map_err(|e| match e {
        Error::Scenario(m) => Failure { code: 4, msg: format!("{}: {m}", path.display()) },
        other => other.into(),
    })?;
    if let Some(eps) = eps {
        s.eps = check_eps(eps)?;
    }
    Ok(s)
}

fn cmd_tdoa(a: TdoaArgs) -> Result<(), Failure> {
    let s = load_scenario(&a.scenario, a.eps)?;
    let frame = s.frame_box();
    let mut runs = s.band_separators(a.contractor)?;
    runs.push(("X".to_string(), s.localization_set(a.contractor)?));
    let markers = Markers { cardinal: None, points: s.microphones.iter().map(|(n, p)| (n.clone(), *p)).collect() };
    let mut reports = Vec::new();
    for (label, sep) in runs {
        let (p, secs) = timed_pave(&sep, &frame, s.eps)?;
        let subject = if label == "X" { "X (all bands)".to_string() } else { format!("band {label}") };
        let mut report = RunReport::new(format!("{} / {subject}", a.scenario.display()), a.contractor, &p, secs);
        if let Some(path) = &a.out {
            let path = suffixed(path, &label);
            save_csv(&p, &path)?;
            report.outputs.push(path);
        }
        if let Some(path) = &a.svg {
            let path = suffixed(path, &label);
            save_svg(&p, &markers, &path)?;
            report.outputs.push(path);
        }
        reports.push(report);
    }
    if a.json {
        let all: Vec<_> = reports.iter().map(RunReport::to_value).collect();
        println!("{}", serde_json::Value::Array(all));
    } else {
        for r in &reports {
            print!("{r}");
        }
    }
    Ok(())
}

fn presence(c: &CardinalPoints) -> String {
    let word = |p: Option<[f64; 2]>| if p.is_some() { "present" } else { "none" };
    format!("North/South: {}; East/West: {}", word(c.north), word(c.east))
}

fn cmd_cardinal(q: ConicParams) -> Result<(), Failure> {
    if !q.is_hyperbola() {
        return Err(Error::NotHyperbola(q.to_string()).into());
    }
    let c = cardinal_points(&q);
    println!("q = {q}");
    for (name, p) in c.iter() {
        println!("{name:<6} ({:.12}, {:.12})  |f| = {:.3e}", p[0], p[1], q.eval(p).abs());
    }
    println!("{}", presence(&c));
    Ok(())
}

fn cmd_compare(a: CompareArgs) -> Result<(), Failure> {
    let kinds = [ContractorKind::Minimal, ContractorKind::FwdBwd];
    let mut runs = Vec::new();
    let subject;
    match (&a.q, &a.scenario) {
        (Some(q), _) => {
            let eps = check_eps(a.eps.unwrap_or(0.1))?;
            subject = format!("hyperbola q = {q} on {}, eps {eps}", a.frame);
            for kind in kinds {
                let (p, secs) = timed_pave(&conic_area(q, kind)?, &a.frame, eps)?;
                runs.push(RunReport::new(subject.clone(), kind, &p, secs));
            }
        }
        (None, Some(path)) => {
            let s = load_scenario(path, a.eps)?;
            subject = format!("{} / X, eps {}", path.display(), s.eps);
            for kind in kinds {
                let (p, secs) = timed_pave(&s.localization_set(kind)?, &s.frame_box(), s.eps)?;
                runs.push(RunReport::new(subject.clone(), kind, &p, secs));
            }
        }
        (None, None) => unreachable!("clap requires --q or --scenario"),
    }
    println!("{subject}");
    print!("{}", compare_table(&runs[0], &runs[1]));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Command::Pave(a) => cmd_pave(a),
        Command::Tdoa(a) => cmd_tdoa(a),
        Command::Cardinal { q } => cmd_cardinal(q),
        Command::Compare(a) => cmd_compare(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("hypsep: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
