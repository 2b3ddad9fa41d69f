use std::fmt;
use std::path::PathBuf;

use hypsep::{Box2, BoxClass, ContractorKind, Paving, PavingMetrics};
use serde_json::{json, Value};

/// What a command ran and what the paving looks like.
pub struct RunReport {
    pub subject: String,
    pub contractor: ContractorKind,
    pub frame: Box2,
    pub eps: f64,
    pub metrics: PavingMetrics,
    /// Boxes per class: inside, outside, uncertain.
    pub counts: [usize; 3],
    pub seconds: f64,
    pub outputs: Vec<PathBuf>,
    pub notes: Vec<String>,
}

impl RunReport {
    pub fn new(subject: String, contractor: ContractorKind, p: &Paving, seconds: f64) -> Self {
        let count = |c| p.boxes_of(c).count();
        RunReport {
            subject,
            contractor,
            frame: p.frame,
            eps: p.eps,
            metrics: p.metrics(),
            counts: [count(BoxClass::Inside), count(BoxClass::Outside), count(BoxClass::Uncertain)],
            seconds,
            outputs: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn to_value(&self) -> Value {
        let m = &self.metrics;
        json!({
            "subject": self.subject,
            "contractor": self.contractor.to_string(),
            "frame": [self.frame.x1().lo(), self.frame.x1().hi(), self.frame.x2().lo(), self.frame.x2().hi()],
            "eps": self.eps,
            "area_in": m.area_in,
            "area_out": m.area_out,
            "area_unc": m.area_unc,
            "n_boxes": m.n_boxes,
            "boxes_in": self.counts[0],
            "boxes_out": self.counts[1],
            "boxes_unc": self.counts[2],
            "seconds": self.seconds,
            "outputs": self.outputs.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("report serializes")
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.metrics;
        writeln!(f, "{}", self.subject)?;
        writeln!(f, "  frame {}  eps {}  contractor {}", self.frame, self.eps, self.contractor)?;
        writeln!(f, "  inside     area {:>12.6}  boxes {:>8}", m.area_in, self.counts[0])?;
        writeln!(f, "  outside    area {:>12.6}  boxes {:>8}", m.area_out, self.counts[1])?;
        writeln!(f, "  uncertain  area {:>12.6}  boxes {:>8}", m.area_unc, self.counts[2])?;
        writeln!(f, "  {} boxes in {:.3} s", m.n_boxes, self.seconds)?;
        for n in &self.notes {
            writeln!(f, "  {n}")?;
        }
        for p in &self.outputs {
            writeln!(f, "  wrote {}", p.display())?;
        }
        Ok(())
    }
}

/// Side-by-side metrics of a minimal and a forward-backward run.
pub fn compare_table(min: &RunReport, fb: &RunReport) -> String {
    let (a, b) = (&min.metrics, &fb.metrics);
    let real = |v: f64| format!("{v:.6}");
    let int = |v: f64| format!("{v:.0}");
    type Row<'a> = (&'a str, f64, f64, &'a dyn Fn(f64) -> String);
    let rows: [Row; 5] = [
        ("area in", a.area_in, b.area_in, &real),
        ("area out", a.area_out, b.area_out, &real),
        ("area unc", a.area_unc, b.area_unc, &real),
        ("boxes", a.n_boxes as f64, b.n_boxes as f64, &int),
        ("time (s)", min.seconds, fb.seconds, &real),
    ];
    let mut s = format!("{:<10} {:>14} {:>14} {:>14}\n", "", min.contractor.to_string(), fb.contractor.to_string(), "delta");
    for (name, x, y, show) in rows {
        s += &format!("{name:<10} {:>14} {:>14} {:>14}\n", show(x), show(y), show(x - y));
    }
    let ratio = if b.area_unc > 0.0 { a.area_unc / b.area_unc } else { f64::NAN };
    s += &format!("uncertain area ratio {}/{}: {ratio:.4}\n", min.contractor, fb.contractor);
    s
}
