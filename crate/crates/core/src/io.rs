//! Paving files: CSV for data, SVG for pictures.

use std::fmt::Write as _;
use std::io::{Read, Write};

use crate::conic::CardinalPoints;
use crate::interval::{Box2, Interval};
use crate::paver::{sort_boxes, BoxClass, Paving};
use crate::Error;

const HEADER: [&str; 5] = ["x1_lo", "x1_hi", "x2_lo", "x2_hi", "class"];

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

/// One row per box: `x1_lo,x1_hi,x2_lo,x2_hi,class`.
pub fn write_csv<W: Write>(p: &Paving, w: W) -> Result<(), Error> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(HEADER).map_err(io_err)?;
    for (b, c) in &p.boxes {
        let (x1, x2) = (b.x1(), b.x2());
        wr.write_record([
            x1.lo().to_string(),
            x1.hi().to_string(),
            x2.lo().to_string(),
            x2.hi().to_string(),
            c.as_str().to_string(),
        ])
        .map_err(io_err)?;
    }
    wr.flush().map_err(io_err)
}

pub fn to_csv_string(p: &Paving) -> String {
    let mut buf = Vec::new();
    write_csv(p, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

/// Reads boxes written by [`write_csv`], sorted canonically.
pub fn read_csv<R: Read>(r: R) -> Result<Vec<(Box2, BoxClass)>, Error> {
    let mut rd = csv::Reader::from_reader(r);
    let header = rd.headers().map_err(io_err)?.clone();
    if header.iter().ne(HEADER) {
        return Err(Error::Parse(format!("unexpected paving header `{}`", header.iter().collect::<Vec<_>>().join(","))));
    }
    let mut boxes = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec.map_err(io_err)?;
        let line = i + 2;
        if rec.len() != 5 {
            return Err(Error::Parse(format!("line {line}: expected 5 fields")));
        }
        let field = |k: usize| Interval::from_csv(&format!("{},{}", &rec[2 * k], &rec[2 * k + 1]));
        let x1 = field(0).map_err(|e| Error::Parse(format!("line {line}: {e}")))?;
        let x2 = field(1).map_err(|e| Error::Parse(format!("line {line}: {e}")))?;
        let class = rec[4].parse::<BoxClass>().map_err(|e| Error::Parse(format!("line {line}: {e}")))?;
        boxes.push((Box2::new(x1, x2), class));
    }
    sort_boxes(&mut boxes);
    Ok(boxes)
}

/// Rebuilds a paving from CSV; the frame is the hull of the boxes.
pub fn read_paving<R: Read>(r: R, eps: f64) -> Result<Paving, Error> {
    let boxes = read_csv(r)?;
    let frame = boxes.iter().fold(Box2::EMPTY, |h, (b, _)| h.hull(b));
    Ok(Paving { frame, eps, boxes })
}

fn fill(c: BoxClass) -> &'static str {
    match c {
        BoxClass::Inside => "magenta",
        BoxClass::Outside => "blue",
        BoxClass::Uncertain => "yellow",
    }
}

/// Drawing options for [`to_svg`].
#[derive(Clone, Debug)]
pub struct SvgStyle {
    /// Width of the picture in pixels; the height follows the frame aspect.
    pub width: f64,
    /// Draw box edges.
    pub outline: bool,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle { width: 600.0, outline: true }
    }
}

/// Cardinal points as squares (North black, South orange, West blue, East
/// red) and labelled points (for example microphones) as small discs.
#[derive(Clone, Debug, Default)]
pub struct Markers {
    pub cardinal: Option<CardinalPoints>,
    pub points: Vec<(String, [f64; 2])>,
}

pub fn to_svg(p: &Paving, markers: &Markers, style: &SvgStyle) -> String {
    let f = p.frame;
    let (w1, w2) = (f.x1().hi() - f.x1().lo(), f.x2().hi() - f.x2().lo());
    let sx = style.width / w1;
    let height = (w2 * sx).max(1.0);
    let sy = height / w2;
    let px = |x: f64| (x - f.x1().lo()) * sx;
    let py = |y: f64| (f.x2().hi() - y) * sy;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="0 0 {} {}">"#,
        style.width, height, style.width, height
    );
    let stroke = if style.outline { r#" stroke="black" stroke-width="0.3""# } else { "" };
    for (b, c) in &p.boxes {
        let (x1, x2) = (b.x1(), b.x2());
        let _ = writeln!(
            s,
            r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{}"{stroke}/>"#,
            px(x1.lo()),
            py(x2.hi()),
            (x1.hi() - x1.lo()) * sx,
            (x2.hi() - x2.lo()) * sy,
            fill(*c)
        );
    }
    if let Some(cp) = &markers.cardinal {
        let half = 5.0;
        for (name, q) in cp.iter() {
            if !f.contains(q) {
                continue;
            }
            let color = match name {
                "North" => "black",
                "South" => "orange",
                "West" => "blue",
                _ => "red",
            };
            let _ = writeln!(
                s,
                r#"<rect x="{:.3}" y="{:.3}" width="{}" height="{}" fill="{color}" stroke="white" stroke-width="1"><title>{name}</title></rect>"#,
                px(q[0]) - half,
                py(q[1]) - half,
                2.0 * half,
                2.0 * half
            );
        }
    }
    for (name, q) in &markers.points {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.3}" cy="{:.3}" r="4" fill="black" stroke="white"/><text x="{:.3}" y="{:.3}" font-size="14" font-family="sans-serif">{}</text>"#,
            px(q[0]),
            py(q[1]),
            px(q[0]) + 6.0,
            py(q[1]) - 6.0,
            escape(name)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
