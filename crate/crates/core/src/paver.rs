//! Set inversion by bisection: classify the boxes of a frame as inside,
//! outside or uncertain with respect to a separator.

use std::fmt;
use std::str::FromStr;

use crate::interval::Box2;
use crate::separator::Separator;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoxClass {
    Inside,
    Outside,
    Uncertain,
}

impl BoxClass {
    /// Short name used in CSV files.
    pub fn as_str(&self) -> &'static str {
        match self {
            BoxClass::Inside => "in",
            BoxClass::Outside => "out",
            BoxClass::Uncertain => "unc",
        }
    }
}

impl fmt::Display for BoxClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoxClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "in" => Ok(BoxClass::Inside),
            "out" => Ok(BoxClass::Outside),
            "unc" => Ok(BoxClass::Uncertain),
            _ => Err(Error::Parse(format!("unknown box class `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Paving {
    pub frame: Box2,
    pub eps: f64,
    /// Sorted by box coordinates, then class.
    pub boxes: Vec<(Box2, BoxClass)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct PavingMetrics {
    pub area_in: f64,
    pub area_out: f64,
    pub area_unc: f64,
    pub n_boxes: usize,
}

impl PavingMetrics {
    pub fn total_area(&self) -> f64 {
        self.area_in + self.area_out + self.area_unc
    }
}

/// Neumaier summation.
#[derive(Default)]
struct Sum {
    s: f64,
    c: f64,
}

impl Sum {
    fn add(&mut self, v: f64) {
        let t = self.s + v;
        if self.s.abs() >= v.abs() {
            self.c += (self.s - t) + v;
        } else {
            self.c += (v - t) + self.s;
        }
        self.s = t;
    }

    fn value(&self) -> f64 {
        self.s + self.c
    }
}

impl Paving {
    pub fn metrics(&self) -> PavingMetrics {
        let mut sums = [Sum::default(), Sum::default(), Sum::default()];
        for (b, c) in &self.boxes {
            sums[*c as usize].add(b.area());
        }
        PavingMetrics {
            area_in: sums[0].value(),
            area_out: sums[1].value(),
            area_unc: sums[2].value(),
            n_boxes: self.boxes.len(),
        }
    }

    /// Class of the first box holding `p`, if any.
    pub fn class_at(&self, p: [f64; 2]) -> Option<BoxClass> {
        self.boxes.iter().find(|(b, _)| b.contains(p)).map(|(_, c)| *c)
    }

    pub fn boxes_of(&self, class: BoxClass) -> impl Iterator<Item = &Box2> {
        self.boxes.iter().filter(move |(_, c)| *c == class).map(|(b, _)| b)
    }
}

pub(crate) fn sort_boxes(boxes: &mut [(Box2, BoxClass)]) {
    boxes.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
}

fn check_args(frame: &Box2, eps: f64) -> Result<(), Error> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidAccuracy(eps));
    }
    if frame.is_empty() || !frame.is_bounded() {
        return Err(Error::InvalidFrame(frame.to_string()));
    }
    Ok(())
}

fn has_area(b: &Box2) -> bool {
    !b.is_empty() && !b.x1().is_degenerate() && !b.x2().is_degenerate()
}

/// Processes one box: the classified pieces go to `out`, the boxes left to
/// bisect are returned.
fn step(sep: &dyn Separator, x: &Box2, eps: f64, out: &mut Vec<(Box2, BoxClass)>) -> Option<(Box2, Box2)> {
    let s = sep.separate(x);
    let x_out = s.x_out.intersect(x);
    let x_in = s.x_in.intersect(x);
    out.extend(x.difference(&x_out).into_iter().map(|b| (b, BoxClass::Outside)));
    let rest = x_in.intersect(&x_out);
    out.extend(x_out.difference(&rest).into_iter().filter(has_area).map(|b| (b, BoxClass::Inside)));
    if !has_area(&rest) {
        return None;
    }
    if rest.width() > eps {
        Some(rest.bisect())
    } else {
        out.push((rest, BoxClass::Uncertain));
        None
    }
}

/// Paves `frame` with boxes proven inside or outside the set of `sep`, and
/// uncertain boxes no wider than `eps`.
pub fn sivia(sep: &dyn Separator, frame: &Box2, eps: f64) -> Result<Paving, Error> {
    check_args(frame, eps)?;
    let mut boxes = Vec::new();
    let mut stack = vec![*frame];
    while let Some(x) = stack.pop() {
        if let Some((a, b)) = step(sep, &x, eps, &mut boxes) {
            stack.push(b);
            stack.push(a);
        }
    }
    sort_boxes(&mut boxes);
    Ok(Paving { frame: *frame, eps, boxes })
}

/// Same result as [`sivia`], with each level of the bisection tree processed
/// in parallel.
#[cfg(feature = "parallel")]
pub fn sivia_parallel(sep: &dyn Separator, frame: &Box2, eps: f64) -> Result<Paving, Error> {
    use rayon::prelude::*;

    check_args(frame, eps)?;
    let mut boxes = Vec::new();
    let mut level = vec![*frame];
    while !level.is_empty() {
        let results: Vec<_> = level
            .par_iter()
            .map(|x| {
                let mut out = Vec::new();
                let next = step(sep, x, eps, &mut out);
                (out, next)
            })
            .collect();
        level = Vec::with_capacity(2 * results.len());
        for (out, next) in results {
            boxes.extend(out);
            if let Some((a, b)) = next {
                level.push(a);
                level.push(b);
            }
        }
    }
    sort_boxes(&mut boxes);
    Ok(Paving { frame: *frame, eps, boxes })
}

/// [`sivia_parallel`] when the `parallel` feature is on, [`sivia`] otherwise.
pub fn pave(sep: &dyn Separator, frame: &Box2, eps: f64) -> Result<Paving, Error> {
    #[cfg(feature = "parallel")]
    {
        sivia_parallel(sep, frame, eps)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sivia(sep, frame, eps)
    }
}
