//! Oracles shared by the integration tests. Nothing here calls into the
//! contractor, separator or paver code; curve points come from the
//! quadratic formula polished by Newton steps and are certified with exact
//! rational arithmetic when it matters.
#![allow(dead_code)]

use hypsep::paver::{BoxClass, Paving};
use hypsep::{Box2, ConicParams, Interval};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// Exact `f(q, x)` for the floating-point inputs.
pub fn f_exact(q: &ConicParams, x: [f64; 2]) -> BigRational {
    let c = q.coeffs().map(rat);
    let (x1, x2) = (rat(x[0]), rat(x[1]));
    &c[0] + &c[1] * &x1 + &c[2] * &x2 + &c[3] * &x1 * &x1 + &c[4] * &x1 * &x2 + &c[5] * &x2 * &x2
}

pub fn sign_exact(q: &ConicParams, x: [f64; 2]) -> i32 {
    let v = f_exact(q, x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Coefficients in `[-10, 10]`, redrawn until `4 q3 q5 - q4² < 0`.
pub fn random_hyperbola(r: &mut impl Rng) -> ConicParams {
    loop {
        let q = ConicParams::new(std::array::from_fn(|_| r.gen_range(-10.0..10.0)));
        let c = q.coeffs();
        if 4.0 * c[3] * c[5] - c[4] * c[4] < 0.0 {
            return q;
        }
    }
}

fn polish(a: f64, b: f64, c: f64, mut t: f64) -> f64 {
    for _ in 0..3 {
        let g = (a * t + b) * t + c;
        let d = 2.0 * a * t + b;
        if d == 0.0 || !g.is_finite() {
            break;
        }
        let next = t - g / d;
        if !next.is_finite() {
            break;
        }
        t = next;
    }
    t
}

/// Real roots of `a t² + b t + c`: textbook formula, then Newton steps.
pub fn quad_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return if b == 0.0 { vec![] } else { vec![-c / b] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    let s = disc.sqrt();
    let mut r = vec![(-b - s) / (2.0 * a), (-b + s) / (2.0 * a)];
    for t in r.iter_mut() {
        *t = polish(a, b, c, *t);
    }
    r.sort_by(f64::total_cmp);
    r
}

/// Abscissas of the curve points with ordinate `x2`.
pub fn x1_on_curve(q: &ConicParams, x2: f64) -> Vec<f64> {
    let [q0, q1, q2, q3, q4, q5] = q.coeffs();
    quad_roots(q3, q1 + q4 * x2, q0 + q2 * x2 + q5 * x2 * x2)
}

/// Ordinates of the curve points with abscissa `x1`.
pub fn x2_on_curve(q: &ConicParams, x1: f64) -> Vec<f64> {
    let [q0, q1, q2, q3, q4, q5] = q.coeffs();
    quad_roots(q5, q2 + q4 * x1, q0 + q1 * x1 + q3 * x1 * x1)
}

/// A point obtained by solving along a line where coordinate `fixed` is held.
#[derive(Clone, Copy, Debug)]
pub struct Sample {
    pub p: [f64; 2],
    pub fixed: usize,
}

fn grid(iv: Interval, step: f64) -> Vec<f64> {
    let (lo, hi) = (iv.lo(), iv.hi());
    let n = ((hi - lo) / step).floor() as usize;
    let mut v: Vec<f64> = (0..=n).map(|i| lo + i as f64 * step).filter(|t| *t <= hi).collect();
    if v.last() != Some(&hi) {
        v.push(hi);
    }
    v
}

/// Curve points in `b` on a grid of step `step` along both axes, including
/// the crossings of the four edges.
pub fn curve_samples(q: &ConicParams, b: &Box2, step: f64) -> Vec<Sample> {
    let mut out = Vec::new();
    for x2 in grid(b.x2(), step) {
        for x1 in x1_on_curve(q, x2) {
            if b.x1().contains(x1) {
                out.push(Sample { p: [x1, x2], fixed: 1 });
            }
        }
    }
    for x1 in grid(b.x1(), step) {
        for x2 in x2_on_curve(q, x1) {
            if b.x2().contains(x2) {
                out.push(Sample { p: [x1, x2], fixed: 0 });
            }
        }
    }
    out
}

pub fn hull_of_samples(s: &[Sample]) -> Box2 {
    s.iter().fold(Box2::EMPTY, |h, p| h.hull(&Box2::point(p.p)))
}

/// Whether the exact curve point near a sample may be missing from `r`.
///
/// The sample is moved along its free axis until an exact sign change of
/// `f` brackets a true root. The sample counts as lost only when that root
/// lies in `x` but the bracket misses `r`.
pub fn sample_lost(q: &ConicParams, s: &Sample, x: &Box2, r: &Box2) -> bool {
    if r.contains(s.p) {
        return false;
    }
    let free = 1 - s.fixed;
    let at = |t: f64| {
        let mut p = s.p;
        p[free] = t;
        sign_exact(q, p)
    };
    let t0 = s.p[free];
    let mut delta = f64::EPSILON * t0.abs().max(f64::MIN_POSITIVE);
    for _ in 0..64 {
        let (lo, hi) = (t0 - delta, t0 + delta);
        if at(lo) * at(hi) <= 0 {
            let within = Interval::new(lo, hi).intersect(&x.get(free));
            if within.is_empty() || !x.get(s.fixed).contains(s.p[s.fixed]) {
                return false;
            }
            if at(within.lo()) * at(within.hi()) > 0 {
                // the root sits just outside the box
                return false;
            }
            let fixed_ok = r.get(s.fixed).contains(s.p[s.fixed]);
            return !(fixed_ok && !within.intersect(&r.get(free)).is_empty());
        }
        delta *= 2.0;
    }
    true
}

/// Largest endpoint gap between two boxes; `inf` if exactly one is empty.
pub fn endpoint_distance(a: &Box2, b: &Box2) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => 0.0,
        (false, false) => (0..2)
            .map(|i| {
                let (u, v) = (a.get(i), b.get(i));
                (u.lo() - v.lo()).abs().max((u.hi() - v.hi()).abs())
            })
            .fold(0.0, f64::max),
        _ => f64::INFINITY,
    }
}

/// Random box inside `frame` with sides drawn uniformly.
pub fn random_box(r: &mut impl Rng, frame: &Box2) -> Box2 {
    let side = |r: &mut dyn rand::RngCore, iv: Interval| {
        let a = r.gen_range(iv.lo()..=iv.hi());
        let b = r.gen_range(iv.lo()..=iv.hi());
        Interval::hull_of(a, b)
    };
    Box2::new(side(r, frame.x1()), side(r, frame.x2()))
}

/// Partition check: boxes inside the frame, pairwise disjoint interiors,
/// areas adding up to the frame area, uncertain boxes no wider than `eps`.
pub fn check_partition(p: &Paving) -> Result<(), String> {
    let frame_area = p.frame.area();
    let mut boxes: Vec<Box2> = Vec::with_capacity(p.boxes.len());
    for (b, c) in &p.boxes {
        if !b.is_subset(&p.frame) {
            return Err(format!("box {b} leaves the frame"));
        }
        if *c == BoxClass::Uncertain && b.width() > p.eps {
            return Err(format!("uncertain box {b} wider than {}", p.eps));
        }
        boxes.push(*b);
    }
    let total = p.metrics().total_area();
    if ((total - frame_area) / frame_area).abs() > 1e-9 {
        return Err(format!("areas sum to {total}, frame area is {frame_area}"));
    }
    boxes.sort_by(|a, b| a.x1().lo().total_cmp(&b.x1().lo()));
    for i in 0..boxes.len() {
        let a = boxes[i];
        for b in &boxes[i + 1..] {
            if b.x1().lo() >= a.x1().hi() {
                break;
            }
            let w1 = a.x1().hi().min(b.x1().hi()) - a.x1().lo().max(b.x1().lo());
            let w2 = a.x2().hi().min(b.x2().hi()) - a.x2().lo().max(b.x2().lo());
            if w1 > 0.0 && w2 > 0.0 {
                return Err(format!("boxes {a} and {b} overlap"));
            }
        }
    }
    Ok(())
}

/// Uniform point in a box chosen with probability proportional to its area
/// among the boxes of class `class`.
pub fn sample_class(p: &Paving, class: BoxClass, r: &mut impl Rng, n: usize) -> Vec<[f64; 2]> {
    let boxes: Vec<&Box2> = p.boxes_of(class).filter(|b| b.area() > 0.0).collect();
    if boxes.is_empty() {
        return vec![];
    }
    let mut cum = Vec::with_capacity(boxes.len());
    let mut acc = 0.0;
    for b in &boxes {
        acc += b.area();
        cum.push(acc);
    }
    (0..n)
        .map(|_| {
            let u = r.gen_range(0.0..acc);
            let i = cum.partition_point(|c| *c <= u).min(boxes.len() - 1);
            let b = boxes[i];
            [
                r.gen_range(b.x1().lo()..=b.x1().hi()),
                r.gen_range(b.x2().lo()..=b.x2().hi()),
            ]
        })
        .collect()
}

/// `‖x − a‖ − ‖x − b‖` in plain floating point.
pub fn range_diff(x: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    ((x[0] - a[0]).powi(2) + (x[1] - a[1]).powi(2)).sqrt() - ((x[0] - b[0]).powi(2) + (x[1] - b[1]).powi(2)).sqrt()
}

/// A point `x` on the ray from `b` along `u` with `‖x − a‖ − ‖x − b‖ = ell`,
/// found by bisection on the distance to `b`; `None` when the ray never
/// reaches that level.
pub fn locus_point_on_ray(a: [f64; 2], b: [f64; 2], u: [f64; 2], ell: f64) -> Option<[f64; 2]> {
    let at = |t: f64| [b[0] + t * u[0], b[1] + t * u[1]];
    let g = |t: f64| range_diff(at(t), a, b) - ell;
    // g(0) = |a - b| - ell > 0; g(t) tends to u·(b - a) - ell
    let limit = u[0] * (b[0] - a[0]) + u[1] * (b[1] - a[1]) - ell;
    if limit >= -1e-9 * (1.0 + ell) {
        return None;
    }
    let mut hi = 1.0;
    while g(hi) > 0.0 {
        hi *= 2.0;
        if hi > 1e9 {
            return None;
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(at(0.5 * (lo + hi)))
}
