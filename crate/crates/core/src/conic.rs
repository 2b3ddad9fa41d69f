//! The quadratic form `f(q, x)`, hyperbola classification, the cardinal
//! function `φ1` and the cardinal points.
//!
//! Fixing `x2`, `f` is a quadratic in `x1` with coefficients
//! `a1 = q3`, `b1 = q1 + q4 x2`, `c1 = q0 + q2 x2 + q5 x2²` and discriminant
//! `Δ1(x2) = b1² - 4 a1 c1`. For a hyperbola `Δ1` is itself an upward
//! parabola in `x2`, so the ordinates carrying a point of the curve are the
//! complement of an open gap between its two roots (the gap is [`rho`]).

use std::fmt;
use std::str::FromStr;

use crate::interval::{parse_f64, Box2, Interval};
use crate::symmetry::swap_params;
use crate::Error;

/// Coefficients `(q0, …, q5)` of
/// `f(q, x) = q0 + q1 x1 + q2 x2 + q3 x1² + q4 x1 x2 + q5 x2²`.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct ConicParams([f64; 6]);

impl ConicParams {
    pub const fn new(q: [f64; 6]) -> Self {
        ConicParams(q)
    }

    pub fn coeffs(&self) -> [f64; 6] {
        self.0
    }

    /// `max |q_i|`.
    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn eval(&self, x: [f64; 2]) -> f64 {
        let [q0, q1, q2, q3, q4, q5] = self.0;
        let [x1, x2] = x;
        q0 + q1 * x1 + q2 * x2 + q3 * x1 * x1 + q4 * x1 * x2 + q5 * x2 * x2
    }

    /// Natural interval extension of `f` over a box.
    pub fn eval_box(&self, b: &Box2) -> Interval {
        if b.is_empty() {
            return Interval::EMPTY;
        }
        let [q0, q1, q2, q3, q4, q5] = self.0.map(Interval::point);
        let (x1, x2) = (b.x1(), b.x2());
        q0 + q1 * x1 + q2 * x2 + q3 * x1.sqr() + q4 * (x1 * x2) + q5 * x2.sqr()
    }

    /// `4 q3 q5 - q4²`, i.e. four times the determinant of the quadratic part.
    pub fn det4(&self) -> f64 {
        let [_, _, _, q3, q4, q5] = self.0;
        4.0 * q3 * q5 - q4 * q4
    }

    pub fn is_hyperbola(&self) -> bool {
        self.det4() < 0.0
    }

    /// Below this magnitude `q3` is treated as zero by [`phi1`].
    pub fn degeneracy_tolerance(&self) -> f64 {
        1e-12 * (1.0 + self.norm_inf())
    }

    pub(crate) fn require_hyperbola(&self) -> Result<(), Error> {
        if self.is_hyperbola() {
            Ok(())
        } else {
            Err(Error::NotHyperbola(self.to_string()))
        }
    }

    pub(crate) fn require_q3(&self, name: &'static str) -> Result<(), Error> {
        let tol = self.degeneracy_tolerance();
        if self.0[3].abs() <= tol {
            Err(Error::DegenerateLeadingCoefficient { coeff: name, value: self.0[3], tol })
        } else {
            Ok(())
        }
    }

    /// Coefficients `(A, B, C)` of `Δ1(x2) = A x2² + B x2 + C`.
    pub fn delta1_coeffs(&self) -> [f64; 3] {
        let [q0, q1, q2, q3, q4, q5] = self.0;
        [q4 * q4 - 4.0 * q3 * q5, 2.0 * q1 * q4 - 4.0 * q3 * q2, q1 * q1 - 4.0 * q3 * q0]
    }

    /// `Δ1(x2)` evaluated directly as `b1² - 4 a1 c1`.
    pub fn delta1(&self, x2: f64) -> f64 {
        let [q0, q1, q2, q3, q4, q5] = self.0;
        let b1 = q1 + q4 * x2;
        let c1 = q0 + q2 * x2 + q5 * x2 * x2;
        b1 * b1 - 4.0 * q3 * c1
    }
}

impl fmt::Display for ConicParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = &self.0;
        write!(f, "{},{},{},{},{},{}", q[0], q[1], q[2], q[3], q[4], q[5])
    }
}

impl FromStr for ConicParams {
    type Err = Error;

    /// Six comma-separated numbers `q0,q1,q2,q3,q4,q5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v = s.split(',').map(parse_f64).collect::<Result<Vec<_>, _>>()?;
        let q: [f64; 6] = v
            .try_into()
            .map_err(|v: Vec<f64>| Error::Parse(format!("expected 6 coefficients, got {}", v.len())))?;
        Ok(ConicParams(q))
    }
}

/// Roots of `a x² + b x + c` in increasing order, computed without
/// cancellation. `None` when the discriminant is negative. `a` must be
/// nonzero.
pub(crate) fn quadratic_roots(a: f64, b: f64, c: f64) -> Option<(f64, f64)> {
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return None;
    }
    let t = -0.5 * (b + b.signum() * disc.sqrt());
    let (r1, r2) = if t == 0.0 { (0.0, 0.0) } else { (t / a, c / t) };
    Some((r1.min(r2), r1.max(r2)))
}

/// The largest `x1` with `f(q, (x1, x2)) = 0`.
pub fn phi1(q: &ConicParams, x2: f64) -> Result<f64, Error> {
    q.require_hyperbola()?;
    q.require_q3("q3")?;
    let [q0, q1, q2, q3, q4, q5] = q.0;
    let b1 = q1 + q4 * x2;
    let c1 = q0 + q2 * x2 + q5 * x2 * x2;
    let disc = b1 * b1 - 4.0 * q3 * c1;
    if disc < 0.0 {
        return Err(Error::InfeasibleOrdinate { x2, disc });
    }
    // the same root as (-b1 + sign(q3) √Δ1) / (2 q3), via the stable pair
    let (_, hi) = quadratic_roots(q3, b1, c1).expect("discriminant checked");
    Ok(hi)
}

/// The closed interval between the two roots of `Δ1`; its interior holds
/// the ordinates with no point of the curve. Empty when `Δ1` has no real
/// root (every ordinate is feasible).
pub fn rho(q: &ConicParams) -> Interval {
    let [a, b, c] = q.delta1_coeffs();
    if a == 0.0 {
        return Interval::EMPTY;
    }
    match quadratic_roots(a, b, c) {
        Some((lo, hi)) => Interval::new(lo, hi),
        None => Interval::EMPTY,
    }
}

/// The set of ordinates `{x2 : Δ1(x2) ≥ 0}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FeasibleOrdinates {
    All,
    /// Everything except the open interval strictly between the two bounds.
    OutsideGap(Interval),
}

impl FeasibleOrdinates {
    pub fn contains(&self, x2: f64) -> bool {
        match self {
            FeasibleOrdinates::All => true,
            FeasibleOrdinates::OutsideGap(g) => x2 <= g.lo() || x2 >= g.hi(),
        }
    }
}

pub fn feasible_ordinates(q: &ConicParams) -> FeasibleOrdinates {
    let gap = rho(q);
    if gap.is_empty() {
        FeasibleOrdinates::All
    } else {
        FeasibleOrdinates::OutsideGap(gap)
    }
}

/// Extremal points of the curve in the four axis directions.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct CardinalPoints {
    pub north: Option<[f64; 2]>,
    pub south: Option<[f64; 2]>,
    pub east: Option<[f64; 2]>,
    pub west: Option<[f64; 2]>,
}

impl CardinalPoints {
    pub fn count(&self) -> usize {
        [self.north, self.south, self.east, self.west].iter().flatten().count()
    }

    /// `(name, point)` for every present point, in N, S, E, W order.
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, [f64; 2])> {
        [("North", self.north), ("South", self.south), ("East", self.east), ("West", self.west)]
            .into_iter()
            .filter_map(|(n, p)| p.map(|p| (n, p)))
    }
}

/// The pair of points at the ends of the gap of `Δ1`, with the abscissa of
/// the double root `-b1 / (2 q3)`. The point at the smaller ordinate tops the
/// lower branch; the other bottoms the upper branch.
fn gap_points(q: &ConicParams) -> Option<([f64; 2], [f64; 2])> {
    let gap = rho(q);
    if gap.is_empty() || q.0[3] == 0.0 {
        return None;
    }
    let [_, q1, _, q3, q4, _] = q.0;
    let at = |x2: f64| [-(q1 + q4 * x2) / (2.0 * q3), x2];
    Some((at(gap.lo()), at(gap.hi())))
}

/// North and South from the gap of `Δ1`, East and West from the gap of the
/// mirrored parameters with coordinates swapped back.
///
/// The North is the local maximum of `x2` at the smaller root of the gap; the
/// South is the local minimum at the larger root. Likewise the East (local
/// maximum of `x1`) sits at the smaller root of the mirrored gap.
pub fn cardinal_points(q: &ConicParams) -> CardinalPoints {
    let mut out = CardinalPoints::default();
    if !q.is_hyperbola() {
        return out;
    }
    if let Some((n, s)) = gap_points(q) {
        out.north = Some(n);
        out.south = Some(s);
    }
    if let Some((e, w)) = gap_points(&swap_params(q)) {
        out.east = Some([e[1], e[0]]);
        out.west = Some([w[1], w[0]]);
    }
    out
}
