//! Closed real intervals with outward rounding, and axis-aligned boxes of the
//! plane.
//!
//! Endpoints are `f64` and may be infinite. Every operation returns an
//! interval that encloses the exact real image of its operands; the rounding
//! is directed (see [`crate::round`]) so exactly representable results stay
//! exact and inexact ones move outward by one ULP.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use crate::round;
use crate::Error;

/// A closed interval `[lo, hi]` of the extended real line, or the empty set.
///
/// The empty set has a single representation ([`Interval::EMPTY`]), so `==`
/// is structural equality of sets.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const EMPTY: Interval = Interval { lo: f64::INFINITY, hi: f64::NEG_INFINITY };
    pub const ENTIRE: Interval = Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY };
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const POSITIVE: Interval = Interval { lo: 0.0, hi: f64::INFINITY };
    pub const NEGATIVE: Interval = Interval { lo: f64::NEG_INFINITY, hi: 0.0 };

    /// `[lo, hi]`, or the empty set when `lo > hi`.
    ///
    /// Panics on NaN endpoints.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(!lo.is_nan() && !hi.is_nan(), "NaN interval endpoint");
        if lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            Self::EMPTY
        } else {
            // normalise -0.0 so that equality does not depend on zero signs
            Interval { lo: lo + 0.0, hi: hi + 0.0 }
        }
    }

    pub fn point(x: f64) -> Self {
        Self::new(x, x)
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.is_empty() || (self.lo.is_finite() && self.hi.is_finite())
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn is_subset(&self, other: &Interval) -> bool {
        self.is_empty() || (other.lo <= self.lo && self.hi <= other.hi)
    }

    /// True when `self` lies inside the interior of `other`.
    pub fn is_interior_subset(&self, other: &Interval) -> bool {
        self.is_empty()
            || ((other.lo < self.lo || other.lo == f64::NEG_INFINITY)
                && (self.hi < other.hi || other.hi == f64::INFINITY))
    }

    /// `hi - lo` rounded up; zero for the empty set.
    pub fn width(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            round::sub_up(self.hi, self.lo)
        }
    }

    /// Midpoint, finite whenever the interval is nonempty.
    ///
    /// `[-inf, inf]` has midpoint 0; a half-line has its finite endpoint
    /// pushed to `±f64::MAX`. NaN for the empty set.
    pub fn midpoint(&self) -> f64 {
        if self.is_empty() {
            return f64::NAN;
        }
        match (self.lo.is_finite(), self.hi.is_finite()) {
            (true, true) => {
                let m = 0.5 * self.lo + 0.5 * self.hi;
                m.clamp(self.lo, self.hi)
            }
            (false, false) => 0.0,
            (true, false) => f64::MAX,
            (false, true) => -f64::MAX,
        }
    }

    /// Magnitude `max |x|` over the interval.
    pub fn mag(&self) -> f64 {
        if self.is_empty() {
            f64::NAN
        } else {
            self.lo.abs().max(self.hi.abs())
        }
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        if self.is_empty() {
            *other
        } else if other.is_empty() {
            *self
        } else {
            Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
        }
    }

    /// Tight enclosure of `{x² : x ∈ self}`.
    pub fn sqr(&self) -> Interval {
        if self.is_empty() {
            return Self::EMPTY;
        }
        if self.lo >= 0.0 {
            Interval::new(round::mul_down(self.lo, self.lo), round::mul_up(self.hi, self.hi))
        } else if self.hi <= 0.0 {
            Interval::new(round::mul_down(self.hi, self.hi), round::mul_up(self.lo, self.lo))
        } else {
            let m = self.mag();
            Interval::new(0.0, round::mul_up(m, m))
        }
    }

    /// Square root of `self ∩ [0, +inf]`; empty when that intersection is.
    pub fn sqrt(&self) -> Interval {
        let x = self.intersect(&Self::POSITIVE);
        if x.is_empty() {
            return Self::EMPTY;
        }
        Interval::new(round::sqrt_down(x.lo), round::sqrt_up(x.hi))
    }

    /// Backward projection for `self = x²`: hull of `{x ∈ prior : x² ∈ self}`.
    pub fn sqr_rev(&self, prior: &Interval) -> Interval {
        let root = self.sqrt();
        if root.is_empty() {
            return Self::EMPTY;
        }
        let pos = root.intersect(prior);
        let neg = (-root).intersect(prior);
        pos.hull(&neg)
    }

    /// Extended division: when `other` contains zero the quotient set may be
    /// two half-lines, returned as a pair (the second possibly empty).
    pub fn div_pieces(&self, other: &Interval) -> (Interval, Interval) {
        if self.is_empty() || other.is_empty() {
            return (Self::EMPTY, Self::EMPTY);
        }
        let (a, b) = (self, other);
        if b.lo > 0.0 || b.hi < 0.0 {
            return (a.div_nonzero(b), Self::EMPTY);
        }
        if b.lo == 0.0 && b.hi == 0.0 {
            return (Self::EMPTY, Self::EMPTY);
        }
        if a.contains(0.0) {
            return (Self::ENTIRE, Self::EMPTY);
        }
        if b.lo == 0.0 {
            let r = if a.hi < 0.0 {
                Interval::new(f64::NEG_INFINITY, round::div_up(a.hi, b.hi))
            } else {
                Interval::new(round::div_down(a.lo, b.hi), f64::INFINITY)
            };
            return (r, Self::EMPTY);
        }
        if b.hi == 0.0 {
            let r = if a.hi < 0.0 {
                Interval::new(round::div_down(a.hi, b.lo), f64::INFINITY)
            } else {
                Interval::new(f64::NEG_INFINITY, round::div_up(a.lo, b.lo))
            };
            return (r, Self::EMPTY);
        }
        // b.lo < 0 < b.hi, 0 ∉ a
        if a.hi < 0.0 {
            (
                Interval::new(f64::NEG_INFINITY, round::div_up(a.hi, b.hi)),
                Interval::new(round::div_down(a.hi, b.lo), f64::INFINITY),
            )
        } else {
            (
                Interval::new(f64::NEG_INFINITY, round::div_up(a.lo, b.lo)),
                Interval::new(round::div_down(a.lo, b.hi), f64::INFINITY),
            )
        }
    }

    fn div_nonzero(&self, b: &Interval) -> Interval {
        let a = self;
        use round::{div_down as dd, div_up as du};
        if b.lo > 0.0 {
            if a.lo >= 0.0 {
                Interval::new(dd(a.lo, b.hi), du(a.hi, b.lo))
            } else if a.hi <= 0.0 {
                Interval::new(dd(a.lo, b.lo), du(a.hi, b.hi))
            } else {
                Interval::new(dd(a.lo, b.lo), du(a.hi, b.lo))
            }
        } else if a.lo >= 0.0 {
            Interval::new(dd(a.hi, b.hi), du(a.lo, b.lo))
        } else if a.hi <= 0.0 {
            Interval::new(dd(a.hi, b.lo), du(a.lo, b.hi))
        } else {
            Interval::new(dd(a.hi, b.hi), du(a.lo, b.hi))
        }
    }

    /// Backward projection for `self = a * b`: the values of `a` (within
    /// `prior`) compatible with some `b` in `factor`.
    pub fn mul_rev(&self, factor: &Interval, prior: &Interval) -> Interval {
        if self.contains(0.0) && factor.contains(0.0) {
            return *prior;
        }
        let (p, q) = self.div_pieces(factor);
        p.intersect(prior).hull(&q.intersect(prior))
    }

    /// Interval between two values given in either order.
    pub fn hull_of(a: f64, b: f64) -> Interval {
        Interval::new(a.min(b), a.max(b))
    }

    /// Canonical total order used to sort pavings.
    pub fn total_cmp(&self, other: &Interval) -> Ordering {
        self.lo.total_cmp(&other.lo).then(self.hi.total_cmp(&other.hi))
    }

    /// CSV fields `lo,hi`. Infinite endpoints print as `inf` / `-inf`,
    /// the empty set as `empty,empty`.
    pub fn to_csv(&self) -> String {
        if self.is_empty() {
            "empty,empty".to_string()
        } else {
            format!("{},{}", self.lo, self.hi)
        }
    }

    pub fn from_csv(s: &str) -> Result<Interval, Error> {
        let mut it = s.split(',').map(str::trim);
        let (lo, hi) = match (it.next(), it.next(), it.next()) {
            (Some(lo), Some(hi), None) => (lo, hi),
            _ => return Err(Error::Parse(format!("expected `lo,hi`, got `{s}`"))),
        };
        if lo == "empty" && hi == "empty" {
            return Ok(Self::EMPTY);
        }
        let lo = parse_f64(lo)?;
        let hi = parse_f64(hi)?;
        if lo > hi {
            return Err(Error::Parse(format!("interval with lo > hi: `{s}`")));
        }
        Ok(Interval::new(lo, hi))
    }
}

pub(crate) fn parse_f64(s: &str) -> Result<f64, Error> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not a number: `{s}`")))?;
    if v.is_nan() {
        return Err(Error::Parse("NaN is not allowed".into()));
    }
    Ok(v)
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(t);
        Interval::from_csv(t)
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl Neg for Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        if self.is_empty() {
            self
        } else {
            Interval::new(-self.hi, -self.lo)
        }
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, b: Interval) -> Interval {
        if self.is_empty() || b.is_empty() {
            return Interval::EMPTY;
        }
        Interval::new(round::add_down(self.lo, b.lo), round::add_up(self.hi, b.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;

    fn sub(self, b: Interval) -> Interval {
        if self.is_empty() || b.is_empty() {
            return Interval::EMPTY;
        }
        Interval::new(round::sub_down(self.lo, b.hi), round::sub_up(self.hi, b.lo))
    }
}

impl Mul for Interval {
    type Output = Interval;

    fn mul(self, b: Interval) -> Interval {
        if self.is_empty() || b.is_empty() {
            return Interval::EMPTY;
        }
        let a = self;
        let corners = [(a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi)];
        let lo = corners
            .iter()
            .map(|&(x, y)| round::mul_down(x, y))
            .fold(f64::INFINITY, f64::min);
        let hi = corners
            .iter()
            .map(|&(x, y)| round::mul_up(x, y))
            .fold(f64::NEG_INFINITY, f64::max);
        Interval::new(lo, hi)
    }
}

impl Div for Interval {
    type Output = Interval;

    /// Hull of the extended quotient.
    fn div(self, b: Interval) -> Interval {
        let (p, q) = self.div_pieces(&b);
        p.hull(&q)
    }
}

impl Add<f64> for Interval {
    type Output = Interval;
    fn add(self, b: f64) -> Interval {
        self + Interval::point(b)
    }
}

impl Sub<f64> for Interval {
    type Output = Interval;
    fn sub(self, b: f64) -> Interval {
        self - Interval::point(b)
    }
}

impl Mul<Interval> for f64 {
    type Output = Interval;
    fn mul(self, b: Interval) -> Interval {
        Interval::point(self) * b
    }
}

/// An axis-aligned box `[x1] × [x2]` of the plane.
///
/// A box with an empty side is the empty box; it has one representation
/// ([`Box2::EMPTY`]).
#[derive(Clone, Copy, PartialEq)]
pub struct Box2 {
    x1: Interval,
    x2: Interval,
}

impl Box2 {
    pub const EMPTY: Box2 = Box2 { x1: Interval::EMPTY, x2: Interval::EMPTY };
    pub const ENTIRE: Box2 = Box2 { x1: Interval::ENTIRE, x2: Interval::ENTIRE };

    pub fn new(x1: Interval, x2: Interval) -> Self {
        if x1.is_empty() || x2.is_empty() {
            Self::EMPTY
        } else {
            Box2 { x1, x2 }
        }
    }

    /// `[x1lo, x1hi] × [x2lo, x2hi]`.
    pub fn from_bounds(x1lo: f64, x1hi: f64, x2lo: f64, x2hi: f64) -> Self {
        Self::new(Interval::new(x1lo, x1hi), Interval::new(x2lo, x2hi))
    }

    pub fn point(p: [f64; 2]) -> Self {
        Self::new(Interval::point(p[0]), Interval::point(p[1]))
    }

    #[inline]
    pub fn x1(&self) -> Interval {
        self.x1
    }

    #[inline]
    pub fn x2(&self) -> Interval {
        self.x2
    }

    /// Component `i` (0 or 1).
    pub fn get(&self, i: usize) -> Interval {
        match i {
            0 => self.x1,
            1 => self.x2,
            _ => panic!("Box2 has two components, got index {i}"),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.x1.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.x1.is_bounded() && self.x2.is_bounded()
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        self.x1.contains(p[0]) && self.x2.contains(p[1])
    }

    pub fn is_subset(&self, other: &Box2) -> bool {
        self.is_empty() || (self.x1.is_subset(&other.x1) && self.x2.is_subset(&other.x2))
    }

    pub fn intersect(&self, other: &Box2) -> Box2 {
        Box2::new(self.x1.intersect(&other.x1), self.x2.intersect(&other.x2))
    }

    pub fn hull(&self, other: &Box2) -> Box2 {
        if self.is_empty() {
            *other
        } else if other.is_empty() {
            *self
        } else {
            Box2::new(self.x1.hull(&other.x1), self.x2.hull(&other.x2))
        }
    }

    /// Largest side width (Chebyshev size); zero for the empty box.
    pub fn width(&self) -> f64 {
        self.x1.width().max(self.x2.width())
    }

    /// Area, rounded to nearest; zero for the empty box.
    pub fn area(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            (self.x1.hi - self.x1.lo) * (self.x2.hi - self.x2.lo)
        }
    }

    pub fn midpoint(&self) -> [f64; 2] {
        [self.x1.midpoint(), self.x2.midpoint()]
    }

    /// Splits the widest side at its midpoint; ties go to `x1`.
    ///
    /// Panics on an empty or unbounded box.
    pub fn bisect(&self) -> (Box2, Box2) {
        assert!(!self.is_empty(), "cannot bisect the empty box");
        assert!(self.is_bounded(), "cannot bisect an unbounded box");
        let w1 = self.x1.hi - self.x1.lo;
        let w2 = self.x2.hi - self.x2.lo;
        if w1 >= w2 {
            let m = self.x1.midpoint();
            (
                Box2::new(Interval::new(self.x1.lo, m), self.x2),
                Box2::new(Interval::new(m, self.x1.hi), self.x2),
            )
        } else {
            let m = self.x2.midpoint();
            (
                Box2::new(self.x1, Interval::new(self.x2.lo, m)),
                Box2::new(self.x1, Interval::new(m, self.x2.hi)),
            )
        }
    }

    /// Closure of `self ∖ inner` as at most four boxes with disjoint
    /// interiors, for `inner ⊆ self`. Degenerate pieces are dropped.
    pub fn difference(&self, inner: &Box2) -> Vec<Box2> {
        if self.is_empty() {
            return Vec::new();
        }
        let inner = inner.intersect(self);
        if inner.is_empty() {
            return vec![*self];
        }
        let (a1, a2, b1, b2) = (self.x1, self.x2, inner.x1, inner.x2);
        let pieces = [
            Box2::new(Interval::new(a1.lo, b1.lo), a2),
            Box2::new(Interval::new(b1.hi, a1.hi), a2),
            Box2::new(b1, Interval::new(a2.lo, b2.lo)),
            Box2::new(b1, Interval::new(b2.hi, a2.hi)),
        ];
        pieces
            .into_iter()
            .filter(|b| !b.is_empty() && !b.x1.is_degenerate() && !b.x2.is_degenerate())
            .collect()
    }

    pub fn total_cmp(&self, other: &Box2) -> Ordering {
        self.x1.total_cmp(&other.x1).then(self.x2.total_cmp(&other.x2))
    }
}

impl fmt::Debug for Box2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Box2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "{} × {}", self.x1, self.x2)
        }
    }
}

impl FromStr for Box2 {
    type Err = Error;

    /// Four comma-separated numbers `x1lo,x1hi,x2lo,x2hi`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v = s.split(',').map(parse_f64).collect::<Result<Vec<_>, _>>()?;
        if v.len() != 4 {
            return Err(Error::Parse(format!("expected `x1lo,x1hi,x2lo,x2hi`, got `{s}`")));
        }
        if v[0] > v[1] || v[2] > v[3] {
            return Err(Error::Parse(format!("box with lo > hi: `{s}`")));
        }
        Ok(Box2::from_bounds(v[0], v[1], v[2], v[3]))
    }
}
