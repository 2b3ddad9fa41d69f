//! Contractors on boxes of the plane.
//!
//! The seed contractor encloses the graph of `x1 = φ1(x2)`. Conjugating it by
//! the swap and the sign changes of the coordinates covers the four portions
//! of the hyperbola, and the hull of the four portion contractors is the
//! minimal contractor of the whole curve. The forward-backward contractor is
//! the classical baseline.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::conic::ConicParams;
use crate::interval::{Box2, Interval};
use crate::symmetry::{swap_params, SymB2};
use crate::Error;

pub trait Contractor: Send + Sync {
    /// Returns a sub-box of `x` holding every point of the associated set
    /// that lies in `x`.
    fn contract(&self, x: &Box2) -> Box2;

    fn label(&self) -> String {
        "contractor".to_string()
    }
}

pub type Ctc = Arc<dyn Contractor>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ContractorKind {
    #[default]
    Minimal,
    FwdBwd,
}

impl fmt::Display for ContractorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ContractorKind::Minimal => "minimal",
            ContractorKind::FwdBwd => "fwdbwd",
        })
    }
}

impl FromStr for ContractorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "minimal" => Ok(ContractorKind::Minimal),
            "fwdbwd" => Ok(ContractorKind::FwdBwd),
            _ => Err(Error::Parse(format!("unknown contractor `{s}` (expected minimal or fwdbwd)"))),
        }
    }
}

fn pt(v: f64) -> Interval {
    Interval::point(v)
}

/// Enclosures of the two real roots of `a x² + b x + c`, lower root first,
/// for `a > 0`. `None` when the roots are certainly not real. When the
/// discriminant may vanish the two enclosures overlap around `-b / 2a`.
fn root_enclosures(a: Interval, b: Interval, c: Interval) -> Option<(Interval, Interval)> {
    debug_assert!(a.lo() > 0.0);
    let disc = b.sqr() - pt(4.0) * a * c;
    if disc.hi() < 0.0 {
        return None;
    }
    let s = disc.sqrt();
    let two_a = pt(2.0) * a;
    let mut lo = (-b - s) / two_a;
    let mut hi = (-b + s) / two_a;
    if disc.lo() > 0.0 {
        // the same roots written as 2c / (-b ± s), which does not cancel
        let two_c = pt(2.0) * c;
        let den_lo = -b + s;
        if !den_lo.contains(0.0) {
            lo = lo.intersect(&(two_c / den_lo));
        }
        let den_hi = -b - s;
        if !den_hi.contains(0.0) {
            hi = hi.intersect(&(two_c / den_hi));
        }
    }
    Some((lo, hi))
}

/// The seed contractor `C0^q` for the graph of `x1 = φ1(x2)`:
/// `[x1] ∩ φ1([x2])` on the first coordinate, `[x2]` unchanged.
///
/// The image of a range of ordinates is computed per feasible component of
/// that range from the values of `φ1` at the component ends, at the roots of
/// `Δ1` and at the ordinates where the curve has a vertical tangent. Each
/// value is an interval evaluation at a thin (or tightly enclosed) argument,
/// so the result is rigorous and tight up to rounding.
#[derive(Clone, Debug)]
pub struct Seed {
    q: ConicParams,
    qi: [Interval; 6],
    /// `Δ1(x2) = A x2² + B x2 + C` with interval coefficients.
    delta: [Interval; 3],
    /// Enclosures of the roots of `Δ1`; `None` inside means no real root.
    /// The outer `None` means the root structure could not be certified.
    gap: Option<Option<(Interval, Interval)>>,
    /// Enclosures of the ordinates with a vertical tangent, or `None` when
    /// they could not be certified.
    critical: Option<Vec<Interval>>,
}

impl Seed {
    pub fn new(q: &ConicParams) -> Result<Seed, Error> {
        q.require_hyperbola()?;
        q.require_q3("q3")?;
        let qi = q.coeffs().map(pt);
        let [q0, q1, q2, q3, q4, q5] = qi;
        let four = pt(4.0);
        let a = q4.sqr() - four * q3 * q5;
        let delta = [a, pt(2.0) * q1 * q4 - four * q3 * q2, q1.sqr() - four * q3 * q0];
        let certified = a.lo() > 0.0;
        let gap = certified.then(|| root_enclosures(delta[0], delta[1], delta[2]));
        let critical = if q.coeffs()[5] == 0.0 {
            // the tangent is never vertical on a nondegenerate curve
            Some(Vec::new())
        } else if certified {
            let b2 = pt(2.0) * q2 * q4 - four * q5 * q1;
            let c2 = q2.sqr() - four * q5 * q0;
            let ys = root_enclosures(a, b2, c2)
                .map(|(x_lo, x_hi)| {
                    [x_lo, x_hi].map(|x| -(q2 + q4 * x) / (pt(2.0) * q5)).to_vec()
                })
                .unwrap_or_default();
            Some(ys)
        } else {
            None
        };
        Ok(Seed { q: *q, qi, delta, gap, critical })
    }

    pub fn params(&self) -> ConicParams {
        self.q
    }

    /// Interval extension of `φ1` over `x2`, clipped to where `Δ1 ≥ 0`.
    fn phi1_at(&self, x2: Interval) -> Interval {
        let [q0, q1, q2, q3, q4, q5] = self.qi;
        let [a, b, c] = self.delta;
        let b1 = q1 + q4 * x2;
        let c1 = q0 + q2 * x2 + q5 * x2.sqr();
        let disc = (b1.sqr() - pt(4.0) * q3 * c1).intersect(&(a * x2.sqr() + b * x2 + c));
        let r = disc.sqrt();
        if r.is_empty() {
            return Interval::EMPTY;
        }
        let sr = if self.q.coeffs()[3] > 0.0 { r } else { -r };
        let mut v = (-b1 + sr) / (pt(2.0) * q3);
        let den = -b1 - sr;
        if !den.contains(0.0) {
            v = v.intersect(&((pt(2.0) * c1) / den));
        }
        v
    }

    /// Pieces of `x2` that cover its feasible ordinates, each with the
    /// candidate ordinates where `φ1` can reach an extremum on it (`None`
    /// when those are not known).
    fn components(&self, x2: Interval) -> Vec<(Interval, Option<Vec<Interval>>)> {
        let Some(gap) = self.gap else {
            return vec![(x2, None)];
        };
        let (pieces, roots) = match gap {
            None => (vec![x2], Vec::new()),
            Some((r_lo, r_hi)) => (
                vec![
                    x2.intersect(&Interval::new(f64::NEG_INFINITY, r_lo.hi())),
                    x2.intersect(&Interval::new(r_hi.lo(), f64::INFINITY)),
                ],
                vec![r_lo, r_hi],
            ),
        };
        pieces
            .into_iter()
            .filter(|k| !k.is_empty())
            .map(|k| {
                let cands = self.critical.as_ref().filter(|_| k.is_bounded()).map(|crit| {
                    let mut c = vec![pt(k.lo()), pt(k.hi())];
                    c.extend(roots.iter().chain(crit).map(|r| r.intersect(&k)).filter(|r| !r.is_empty()));
                    c
                });
                (k, cands)
            })
            .collect()
    }

    fn image(&self, k: Interval, cands: &Option<Vec<Interval>>) -> Interval {
        match cands {
            Some(c) => c.iter().fold(Interval::EMPTY, |h, &t| h.hull(&self.phi1_at(t))),
            None => self.phi1_at(k),
        }
    }

    /// Enclosure of `φ1(x2)` over the feasible ordinates of `x2`.
    pub fn extension(&self, x2: Interval) -> Interval {
        self.components(x2)
            .iter()
            .fold(Interval::EMPTY, |h, (k, c)| h.hull(&self.image(*k, c)))
    }
}

impl Contractor for Seed {
    fn contract(&self, x: &Box2) -> Box2 {
        if x.is_empty() {
            return Box2::EMPTY;
        }
        let x1 = self
            .components(x.x2())
            .iter()
            .fold(Interval::EMPTY, |h, (k, c)| h.hull(&self.image(*k, c).intersect(&x.x1())));
        Box2::new(x1, x.x2())
    }

    fn label(&self) -> String {
        format!("seed[{}]", self.q)
    }
}

/// Smallest interval holding `φ1(x2)` for the feasible ordinates in `x2`,
/// with outward rounding.
pub fn phi1_extension(q: &ConicParams, x2: Interval) -> Result<Interval, Error> {
    Ok(Seed::new(q)?.extension(x2))
}

pub fn seed(q: &ConicParams) -> Result<Ctc, Error> {
    Ok(Arc::new(Seed::new(q)?))
}

struct Act {
    sigma: SymB2,
    inner: Ctc,
}

impl Contractor for Act {
    fn contract(&self, x: &Box2) -> Box2 {
        let y = self.inner.contract(&self.sigma.inverse().apply_box(x));
        self.sigma.apply_box(&y)
    }

    fn label(&self) -> String {
        format!("{}•{}", self.sigma, self.inner.label())
    }
}

/// `σ • C`: the contractor `x ↦ σ(C(σ⁻¹(x)))`.
pub fn act(sigma: SymB2, c: Ctc) -> Ctc {
    Arc::new(Act { sigma, inner: c })
}

struct Inter(Vec<Ctc>);

impl Contractor for Inter {
    fn contract(&self, x: &Box2) -> Box2 {
        self.0.iter().fold(*x, |acc, c| acc.intersect(&c.contract(x)))
    }

    fn label(&self) -> String {
        let parts: Vec<_> = self.0.iter().map(|c| c.label()).collect();
        format!("({})", parts.join(" ∩ "))
    }
}

struct Union(Vec<Ctc>);

impl Contractor for Union {
    fn contract(&self, x: &Box2) -> Box2 {
        self.0.iter().fold(Box2::EMPTY, |acc, c| acc.hull(&c.contract(x)))
    }

    fn label(&self) -> String {
        let parts: Vec<_> = self.0.iter().map(|c| c.label()).collect();
        format!("({})", parts.join(" ∪ "))
    }
}

pub fn intersect_ctc(a: Ctc, b: Ctc) -> Ctc {
    Arc::new(Inter(vec![a, b]))
}

/// Hull of the results of all contractors; the empty list contracts every
/// box to the empty box.
pub fn union_ctc(cs: Vec<Ctc>) -> Ctc {
    Arc::new(Union(cs))
}

struct Identity;

impl Contractor for Identity {
    fn contract(&self, x: &Box2) -> Box2 {
        *x
    }

    fn label(&self) -> String {
        "identity".to_string()
    }
}

pub fn identity() -> Ctc {
    Arc::new(Identity)
}

/// The four sign changes that, conjugated with the seed and its swap, reach
/// the four portions of the curve.
const PORTIONS: [(i8, i8); 4] = [(1, 2), (1, -2), (-1, 2), (-1, -2)];

/// Minimal contractor for the curve `f(q, x) = 0` of a hyperbola.
///
/// Both `q3` and `q5` must be away from zero, since the seed is used in both
/// orientations.
pub fn minimal_hyperbola(q: &ConicParams) -> Result<Ctc, Error> {
    q.require_hyperbola()?;
    q.require_q3("q3")?;
    swap_params(q).require_q3("q5")?;
    let swap = SymB2::SWAP;
    let mut parts = Vec::with_capacity(4);
    for (c1, c2) in PORTIONS {
        let sigma = SymB2::new(c1, c2)?;
        let p = sigma.psi(q);
        let east = seed(&p)?;
        let north = act(swap, seed(&swap.psi(&p))?);
        parts.push(act(sigma, intersect_ctc(north, east)));
    }
    Ok(union_ctc(parts))
}

/// One forward-backward sweep for `f(q, x) ∈ y` over the expression
/// `q0 + q1 x1 + q2 x2 + q3 x1² + q4 x1 x2 + q5 x2²`.
#[derive(Clone, Debug)]
pub struct ForwardBackward {
    q: ConicParams,
    y: Interval,
}

impl ForwardBackward {
    pub fn new(q: &ConicParams, y: Interval) -> Self {
        ForwardBackward { q: *q, y }
    }
}

impl Contractor for ForwardBackward {
    fn contract(&self, x: &Box2) -> Box2 {
        if x.is_empty() {
            return Box2::EMPTY;
        }
        let q = self.q.coeffs();
        let qi = q.map(pt);
        let (mut x1, mut x2) = (x.x1(), x.x2());
        let mut s1 = x1.sqr();
        let mut s2 = x2.sqr();
        let mut p = x1 * x2;
        // terms t1..t5 and the partial sums of the left-leaning addition chain
        let mut t = [
            qi[0],
            qi[1] * x1,
            qi[2] * x2,
            qi[3] * s1,
            qi[4] * p,
            qi[5] * s2,
        ];
        let mut partial = [Interval::EMPTY; 6];
        partial[0] = t[0];
        for k in 1..6 {
            partial[k] = partial[k - 1] + t[k];
        }
        partial[5] = partial[5].intersect(&self.y);
        if partial[5].is_empty() {
            return Box2::EMPTY;
        }
        for k in (1..6).rev() {
            t[k] = t[k].intersect(&(partial[k] - partial[k - 1]));
            partial[k - 1] = partial[k - 1].intersect(&(partial[k] - t[k]));
            if t[k].is_empty() || partial[k - 1].is_empty() {
                return Box2::EMPTY;
            }
        }
        if q[5] != 0.0 {
            s2 = t[5].mul_rev(&qi[5], &s2);
            x2 = s2.sqr_rev(&x2);
        }
        if q[4] != 0.0 {
            p = t[4].mul_rev(&qi[4], &p);
            x1 = p.mul_rev(&x2, &x1);
            x2 = p.mul_rev(&x1, &x2);
        }
        if q[3] != 0.0 {
            s1 = t[3].mul_rev(&qi[3], &s1);
            x1 = s1.sqr_rev(&x1);
        }
        if q[2] != 0.0 {
            x2 = t[2].mul_rev(&qi[2], &x2);
        }
        if q[1] != 0.0 {
            x1 = t[1].mul_rev(&qi[1], &x1);
        }
        Box2::new(x1, x2)
    }

    fn label(&self) -> String {
        format!("fwdbwd[{} ∈ {}]", self.q, self.y)
    }
}

/// Forward-backward contractor for the curve `f(q, x) = 0`.
pub fn forward_backward(q: &ConicParams) -> Ctc {
    Arc::new(ForwardBackward::new(q, Interval::ZERO))
}

/// One forward-backward sweep for `‖x − a‖ − ‖x − b‖ ∈ y`, written with the
/// distances to the foci instead of the polynomial.
#[derive(Clone, Debug)]
pub struct FociFwdBwd {
    a: [f64; 2],
    b: [f64; 2],
    y: Interval,
}

impl FociFwdBwd {
    pub fn new(a: [f64; 2], b: [f64; 2], y: Interval) -> Self {
        FociFwdBwd { a, b, y }
    }
}

/// Backward step for `d = sqrt(u1² + u2²)` with `u = x - c`.
fn dist_rev(d: Interval, x1: Interval, x2: Interval, c: [f64; 2]) -> (Interval, Interval) {
    let u1 = x1 - c[0];
    let u2 = x2 - c[1];
    let (v1, v2) = (u1.sqr(), u2.sqr());
    let s = d.intersect(&Interval::POSITIVE).sqr().intersect(&(v1 + v2));
    let v1 = v1.intersect(&(s - v2));
    let v2 = v2.intersect(&(s - v1));
    let u1 = v1.sqr_rev(&u1);
    let u2 = v2.sqr_rev(&u2);
    (x1.intersect(&(u1 + c[0])), x2.intersect(&(u2 + c[1])))
}

impl Contractor for FociFwdBwd {
    fn contract(&self, x: &Box2) -> Box2 {
        if x.is_empty() {
            return Box2::EMPTY;
        }
        let dist = |c: [f64; 2]| ((x.x1() - c[0]).sqr() + (x.x2() - c[1]).sqr()).sqrt();
        let (da, db) = (dist(self.a), dist(self.b));
        let d = (da - db).intersect(&self.y);
        if d.is_empty() {
            return Box2::EMPTY;
        }
        let da = da.intersect(&(d + db));
        let db = db.intersect(&(da - d));
        let (x1, x2) = dist_rev(da, x.x1(), x.x2(), self.a);
        let (x1, x2) = dist_rev(db, x1, x2, self.b);
        Box2::new(x1, x2)
    }

    fn label(&self) -> String {
        format!("fwdbwd[‖x-{:?}‖-‖x-{:?}‖ ∈ {}]", self.a, self.b, self.y)
    }
}
