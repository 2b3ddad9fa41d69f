//! Separators: pairs of contractions that peel off the parts of a box proven
//! inside or proven outside a closed set `X`.

use std::sync::Arc;

use crate::conic::ConicParams;
use crate::contractor::{minimal_hyperbola, ContractorKind, Ctc, ForwardBackward};
use crate::interval::{Box2, Interval};
use crate::Error;

/// Result of separating a box `[x]` against `X`.
///
/// `[x] ∖ x_out` is proven outside `X` and `[x] ∖ x_in` is proven inside.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Separation {
    /// What remains after removing points proven inside `X`.
    pub x_in: Box2,
    /// What remains after removing points proven outside `X`.
    pub x_out: Box2,
}

impl Separation {
    pub fn swap(self) -> Separation {
        Separation { x_in: self.x_out, x_out: self.x_in }
    }
}

pub trait Separator: Send + Sync {
    fn separate(&self, x: &Box2) -> Separation;
}

pub type Sep = Arc<dyn Separator>;

/// Sign of `f` at a point, decided by interval evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Outside,
    Unknown,
}

/// `Inside` when `f(q, p) ≤ 0` is certain, `Outside` when `f(q, p) > 0` is.
pub fn membership(q: &ConicParams, p: [f64; 2]) -> Membership {
    classify(q.eval_box(&Box2::point(p)))
}

fn classify(v: Interval) -> Membership {
    if v.is_empty() {
        Membership::Unknown
    } else if v.hi() <= 0.0 {
        Membership::Inside
    } else if v.lo() > 0.0 {
        Membership::Outside
    } else {
        Membership::Unknown
    }
}

/// Separator for `{f(q, x) ≤ 0}` built from a contractor for the curve
/// `f(q, x) = 0` and a pointwise test.
///
/// The part of `[x]` cut off by the boundary contractor is a union of at
/// most four slabs free of the curve, so the sign of `f` at one interior
/// point of a slab decides the whole slab.
pub struct FromBoundary {
    boundary: Ctc,
    q: ConicParams,
}

impl Separator for FromBoundary {
    fn separate(&self, x: &Box2) -> Separation {
        if x.is_empty() {
            return Separation { x_in: Box2::EMPTY, x_out: Box2::EMPTY };
        }
        let y = self.boundary.contract(x).intersect(x);
        let (mut x_in, mut x_out) = (y, y);
        for slab in x.difference(&y) {
            match membership(&self.q, slab.midpoint()) {
                Membership::Inside => x_out = x_out.hull(&slab),
                Membership::Outside => x_in = x_in.hull(&slab),
                Membership::Unknown => {
                    x_out = x_out.hull(&slab);
                    x_in = x_in.hull(&slab);
                }
            }
        }
        Separation { x_in, x_out }
    }
}

pub fn from_boundary(boundary: Ctc, q: &ConicParams) -> Sep {
    Arc::new(FromBoundary { boundary, q: *q })
}

/// Separator for `{f(q, x) ≤ 0}` from two forward-backward sweeps, one per
/// side of the curve.
pub struct SepFwdBwd {
    inner: ForwardBackward,
    outer: ForwardBackward,
}

impl SepFwdBwd {
    pub fn new(q: &ConicParams) -> Self {
        SepFwdBwd {
            inner: ForwardBackward::new(q, Interval::POSITIVE),
            outer: ForwardBackward::new(q, Interval::NEGATIVE),
        }
    }
}

impl Separator for SepFwdBwd {
    fn separate(&self, x: &Box2) -> Separation {
        use crate::contractor::Contractor;
        Separation { x_in: self.inner.contract(x), x_out: self.outer.contract(x) }
    }
}

struct Complement(Sep);

impl Separator for Complement {
    fn separate(&self, x: &Box2) -> Separation {
        self.0.separate(x).swap()
    }
}

pub fn complement(s: Sep) -> Sep {
    Arc::new(Complement(s))
}

struct Inter(Vec<Sep>);

impl Separator for Inter {
    fn separate(&self, x: &Box2) -> Separation {
        let mut acc = Separation { x_in: Box2::EMPTY, x_out: *x };
        for s in &self.0 {
            let r = s.separate(x);
            acc.x_in = acc.x_in.hull(&r.x_in);
            acc.x_out = acc.x_out.intersect(&r.x_out);
        }
        acc
    }
}

struct Union(Vec<Sep>);

impl Separator for Union {
    fn separate(&self, x: &Box2) -> Separation {
        let mut acc = Separation { x_in: *x, x_out: Box2::EMPTY };
        for s in &self.0 {
            let r = s.separate(x);
            acc.x_in = acc.x_in.intersect(&r.x_in);
            acc.x_out = acc.x_out.hull(&r.x_out);
        }
        acc
    }
}

/// Separator for `X1 ∩ X2`.
pub fn intersect_sep(a: Sep, b: Sep) -> Sep {
    intersect_all(vec![a, b])
}

/// Separator for the intersection of all sets; the whole plane when empty.
pub fn intersect_all(seps: Vec<Sep>) -> Sep {
    Arc::new(Inter(seps))
}

/// Separator for `X1 ∪ X2`.
pub fn union_sep(a: Sep, b: Sep) -> Sep {
    Arc::new(Union(vec![a, b]))
}

struct Whole;

impl Separator for Whole {
    fn separate(&self, x: &Box2) -> Separation {
        Separation { x_in: Box2::EMPTY, x_out: *x }
    }
}

/// Separator for the whole plane: every box is inside.
pub fn whole() -> Sep {
    Arc::new(Whole)
}

/// Separator for the empty set: every box is outside.
pub fn nothing() -> Sep {
    complement(whole())
}

/// Separator for the area `{f(q, x) ≤ 0}`.
///
/// With [`ContractorKind::Minimal`] the boundary contractor is the minimal
/// hyperbola contractor, which needs a hyperbola with `q3`, `q5` away from
/// zero. A linear `f` (a half-plane) gets the forward-backward separator,
/// which is already minimal for it.
pub fn conic_area(q: &ConicParams, kind: ContractorKind) -> Result<Sep, Error> {
    let [_, _, _, q3, q4, q5] = q.coeffs();
    let linear = q3 == 0.0 && q4 == 0.0 && q5 == 0.0;
    match kind {
        ContractorKind::FwdBwd => Ok(Arc::new(SepFwdBwd::new(q))),
        ContractorKind::Minimal if linear => Ok(Arc::new(SepFwdBwd::new(q))),
        ContractorKind::Minimal => Ok(from_boundary(minimal_hyperbola(q)?, q)),
    }
}
