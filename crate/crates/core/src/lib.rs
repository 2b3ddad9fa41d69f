//! Minimal contractors and separators for hyperbolic areas of the plane.
//!
//! The hyperbola `f(q, x) = q0 + q1 x1 + q2 x2 + q3 x1² + q4 x1 x2 + q5 x2² = 0`
//! is contracted by a single seed contractor (the largest `x1` on the curve
//! for a range of `x2`), transported to the rest of the curve by the action of
//! the signed permutations of the plane. Combined with a pointwise membership
//! test, the resulting boundary contractor gives a separator for the area
//! `{f(q, x) ≤ 0}`, which a set-inversion paver turns into inner and outer
//! approximations. The [`tdoa`] module applies this to localization from
//! pseudo-distance (time difference of arrival) measurements.

pub mod conic;
pub mod contractor;
mod error;
pub mod interval;
pub mod io;
pub mod paver;
mod round;
pub mod separator;
pub mod symmetry;
pub mod tdoa;

pub use conic::{CardinalPoints, ConicParams};
pub use contractor::{Contractor, ContractorKind, Ctc};
pub use error::Error;
pub use interval::{Box2, Interval};
pub use paver::{BoxClass, Paving, PavingMetrics};
pub use separator::{Separation, Separator, Sep};
pub use symmetry::SymB2;
