//! Localization from pseudo-distances (range differences) between pairs of
//! microphones.
//!
//! For foci `a`, `b` and `ℓ > 0`, the quadratic polynomial
//! `f_{a,b,ℓ}` below vanishes exactly on `|‖x − a‖ − ‖x − b‖| = ℓ`: squaring
//! loses the sign of the range difference, so both branches belong to the
//! curve. With `Δ = ‖x − a‖ − ‖x − b‖` one has
//! `f = −(Δ² − ℓ²)((‖x − a‖ + ‖x − b‖)² − ℓ²)`, and since the second factor
//! is positive whenever `ℓ < ‖a − b‖`,
//! `{f ≤ 0} = {|Δ| ≥ ℓ}`. The band `|Δ| ∈ [ℓ⁻, ℓ⁺]` is therefore
//! `{f_{ℓ⁻} ≤ 0} ∩ {f_{ℓ⁺} ≥ 0}`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::conic::ConicParams;
use crate::contractor::ContractorKind;
use crate::interval::{Box2, Interval};
use crate::separator::{complement, conic_area, intersect_all, intersect_sep, nothing, union_sep, whole, Sep};
use crate::Error;

fn dot(u: [f64; 2], v: [f64; 2]) -> f64 {
    u[0] * v[0] + u[1] * v[1]
}

pub fn distance(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// `‖x − a‖ − ‖x − b‖`.
pub fn range_difference(x: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    distance(x, a) - distance(x, b)
}

/// Coefficients of `f_{a,b,ℓ}`, written with `D = b − a`, `S = a + b`,
/// `k = |a|² − |b|²` and `m = |a|² + |b|²` so that large coordinates do not
/// cancel.
pub fn foci_coeffs(a: [f64; 2], b: [f64; 2], ell: f64) -> ConicParams {
    let d = [b[0] - a[0], b[1] - a[1]];
    let s = [a[0] + b[0], a[1] + b[1]];
    let k = -dot(d, s);
    let m = dot(a, a) + dot(b, b);
    let l2 = ell * ell;
    ConicParams::new([
        -k * k + 2.0 * l2 * m - l2 * l2,
        -4.0 * k * d[0] - 4.0 * l2 * s[0],
        -4.0 * k * d[1] - 4.0 * l2 * s[1],
        4.0 * l2 - 4.0 * d[0] * d[0],
        -8.0 * d[0] * d[1],
        4.0 * l2 - 4.0 * d[1] * d[1],
    ])
}

/// The same coefficients as [`foci_coeffs`], developed monomial by monomial.
pub fn foci_coeffs_expanded(a: [f64; 2], b: [f64; 2], ell: f64) -> ConicParams {
    let [a1, a2] = a;
    let [b1, b2] = b;
    let l = ell;
    let p2 = |v: f64| v * v;
    let p3 = |v: f64| v * v * v;
    let p4 = |v: f64| p2(v) * p2(v);
    let q0 = -p4(a1) - 2.0 * p2(a1) * p2(a2) + 2.0 * p2(a1) * p2(b1) + 2.0 * p2(a1) * p2(b2) + 2.0 * p2(a1) * p2(l)
        - p4(a2)
        + 2.0 * p2(a2) * p2(b1)
        + 2.0 * p2(a2) * p2(b2)
        + 2.0 * p2(a2) * p2(l)
        - p4(b1)
        - 2.0 * p2(b1) * p2(b2)
        + 2.0 * p2(b1) * p2(l)
        - p4(b2)
        + 2.0 * p2(b2) * p2(l)
        - p4(l);
    let q1 = 4.0 * p3(a1) - 4.0 * p2(a1) * b1 + 4.0 * a1 * p2(a2) - 4.0 * a1 * p2(b1) - 4.0 * a1 * p2(b2)
        - 4.0 * a1 * p2(l)
        - 4.0 * p2(a2) * b1
        + 4.0 * p3(b1)
        + 4.0 * b1 * p2(b2)
        - 4.0 * b1 * p2(l);
    let q2 = 4.0 * p2(a1) * a2 - 4.0 * p2(a1) * b2 + 4.0 * p3(a2) - 4.0 * p2(a2) * b2 - 4.0 * a2 * p2(b1)
        - 4.0 * a2 * p2(b2)
        - 4.0 * a2 * p2(l)
        + 4.0 * p2(b1) * b2
        + 4.0 * p3(b2)
        - 4.0 * b2 * p2(l);
    let q3 = -4.0 * p2(a1) + 8.0 * a1 * b1 - 4.0 * p2(b1) + 4.0 * p2(l);
    let q4 = -8.0 * a1 * a2 + 8.0 * a1 * b2 + 8.0 * a2 * b1 - 8.0 * b1 * b2;
    let q5 = -4.0 * p2(a2) + 8.0 * a2 * b2 - 4.0 * p2(b2) + 4.0 * p2(l);
    ConicParams::new([q0, q1, q2, q3, q4, q5])
}

/// Range of `|Δ|` when `Δ` ranges over `ell`.
pub fn magnitude_range(ell: Interval) -> Interval {
    if ell.is_empty() {
        Interval::EMPTY
    } else if ell.lo() >= 0.0 {
        ell
    } else if ell.hi() <= 0.0 {
        -ell
    } else {
        Interval::new(0.0, ell.mag())
    }
}

/// Separator for `{x : |‖x − a‖ − ‖x − b‖| ∈ |ell|}`, where `|ell|` is
/// [`magnitude_range`] of `ell`.
///
/// `|Δ| ≤ ‖a − b‖` holds everywhere, so a band starting beyond `‖a − b‖` is
/// empty and a band reaching it has no upper constraint.
pub fn band_separator(a: [f64; 2], b: [f64; 2], ell: Interval, kind: ContractorKind) -> Result<Sep, Error> {
    if ell.is_empty() {
        return Err(Error::DegenerateBand("empty pseudo-distance range".into()));
    }
    let d = distance(a, b);
    let m = magnitude_range(ell);
    if m.lo() > d {
        return Ok(nothing());
    }
    if m.lo() == d && d > 0.0 {
        return Err(Error::DegenerateBand(format!(
            "pseudo-distance {} equals the distance between the foci",
            m.lo()
        )));
    }
    if m.hi() == 0.0 && d > 0.0 {
        return Err(Error::DegenerateBand("zero pseudo-distance: the locus is a line".into()));
    }
    let lower = if m.lo() <= 0.0 { whole() } else { conic_area(&foci_coeffs(a, b, m.lo()), kind)? };
    let upper = if m.hi() >= d {
        whole()
    } else {
        complement(conic_area(&foci_coeffs(a, b, m.hi()), kind)?)
    };
    Ok(intersect_sep(lower, upper))
}

/// Separator for the half-plane `{‖x − a‖ ≥ ‖x − b‖}`.
pub fn closer_to_b(a: [f64; 2], b: [f64; 2]) -> Sep {
    if a == b {
        return whole();
    }
    let q = ConicParams::new([
        dot(b, b) - dot(a, a),
        2.0 * (a[0] - b[0]),
        2.0 * (a[1] - b[1]),
        0.0,
        0.0,
        0.0,
    ]);
    conic_area(&q, ContractorKind::FwdBwd).expect("a half-plane separator always exists")
}

/// Separator for `{x : ‖x − a‖ − ‖x − b‖ ∈ ell}`, keeping the sign.
pub fn signed_band_separator(a: [f64; 2], b: [f64; 2], ell: Interval, kind: ContractorKind) -> Result<Sep, Error> {
    if ell.is_empty() {
        return Err(Error::DegenerateBand("empty pseudo-distance range".into()));
    }
    let pos = closer_to_b(a, b);
    let neg = if a == b { whole() } else { complement(pos.clone()) };
    if ell.lo() >= 0.0 {
        Ok(intersect_sep(pos, band_separator(a, b, ell, kind)?))
    } else if ell.hi() <= 0.0 {
        Ok(intersect_sep(neg, band_separator(a, b, ell, kind)?))
    } else {
        let up = intersect_sep(pos, band_separator(a, b, Interval::new(0.0, ell.hi()), kind)?);
        let down = intersect_sep(neg, band_separator(a, b, Interval::new(0.0, -ell.lo()), kind)?);
        Ok(union_sep(up, down))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub pair: [String; 2],
    pub ell: [f64; 2],
}

/// Microphone positions, pseudo-distance bands, a frame and an accuracy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub microphones: BTreeMap<String, [f64; 2]>,
    pub bands: Vec<Band>,
    pub frame: [f64; 4],
    pub eps: f64,
    /// Keep the sign of the range differences instead of their magnitude.
    #[serde(default)]
    pub signed: bool,
}

impl Scenario {
    /// Three microphones at `(13,7)`, `(4,6)`, `(16,10)` with
    /// `ℓab ∈ [7.9, 8.1]`, `ℓac ∈ [3.9, 4.1]` over `[0,20]²` at `ε = 0.05`.
    pub fn example() -> Scenario {
        let mics = [("a", [13.0, 7.0]), ("b", [4.0, 6.0]), ("c", [16.0, 10.0])];
        Scenario {
            microphones: mics.iter().map(|(n, p)| (n.to_string(), *p)).collect(),
            bands: vec![
                Band { pair: ["a".into(), "b".into()], ell: [7.9, 8.1] },
                Band { pair: ["a".into(), "c".into()], ell: [3.9, 4.1] },
            ],
            frame: [0.0, 20.0, 0.0, 20.0],
            eps: 0.05,
            signed: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Scenario, Error> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| Error::Scenario(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn load(path: &Path) -> Result<Scenario, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Scenario::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), Error> {
        for (name, p) in &self.microphones {
            if !p.iter().all(|v| v.is_finite()) {
                return Err(Error::Scenario(format!("microphone `{name}` has a non-finite coordinate")));
            }
        }
        for band in &self.bands {
            for name in &band.pair {
                if !self.microphones.contains_key(name) {
                    return Err(Error::Scenario(format!("band refers to unknown microphone `{name}`")));
                }
            }
            let [lo, hi] = band.ell;
            if lo.is_nan() || hi.is_nan() || lo > hi {
                return Err(Error::Scenario(format!("band {} has an empty range [{lo}, {hi}]", self.label(band))));
            }
        }
        let frame = self.frame_box();
        if frame.is_empty() || !frame.is_bounded() {
            return Err(Error::InvalidFrame(format!("{:?}", self.frame)));
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::InvalidAccuracy(self.eps));
        }
        Ok(())
    }

    pub fn frame_box(&self) -> Box2 {
        let [a, b, c, d] = self.frame;
        Box2::from_bounds(a, b, c, d)
    }

    /// `"ab"` for single-letter names, `"a-b"` otherwise.
    pub fn label(&self, band: &Band) -> String {
        let [p, q] = &band.pair;
        if p.chars().count() == 1 && q.chars().count() == 1 {
            format!("{p}{q}")
        } else {
            format!("{p}-{q}")
        }
    }

    fn foci(&self, band: &Band) -> ([f64; 2], [f64; 2]) {
        (self.microphones[&band.pair[0]], self.microphones[&band.pair[1]])
    }

    /// Whether `x` satisfies every band, by direct evaluation of the range
    /// differences. `margin > 0` shrinks the bands, `margin < 0` widens them.
    pub fn satisfies(&self, x: [f64; 2], margin: f64) -> bool {
        self.bands.iter().all(|band| {
            let (a, b) = self.foci(band);
            let ell = Interval::new(band.ell[0], band.ell[1]);
            let (v, r) = if self.signed {
                (range_difference(x, a, b), ell)
            } else {
                (range_difference(x, a, b).abs(), magnitude_range(ell))
            };
            v >= r.lo() + margin && v <= r.hi() - margin
        })
    }

    /// One separator per band, labelled with the pair of microphones.
    pub fn band_separators(&self, kind: ContractorKind) -> Result<Vec<(String, Sep)>, Error> {
        self.bands
            .iter()
            .map(|band| {
                let (a, b) = self.foci(band);
                let ell = Interval::new(band.ell[0], band.ell[1]);
                let sep = if self.signed {
                    signed_band_separator(a, b, ell, kind)?
                } else {
                    band_separator(a, b, ell, kind)?
                };
                Ok((self.label(band), sep))
            })
            .collect()
    }

    /// Separator for the intersection of all bands.
    pub fn localization_set(&self, kind: ContractorKind) -> Result<Sep, Error> {
        let seps = self.band_separators(kind)?.into_iter().map(|(_, s)| s).collect();
        Ok(intersect_all(seps))
    }
}
