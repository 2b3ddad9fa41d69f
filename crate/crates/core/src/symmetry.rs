//! The hyperoctahedral group B2: the eight signed permutations of the plane.
//!
//! A symmetry is written in Cauchy one-line notation `(c1, c2)`: the image of
//! `x` has component `j` equal to `sign(c_j) · x_{|c_j|}`. So `(-1, 2)` maps
//! `(x1, x2)` to `(-x1, x2)` and `(-2, 1)` maps it to `(-x2, x1)`.
//!
//! The matrix form `M` has, in column `j`, the entry `sign(c_j)` in row
//! `|c_j|`, so that `(1 2) · M = (c1, c2)`. With this convention the point
//! map is `x ↦ Mᵀ x`.

use std::fmt;
use std::str::FromStr;

use crate::conic::ConicParams;
use crate::interval::{Box2, Interval};
use crate::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymB2 {
    c: [i8; 2],
}

const ELEMENTS: [SymB2; 8] = [
    SymB2 { c: [1, 2] },
    SymB2 { c: [-1, 2] },
    SymB2 { c: [2, 1] },
    SymB2 { c: [-1, -2] },
    SymB2 { c: [1, -2] },
    SymB2 { c: [-2, 1] },
    SymB2 { c: [2, -1] },
    SymB2 { c: [-2, -1] },
];

impl SymB2 {
    pub const IDENTITY: SymB2 = SymB2 { c: [1, 2] };
    /// Exchange of the two coordinates.
    pub const SWAP: SymB2 = SymB2 { c: [2, 1] };

    pub fn new(c1: i8, c2: i8) -> Result<Self, Error> {
        let ok = |c: i8| c != 0 && c.abs() <= 2;
        if ok(c1) && ok(c2) && c1.abs() != c2.abs() {
            Ok(SymB2 { c: [c1, c2] })
        } else {
            Err(Error::InvalidSymmetry(c1, c2))
        }
    }

    /// The eight elements, in the order `(1,2), (-1,2), (2,1), (-1,-2),
    /// (1,-2), (-2,1), (2,-1), (-2,-1)`.
    pub fn elements() -> [SymB2; 8] {
        ELEMENTS
    }

    pub fn cauchy(&self) -> (i8, i8) {
        (self.c[0], self.c[1])
    }

    /// Matrix form, `m[row][col]`.
    pub fn matrix(&self) -> [[i8; 2]; 2] {
        let mut m = [[0i8; 2]; 2];
        for (j, &c) in self.c.iter().enumerate() {
            m[(c.unsigned_abs() - 1) as usize][j] = c.signum();
        }
        m
    }

    /// Inverse of [`SymB2::matrix`]. Fails unless `m` is a signed permutation
    /// matrix.
    pub fn from_matrix(m: [[i8; 2]; 2]) -> Result<Self, Error> {
        let mut c = [0i8; 2];
        for (j, cj) in c.iter_mut().enumerate() {
            *cj = m[0][j] + 2 * m[1][j];
        }
        let s = SymB2::new(c[0], c[1])?;
        if s.matrix() == m {
            Ok(s)
        } else {
            Err(Error::InvalidSymmetry(c[0], c[1]))
        }
    }

    /// Source axis (0-based) and sign of image component `j`.
    #[inline]
    fn source(&self, j: usize) -> (usize, bool) {
        ((self.c[j].unsigned_abs() - 1) as usize, self.c[j] < 0)
    }

    pub fn apply_point(&self, x: [f64; 2]) -> [f64; 2] {
        let mut y = [0.0; 2];
        for (j, yj) in y.iter_mut().enumerate() {
            let (i, neg) = self.source(j);
            *yj = if neg { -x[i] } else { x[i] };
        }
        y
    }

    pub fn apply_box(&self, b: &Box2) -> Box2 {
        if b.is_empty() {
            return Box2::EMPTY;
        }
        let comp = |j: usize| -> Interval {
            let (i, neg) = self.source(j);
            let v = b.get(i);
            if neg {
                -v
            } else {
                v
            }
        };
        Box2::new(comp(0), comp(1))
    }

    pub fn inverse(&self) -> SymB2 {
        let mut c = [0i8; 2];
        for j in 0..2 {
            let (i, neg) = self.source(j);
            let t = (j + 1) as i8;
            c[i] = if neg { -t } else { t };
        }
        SymB2 { c }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &SymB2) -> SymB2 {
        let mut c = [0i8; 2];
        for (j, cj) in c.iter_mut().enumerate() {
            let (i, neg) = self.source(j);
            let inner = other.c[i];
            *cj = if neg { -inner } else { inner };
        }
        SymB2 { c }
    }

    /// The choice function: parameters `p` with `f(p, self⁻¹(x)) = f(q, x)`
    /// for every `x`, so the curve of `p` is the image of the curve of `q`
    /// under `self⁻¹`.
    ///
    /// Composition reverses order: `psi(σ∘τ, q) = psi(τ, psi(σ, q))`.
    pub fn psi(&self, q: &ConicParams) -> ConicParams {
        let a = self.inverse().matrix().map(|row| row.map(f64::from));
        // in B2 one of a11, a21 vanishes, so q3' carries no q4 cross term
        assert_eq!(a[0][0] * a[1][0], 0.0);
        assert_eq!(a[0][1] * a[1][1], 0.0);
        let q = q.coeffs();
        ConicParams::new([
            q[0],
            a[0][0] * q[1] + a[1][0] * q[2],
            a[0][1] * q[1] + a[1][1] * q[2],
            a[0][0] * a[0][0] * q[3] + a[1][0] * a[1][0] * q[5],
            (a[0][0] * a[1][1] + a[0][1] * a[1][0]) * q[4],
            a[0][1] * a[0][1] * q[3] + a[1][1] * a[1][1] * q[5],
        ])
    }
}

/// `(q0, q2, q1, q5, q4, q3)`: the parameters of the curve mirrored across
/// the diagonal. Equal to `SymB2::SWAP.psi(q)`.
pub fn swap_params(q: &ConicParams) -> ConicParams {
    let q = q.coeffs();
    ConicParams::new([q[0], q[2], q[1], q[5], q[4], q[3]])
}

impl Default for SymB2 {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl fmt::Debug for SymB2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SymB2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c[0], self.c[1])
    }
}

impl FromStr for SymB2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t);
        let parts: Vec<&str> = t.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("expected `(c1,c2)`, got `{s}`")));
        }
        let p = |v: &str| v.parse::<i8>().map_err(|_| Error::Parse(format!("bad index `{v}`")));
        SymB2::new(p(parts[0])?, p(parts[1])?)
    }
}
