//! Directed rounding of the four basic operations and the square root.
//!
//! Each `*_down` / `*_up` function returns the largest (resp. smallest) `f64`
//! that is `<=` (resp. `>=`) the exact real result. The rounding error of the
//! round-to-nearest result is recovered exactly with an error-free
//! transformation (TwoSum, or an FMA residual), and the result is moved one
//! ULP only when the error has the wrong sign. Near the underflow range the
//! residual is no longer exact, and the result is nudged unconditionally.
//!
//! Infinite operands follow the usual interval conventions: `0 * inf = 0` and
//! `finite / inf = 0`. Callers never pass `inf - inf` or `inf / inf`.

/// Below this magnitude an FMA residual may be inexact.
const TINY: f64 = 1.0e-290;

fn overflow_down(r: f64) -> f64 {
    if r > 0.0 {
        f64::MAX
    } else {
        f64::NEG_INFINITY
    }
}

fn overflow_up(r: f64) -> f64 {
    if r < 0.0 {
        -f64::MAX
    } else {
        f64::INFINITY
    }
}

#[inline]
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

pub fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s.is_infinite() {
        return if a.is_finite() && b.is_finite() { overflow_down(s) } else { s };
    }
    if two_sum_err(a, b, s) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

pub fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s.is_infinite() {
        return if a.is_finite() && b.is_finite() { overflow_up(s) } else { s };
    }
    if two_sum_err(a, b, s) > 0.0 {
        s.next_up()
    } else {
        s
    }
}

pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

pub fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if p.is_infinite() {
        return if a.is_finite() && b.is_finite() { overflow_down(p) } else { p };
    }
    if p.abs() < TINY {
        return p.next_down();
    }
    if a.mul_add(b, -p) < 0.0 {
        p.next_down()
    } else {
        p
    }
}

pub fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if p.is_infinite() {
        return if a.is_finite() && b.is_finite() { overflow_up(p) } else { p };
    }
    if p.abs() < TINY {
        return p.next_up();
    }
    if a.mul_add(b, -p) > 0.0 {
        p.next_up()
    } else {
        p
    }
}

/// `b` must be nonzero.
pub fn div_down(a: f64, b: f64) -> f64 {
    debug_assert!(b != 0.0);
    if a == 0.0 || b.is_infinite() {
        return 0.0;
    }
    let q = a / b;
    if q.is_infinite() {
        return if a.is_finite() { overflow_down(q) } else { q };
    }
    if q.abs() < TINY || b.abs() < TINY {
        return q.next_down();
    }
    // a / b - q has the sign of (a - q b) / b
    let r = (-q).mul_add(b, a);
    if r != 0.0 && (r < 0.0) != (b < 0.0) {
        q.next_down()
    } else {
        q
    }
}

/// `b` must be nonzero.
pub fn div_up(a: f64, b: f64) -> f64 {
    debug_assert!(b != 0.0);
    if a == 0.0 || b.is_infinite() {
        return 0.0;
    }
    let q = a / b;
    if q.is_infinite() {
        return if a.is_finite() { overflow_up(q) } else { q };
    }
    if q.abs() < TINY || b.abs() < TINY {
        return q.next_up();
    }
    let r = (-q).mul_add(b, a);
    if r != 0.0 && (r > 0.0) == (b > 0.0) {
        q.next_up()
    } else {
        q
    }
}

/// `a` must be nonnegative.
pub fn sqrt_down(a: f64) -> f64 {
    let s = a.sqrt();
    if a == 0.0 || a.is_infinite() {
        return s;
    }
    if a < TINY {
        return s.next_down().max(0.0);
    }
    if (-s).mul_add(s, a) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

/// `a` must be nonnegative.
pub fn sqrt_up(a: f64) -> f64 {
    let s = a.sqrt();
    if a == 0.0 || a.is_infinite() {
        return s;
    }
    if a < TINY {
        return s.next_up();
    }
    if (-s).mul_add(s, a) > 0.0 {
        s.next_up()
    } else {
        s
    }
}
