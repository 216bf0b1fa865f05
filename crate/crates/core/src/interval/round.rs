//! Directed rounding on top of round-to-nearest hardware arithmetic.
//!
//! Every operation is performed in the default rounding mode and the exact
//! rounding error is recovered with an error-free transformation (TwoSum for
//! addition, Dekker's TwoProduct for multiplication). The endpoint is moved one
//! ulp outward only when the rounded result actually sits on the wrong side of
//! the exact value, so exact operations stay exact and no thread-local FPU
//! state is touched.

// Veltkamp splitting constant 2^27 + 1.
const SPLITTER: f64 = 134_217_729.0;
// Beyond these magnitudes the splitting may overflow or the error term may
// underflow; fall back to plain one-ulp widening there.
const SPLIT_MAX: f64 = 6.696928794914171e299; // 2^995
const PROD_MIN: f64 = 1.0443888814131525e-289; // 2^-960

#[inline]
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let c = SPLITTER * a;
    let hi = c - (c - a);
    (hi, a - hi)
}

/// Exact error `a*b - p` when it is recoverable, `None` otherwise.
#[inline]
fn two_prod_err(a: f64, b: f64, p: f64) -> Option<f64> {
    if !(a.abs() < SPLIT_MAX && b.abs() < SPLIT_MAX && p.abs() >= PROD_MIN) {
        return None;
    }
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    Some(al * bl - (((p - ah * bh) - al * bh) - ah * bl))
}

#[inline]
pub(crate) fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s.is_finite() {
        if two_sum_err(a, b, s) < 0.0 {
            s.next_down()
        } else {
            s
        }
    } else if s == f64::INFINITY && a.is_finite() && b.is_finite() {
        f64::MAX
    } else {
        s
    }
}

#[inline]
pub(crate) fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s.is_finite() {
        if two_sum_err(a, b, s) > 0.0 {
            s.next_up()
        } else {
            s
        }
    } else if s == f64::NEG_INFINITY && a.is_finite() && b.is_finite() {
        f64::MIN
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub(crate) fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

#[inline]
pub(crate) fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if !p.is_finite() {
        return if p == f64::INFINITY && a.is_finite() && b.is_finite() {
            f64::MAX
        } else {
            p
        };
    }
    match two_prod_err(a, b, p) {
        Some(e) if e >= 0.0 => p,
        _ => p.next_down(),
    }
}

#[inline]
pub(crate) fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if !p.is_finite() {
        return if p == f64::NEG_INFINITY && a.is_finite() && b.is_finite() {
            f64::MIN
        } else {
            p
        };
    }
    match two_prod_err(a, b, p) {
        Some(e) if e <= 0.0 => p,
        _ => p.next_up(),
    }
}

/// `Some(true)` when `q = a / b` is exact, `Some(false)` when it was rounded,
/// `None` when `q` overflowed from finite operands.
#[inline]
fn div_status(a: f64, b: f64, q: f64) -> Option<bool> {
    if q.is_infinite() {
        return if a.is_finite() { None } else { Some(true) };
    }
    if q == 0.0 {
        return Some(a == 0.0 || b.is_infinite());
    }
    let p = q * b;
    Some(p == a && two_prod_err(q, b, p) == Some(0.0))
}

#[inline]
pub(crate) fn div_down(a: f64, b: f64) -> f64 {
    let q = a / b;
    match div_status(a, b, q) {
        Some(true) => q,
        Some(false) => q.next_down(),
        None if q > 0.0 => f64::MAX,
        None => q,
    }
}

#[inline]
pub(crate) fn div_up(a: f64, b: f64) -> f64 {
    let q = a / b;
    match div_status(a, b, q) {
        Some(true) => q,
        Some(false) => q.next_up(),
        None if q < 0.0 => f64::MIN,
        None => q,
    }
}
