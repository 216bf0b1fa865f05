//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use covrel::dynamics::{MapSystem, QuadraticReversibleMap};
use covrel::hset::HSet;
use covrel::interval::Interval;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `true` iff the real number `p + e` (with `|e|` at most half an ulp of
/// `p`) lies in `iv`.
pub fn holds(iv: Interval, p: f64, e: f64) -> bool {
    let above_lo = iv.lo() < p || (iv.lo() == p && e >= 0.0);
    let below_hi = iv.hi() > p || (iv.hi() == p && e <= 0.0);
    above_lo && below_hi
}

pub fn exact_add(x: f64, y: f64) -> (f64, f64) {
    let s = x + y;
    let bb = s - x;
    (s, (x - (s - bb)) + (y - bb))
}

pub fn exact_mul(x: f64, y: f64) -> (f64, f64) {
    let p = x * y;
    (p, x.mul_add(y, -p))
}

/// Quotient plus a value with the sign of the exact remainder term.
pub fn exact_div(x: f64, y: f64) -> (f64, f64) {
    let q = x / y;
    let r = (-q).mul_add(y, x);
    (q, r * y.signum())
}

pub fn random_float(rng: &mut ChaCha8Rng) -> f64 {
    let m: f64 = rng.random_range(-1.0..1.0);
    let e: i32 = rng.random_range(-40..40);
    match rng.random_range(0..20) {
        0 => 0.0,
        1 => m.round(),
        _ => m * 2f64.powi(e),
    }
}

pub fn random_interval(rng: &mut ChaCha8Rng) -> Interval {
    let a = random_float(rng);
    let b = if rng.random_bool(0.2) { a } else { random_float(rng) };
    Interval::spanning(a, b)
}

pub fn sample(rng: &mut ChaCha8Rng, iv: Interval) -> f64 {
    match rng.random_range(0..6) {
        0 => iv.lo(),
        1 => iv.hi(),
        _ => {
            let t: f64 = rng.random();
            (iv.lo() + t * (iv.hi() - iv.lo())).clamp(iv.lo(), iv.hi())
        }
    }
}

pub fn dyadic(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(-1024i32..=1024) as f64 / 64.0
}

pub fn dyadic_interval(rng: &mut ChaCha8Rng) -> Interval {
    Interval::spanning(dyadic(rng), dyadic(rng))
}

/// A dyadic point of `iv` with few significant bits, so that sums of
/// products of such points are exact in floating point.
pub fn dyadic_point(rng: &mut ChaCha8Rng, iv: Interval) -> f64 {
    let (lo, hi) = ((iv.lo() * 64.0) as i32, (iv.hi() * 64.0) as i32);
    rng.random_range(lo..=hi) as f64 / 64.0
}

/// Winding number about 0 of `p ↦ π_u c_M(F^k(c_N⁻¹(p, 0)))` along the
/// boundary of the unit square, in floats.
pub fn winding_degree(n: &HSet, k: usize, m: &HSet) -> i32 {
    let f = QuadraticReversibleMap::new();
    let mn = n.matrix().mid();
    let inv = m.inverse_matrix().mid();
    let image = |p: [f64; 2]| {
        let mut x: Vec<f64> = (0..4).map(|i| n.center()[i] + mn[i][0] * p[0] + mn[i][1] * p[1]).collect();
        for _ in 0..k {
            x = f.eval_point(&x);
        }
        let d: Vec<f64> = (0..4).map(|i| x[i] - m.center()[i]).collect();
        let w = |r: usize| (0..4).map(|j| inv[r][j] * d[j]).sum::<f64>();
        (w(0), w(1))
    };
    let steps = 4_000;
    let corners = [[1.0, -1.0], [1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]];
    let mut total = 0.0;
    let mut prev = image(corners[0]);
    for c in corners.windows(2) {
        for i in 1..=steps {
            let t = i as f64 / steps as f64;
            let cur = image([c[0][0] + t * (c[1][0] - c[0][0]), c[0][1] + t * (c[1][1] - c[0][1])]);
            let mut da = cur.1.atan2(cur.0) - prev.1.atan2(prev.0);
            if da > std::f64::consts::PI {
                da -= 2.0 * std::f64::consts::PI;
            } else if da < -std::f64::consts::PI {
                da += 2.0 * std::f64::consts::PI;
            }
            total += da;
            prev = cur;
        }
    }
    (total / (2.0 * std::f64::consts::PI)).round() as i32
}
