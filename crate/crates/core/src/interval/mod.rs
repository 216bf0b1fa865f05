//! Outward-rounded interval arithmetic for scalars, boxes and matrices.

mod ibox;
mod matrix;
mod round;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use ibox::{box_bisect, box_hull, IBox};
pub use matrix::{det_enclosure, det_sign, imat_inverse, imat_vec, IMatrix};

/// A closed interval `[lo, hi]` of reals with binary64 endpoints.
///
/// `lo <= hi` always holds and neither endpoint is NaN. Zero-width intervals
/// are exact points. There is no empty interval; emptiness of an
/// intersection is answered by [`Interval::intersect`] returning `None`.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

/// The four arithmetic operations, for table-driven callers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };
    /// `[-1, 1]`, the closed unit ball of R in any norm.
    pub const UNIT: Interval = Interval { lo: -1.0, hi: 1.0 };

    /// Builds `[lo, hi]`.
    ///
    /// # Panics
    /// If `lo > hi`, an endpoint is NaN, `lo = +inf` or `hi = -inf`.
    #[inline]
    pub fn new(lo: f64, hi: f64) -> Self {
        match Self::try_new(lo, hi) {
            Ok(iv) => iv,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn try_new(lo: f64, hi: f64) -> Result<Self> {
        if lo <= hi && lo != f64::INFINITY && hi != f64::NEG_INFINITY {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::Domain(format!("invalid interval [{lo}, {hi}]")))
        }
    }

    #[inline]
    pub const fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Smallest interval containing both `a` and `b`.
    #[inline]
    pub fn spanning(a: f64, b: f64) -> Self {
        Interval {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    /// Upper bound on the width.
    #[inline]
    pub fn width(self) -> f64 {
        round::sub_up(self.hi, self.lo)
    }

    /// Midpoint, always a member of the interval.
    #[inline]
    pub fn mid(self) -> f64 {
        if self.lo == self.hi {
            return self.lo;
        }
        if self.lo.is_infinite() || self.hi.is_infinite() {
            return match (self.lo.is_infinite(), self.hi.is_infinite()) {
                (true, true) => 0.0,
                (true, false) => self.hi.min(0.0),
                _ => self.lo.max(0.0),
            };
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Largest absolute value of a member.
    #[inline]
    pub fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    #[inline]
    pub fn is_point(self) -> bool {
        self.lo == self.hi
    }

    #[inline]
    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    #[inline]
    pub fn contains_zero(self) -> bool {
        self.contains(0.0)
    }

    /// `self ⊆ other`.
    #[inline]
    pub fn subset_of(self, other: Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// `self` lies in the open interval `(lo, hi)`.
    #[inline]
    pub fn strictly_inside(self, lo: f64, hi: f64) -> bool {
        lo < self.lo && self.hi < hi
    }

    #[inline]
    pub fn hull(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn intersect(self, other: Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Splits at the midpoint; the halves share the midpoint.
    pub fn bisect(self) -> (Interval, Interval) {
        let m = self.mid();
        (
            Interval { lo: self.lo, hi: m },
            Interval { lo: m, hi: self.hi },
        )
    }

    /// Enclosure of `x²`, tighter than `x * x` when `0 ∈ x`.
    #[inline]
    pub fn sqr(self) -> Interval {
        let (a, b) = (self.lo.abs(), self.hi.abs());
        if self.lo >= 0.0 || self.hi <= 0.0 {
            let (small, big) = if a < b { (a, b) } else { (b, a) };
            Interval {
                lo: round::mul_down(small, small),
                hi: round::mul_up(big, big),
            }
        } else {
            let big = a.max(b);
            Interval {
                lo: 0.0,
                hi: round::mul_up(big, big),
            }
        }
    }

    /// Multiplication by an exact scalar.
    #[inline]
    pub fn scale(self, c: f64) -> Interval {
        if c >= 0.0 {
            Interval {
                lo: round::mul_down(self.lo, c),
                hi: round::mul_up(self.hi, c),
            }
        } else {
            Interval {
                lo: round::mul_down(self.hi, c),
                hi: round::mul_up(self.lo, c),
            }
        }
    }

    /// Division; fails when the divisor contains zero.
    pub fn checked_div(self, rhs: Interval) -> Result<Interval> {
        use round::{div_down as dd, div_up as du};
        let a = self;
        let b = rhs;
        if b.contains_zero() {
            return Err(Error::Domain(format!("division by {b} which contains 0")));
        }
        let (lo, hi) = if b.lo > 0.0 {
            if a.lo >= 0.0 {
                (dd(a.lo, b.hi), du(a.hi, b.lo))
            } else if a.hi <= 0.0 {
                (dd(a.lo, b.lo), du(a.hi, b.hi))
            } else {
                (dd(a.lo, b.lo), du(a.hi, b.lo))
            }
        } else if a.lo >= 0.0 {
            (dd(a.hi, b.hi), du(a.lo, b.lo))
        } else if a.hi <= 0.0 {
            (dd(a.hi, b.lo), du(a.lo, b.hi))
        } else {
            (dd(a.hi, b.hi), du(a.lo, b.hi))
        };
        Ok(Interval { lo, hi })
    }

    pub fn arith(self, rhs: Interval, op: ArithOp) -> Result<Interval> {
        Ok(match op {
            ArithOp::Add => self + rhs,
            ArithOp::Sub => self - rhs,
            ArithOp::Mul => self * rhs,
            ArithOp::Div => self.checked_div(rhs)?,
        })
    }
}

/// Applies `op` to `a` and `b` with outward rounding.
pub fn iv_arith(a: Interval, b: Interval, op: ArithOp) -> Result<Interval> {
    a.arith(b, op)
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;
    fn try_from([lo, hi]: [f64; 2]) -> Result<Self> {
        Interval::try_new(lo, hi)
    }
}

impl From<Interval> for [f64; 2] {
    fn from(iv: Interval) -> Self {
        [iv.lo, iv.hi]
    }
}

impl Neg for Interval {
    type Output = Interval;
    #[inline]
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: round::add_down(self.lo, rhs.lo),
            hi: round::add_up(self.hi, rhs.hi),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, rhs: Interval) -> Interval {
        Interval {
            lo: round::sub_down(self.lo, rhs.hi),
            hi: round::sub_up(self.hi, rhs.lo),
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, rhs: Interval) -> Interval {
        use round::{mul_down as md, mul_up as mu};
        let (a, b) = (self, rhs);
        let (lo, hi) = if a.lo >= 0.0 {
            if b.lo >= 0.0 {
                (md(a.lo, b.lo), mu(a.hi, b.hi))
            } else if b.hi <= 0.0 {
                (md(a.hi, b.lo), mu(a.lo, b.hi))
            } else {
                (md(a.hi, b.lo), mu(a.hi, b.hi))
            }
        } else if a.hi <= 0.0 {
            if b.lo >= 0.0 {
                (md(a.lo, b.hi), mu(a.hi, b.lo))
            } else if b.hi <= 0.0 {
                (md(a.hi, b.hi), mu(a.lo, b.lo))
            } else {
                (md(a.lo, b.hi), mu(a.lo, b.lo))
            }
        } else if b.lo >= 0.0 {
            (md(a.lo, b.hi), mu(a.hi, b.hi))
        } else if b.hi <= 0.0 {
            (md(a.hi, b.lo), mu(a.lo, b.lo))
        } else {
            (
                md(a.lo, b.hi).min(md(a.hi, b.lo)),
                mu(a.lo, b.lo).max(mu(a.hi, b.hi)),
            )
        };
        Interval { lo, hi }
    }
}

impl Add<f64> for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, rhs: f64) -> Interval {
        self + Interval::point(rhs)
    }
}

impl Sub<f64> for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, rhs: f64) -> Interval {
        self - Interval::point(rhs)
    }
}

impl Mul<f64> for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, rhs: f64) -> Interval {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi)
    }

    #[test]
    fn addition_of_exact_endpoints() {
        let r = iv(1.0, 2.0) + iv(3.0, 4.0);
        assert!(iv(4.0, 6.0).subset_of(r));
        assert!(r.lo() >= 4.0f64.next_down().next_down());
        assert!(r.hi() <= 6.0f64.next_up().next_up());
    }

    #[test]
    fn mixed_sign_product() {
        let r = iv(-1.0, 2.0) * iv(3.0, 4.0);
        assert!(iv(-4.0, 8.0).subset_of(r));
        assert_eq!(r, iv(-4.0, 8.0));
    }

    #[test]
    fn both_mixed_product() {
        assert_eq!(iv(-2.0, 3.0) * iv(-5.0, 1.0), iv(-15.0, 10.0));
    }

    #[test]
    fn division_by_zero_containing_interval_fails() {
        assert!(matches!(
            iv(1.0, 2.0).checked_div(iv(-1.0, 1.0)),
            Err(Error::Domain(_))
        ));
        assert!(iv(1.0, 2.0).checked_div(iv(0.0, 1.0)).is_err());
        assert_eq!(iv(1.0, 2.0).checked_div(iv(4.0, 8.0)).unwrap(), iv(0.125, 0.5));
    }

    #[test]
    fn invalid_intervals_are_rejected() {
        assert!(Interval::try_new(2.0, 1.0).is_err());
        assert!(Interval::try_new(f64::NAN, 1.0).is_err());
        assert!(Interval::try_new(f64::INFINITY, f64::INFINITY).is_err());
    }

    #[test]
    fn sqr_is_nonnegative_around_zero() {
        assert_eq!(iv(-3.0, 2.0).sqr(), iv(0.0, 9.0));
        assert_eq!(iv(-3.0, -2.0).sqr(), iv(4.0, 9.0));
    }

    #[test]
    fn bisect_shares_midpoint() {
        let (a, b) = iv(0.0, 2.0).bisect();
        assert_eq!(a, iv(0.0, 1.0));
        assert_eq!(b, iv(1.0, 2.0));
    }

    #[test]
    fn intersect_reports_emptiness() {
        assert_eq!(iv(0.0, 1.0).intersect(iv(2.0, 3.0)), None);
        assert_eq!(iv(0.0, 2.0).intersect(iv(1.0, 3.0)), Some(iv(1.0, 2.0)));
    }
}
