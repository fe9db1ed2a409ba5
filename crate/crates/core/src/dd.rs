//! Compensated ball arithmetic: a double-double value plus a rigorous radius.
//!
//! Plain f64-interval evaluation of the residuals at a point carries a few
//! tens of ulps of rounding width through the cancellations, which is too
//! coarse for the final certified enclosures. This module evaluates the same
//! expressions in ~106-bit compensated arithmetic and propagates a rigorous
//! absolute error radius alongside, so a point residual encloses the exact
//! value to ~1e-28 instead of ~1e-14.
//!
//! Error model: each double-double operation below has relative error well
//! under 2^-97 (published worst cases for these kernels are below 6*2^-106;
//! the slack absorbs the non-FMA sqrt path and any de-normalized tails).
//! Radius arithmetic is rounded upward with the same directed kernels the
//! interval type uses. Balls are only built from exact f64 inputs here, so
//! radii stay tiny; all consumers additionally intersect the result with a
//! plain interval evaluation as a cross-check.

use crate::interval::Interval;
use crate::round::{add_up, mul_up, two_prod, two_sum};

/// Relative error budget charged per compensated operation.
const OP_EPS: f64 = 6.5e-30; // 2^-97 rounded up

#[derive(Debug, Clone, Copy)]
pub struct Ball {
    hi: f64,
    lo: f64,
    rad: f64,
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b| or a == 0
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn dd_normalize(hi: f64, lo: f64) -> (f64, f64) {
    let (s, e) = two_sum(hi, lo);
    (s, e)
}

impl Ball {
    #[inline]
    pub fn exact(v: f64) -> Ball {
        debug_assert!(v.is_finite());
        Ball { hi: v, lo: 0.0, rad: 0.0 }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn rad(&self) -> f64 {
        self.rad
    }

    #[inline]
    fn abs_hi(&self) -> f64 {
        // upper bound for |value|
        add_up(self.hi.abs(), add_up(self.lo.abs(), self.rad))
    }

    /// Lower bound for |value| (0 if the ball straddles zero).
    fn abs_lo(&self) -> f64 {
        let a = (self.hi + self.lo).abs();
        let slack = add_up(self.rad, mul_up(2.0 * f64::EPSILON, a));
        if a <= slack {
            0.0
        } else {
            a - slack
        }
    }

    #[inline]
    fn charge(mut self) -> Ball {
        // one operation's worth of double-double rounding error
        self.rad = add_up(self.rad, mul_up(OP_EPS, self.abs_hi()));
        self
    }

    pub fn add(self, o: Ball) -> Ball {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s2, e2) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s2, e2 + f);
        Ball { hi, lo, rad: add_up(self.rad, o.rad) }.charge()
    }

    pub fn sub(self, o: Ball) -> Ball {
        self.add(o.neg())
    }

    #[inline]
    pub fn neg(self) -> Ball {
        Ball { hi: -self.hi, lo: -self.lo, rad: self.rad }
    }

    pub fn mul(self, o: Ball) -> Ball {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        // |a|*rb + |b|*ra + ra*rb
        let rad = add_up(
            add_up(mul_up(self.abs_hi(), o.rad), mul_up(o.abs_hi(), self.rad)),
            mul_up(self.rad, o.rad),
        );
        Ball { hi, lo, rad }.charge()
    }

    /// Division; the divisor ball must be bounded away from zero.
    pub fn div(self, o: Ball) -> Ball {
        let denom_lo = o.abs_lo();
        assert!(denom_lo > 0.0, "ball division by a ball touching zero");
        let q1 = self.hi / o.hi;
        // remainder r = self - q1*o in double-double
        let (p, pe) = two_prod(q1, o.hi);
        let r_hi = self.hi - p;
        let r_lo = (self.lo - pe) - q1 * o.lo;
        let q2 = (r_hi + r_lo) / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        let q_abs = add_up(hi.abs(), lo.abs());
        // |a/b - q| <= (ra + |q| rb) / (|b| - rb)  with rb already inside denom_lo
        let rad = crate::round::div_up(add_up(self.rad, mul_up(q_abs, o.rad)), denom_lo);
        Ball { hi, lo, rad }.charge()
    }

    /// Square root; the ball must be nonnegative-away-from-zero or exactly zero.
    pub fn sqrt(self) -> Ball {
        if self.hi == 0.0 && self.lo == 0.0 && self.rad == 0.0 {
            return Ball::exact(0.0);
        }
        let vlo = self.abs_lo();
        assert!(
            self.hi > 0.0 && vlo > 0.0,
            "ball sqrt requires a strictly positive ball"
        );
        let s1 = self.hi.sqrt();
        // one compensated Newton step: s = s1 + (a - s1^2) / (2 s1)
        let (p, pe) = two_prod(s1, s1);
        let r = (self.hi - p) + (self.lo - pe);
        let s2 = r / (2.0 * s1);
        let (hi, lo) = quick_two_sum(s1, s2);
        // |sqrt(a+d) - sqrt(a)| <= rad / (2 sqrt(vlo))
        let rad = crate::round::div_up(self.rad, 2.0 * crate::round::sqrt_down(vlo));
        Ball { hi, lo, rad }.charge()
    }

    /// Outward-rounded conversion to an f64 interval.
    pub fn to_interval(&self) -> Interval {
        if self.rad == 0.0 && self.lo == 0.0 {
            return Interval::point(self.hi);
        }
        let (v, e) = dd_normalize(self.hi, self.lo);
        // two roundings on each side, covered by stepping twice
        let lo = ((v + (e - self.rad)).next_down()).next_down();
        let hi = ((v + (e + self.rad)).next_up()).next_up();
        Interval::new(lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_stays_tight() {
        // (1e8 + 1) - 1e8 == 1 with no width to speak of
        let a = Ball::exact(1e8).add(Ball::exact(1.0));
        let r = a.sub(Ball::exact(1e8));
        assert_eq!(r.value(), 1.0);
        assert!(r.rad() < 1e-20);
    }

    #[test]
    fn division_and_sqrt_enclose() {
        // endpoints are f64, so widths for O(1) values sit at a few ulps
        let third = Ball::exact(1.0).div(Ball::exact(3.0));
        let i = third.to_interval();
        assert!(i.contains(1.0 / 3.0));
        assert!(i.diameter() < 1e-15);

        let s = Ball::exact(2.0).sqrt();
        let i = s.to_interval();
        assert!(i.contains(std::f64::consts::SQRT_2));
        assert!(i.diameter() < 1e-15);
    }

    #[test]
    fn tiny_values_convert_tightly() {
        // (0.1 + 0.2) - 0.3 over exact f64 inputs: a ~5.6e-17 real number.
        // Plain interval arithmetic would leave ~1e-16 of width here; the
        // compensated path pins it to sub-1e-30.
        let r = Ball::exact(0.1).add(Ball::exact(0.2)).sub(Ball::exact(0.3));
        let i = r.to_interval();
        assert!(i.lo() > 2.7e-17 && i.hi() < 2.8e-17, "{i}");
        assert!(i.diameter() < 1e-28);
    }
}
