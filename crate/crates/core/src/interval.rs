//! Closed intervals with outward-rounded f64 endpoints.
//!
//! The containment contract: for every operation, the machine result contains
//! the exact set `{a o b : a in [a], b in [b]}`. Degenerate intervals behave
//! as the underlying real under every operation. The empty set is represented
//! by `Option<Interval>` at the API boundary (`intersect`), never by a
//! lo > hi pair, so the `lo <= hi` invariant is always testable.
//!
//! Printing uses bracket style `[lo, hi]` at 17 significant digits, which
//! round-trips f64 exactly. (Some interval systems print a truncated decimal
//! followed by a question mark for the uncertain digit; the bracket form
//! carries the same information without the display convention.)

use crate::error::CcError;
use crate::round::{add_down, add_up, div_down, div_up, mul_down, mul_up, sqrt_down, sqrt_up, sub_down, sub_up};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    /// Interval from endpoints. Panics if `lo > hi` or either is NaN.
    #[inline]
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// Degenerate interval `[v, v]`.
    #[inline]
    pub fn point(v: f64) -> Self {
        debug_assert!(v.is_finite());
        Interval { lo: v, hi: v }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// An f64 inside the interval, close to the center.
    #[inline]
    pub fn midpoint(&self) -> f64 {
        let m = self.lo + 0.5 * (self.hi - self.lo);
        m.clamp(self.lo, self.hi)
    }

    /// Upper bound on `hi - lo`.
    #[inline]
    pub fn diameter(&self) -> f64 {
        sub_up(self.hi, self.lo)
    }

    /// max(|lo|, |hi|): an upper bound for |t| over the interval.
    #[inline]
    pub fn magnitude(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// min |t| over the interval (0 when the interval straddles 0).
    #[inline]
    pub fn mignitude(&self) -> f64 {
        if self.contains(0.0) {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    #[inline]
    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    #[inline]
    pub fn contains_zero(&self) -> bool {
        self.lo <= 0.0 && 0.0 <= self.hi
    }

    #[inline]
    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `other` lies in the interior of `self`.
    #[inline]
    pub fn contains_in_interior(&self, other: &Interval) -> bool {
        self.lo < other.lo && other.hi < self.hi
    }

    #[inline]
    pub fn is_disjoint(&self, other: &Interval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    #[inline]
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    #[inline]
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Symmetric enlargement by `delta >= 0` on both sides.
    #[inline]
    pub fn inflate(&self, delta: f64) -> Interval {
        debug_assert!(delta >= 0.0);
        Interval {
            lo: sub_down(self.lo, delta),
            hi: add_up(self.hi, delta),
        }
    }

    #[inline]
    pub fn recip(&self) -> Result<Interval, CcError> {
        if self.contains_zero() {
            return Err(CcError::DivisionByZeroInterval);
        }
        Ok(Interval {
            lo: div_down(1.0, self.hi),
            hi: div_up(1.0, self.lo),
        })
    }

    pub fn div_checked(&self, rhs: &Interval) -> Result<Interval, CcError> {
        if rhs.contains_zero() {
            return Err(CcError::DivisionByZeroInterval);
        }
        Ok(*self / *rhs)
    }

    /// Monotone enclosure of the square root. Errors if `lo < 0`; tiny
    /// negative lower bounds are not clamped, the caller must subdivide or
    /// discard instead.
    pub fn sqrt(&self) -> Result<Interval, CcError> {
        if self.lo < 0.0 {
            return Err(CcError::NegativeDomain { lo: self.lo });
        }
        Ok(Interval {
            lo: sqrt_down(self.lo),
            hi: sqrt_up(self.hi),
        })
    }

    /// Enclosure of `t^2` over the interval (range-exact, not `self * self`).
    #[inline]
    pub fn square(&self) -> Interval {
        let (a, b) = (self.lo, self.hi);
        if a >= 0.0 {
            Interval { lo: mul_down(a, a), hi: mul_up(b, b) }
        } else if b <= 0.0 {
            Interval { lo: mul_down(b, b), hi: mul_up(a, a) }
        } else {
            Interval { lo: 0.0, hi: mul_up(a.abs().max(b), a.abs().max(b)) }
        }
    }

    /// Enclosure of `t^(3/2)` via one sqrt and one multiply per endpoint
    /// (the map is monotone on t >= 0). Errors if `lo < 0`.
    pub fn pow_3_2(&self) -> Result<Interval, CcError> {
        if self.lo < 0.0 {
            return Err(CcError::NegativeDomain { lo: self.lo });
        }
        Ok(Interval {
            lo: mul_down(sqrt_down(self.lo), self.lo),
            hi: mul_up(sqrt_up(self.hi), self.hi),
        })
    }

    /// Bracket-style decimal serialization; lo rounds down, hi rounds up, at
    /// 17 significant digits (exact f64 round trip).
    pub fn to_bracket_string(&self) -> String {
        format!("[{:e}, {:e}]", PrintF64(self.lo), PrintF64(self.hi))
    }

    /// Parse the output of `to_bracket_string`.
    pub fn from_bracket_string(s: &str) -> Result<Interval, CcError> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| CcError::Parse(format!("bad interval literal: {s}")))?;
        let mut parts = inner.splitn(2, ',');
        let lo: f64 = parts
            .next()
            .ok_or_else(|| CcError::Parse(format!("bad interval literal: {s}")))?
            .trim()
            .parse()
            .map_err(|e| CcError::Parse(format!("bad interval endpoint in {s}: {e}")))?;
        let hi: f64 = parts
            .next()
            .ok_or_else(|| CcError::Parse(format!("bad interval literal: {s}")))?
            .trim()
            .parse()
            .map_err(|e| CcError::Parse(format!("bad interval endpoint in {s}: {e}")))?;
        if lo > hi {
            return Err(CcError::Parse(format!("inverted interval: {s}")));
        }
        Ok(Interval { lo, hi })
    }
}

/// 17-significant-digit formatter (f64 round-trip safe).
struct PrintF64(f64);

impl fmt::LowerExp for PrintF64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.16e}", self.0)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_bracket_string())
    }
}

impl Add for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: add_down(self.lo, rhs.lo),
            hi: add_up(self.hi, rhs.hi),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, rhs: Interval) -> Interval {
        Interval {
            lo: sub_down(self.lo, rhs.hi),
            hi: sub_up(self.hi, rhs.lo),
        }
    }
}

impl Neg for Interval {
    type Output = Interval;
    #[inline]
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, rhs: Interval) -> Interval {
        let (al, ah, bl, bh) = (self.lo, self.hi, rhs.lo, rhs.hi);
        // sign classification keeps it to two directed products except in the
        // straddle-straddle case
        let (lo, hi) = if al >= 0.0 {
            if bl >= 0.0 {
                (mul_down(al, bl), mul_up(ah, bh))
            } else if bh <= 0.0 {
                (mul_down(ah, bl), mul_up(al, bh))
            } else {
                (mul_down(ah, bl), mul_up(ah, bh))
            }
        } else if ah <= 0.0 {
            if bl >= 0.0 {
                (mul_down(al, bh), mul_up(ah, bl))
            } else if bh <= 0.0 {
                (mul_down(ah, bh), mul_up(al, bl))
            } else {
                (mul_down(al, bh), mul_up(al, bl))
            }
        } else if bl >= 0.0 {
            (mul_down(al, bh), mul_up(ah, bh))
        } else if bh <= 0.0 {
            (mul_down(ah, bl), mul_up(al, bl))
        } else {
            (
                mul_down(al, bh).min(mul_down(ah, bl)),
                mul_up(al, bl).max(mul_up(ah, bh)),
            )
        };
        Interval { lo, hi }
    }
}

impl Div for Interval {
    type Output = Interval;
    /// Panics if the divisor contains zero; use `div_checked` on fallible paths.
    #[inline]
    fn div(self, rhs: Interval) -> Interval {
        assert!(!rhs.contains_zero(), "interval division by zero: {rhs}");
        let (al, ah, bl, bh) = (self.lo, self.hi, rhs.lo, rhs.hi);
        let (lo, hi) = if bl > 0.0 {
            if al >= 0.0 {
                (div_down(al, bh), div_up(ah, bl))
            } else if ah <= 0.0 {
                (div_down(al, bl), div_up(ah, bh))
            } else {
                (div_down(al, bl), div_up(ah, bl))
            }
        } else {
            // bh < 0
            if al >= 0.0 {
                (div_down(ah, bh), div_up(al, bl))
            } else if ah <= 0.0 {
                (div_down(ah, bl), div_up(al, bh))
            } else {
                (div_down(ah, bh), div_up(al, bh))
            }
        };
        Interval { lo, hi }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_endpoint_rules() {
        let a = Interval::new(1.0, 2.0);
        let b = Interval::new(3.0, 4.0);
        let s = a + b;
        assert!(s.contains_interval(&Interval::new(4.0, 6.0)));
        assert!(s.diameter() < 3.0 + 1e-12);

        let p = Interval::new(1.0, 4.0) * Interval::new(1.0, 4.0);
        assert!(p.contains_interval(&Interval::new(1.0, 16.0)));

        let q = Interval::new(2.0, 32.0) / Interval::new(10.0, 25.0);
        assert!(q.contains(2.0 / 25.0) && q.contains(3.2));
    }

    #[test]
    fn degenerate_identities() {
        let a = Interval::point(0.7);
        assert_eq!(a + Interval::ZERO, a);
        assert_eq!(a / Interval::ONE, a);
        assert_eq!(Interval::ZERO * Interval::new(-5.0, 7.0), Interval::ZERO);
    }

    #[test]
    fn division_by_zero_interval_errors() {
        let e = Interval::ONE.div_checked(&Interval::new(0.0, 1.0));
        assert!(matches!(e, Err(CcError::DivisionByZeroInterval)));
    }

    #[test]
    fn sqrt_domain() {
        let s = Interval::new(4.0, 9.0).sqrt().unwrap();
        assert!(s.contains(2.0) && s.contains(3.0) && s.diameter() < 1.0 + 1e-12);
        assert!(Interval::new(-1e-30, 1.0).sqrt().is_err());
    }

    #[test]
    fn pow_3_2_values() {
        let one = Interval::ONE.pow_3_2().unwrap();
        assert_eq!(one, Interval::ONE);
        // 2^(3/2) = 2.8284271247461900976...
        let v = Interval::point(2.0).pow_3_2().unwrap();
        assert!(v.contains(2.828_427_124_746_190_1));
        assert!(v.diameter() < 1e-14);
    }

    #[test]
    fn lattice_ops() {
        let a = Interval::new(0.0, 2.0);
        let b = Interval::new(1.0, 3.0);
        assert_eq!(a.intersect(&b), Some(Interval::new(1.0, 2.0)));
        assert_eq!(Interval::new(0.0, 1.0).intersect(&Interval::new(2.0, 3.0)), None);
        assert_eq!(a.hull(&b), Interval::new(0.0, 3.0));
        assert_eq!(Interval::new(-1.0, 2.0).diameter(), 3.0);
    }

    #[test]
    fn bracket_round_trip() {
        for v in [
            Interval::new(-1.484_878_202_646_704_4, 0.1),
            Interval::point(1.0 / 3.0),
            Interval::new(f64::MIN_POSITIVE, 1e300),
        ] {
            let s = v.to_bracket_string();
            assert_eq!(Interval::from_bracket_string(&s).unwrap(), v);
        }
    }
}
