//! Shared arithmetic surface for the residual/derivative expressions.
//!
//! The same generated expression code evaluates under three backends: plain
//! f64 (reference mode, sampling), outward-rounded intervals (all rigorous
//! enclosures), and compensated balls (tight point evaluation). Domain
//! violations (negative radicand, zero divisor) panic here: every caller
//! goes through the collision guard first, which rejects boxes whose squared
//! distances are not strictly positive.

use crate::dd::Ball;
use crate::interval::Interval;
use std::ops::{Add, Mul, Neg, Sub};

pub trait Real:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_const(c: f64) -> Self;
    fn recip_r(self) -> Self;
    fn sqrt_r(self) -> Self;

    /// t^2; interval backends return the range-exact image, which a plain
    /// self-product overestimates on straddling intervals.
    #[inline]
    fn sq_r(self) -> Self {
        self * self
    }

    /// t^(3/2), t >= 0.
    #[inline]
    fn pow_3_2_r(self) -> Self {
        self.sqrt_r() * self
    }
    /// t^(-3/2), t > 0.
    #[inline]
    fn pow_m3_2_r(self) -> Self {
        self.pow_3_2_r().recip_r()
    }
    /// t^(-5/2), t > 0.
    #[inline]
    fn pow_m5_2_r(self) -> Self {
        (self.pow_3_2_r() * self).recip_r()
    }
    /// t^(-7/2), t > 0.
    #[inline]
    fn pow_m7_2_r(self) -> Self {
        (self.pow_3_2_r() * self * self).recip_r()
    }
}

impl Real for f64 {
    #[inline]
    fn from_const(c: f64) -> Self {
        c
    }
    #[inline]
    fn recip_r(self) -> Self {
        1.0 / self
    }
    #[inline]
    fn sqrt_r(self) -> Self {
        self.sqrt()
    }
}

impl Real for Interval {
    #[inline]
    fn from_const(c: f64) -> Self {
        Interval::point(c)
    }
    #[inline]
    fn recip_r(self) -> Self {
        self.recip().expect("collision guard must precede evaluation")
    }
    #[inline]
    fn sqrt_r(self) -> Self {
        self.sqrt().expect("collision guard must precede evaluation")
    }

    #[inline]
    fn sq_r(self) -> Self {
        self.square()
    }

    // the power kernels are monotone on t > 0; evaluating per endpoint with
    // directed rounding is tighter than composing interval products
    #[inline]
    fn pow_3_2_r(self) -> Self {
        self.pow_3_2().expect("collision guard must precede evaluation")
    }
    #[inline]
    fn pow_m3_2_r(self) -> Self {
        assert!(self.lo() > 0.0, "collision guard must precede evaluation");
        let num = |t: f64, up: bool| {
            use crate::round::{mul_down, mul_up, sqrt_down, sqrt_up};
            if up {
                mul_up(sqrt_up(t), t)
            } else {
                mul_down(sqrt_down(t), t)
            }
        };
        Interval::new(
            crate::round::div_down(1.0, num(self.hi(), true)),
            crate::round::div_up(1.0, num(self.lo(), false)),
        )
    }
    #[inline]
    fn pow_m5_2_r(self) -> Self {
        assert!(self.lo() > 0.0, "collision guard must precede evaluation");
        use crate::round::{div_down, div_up, mul_down, mul_up, sqrt_down, sqrt_up};
        let up = mul_up(mul_up(self.hi(), self.hi()), sqrt_up(self.hi()));
        let dn = mul_down(mul_down(self.lo(), self.lo()), sqrt_down(self.lo()));
        Interval::new(div_down(1.0, up), div_up(1.0, dn))
    }
    #[inline]
    fn pow_m7_2_r(self) -> Self {
        assert!(self.lo() > 0.0, "collision guard must precede evaluation");
        use crate::round::{div_down, div_up, mul_down, mul_up, sqrt_down, sqrt_up};
        let up = mul_up(
            mul_up(mul_up(self.hi(), self.hi()), self.hi()),
            sqrt_up(self.hi()),
        );
        let dn = mul_down(
            mul_down(mul_down(self.lo(), self.lo()), self.lo()),
            sqrt_down(self.lo()),
        );
        Interval::new(div_down(1.0, up), div_up(1.0, dn))
    }
}

impl Add for Ball {
    type Output = Ball;
    #[inline]
    fn add(self, rhs: Ball) -> Ball {
        Ball::add(self, rhs)
    }
}

impl Sub for Ball {
    type Output = Ball;
    #[inline]
    fn sub(self, rhs: Ball) -> Ball {
        Ball::sub(self, rhs)
    }
}

impl Mul for Ball {
    type Output = Ball;
    #[inline]
    fn mul(self, rhs: Ball) -> Ball {
        Ball::mul(self, rhs)
    }
}

impl Neg for Ball {
    type Output = Ball;
    #[inline]
    fn neg(self) -> Ball {
        Ball::neg(self)
    }
}

impl Real for Ball {
    #[inline]
    fn from_const(c: f64) -> Self {
        Ball::exact(c)
    }
    #[inline]
    fn recip_r(self) -> Self {
        Ball::exact(1.0).div(self)
    }
    #[inline]
    fn sqrt_r(self) -> Self {
        Ball::sqrt(self)
    }
}

#[inline]
pub fn num<T: Real>(c: f64) -> T {
    T::from_const(c)
}

#[inline]
pub fn sq<T: Real>(x: T) -> T {
    x.sq_r()
}

#[inline]
pub fn cube<T: Real>(x: T) -> T {
    x * x * x
}

#[inline]
pub fn recip<T: Real>(x: T) -> T {
    x.recip_r()
}

/// t^(3/2) for t >= 0.
#[inline]
pub fn pow_3_2<T: Real>(x: T) -> T {
    x.pow_3_2_r()
}

/// t^(-3/2) for t > 0.
#[inline]
pub fn pow_m3_2<T: Real>(x: T) -> T {
    x.pow_m3_2_r()
}

/// t^(-5/2) for t > 0.
#[inline]
pub fn pow_m5_2<T: Real>(x: T) -> T {
    x.pow_m5_2_r()
}

/// t^(-7/2) for t > 0.
#[inline]
pub fn pow_m7_2<T: Real>(x: T) -> T {
    x.pow_m7_2_r()
}
