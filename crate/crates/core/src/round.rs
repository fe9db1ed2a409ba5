//! Directed-rounding primitives built on error-free transformations.
//!
//! Hardware rounding modes are never switched; instead each operation is
//! performed in round-to-nearest and the exact residual of the operation is
//! recovered (two_sum, FMA-based two_prod, FMA remainders for division and
//! square root). The result is nudged one ulp outward only when the residual
//! proves it lies on the wrong side of the exact value. This keeps endpoints
//! as tight as the format allows: exact operations stay exact.
//!
//! All inputs are assumed finite; the caller keeps the computation inside the
//! finite range (this toolkit works on a bounded domain far from overflow).

/// Exact error of floating-point addition: `a + b == s + e` exactly (Knuth).
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Exact error of floating-point multiplication: `a * b == p + e` exactly.
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = f64::mul_add(a, b, -p);
    (p, e)
}

/// Largest f64 that is `<= a + b`.
#[inline]
pub fn add_down(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if e < 0.0 {
        s.next_down()
    } else {
        s
    }
}

/// Smallest f64 that is `>= a + b`.
#[inline]
pub fn add_up(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if e > 0.0 {
        s.next_up()
    } else {
        s
    }
}

#[inline]
pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

/// Largest f64 that is `<= a * b`.
#[inline]
pub fn mul_down(a: f64, b: f64) -> f64 {
    let (p, e) = two_prod(a, b);
    if e < 0.0 {
        p.next_down()
    } else {
        p
    }
}

/// Smallest f64 that is `>= a * b`.
#[inline]
pub fn mul_up(a: f64, b: f64) -> f64 {
    let (p, e) = two_prod(a, b);
    if e > 0.0 {
        p.next_up()
    } else {
        p
    }
}

/// Largest f64 that is `<= a / b`. Requires `b != 0`.
#[inline]
pub fn div_down(a: f64, b: f64) -> f64 {
    let q = a / b;
    // r = q*b - a exactly; a/b - q = -r/b, so the true quotient is below q
    // iff r and b share a sign.
    let r = f64::mul_add(q, b, -a);
    if r != 0.0 && (r > 0.0) == (b > 0.0) {
        q.next_down()
    } else {
        q
    }
}

/// Smallest f64 that is `>= a / b`. Requires `b != 0`.
#[inline]
pub fn div_up(a: f64, b: f64) -> f64 {
    let q = a / b;
    let r = f64::mul_add(q, b, -a);
    if r != 0.0 && (r > 0.0) != (b > 0.0) {
        q.next_up()
    } else {
        q
    }
}

/// Largest f64 that is `<= sqrt(a)`. Requires `a >= 0`.
#[inline]
pub fn sqrt_down(a: f64) -> f64 {
    let s = a.sqrt();
    // r = s*s - a exactly; s > sqrt(a) iff r > 0.
    let r = f64::mul_add(s, s, -a);
    if r > 0.0 {
        s.next_down()
    } else {
        s
    }
}

/// Smallest f64 that is `>= sqrt(a)`. Requires `a >= 0`.
#[inline]
pub fn sqrt_up(a: f64) -> f64 {
    let s = a.sqrt();
    let r = f64::mul_add(s, s, -a);
    if r < 0.0 {
        s.next_up()
    } else {
        s
    }
}
