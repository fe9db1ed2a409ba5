//! The planar four-body residual system and its derivatives.
//!
//! Coordinates: bodies 2 and 4 are pinned at (-1, 0) and (1, 0); body 1 at
//! (x1, y1) with y1 > 0, body 3 at (x3, y3) with y3 < 0. Masses are
//! normalized so m2 = 1 is the largest. The six pairwise residuals f_ij
//! combine inverse-cube distances with signed triangle areas; a configuration
//! is an equilibrium of the reduced problem iff all six vanish. The reduced
//! square map F = [f12, f13, f14, f23] drives the certification; f24 and f34
//! are re-checked on every certified enclosure.
//!
//! Everything here is a pure function of its inputs.

mod generated;

pub use generated::DERIV_CODE_HASH;

use crate::boxes::{Box4, IntervalMatrix};
use crate::dd::Ball;
use crate::error::CcError;
use crate::interval::Interval;
use crate::round::{sub_down, sqrt_up};
use crate::scalar::{num, sq, Real};
use serde::{Deserialize, Serialize};

/// Squared-distance lower bounds below this reject the box as a possible
/// collision; true solutions are kept far from collisions by the admissible
/// region, so rejection is always safe.
pub const COLLISION_THRESHOLD: f64 = 1e-12;

/// Point masses (m1, m3, m4) with m2 = 1 by normalization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassPoint {
    pub m1: f64,
    pub m3: f64,
    pub m4: f64,
}

impl MassPoint {
    pub fn new(m1: f64, m3: f64, m4: f64) -> Result<Self, CcError> {
        for (name, v) in [("m1", m1), ("m3", m3), ("m4", m4)] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(CcError::InvalidMass(format!(
                    "{name} = {v} must lie in (0, 1] (m2 = 1 is the largest mass)"
                )));
            }
        }
        Ok(MassPoint { m1, m3, m4 })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.m1, self.m3, self.m4]
    }

    pub fn to_interval(&self) -> MassInterval {
        MassInterval {
            m1: Interval::point(self.m1),
            m3: Interval::point(self.m3),
            m4: Interval::point(self.m4),
        }
    }

    /// Componentwise interval of radius eps around the point, the interval
    /// hull of the Euclidean mass ball of the same radius.
    pub fn interval_hull(&self, eps: f64) -> MassInterval {
        MassInterval {
            m1: Interval::point(self.m1).inflate(eps),
            m3: Interval::point(self.m3).inflate(eps),
            m4: Interval::point(self.m4).inflate(eps),
        }
    }
}

/// Interval-valued masses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassInterval {
    pub m1: Interval,
    pub m3: Interval,
    pub m4: Interval,
}

impl MassInterval {
    pub fn components(&self) -> [Interval; 3] {
        [self.m1, self.m3, self.m4]
    }
}

/// A point in configuration space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    pub x1: f64,
    pub y1: f64,
    pub x3: f64,
    pub y3: f64,
}

impl Configuration {
    pub fn from_array(p: [f64; 4]) -> Self {
        Configuration { x1: p[0], y1: p[1], x3: p[2], y3: p[3] }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.x1, self.y1, self.x3, self.y3]
    }

    /// Image under the reflection that swaps bodies 1 and 3 (and masses
    /// m1 <-> m3): (x1,y1,x3,y3) -> (x3,-y3,x1,-y1).
    pub fn swap_bodies_1_3(&self) -> Configuration {
        Configuration { x1: self.x3, y1: -self.y3, x3: self.x1, y3: -self.y1 }
    }
}

/// The interval hulls sandwiching the admissible region: `inner` is searched
/// for solutions, `outer` is what exclusion must clear.
#[derive(Debug, Clone, Copy)]
pub struct RegionConstants {
    pub inner: Box4,
    pub outer: Box4,
}

/// inner = [0,1] x [0.267,1.733] x [0,1] x [-1.733,-0.267]
/// outer = [-1,1] x [0,1.733] x [-1,1] x [-1.733,0]
pub fn region_constants() -> RegionConstants {
    RegionConstants {
        inner: Box4::from_bounds([(0.0, 1.0), (0.267, 1.733), (0.0, 1.0), (-1.733, -0.267)]),
        outer: Box4::from_bounds([(-1.0, 1.0), (0.0, 1.733), (-1.0, 1.0), (-1.733, 0.0)]),
    }
}

/// Rigorous lower bound for 2 - sqrt(3), the admissible |y| floor.
pub fn y_floor_lower() -> f64 {
    sub_down(2.0, sqrt_up(3.0))
}

/// Rigorous upper bound for sqrt(3), the admissible |y| ceiling.
pub fn y_ceil_upper() -> f64 {
    sqrt_up(3.0)
}

/// The four signed-area expressions (twice the triangle areas), in the order
/// (D123, D124, D134, D234).
pub fn delta_areas<T: Real>(x1: T, y1: T, x3: T, y3: T) -> [T; 4] {
    let one = num::<T>(1.0);
    let two = num::<T>(2.0);
    [
        (x3 + one) * y1 - y3 * (x1 + one),
        two * y1,
        (one - x3) * y1 + y3 * (x1 - one),
        -(two * y3),
    ]
}

/// The five variable squared distances in the order
/// (r12^2, r13^2, r14^2, r23^2, r34^2); r24 = 2 is pinned.
pub fn squared_distances<T: Real>(x1: T, y1: T, x3: T, y3: T) -> [T; 5] {
    let one = num::<T>(1.0);
    [
        sq(x1 + one) + sq(y1),
        sq(x1 - x3) + sq(y1 - y3),
        sq(x1 - one) + sq(y1),
        sq(x3 + one) + sq(y3),
        sq(x3 - one) + sq(y3),
    ]
}

/// Reject boxes whose distance enclosures touch the collision set.
fn collision_guard(b: &Box4) -> Result<(), CcError> {
    let [x1, y1, x3, y3] = b.components;
    for d in squared_distances(x1, y1, x3, y3) {
        if d.lo() < COLLISION_THRESHOLD {
            return Err(CcError::CollisionBox {
                dist_sq_lo: d.lo(),
                threshold: COLLISION_THRESHOLD,
            });
        }
    }
    Ok(())
}

/// Interval enclosures of the six residuals over a box, for interval masses.
pub fn residuals_six(b: &Box4, m: &MassInterval) -> Result<[Interval; 6], CcError> {
    collision_guard(b)?;
    let [x1, y1, x3, y3] = b.components;
    Ok(generated::six_residuals_raw(x1, y1, x3, y3, m.m1, m.m3, m.m4))
}

/// Interval enclosures of the reduced map F = [f12, f13, f14, f23].
pub fn f_reduced(b: &Box4, m: &MassInterval) -> Result<[Interval; 4], CcError> {
    let six = residuals_six(b, m)?;
    Ok([six[0], six[1], six[2], six[3]])
}

/// Plain f64 evaluation of the six residuals at a point.
pub fn residuals_six_point(c: &Configuration, m: &MassPoint) -> [f64; 6] {
    generated::six_residuals_raw(c.x1, c.y1, c.x3, c.y3, m.m1, m.m3, m.m4)
}

/// Tight enclosures of the six residuals at an exact f64 point: compensated
/// evaluation intersected with the plain interval evaluation. Orders of
/// magnitude narrower than the interval path when the value nearly cancels.
pub fn residuals_six_tight(c: &Configuration, m: &MassPoint) -> Result<[Interval; 6], CcError> {
    let b = Box4::new([
        Interval::point(c.x1),
        Interval::point(c.y1),
        Interval::point(c.x3),
        Interval::point(c.y3),
    ]);
    let wide = residuals_six(&b, &m.to_interval())?;
    let balls = generated::six_residuals_raw(
        Ball::exact(c.x1),
        Ball::exact(c.y1),
        Ball::exact(c.x3),
        Ball::exact(c.y3),
        Ball::exact(m.m1),
        Ball::exact(m.m3),
        Ball::exact(m.m4),
    );
    let mut out = [Interval::ZERO; 6];
    for i in 0..6 {
        out[i] = balls[i]
            .to_interval()
            .intersect(&wide[i])
            .expect("compensated and interval evaluations must overlap");
    }
    Ok(out)
}

/// Tight enclosures of F at an exact f64 point.
pub fn f_reduced_tight(c: &Configuration, m: &MassPoint) -> Result<[Interval; 4], CcError> {
    let six = residuals_six_tight(c, m)?;
    Ok([six[0], six[1], six[2], six[3]])
}

/// Interval enclosure of the position Jacobian dF/dx over a box (4x4).
pub fn jac_x(b: &Box4, m: &MassInterval) -> Result<IntervalMatrix, CcError> {
    collision_guard(b)?;
    let [x1, y1, x3, y3] = b.components;
    let raw = generated::jac_x_raw(x1, y1, x3, y3, m.m1, m.m3, m.m4);
    Ok(IntervalMatrix { rows: 4, cols: 4, entries: raw.to_vec() })
}

/// Interval enclosure of the mass Jacobian dF/dm over a box (4x3). F is
/// linear in the masses, so the entries depend on position only and are the
/// exact mass coefficients of each component.
pub fn jac_m(b: &Box4) -> Result<IntervalMatrix, CcError> {
    collision_guard(b)?;
    let [x1, y1, x3, y3] = b.components;
    let one = Interval::ONE;
    let raw = generated::jac_m_raw(x1, y1, x3, y3, one, one, one);
    Ok(IntervalMatrix { rows: 4, cols: 3, entries: raw.to_vec() })
}

/// Point evaluation of dF/dx, row-major 4x4.
pub fn jac_x_point(c: &Configuration, m: &MassPoint) -> [f64; 16] {
    generated::jac_x_raw(c.x1, c.y1, c.x3, c.y3, m.m1, m.m3, m.m4)
}

/// Point evaluation of dF/dm, row-major 4x3.
pub fn jac_m_point(c: &Configuration) -> [f64; 12] {
    generated::jac_m_raw(c.x1, c.y1, c.x3, c.y3, 1.0, 1.0, 1.0)
}

/// Interval enclosures of the four position Hessians of F over a box.
pub fn hess_xx(b: &Box4, m: &MassInterval) -> Result<[IntervalMatrix; 4], CcError> {
    collision_guard(b)?;
    let [x1, y1, x3, y3] = b.components;
    let raw = generated::hess_xx_raw(x1, y1, x3, y3, m.m1, m.m3, m.m4);
    Ok(split4(&raw, 4, 4))
}

/// Interval enclosures of the four mixed x-m second-derivative blocks (4x3
/// each); like jac_m these depend on position only.
pub fn hess_xm(b: &Box4) -> Result<[IntervalMatrix; 4], CcError> {
    collision_guard(b)?;
    let [x1, y1, x3, y3] = b.components;
    let one = Interval::ONE;
    let raw = generated::hess_xm_raw(x1, y1, x3, y3, one, one, one);
    Ok(split4(&raw, 4, 3))
}

/// d^2 F / dm^2 is identically zero: F is linear in the masses.
pub fn hess_mm() -> [IntervalMatrix; 4] {
    [
        IntervalMatrix::zeros(3, 3),
        IntervalMatrix::zeros(3, 3),
        IntervalMatrix::zeros(3, 3),
        IntervalMatrix::zeros(3, 3),
    ]
}

/// Point evaluation of the four position Hessians, row-major.
pub fn hess_xx_point(c: &Configuration, m: &MassPoint) -> [f64; 64] {
    generated::hess_xx_raw(c.x1, c.y1, c.x3, c.y3, m.m1, m.m3, m.m4)
}

/// Point evaluation of the four mixed blocks, row-major 4x3 each.
pub fn hess_xm_point(c: &Configuration) -> [f64; 48] {
    generated::hess_xm_raw(c.x1, c.y1, c.x3, c.y3, 1.0, 1.0, 1.0)
}

fn split4(raw: &[Interval], rows: usize, cols: usize) -> [IntervalMatrix; 4] {
    let n = rows * cols;
    std::array::from_fn(|k| IntervalMatrix {
        rows,
        cols,
        entries: raw[k * n..(k + 1) * n].to_vec(),
    })
}

/// True when the whole box provably lies outside the admissible region, so
/// no convex central configuration (in this ordering) can live in it. Each
/// test is a conservative interval check of one admissibility constraint.
pub fn certainly_outside_admissible(b: &Box4) -> bool {
    let [x1, y1, x3, y3] = b.components;
    let y_lo = y_floor_lower();
    let y_hi = y_ceil_upper();

    // |x| < 1 strictly
    if x1.lo() >= 1.0 || x1.hi() <= -1.0 || x3.lo() >= 1.0 || x3.hi() <= -1.0 {
        return true;
    }
    // y1 in (2-sqrt3, sqrt3), y3 in (-sqrt3, -(2-sqrt3))
    if y1.hi() <= y_lo || y1.lo() >= y_hi || y3.lo() >= -y_lo || y3.hi() <= -y_hi {
        return true;
    }
    // x1*x3 >= 0
    if (x1.hi() < 0.0 && x3.lo() > 0.0) || (x1.lo() > 0.0 && x3.hi() < 0.0) {
        return true;
    }
    // the four pinned-pair distances are < 2
    squared_distances(x1, y1, x3, y3)
        .iter()
        .enumerate()
        .any(|(i, d)| i != 1 && d.lo() >= 4.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_masses() -> MassPoint {
        MassPoint::new(1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn square_configuration_is_an_equilibrium() {
        let c = Configuration { x1: 0.0, y1: 1.0, x3: 0.0, y3: -1.0 };
        let r = residuals_six_point(&c, &unit_masses());
        for v in r {
            assert!(v.abs() < 1e-15, "residual {v}");
        }
        // interval evaluation must enclose zero in all six components
        let b = Box4::centered(c.as_array(), 0.0);
        let ri = residuals_six(&b, &unit_masses().to_interval()).unwrap();
        for v in ri {
            assert!(v.contains_zero(), "enclosure {v}");
        }
    }

    #[test]
    fn delta_areas_on_the_square() {
        let d = delta_areas(0.0_f64, 1.0, 0.0, -1.0);
        assert_eq!(d, [2.0, 2.0, 2.0, 2.0]);
        let d = delta_areas(0.3_f64, 0.0, -0.2, 0.0);
        assert_eq!(d[1], 0.0);
        assert_eq!(d[3], 0.0);
    }

    #[test]
    fn collision_boxes_are_rejected() {
        // a box hugging the body-2 pin at (-1, 0)
        let b = Box4::from_bounds([(-1.0, -0.999999999), (0.0, 1e-10), (0.0, 0.1), (-0.5, -0.4)]);
        let e = residuals_six(&b, &unit_masses().to_interval());
        assert!(matches!(e, Err(CcError::CollisionBox { .. })));
    }

    #[test]
    fn homogeneity_in_masses() {
        let c = Configuration { x1: 0.5, y1: 1.0, x3: 0.5, y3: -1.0 };
        let m = MassPoint::new(0.3, 0.5, 0.7).unwrap();
        let lam = 0.25;
        let ms = MassPoint::new(lam * m.m1, lam * m.m3, lam * m.m4).unwrap();
        let r1 = residuals_six_point(&c, &m);
        let rs = residuals_six_point(&c, &ms);
        // homogeneity holds in the full four-mass vector; with m2 pinned at 1
        // the scaled residual picks up the m2 columns: f(x, lam*m) =
        // lam*f(x, m) + (1-lam)*(m2 terms). Check instead via the exact mass
        // coefficients: f = jac_m * m + b where b is the m2 column.
        let jm = jac_m_point(&c);
        let r6 = residuals_six_point(&c, &MassPoint { m1: 0.0, m3: 0.0, m4: 0.0 });
        for i in 0..4 {
            let lin: f64 = (0..3).map(|j| jm[i * 3 + j] * m.as_array()[j]).sum();
            assert!((r1[i] - (lin + r6[i])).abs() < 1e-12);
            let lin_s: f64 = (0..3).map(|j| jm[i * 3 + j] * ms.as_array()[j]).sum();
            assert!((rs[i] - (lin_s + r6[i])).abs() < 1e-12);
        }
    }

    #[test]
    fn mass_swap_reflection_symmetry() {
        let c = Configuration { x1: 0.2, y1: 1.1, x3: 0.4, y3: -0.9 };
        let m = MassPoint::new(0.3, 0.6, 0.8).unwrap();
        let cs = c.swap_bodies_1_3();
        let ms = MassPoint::new(m.m3, m.m1, m.m4).unwrap();
        let r = residuals_six_point(&c, &m);
        let rs = residuals_six_point(&cs, &ms);
        // swapping 1<->3 maps (f12,f13,f14,f23,f24,f34) to
        // (-f23, -f13, -f34, -f12, -f24, -f14)
        let expect = [-r[3], -r[1], -r[5], -r[0], -r[4], -r[2]];
        for (a, b) in rs.iter().zip(expect) {
            assert!((a - b).abs() < 1e-13, "{a} vs {b}");
        }
    }

    #[test]
    fn tight_point_evaluation_is_much_narrower() {
        let c = Configuration {
            x1: 0.153_853_287_075_216_6,
            y1: 1.408_661_969_854_815_1,
            x3: 0.116_111_584_288_535_5,
            y3: -1.484_878_202_646_704_3,
        };
        let m = MassPoint::new(0.2, 0.3, 0.4).unwrap();
        let tight = residuals_six_tight(&c, &m).unwrap();
        let b = Box4::centered(c.as_array(), 0.0);
        let wide = residuals_six(&b, &m.to_interval()).unwrap();
        for (t, w) in tight.iter().zip(&wide) {
            assert!(w.contains_interval(t));
            assert!(t.diameter() < 1e-25, "tight width {}", t.diameter());
            assert!(t.diameter() < w.diameter() / 1e6);
        }
    }

    #[test]
    fn outside_admissible_filters() {
        // entire box below the y1 floor
        let b = Box4::from_bounds([(0.0, 0.5), (0.0, 0.26), (0.0, 0.5), (-1.0, -0.5)]);
        assert!(certainly_outside_admissible(&b));
        // opposite-sign x1, x3
        let b = Box4::from_bounds([(-0.9, -0.5), (0.5, 1.0), (0.5, 0.9), (-1.0, -0.5)]);
        assert!(certainly_outside_admissible(&b));
        // a perfectly admissible box
        let b = Box4::from_bounds([(0.0, 0.2), (0.9, 1.1), (0.0, 0.2), (-1.1, -0.9)]);
        assert!(!certainly_outside_admissible(&b));
        // r23 >= 2
        let b = Box4::from_bounds([(0.0, 0.2), (0.9, 1.1), (0.9, 0.95), (-1.72, -1.7)]);
        assert!(certainly_outside_admissible(&b));
    }
}
