//! Property suites: containment and inclusion monotonicity of the interval
//! kernel (high-volume seeded fuzz plus proptest shrinking), degenerate
//! consistency, serialization round trips, and the residual containment
//! property over random boxes.

use cc4b::boxes::Box4;
use cc4b::eqs::{self, Configuration, MassPoint};
use cc4b::interval::Interval;
use proptest::prelude::*;

/// Deterministic xorshift stream for the high-volume fuzz.
struct Stream(u64);

impl Stream {
    fn next_f(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Random interval over a few magnitude scales.
    fn interval(&mut self) -> Interval {
        let scale = 10f64.powi((self.next_f() * 6.0) as i32 - 3);
        let a = (self.next_f() * 2.0 - 1.0) * scale;
        let b = a + self.next_f() * scale;
        Interval::new(a, b)
    }

    /// A point inside the interval.
    fn inside(&mut self, i: &Interval) -> f64 {
        let t = self.next_f();
        let p = i.lo() + t * (i.hi() - i.lo());
        p.clamp(i.lo(), i.hi())
    }
}

#[test]
fn containment_fuzz_hundred_thousand_cases() {
    let mut s = Stream(0x1234_5678_9abc_def1);
    let mut violations = 0u32;
    for _ in 0..100_000 {
        let a = s.interval();
        let b = s.interval();
        let x = s.inside(&a);
        let y = s.inside(&b);

        if !(a + b).contains(x + y) {
            violations += 1;
        }
        if !(a - b).contains(x - y) {
            violations += 1;
        }
        if !(a * b).contains(x * y) {
            violations += 1;
        }
        if !b.contains_zero() && !(a / b).contains(x / y) {
            violations += 1;
        }
        if a.lo() >= 0.0 {
            if !a.sqrt().unwrap().contains(x.sqrt()) {
                violations += 1;
            }
            if !a.pow_3_2().unwrap().contains(x.sqrt() * x) {
                violations += 1;
            }
        }
        if !a.square().contains(x * x) {
            violations += 1;
        }
    }
    assert_eq!(violations, 0, "containment violations found");
}

#[test]
fn monotonicity_fuzz_hundred_thousand_cases() {
    let mut s = Stream(0x0bad_cafe_d00d_f00d);
    let mut violations = 0u32;
    let mut shrink = |outer: &Interval, s: &mut Stream| -> Interval {
        let lo = s.inside(outer);
        let hi = s.inside(outer);
        if lo <= hi {
            Interval::new(lo, hi)
        } else {
            Interval::new(hi, lo)
        }
    };
    for _ in 0..100_000 {
        let ya = s.interval();
        let yb = s.interval();
        let xa = shrink(&ya, &mut s);
        let xb = shrink(&yb, &mut s);

        if !(ya + yb).contains_interval(&(xa + xb)) {
            violations += 1;
        }
        if !(ya - yb).contains_interval(&(xa - xb)) {
            violations += 1;
        }
        if !(ya * yb).contains_interval(&(xa * xb)) {
            violations += 1;
        }
        if !yb.contains_zero() && !(ya / yb).contains_interval(&(xa / xb)) {
            violations += 1;
        }
        if ya.lo() >= 0.0
            && !ya
                .sqrt()
                .unwrap()
                .contains_interval(&xa.sqrt().unwrap())
        {
            violations += 1;
        }
        if !ya.square().contains_interval(&xa.square()) {
            violations += 1;
        }
    }
    assert_eq!(violations, 0, "monotonicity violations found");
}

proptest! {
    #[test]
    fn degenerate_ops_enclose_machine_result(
        a in -1e6f64..1e6,
        b in -1e6f64..1e6,
    ) {
        let ia = Interval::point(a);
        let ib = Interval::point(b);
        prop_assert!((ia + ib).contains(a + b));
        prop_assert!((ia - ib).contains(a - b));
        prop_assert!((ia * ib).contains(a * b));
        if b != 0.0 {
            prop_assert!((ia / ib).contains(a / b));
        }
        if a >= 0.0 {
            prop_assert!(ia.sqrt().unwrap().contains(a.sqrt()));
        }
    }

    #[test]
    fn bracket_serialization_round_trips(
        lo in -1e12f64..1e12,
        w in 0.0f64..1e6,
    ) {
        let i = Interval::new(lo, lo + w);
        let s = i.to_bracket_string();
        let back = Interval::from_bracket_string(&s).unwrap();
        prop_assert_eq!(back, i);
    }

    #[test]
    fn bisection_partitions_and_midpoint_is_inside(
        c0 in 0.0f64..0.9, w0 in 1e-6f64..0.5,
        c1 in 0.3f64..1.6, w1 in 1e-6f64..0.5,
        c2 in 0.0f64..0.9, w2 in 1e-6f64..0.5,
        c3 in -1.6f64..-0.3, w3 in 1e-6f64..0.5,
    ) {
        let b = Box4::from_bounds([
            (c0, c0 + w0),
            (c1, c1 + w1),
            (c2, c2 + w2),
            (c3, c3 + w3),
        ]);
        prop_assert!(b.contains_point(b.midpoint()));
        let (l, r) = b.bisect_longest();
        prop_assert_eq!(l.hull(&r), b);
        prop_assert!(l.intersect(&r).is_some());
    }

    /// Residual containment: a point inside a box evaluates inside the box
    /// enclosure, for every component.
    #[test]
    fn residual_enclosures_contain_point_values(
        x1 in 0.05f64..0.8, y1 in 0.5f64..1.5,
        x3 in 0.05f64..0.8, y3 in -1.5f64..-0.5,
        m1 in 0.1f64..1.0, m3 in 0.1f64..1.0, m4 in 0.1f64..1.0,
        r in 1e-6f64..0.04,
        t0 in 0.0f64..1.0, t1 in 0.0f64..1.0, t2 in 0.0f64..1.0, t3 in 0.0f64..1.0,
    ) {
        let b = Box4::centered([x1, y1, x3, y3], r);
        let m = MassPoint { m1, m3, m4 };
        let enclosures = eqs::residuals_six(&b, &m.to_interval()).unwrap();
        let p = Configuration {
            x1: x1 - r + 2.0 * r * t0,
            y1: y1 - r + 2.0 * r * t1,
            x3: x3 - r + 2.0 * r * t2,
            y3: y3 - r + 2.0 * r * t3,
        };
        let vals = eqs::residuals_six_point(&p, &m);
        for (v, e) in vals.iter().zip(&enclosures) {
            prop_assert!(e.contains(*v), "{} not in {}", v, e);
        }
    }

    /// Interval hull arithmetic: mass interval enclosures contain each
    /// sampled mass's residuals.
    #[test]
    fn mass_interval_enclosures_contain_point_masses(
        m1 in 0.3f64..0.9, m3 in 0.3f64..0.9, m4 in 0.3f64..0.9,
        eps in 1e-6f64..0.05,
        u1 in -1.0f64..1.0, u3 in -1.0f64..1.0, u4 in -1.0f64..1.0,
    ) {
        let c = Configuration { x1: 0.2, y1: 1.1, x3: 0.3, y3: -1.2 };
        let b = Box4::centered(c.as_array(), 0.0);
        let center = MassPoint { m1, m3, m4 };
        let hull = center.interval_hull(eps);
        let enclosures = eqs::residuals_six(&b, &hull).unwrap();
        let sample = MassPoint {
            m1: m1 + eps * u1,
            m3: m3 + eps * u3,
            m4: m4 + eps * u4,
        };
        let vals = eqs::residuals_six_point(&c, &sample);
        for (v, e) in vals.iter().zip(&enclosures) {
            prop_assert!(e.contains(*v));
        }
    }
}
