//! Krawczyk operator, its trichotomy, and the four-step certification search
//! for a fixed mass vector.
//!
//! Step 1 tiles the inner search hull. Step 2 discards tiles where some
//! residual enclosure misses zero. Step 3 runs the Krawczyk iteration on each
//! survivor: image strictly interior certifies a unique zero, disjoint image
//! refutes the tile, a fat image triggers bisection, partial overlap shrinks
//! to the intersection. Step 4 re-checks the two left-out residuals on the
//! certified enclosure.

use crate::boxes::{Box4, IntervalMatrix};
use crate::eqs::{
    self, certainly_outside_admissible, f_reduced_tight, region_constants,
    residuals_six_tight, Configuration, MassPoint,
};
use crate::error::CcError;
use crate::interval::Interval;
use crate::linalg;
use serde::{Deserialize, Serialize};

/// Set-relation outcome of one Krawczyk application.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KrawczykStatus {
    /// Image strictly inside the box: exactly one zero in the box.
    UniqueSolution,
    /// Image disjoint from the box: no zero in the box.
    NoSolution,
    /// Box contained in the image: no information, bisect.
    Undecided,
    /// Partial overlap: every zero lies in the intersection.
    Shrunk,
}

#[derive(Debug, Clone)]
pub struct KrawczykResult {
    pub status: KrawczykStatus,
    /// The operator image K(x0, [x], F).
    pub image: Box4,
    /// Intersection of image and box (None when disjoint).
    pub refined: Option<Box4>,
}

/// Search controls. `grid_n1` is the per-side tile count of the initial
/// subdivision; `tol` the enclosure-diameter stopping tolerance; `max_depth`
/// the bisection budget per tile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub grid_n1: u32,
    pub tol: f64,
    pub max_depth: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { grid_n1: 20, tol: 1e-15, max_depth: 60 }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), CcError> {
        if self.grid_n1 == 0 {
            return Err(CcError::Parse("grid_n1 must be >= 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(CcError::Parse("tol must be positive".into()));
        }
        Ok(())
    }
}

/// A certified unique equilibrium for a fixed mass vector.
#[derive(Debug, Clone)]
pub struct CertifiedSolution {
    pub enclosure: Box4,
    pub mass: MassPoint,
    /// Upper bound on |f_ij| at the enclosure midpoint, over all six.
    pub midpoint_residual_bound: f64,
    /// Tiles surviving the residual filter.
    pub survivor_count: usize,
    /// Bisections performed during refinement.
    pub bisection_count: usize,
}

/// Outermost tiles extend this far past the search hull so that solutions
/// sitting exactly on the hull boundary (x1 = x3 = 0 whenever m4 = m2) are
/// interior to some tile.
pub const EDGE_MARGIN: f64 = 1e-9;

/// Step 1: tile the inner hull, `n1` tiles per side, with outward-rounded
/// tile faces. Interior faces overlap by a few ulps so that a solution
/// sitting exactly on a face (the equal-mass case puts y1 = 1 on one) is
/// interior to both neighbors; the duplicate certification merges later.
/// The outer faces carry `EDGE_MARGIN`.
pub fn tile_search_hull(n1: u32) -> Vec<Box4> {
    let hull = region_constants().inner;
    let n = n1 as usize;
    let step3 = |v: f64, up: bool| -> f64 {
        let mut x = v;
        for _ in 0..3 {
            x = if up { x.next_up() } else { x.next_down() };
        }
        x
    };
    let mut cuts: [Vec<f64>; 4] = Default::default();
    for (d, c) in hull.components.iter().enumerate() {
        let (lo, hi) = (c.lo(), c.hi());
        let w = hi - lo;
        let mut v = Vec::with_capacity(n + 1);
        for k in 0..=n {
            v.push(lo + w * (k as f64) / (n as f64));
        }
        v[0] = lo - EDGE_MARGIN;
        v[n] = hi + EDGE_MARGIN;
        cuts[d] = v;
    }
    let mut tiles = Vec::with_capacity(n.pow(4));
    let bound = |cut: &[f64], i: usize| -> (f64, f64) {
        let lo = if i == 0 { cut[0] } else { step3(cut[i], false) };
        let hi = if i + 1 == n { cut[n] } else { step3(cut[i + 1], true) };
        (lo, hi)
    };
    for i0 in 0..n {
        for i1 in 0..n {
            for i2 in 0..n {
                for i3 in 0..n {
                    tiles.push(Box4::from_bounds([
                        bound(&cuts[0], i0),
                        bound(&cuts[1], i1),
                        bound(&cuts[2], i2),
                        bound(&cuts[3], i3),
                    ]));
                }
            }
        }
    }
    tiles
}

/// Step 2: keep the boxes where all six residual enclosures contain zero.
/// Collision boxes count as excluded.
pub fn step2_filter(boxes: &[Box4], m: &MassPoint) -> Vec<Box4> {
    let mi = m.to_interval();
    boxes
        .iter()
        .filter(|b| match eqs::residuals_six(b, &mi) {
            Ok(r) => r.iter().all(Interval::contains_zero),
            Err(_) => false,
        })
        .copied()
        .collect()
}

/// One application of the Krawczyk operator
/// K(x0, [x], F) = x0 - C F(x0) + (I - C dF([x])) ([x] - x0)
/// with C the floating-point inverse of the midpoint Jacobian.
pub fn krawczyk_image(x0: [f64; 4], b: &Box4, m: &MassPoint) -> Result<Box4, CcError> {
    let mi = m.to_interval();
    let cfg = Configuration::from_array(x0);

    let jac_mid = eqs::jac_x_point(&cfg, m);
    let (c, cond) = linalg::invert(4, &jac_mid)
        .ok_or(CcError::SingularMidpointJacobian { cond: f64::INFINITY })?;
    if cond > 1e12 {
        return Err(CcError::SingularMidpointJacobian { cond });
    }

    // tight enclosure of F at the midpoint
    let f0 = f_reduced_tight(&cfg, m)?;
    // interval Jacobian over the whole box
    let jx = eqs::jac_x(b, &mi)?;
    // I - C * dF([x])
    let contraction = IntervalMatrix::identity(4).sub(&jx.mul_point_left(&c));

    // [x] - x0
    let dx: Vec<Interval> = b
        .components
        .iter()
        .zip(x0)
        .map(|(comp, mid)| *comp - Interval::point(mid))
        .collect();
    let tail = contraction.mul_vec(&dx);

    // C * F(x0)
    let cf: Vec<Interval> = (0..4)
        .map(|i| {
            let mut acc = Interval::ZERO;
            for (j, f) in f0.iter().enumerate() {
                acc = acc + Interval::point(c[i * 4 + j]) * *f;
            }
            acc
        })
        .collect();

    let mut out = [Interval::ZERO; 4];
    for i in 0..4 {
        out[i] = Interval::point(x0[i]) - cf[i] + tail[i];
    }
    Ok(Box4::new(out))
}

/// Lemma-style classification of image vs box.
pub fn classify(b: &Box4, image: &Box4) -> KrawczykResult {
    if b.contains_in_interior(image) {
        KrawczykResult {
            status: KrawczykStatus::UniqueSolution,
            image: *image,
            refined: image.intersect(b),
        }
    } else if image.is_disjoint(b) {
        KrawczykResult { status: KrawczykStatus::NoSolution, image: *image, refined: None }
    } else if image.contains_box(b) {
        KrawczykResult { status: KrawczykStatus::Undecided, image: *image, refined: Some(*b) }
    } else {
        KrawczykResult {
            status: KrawczykStatus::Shrunk,
            image: *image,
            refined: image.intersect(b),
        }
    }
}

/// Step-3 outcome for one candidate box.
#[derive(Debug, Clone)]
enum BoxOutcome {
    Certified { original: Box4, enclosure: Box4 },
    Refuted,
}

/// Refine one candidate box with the five-branch iteration. Bisections spawn
/// sub-boxes that re-enter the residual filter first. `bisections` counts
/// splits across the whole recursion.
fn refine_box(
    b: Box4,
    m: &MassPoint,
    cfg: &SearchConfig,
    depth: u32,
    bisections: &mut usize,
    out: &mut Vec<BoxOutcome>,
) -> Result<(), CcError> {
    let mi = m.to_interval();
    let mut cur = b;
    loop {
        // a bisected box re-enters Step 2
        match eqs::residuals_six(&cur, &mi) {
            Ok(r) => {
                if !r.iter().all(Interval::contains_zero) {
                    out.push(BoxOutcome::Refuted);
                    return Ok(());
                }
            }
            Err(CcError::CollisionBox { .. }) => {
                out.push(BoxOutcome::Refuted);
                return Ok(());
            }
            Err(e) => return Err(e),
        }

        let image = match krawczyk_image(cur.midpoint(), &cur, m) {
            Ok(i) => i,
            Err(CcError::SingularMidpointJacobian { .. }) => {
                // no preconditioner here; split and retry below
                if depth >= cfg.max_depth {
                    return Err(CcError::BudgetExhausted { depth: depth as usize });
                }
                *bisections += 1;
                let (l, r) = cur.bisect_longest();
                refine_box(l, m, cfg, depth + 1, bisections, out)?;
                refine_box(r, m, cfg, depth + 1, bisections, out)?;
                return Ok(());
            }
            Err(e) => return Err(e),
        };
        let result = classify(&cur, &image);
        match result.status {
            KrawczykStatus::UniqueSolution => {
                let mut enc = result.refined.expect("interior image intersects");
                // polish: keep contracting while the diameter improves
                for _ in 0..64 {
                    if enc.diameter() < cfg.tol {
                        break;
                    }
                    let next = krawczyk_image(enc.midpoint(), &enc, m)?;
                    match next.intersect(&enc) {
                        Some(t) if t.diameter() < enc.diameter() => enc = t,
                        _ => break,
                    }
                }
                if enc.diameter() >= cfg.tol {
                    return Err(CcError::BudgetExhausted { depth: depth as usize });
                }
                out.push(BoxOutcome::Certified { original: cur, enclosure: enc });
                return Ok(());
            }
            KrawczykStatus::NoSolution => {
                out.push(BoxOutcome::Refuted);
                return Ok(());
            }
            KrawczykStatus::Undecided => {
                if depth >= cfg.max_depth {
                    return Err(CcError::BudgetExhausted { depth: depth as usize });
                }
                *bisections += 1;
                let (l, r) = cur.bisect_longest();
                refine_box(l, m, cfg, depth + 1, bisections, out)?;
                refine_box(r, m, cfg, depth + 1, bisections, out)?;
                return Ok(());
            }
            KrawczykStatus::Shrunk => {
                let next = result.refined.expect("overlap is nonempty");
                // guard against stalls: if the intersection stopped shrinking,
                // bisect instead of looping forever
                if next.diameter() >= 0.999 * cur.diameter() {
                    if depth >= cfg.max_depth {
                        return Err(CcError::BudgetExhausted { depth: depth as usize });
                    }
                    *bisections += 1;
                    let (l, r) = next.bisect_longest();
                    refine_box(l, m, cfg, depth + 1, bisections, out)?;
                    refine_box(r, m, cfg, depth + 1, bisections, out)?;
                    return Ok(());
                }
                cur = next;
            }
        }
    }
}

/// Steps 1-4: certify that exactly one equilibrium exists in the search hull
/// for the given masses, and return its enclosure.
pub fn certify_unique(m: &MassPoint, cfg: &SearchConfig) -> Result<CertifiedSolution, CcError> {
    cfg.validate()?;
    let tiles = tile_search_hull(cfg.grid_n1);
    let survivors = step2_filter(&tiles, m);
    let survivor_count = survivors.len();
    if survivors.is_empty() {
        return Err(CcError::NoSolutionFound);
    }

    let mut bisections = 0usize;
    let mut outcomes = Vec::new();
    for b in survivors {
        refine_box(b, m, cfg, 0, &mut bisections, &mut outcomes)?;
    }

    let mut certified: Vec<(Box4, Box4)> = outcomes
        .into_iter()
        .filter_map(|o| match o {
            BoxOutcome::Certified { original, enclosure } => Some((original, enclosure)),
            BoxOutcome::Refuted => None,
        })
        .collect();
    // tightest first, so duplicates merge into the best enclosure
    certified.sort_by(|a, b| a.1.diameter().partial_cmp(&b.1.diameter()).expect("finite"));

    // merge duplicates: two certifications describe the same zero when one
    // enclosure lies inside the other's certified box (where uniqueness holds)
    let mut unique: Vec<(Box4, Box4)> = Vec::new();
    'cands: for (ob, eb) in certified {
        for (oa, ea) in &unique {
            let same = (oa.contains_box(&eb) || ob.contains_box(ea)) && !ea.is_disjoint(&eb);
            if same {
                continue 'cands;
            }
        }
        unique.push((ob, eb));
    }
    match unique.len() {
        0 => return Err(CcError::NoSolutionFound),
        1 => {}
        n => return Err(CcError::MultipleCandidates { count: n }),
    }
    let (_, enclosure) = unique[0];

    // Step 4: all six residuals must admit zero on the certified enclosure
    let all_six = eqs::residuals_six(&enclosure, &m.to_interval())?;
    if !all_six.iter().all(Interval::contains_zero) {
        return Err(CcError::NoSolutionFound);
    }

    let mid = Configuration::from_array(enclosure.midpoint());
    let tight = residuals_six_tight(&mid, m)?;
    let residual_bound = tight.iter().map(Interval::magnitude).fold(0.0, f64::max);

    // the enclosure must stay inside the outer hull (it may poke past the
    // inner hull by the tile margin) and must not be provably inadmissible
    let outer = region_constants().outer.inflate(EDGE_MARGIN);
    if !outer.contains_box(&enclosure) || certainly_outside_admissible(&enclosure) {
        return Err(CcError::NoSolutionFound);
    }

    Ok(CertifiedSolution {
        enclosure,
        mass: *m,
        midpoint_residual_bound: residual_bound,
        survivor_count,
        bisection_count: bisections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 1-D sanity: the scalar Krawczyk operator on g(t) = 2t^2/(t^2+9) - 1
    /// over [2.5, 4] certifies the unique root t = 3.
    #[test]
    fn one_dimensional_krawczyk_certifies_root() {
        let g = |t: Interval| {
            let nine = Interval::point(9.0);
            let two = Interval::point(2.0);
            two * t.square() / (t.square() + nine) - Interval::ONE
        };
        let dg = |t: Interval| {
            // g'(t) = 36 t / (t^2+9)^2
            let nine = Interval::point(9.0);
            Interval::point(36.0) * t / (t.square() + nine).square()
        };
        let mut x = Interval::new(2.5, 4.0);
        for _ in 0..12 {
            let x0 = Interval::point(x.midpoint());
            let c = 1.0 / dg(x0).midpoint();
            let k = x0 - Interval::point(c) * g(x0)
                + (Interval::ONE - Interval::point(c) * dg(x)) * (x - x0);
            assert!(!k.is_disjoint(&x), "root must not be lost");
            if x.contains_in_interior(&k) && k.diameter() < 1e-12 {
                assert!(k.contains(3.0));
                return;
            }
            x = k.intersect(&x).expect("overlap");
        }
        panic!("did not certify the root");
    }

    #[test]
    fn classify_matches_set_relations() {
        let b = Box4::from_bounds([(0.0, 1.0); 4]);
        let inside = Box4::from_bounds([(0.25, 0.75); 4]);
        let outside = Box4::from_bounds([(2.0, 3.0); 4]);
        let fat = Box4::from_bounds([(-1.0, 2.0); 4]);
        let partial = Box4::from_bounds([(0.5, 1.5), (0.25, 0.75), (0.25, 0.75), (0.25, 0.75)]);
        assert_eq!(classify(&b, &inside).status, KrawczykStatus::UniqueSolution);
        assert_eq!(classify(&b, &outside).status, KrawczykStatus::NoSolution);
        assert_eq!(classify(&b, &fat).status, KrawczykStatus::Undecided);
        let r = classify(&b, &partial);
        assert_eq!(r.status, KrawczykStatus::Shrunk);
        assert_eq!(
            r.refined.unwrap().components[0],
            Interval::new(0.5, 1.0)
        );
    }

    #[test]
    fn tiles_cover_the_hull_with_margin() {
        let tiles = tile_search_hull(3);
        assert_eq!(tiles.len(), 81);
        let hull = region_constants().inner;
        // every hull corner is interior to the union
        for p in [
            [0.0, 0.267, 0.0, -1.733],
            [1.0, 1.733, 1.0, -0.267],
        ] {
            assert!(tiles.iter().any(|t| t.contains_point(p)));
        }
        let lo = tiles
            .iter()
            .map(|t| t.components[0].lo())
            .fold(f64::INFINITY, f64::min);
        assert!(lo < hull.components[0].lo());
    }
}

#[cfg(test)]
mod containment_tests {
    use super::*;
    use crate::eqs::MassPoint;

    /// Any zero in the box lies in the operator image: shrinking boxes
    /// around the certified solution always intersect their image and the
    /// image always contains the certified enclosure.
    #[test]
    fn image_contains_the_zero_at_every_scale() {
        let m = MassPoint::new(0.2, 0.3, 0.4).unwrap();
        let cfg = SearchConfig { grid_n1: 8, tol: 1e-15, max_depth: 60 };
        let sol = certify_unique(&m, &cfg).unwrap();
        let center = sol.enclosure.midpoint();
        for radius in [0.05, 0.01, 1e-3, 1e-5, 1e-8] {
            let b = Box4::centered(center, radius);
            let image = krawczyk_image(b.midpoint(), &b, &m).unwrap();
            assert!(!image.is_disjoint(&b), "image lost the zero at radius {radius}");
            assert!(
                image.intersect(&b).unwrap().contains_box(&sol.enclosure)
                    || image.contains_box(&sol.enclosure),
                "image at radius {radius} must retain the certified enclosure"
            );
        }
    }
}
