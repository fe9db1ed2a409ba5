//! Quantitative implicit-function-theorem constants and the uniqueness-ball
//! radii (r, eps) around a certified solution.
//!
//! Two modes share one surface. Rigorous mode produces true upper bounds:
//! norms from interval enclosures (Frobenius / Holder), inverse norms through
//! the Neumann-series bound, and derivative sups over circumscribing boxes of
//! the stated balls (subdivided to keep the over-estimation mild). Reference
//! mode reproduces the published constants instead: exact spectral norms at
//! the point and bilinear-norm maxima over sampled Euclidean balls — K_xx
//! over the radius-R1 position ball, K_xm and K_mm over the joint
//! position-mass ball of radius sqrt((R1^2+R2^2)/2), which is what the
//! reported values and both (r, eps) pairs are consistent with. Reference
//! numbers are diagnostics, never proof inputs.

use crate::boxes::{Box4, IntervalMatrix};
use crate::eqs::{self, Configuration, MassPoint};
use crate::error::CcError;
use crate::linalg::{self, Tensor3};
use crate::round::{add_up, div_down, div_up, mul_up, sqrt_down, sub_down};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    Rigorous,
    Reference,
}

/// The norm-bound bundle attached to a certified point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IftConstants {
    pub mode: BoundMode,
    pub l_m: f64,
    pub m_x: f64,
    pub k_xx: f64,
    pub k_mm: f64,
    pub k_xm: f64,
    pub r1: f64,
    pub r2: f64,
    pub p: f64,
    pub r: f64,
    pub epsilon: f64,
}

/// A certified point plus the mass ball on which the solution persists.
/// `excluded` stays false until the exclusion sweep has cleared the
/// complement region; only then is the ball a uniqueness ball.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct UniquenessBall {
    pub center_mass: MassPoint,
    pub epsilon: f64,
    pub center_x: Configuration,
    pub r: f64,
    pub constants: IftConstants,
    pub excluded: bool,
}

impl UniquenessBall {
    pub fn new(center_mass: MassPoint, center_x: Configuration, constants: IftConstants) -> Self {
        UniquenessBall {
            center_mass,
            epsilon: constants.epsilon,
            center_x,
            r: constants.r,
            constants,
            excluded: false,
        }
    }
}

/// ||D_m F(x0, m0)||: reference = exact spectral norm; rigorous = interval
/// enclosure over the certified box, bounded by min(Frobenius, Holder).
pub fn bound_l_m(enclosure: &Box4, _m0: &MassPoint, mode: BoundMode) -> Result<f64, CcError> {
    match mode {
        BoundMode::Reference => {
            let c = Configuration::from_array(enclosure.midpoint());
            let jm = eqs::jac_m_point(&c);
            Ok(linalg::spectral_norm(4, 3, &jm))
        }
        BoundMode::Rigorous => Ok(eqs::jac_m(enclosure)?.spectral_norm_upper()),
    }
}

/// ||(D_x F(x0, m0))^-1||: reference = exact spectral norm of the numeric
/// inverse; rigorous = Neumann bound ||C|| / (1 - ||I - C A||) with A the
/// interval Jacobian over the certified box.
pub fn bound_m_x(enclosure: &Box4, m0: &MassPoint, mode: BoundMode) -> Result<f64, CcError> {
    let c0 = Configuration::from_array(enclosure.midpoint());
    let jac_mid = eqs::jac_x_point(&c0, m0);
    let (c, cond) = linalg::invert(4, &jac_mid)
        .ok_or(CcError::SingularMidpointJacobian { cond: f64::INFINITY })?;
    if cond > 1e12 {
        return Err(CcError::SingularMidpointJacobian { cond });
    }
    match mode {
        BoundMode::Reference => Ok(linalg::spectral_norm(4, 4, &c)),
        BoundMode::Rigorous => {
            let a = eqs::jac_x(enclosure, &m0.to_interval())?;
            let residue = IntervalMatrix::identity(4).sub(&a.mul_point_left(&c));
            let eta = residue.spectral_norm_upper();
            if eta >= 1.0 {
                return Err(CcError::NeumannBoundFails { norm: eta });
            }
            let c_norm = IntervalMatrix::from_point(4, 4, &c).spectral_norm_upper();
            Ok(div_up(c_norm, sub_down(1.0, eta)))
        }
    }
}

/// Sup bounds for the second-derivative norms. Returns (k_xx, k_mm, k_xm).
///
/// Rigorous: interval evaluation over the circumscribing boxes of the balls
/// (the position box subdivided 3 ways per axis), with the tensor bound
/// sqrt(sum_j ||H_j||^2); k_mm = 0 exactly since F is linear in the masses.
/// Reference: bilinear-norm maxima over sampled balls as described above,
/// including the literal position-Hessian reading of k_mm that reproduces
/// the published value.
pub fn bound_k(
    enclosure: &Box4,
    m0: &MassPoint,
    r1: f64,
    r2: f64,
    mode: BoundMode,
) -> Result<(f64, f64, f64), CcError> {
    let x0 = enclosure.midpoint();
    match mode {
        BoundMode::Rigorous => {
            // circumscribing box of B(x*, R) over every x* in the enclosure
            let k_xx = sup_hess_xx_over_box(&enclosure.inflate(r1), &m0.to_interval(), 3)?;
            // the joint R2 ball projects into the position box of radius R2;
            // the mixed block does not depend on the masses
            let k_xm = sup_hess_xm_over_box(&enclosure.inflate(r2), 3)?;
            // D_m^2 F = 0: F is linear in m
            Ok((k_xx, 0.0, k_xm))
        }
        BoundMode::Reference => {
            let k_xx = linalg::max_over_ball(4, r1, &|d: &[f64]| {
                let c = Configuration::from_array([
                    x0[0] + d[0],
                    x0[1] + d[1],
                    x0[2] + d[2],
                    x0[3] + d[3],
                ]);
                let h = eqs::hess_xx_point(&c, m0);
                Tensor3 { n1: 4, n2: 4, n3: 4, data: &h }.bilinear_norm()
            });
            let rho = ((r1 * r1 + r2 * r2) / 2.0).sqrt();
            let k_xm = linalg::max_over_ball(7, rho, &|d: &[f64]| {
                let c = Configuration::from_array([
                    x0[0] + d[0],
                    x0[1] + d[1],
                    x0[2] + d[2],
                    x0[3] + d[3],
                ]);
                let h = eqs::hess_xm_point(&c);
                Tensor3 { n1: 4, n2: 4, n3: 3, data: &h }.bilinear_norm()
            });
            let k_mm = linalg::max_over_ball(7, rho, &|d: &[f64]| {
                let c = Configuration::from_array([
                    x0[0] + d[0],
                    x0[1] + d[1],
                    x0[2] + d[2],
                    x0[3] + d[3],
                ]);
                let m = MassPoint {
                    m1: m0.m1 + d[4],
                    m3: m0.m3 + d[5],
                    m4: m0.m4 + d[6],
                };
                let h = eqs::hess_xx_point(&c, &m);
                Tensor3 { n1: 4, n2: 4, n3: 4, data: &h }.bilinear_norm()
            });
            Ok((k_xx, k_mm, k_xm))
        }
    }
}

/// sqrt(sum_j ||H_j||^2) upper bound over a box, maximized over an s-per-axis
/// subdivision (the bound is valid on each cell; the max over cells bounds
/// the sup over the box).
fn sup_hess_xx_over_box(b: &Box4, m: &eqs::MassInterval, s: usize) -> Result<f64, CcError> {
    let mut worst = 0.0f64;
    for cell in subdivide(b, s) {
        let hr = match eqs::hess_xx(&cell, m) {
            Ok(h) => h,
            Err(CcError::CollisionBox { dist_sq_lo, threshold }) => {
                return Err(CcError::CollisionBox { dist_sq_lo, threshold })
            }
            Err(e) => return Err(e),
        };
        let mut sum = 0.0;
        for h in &hr {
            let n = h.spectral_norm_upper();
            sum = add_up(sum, mul_up(n, n));
        }
        worst = worst.max(crate::round::sqrt_up(sum));
    }
    Ok(worst)
}

fn sup_hess_xm_over_box(b: &Box4, s: usize) -> Result<f64, CcError> {
    let mut worst = 0.0f64;
    for cell in subdivide(b, s) {
        let hr = eqs::hess_xm(&cell)?;
        let mut sum = 0.0;
        for h in &hr {
            let n = h.spectral_norm_upper();
            sum = add_up(sum, mul_up(n, n));
        }
        worst = worst.max(crate::round::sqrt_up(sum));
    }
    Ok(worst)
}

fn subdivide(b: &Box4, s: usize) -> Vec<Box4> {
    let mut cells = Vec::with_capacity(s.pow(4));
    let cuts: Vec<Vec<f64>> = b
        .components
        .iter()
        .map(|c| {
            let (lo, hi) = (c.lo(), c.hi());
            (0..=s).map(|k| lo + (hi - lo) * (k as f64) / (s as f64)).collect()
        })
        .collect();
    for i0 in 0..s {
        for i1 in 0..s {
            for i2 in 0..s {
                for i3 in 0..s {
                    cells.push(Box4::from_bounds([
                        (cuts[0][i0], cuts[0][i0 + 1]),
                        (cuts[1][i1], cuts[1][i1 + 1]),
                        (cuts[2][i2], cuts[2][i2 + 1]),
                        (cuts[3][i3], cuts[3][i3 + 1]),
                    ]));
                }
            }
        }
    }
    cells
}

/// Re-check the defining inequality M_x (L_m + K_xm r + K_mm eps) eps <= r/2
/// with upward rounding on the left side.
pub fn ift_inequality_holds(c: &IftConstants, r: f64, eps: f64) -> bool {
    let inner = add_up(c.l_m, add_up(mul_up(c.k_xm, r), mul_up(c.k_mm, eps)));
    let lhs = mul_up(mul_up(c.m_x, inner), eps);
    lhs <= r / 2.0
}

/// Solve for (P, r, eps) given the norm constants. r = min(P, R2) with
/// P = min(1/(2 M_x K_xx), R1); eps is the largest value allowed by the
/// three-way minimum, shrunk until the defining inequality verifies under
/// outward rounding.
pub fn solve_r_epsilon(c: &IftConstants) -> Result<(f64, f64, f64), CcError> {
    if !(c.m_x > 0.0) || !c.m_x.is_finite() {
        return Err(CcError::NonpositiveRadius { r: 0.0, eps: 0.0 });
    }
    let p = div_down(1.0, mul_up(2.0, mul_up(c.m_x, c.k_xx))).min(c.r1);
    let r = p.min(c.r2);
    if !(r > 0.0) {
        return Err(CcError::NonpositiveRadius { r, eps: 0.0 });
    }

    let quad_root = if c.k_mm > 0.0 {
        // largest eps with M(L + K_xm r + K_mm eps) eps = r/2
        let b = c.m_x * (c.l_m + c.k_xm * r);
        let d = 2.0 * c.m_x * c.k_mm;
        (-b + (b * b + d * r).sqrt()) / d
    } else {
        // linear limit of the quadratic
        r / (2.0 * c.m_x * (c.l_m + c.k_xm * r))
    };
    let cap_ball = sqrt_down(sub_down(c.r2 * c.r2, r * r).max(0.0));
    let cap_xm = if c.k_xm > 0.0 {
        div_down(1.0, mul_up(4.0, mul_up(c.m_x, c.k_xm)))
    } else {
        f64::INFINITY
    };
    let mut eps = quad_root.min(cap_ball).min(cap_xm);
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(CcError::NonpositiveRadius { r, eps });
    }
    // enforce the inequality under outward rounding
    let mut guard = 0;
    while !ift_inequality_holds(c, r, eps) {
        eps *= 1.0 - 1e-12;
        guard += 1;
        if guard > 64 {
            return Err(CcError::NonpositiveRadius { r, eps });
        }
    }
    Ok((p, r, eps))
}

/// Full constant computation for a certified enclosure.
pub fn compute_constants(
    enclosure: &Box4,
    m0: &MassPoint,
    r1: f64,
    r2: f64,
    mode: BoundMode,
) -> Result<IftConstants, CcError> {
    let l_m = bound_l_m(enclosure, m0, mode)?;
    let m_x = bound_m_x(enclosure, m0, mode)?;
    let (k_xx, k_mm, k_xm) = bound_k(enclosure, m0, r1, r2, mode)?;
    let mut c = IftConstants {
        mode,
        l_m,
        m_x,
        k_xx,
        k_mm,
        k_xm,
        r1,
        r2,
        p: 0.0,
        r: 0.0,
        epsilon: 0.0,
    };
    let (p, mut r, eps) = solve_r_epsilon(&c)?;
    if mode == BoundMode::Rigorous {
        // the true zero can sit anywhere in the enclosure: retire the
        // enclosure halfwidth from the position radius
        let half = enclosure.diameter() / 2.0;
        r = sub_down(r, half);
        if !(r > 0.0) {
            return Err(CcError::NonpositiveRadius { r, eps });
        }
    }
    c.p = p;
    c.r = r;
    c.epsilon = eps;
    Ok(c)
}
