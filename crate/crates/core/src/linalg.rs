//! Small dense f64 linear algebra: 4x4 inversion for the Krawczyk
//! preconditioner, Jacobi eigensolves for exact spectral norms, the bilinear
//! tensor norm, and a deterministic maximizer over Euclidean balls.
//!
//! Everything here is plain floating point. Rigorous bounds never come from
//! this module; they come from interval evaluations plus the norm bounds in
//! `boxes`. This module feeds the preconditioner (any fixed real matrix is
//! admissible there) and the non-rigorous reference mode.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Invert a small row-major matrix by Gauss-Jordan with partial pivoting.
/// Returns (inverse, condition_estimate) where the estimate is
/// ||A||_F * ||A^-1||_F.
pub fn invert(n: usize, a: &[f64]) -> Option<(Vec<f64>, f64)> {
    assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut inv = vec![0.0; n * n];
    for i in 0..n {
        inv[i * n + i] = 1.0;
    }
    for col in 0..n {
        let mut piv = col;
        let mut best = m[col * n + col].abs();
        for r in col + 1..n {
            let v = m[r * n + col].abs();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 || !best.is_finite() {
            return None;
        }
        if piv != col {
            for j in 0..n {
                m.swap(col * n + j, piv * n + j);
                inv.swap(col * n + j, piv * n + j);
            }
        }
        let d = m[col * n + col];
        for j in 0..n {
            m[col * n + j] /= d;
            inv[col * n + j] /= d;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r * n + col];
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                m[r * n + j] -= f * m[col * n + j];
                inv[r * n + j] -= f * inv[col * n + j];
            }
        }
    }
    let cond = frob(a) * frob(&inv);
    if !cond.is_finite() {
        return None;
    }
    Some((inv, cond))
}

pub fn frob(a: &[f64]) -> f64 {
    a.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn mat_vec(n: usize, cols: usize, a: &[f64], x: &[f64]) -> Vec<f64> {
    (0..n)
        .map(|i| (0..cols).map(|j| a[i * cols + j] * x[j]).sum())
        .collect()
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn sym_eigenvalues(n: usize, a: &[f64]) -> Vec<f64> {
    let mut m = a.to_vec();
    for _ in 0..64 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += m[i * n + j] * m[i * n + j];
            }
        }
        if off.sqrt() < 1e-15 * (1.0 + frob(&m)) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = c * akp - s * akq;
                    m[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[p * n + k];
                    let aqk = m[q * n + k];
                    m[p * n + k] = c * apk - s * aqk;
                    m[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| m[i * n + i]).collect()
}

/// Exact spectral norm (largest singular value) of a rows x cols matrix.
pub fn spectral_norm(rows: usize, cols: usize, a: &[f64]) -> f64 {
    // Gram matrix of the smaller side
    let (n, gram): (usize, Vec<f64>) = if cols <= rows {
        let mut g = vec![0.0; cols * cols];
        for i in 0..cols {
            for j in 0..cols {
                g[i * cols + j] = (0..rows).map(|k| a[k * cols + i] * a[k * cols + j]).sum();
            }
        }
        (cols, g)
    } else {
        let mut g = vec![0.0; rows * rows];
        for i in 0..rows {
            for j in 0..rows {
                g[i * rows + j] = (0..cols).map(|k| a[i * cols + k] * a[j * cols + k]).sum();
            }
        }
        (rows, g)
    };
    sym_eigenvalues(n, &gram)
        .into_iter()
        .fold(0.0, f64::max)
        .max(0.0)
        .sqrt()
}

/// A third-order tensor as a stack of `n1` row-major `n2 x n3` matrices.
pub struct Tensor3<'a> {
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub data: &'a [f64],
}

impl Tensor3<'_> {
    #[inline]
    fn at(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[(i * self.n2 + j) * self.n3 + k]
    }

    /// sup over unit v (len n2), w (len n3) of |T(v, w)| in the output
    /// Euclidean norm, by alternating singular-vector ascent from a few
    /// deterministic starts. Exact up to the iteration's convergence; the
    /// value is a lower bound of the true bilinear norm by construction.
    pub fn bilinear_norm(&self) -> f64 {
        let mut best = 0.0_f64;
        let starts = self.n3 + 1;
        for s in 0..starts {
            let mut w = vec![0.0; self.n3];
            if s < self.n3 {
                w[s] = 1.0;
            } else {
                let v = 1.0 / (self.n3 as f64).sqrt();
                w.iter_mut().for_each(|e| *e = v);
            }
            let mut val = 0.0;
            for _ in 0..16 {
                // A_w[i][j] = sum_k T[i,j,k] w[k]; best v = top right singular
                // vector of A_w
                let mut aw = vec![0.0; self.n1 * self.n2];
                for i in 0..self.n1 {
                    for j in 0..self.n2 {
                        aw[i * self.n2 + j] =
                            (0..self.n3).map(|k| self.at(i, j, k) * w[k]).sum();
                    }
                }
                let v = top_right_singular(self.n1, self.n2, &aw);
                // B_v[i][k] = sum_j T[i,j,k] v[j]
                let mut bv = vec![0.0; self.n1 * self.n3];
                for i in 0..self.n1 {
                    for k in 0..self.n3 {
                        bv[i * self.n3 + k] =
                            (0..self.n2).map(|j| self.at(i, j, k) * v[j]).sum();
                    }
                }
                let w2 = top_right_singular(self.n1, self.n3, &bv);
                let new_val = norm(&mat_vec(self.n1, self.n3, &bv, &w2));
                w = w2;
                if (new_val - val).abs() < 1e-13 * (1.0 + new_val) {
                    val = new_val;
                    break;
                }
                val = new_val;
            }
            best = best.max(val);
        }
        best
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Top right-singular vector of a rows x cols matrix via the Gram matrix and
/// a few inverse-power-free iterations seeded by Jacobi eigenvalues.
fn top_right_singular(rows: usize, cols: usize, a: &[f64]) -> Vec<f64> {
    // Gram = A^T A (cols x cols)
    let mut g = vec![0.0; cols * cols];
    for i in 0..cols {
        for j in 0..cols {
            g[i * cols + j] = (0..rows).map(|k| a[k * cols + i] * a[k * cols + j]).sum();
        }
    }
    // power iteration with deterministic start; shift-free is fine since the
    // Gram matrix is PSD
    let mut v = vec![1.0 / (cols as f64).sqrt(); cols];
    for it in 0..60 {
        let next = mat_vec(cols, cols, &g, &v);
        let n = norm(&next);
        if n < 1e-290 {
            // matrix ~ 0; any unit vector works
            return v;
        }
        let next: Vec<f64> = next.iter().map(|x| x / n).collect();
        let delta: f64 = next
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).abs().min((a + b).abs()))
            .sum();
        v = next;
        if delta < 1e-12 && it > 3 {
            break;
        }
    }
    v
}

/// Deterministically maximize `f` over the closed Euclidean ball of radius
/// `radius` around the origin in `dim` dimensions: quasi-random sphere seeds,
/// then a projected compass search on the best few.
pub fn max_over_ball<F: Fn(&[f64]) -> f64>(dim: usize, radius: f64, f: &F) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cc4b);
    let n_seeds = 16 * dim;
    let mut seeds: Vec<(f64, Vec<f64>)> = Vec::with_capacity(n_seeds + 1);
    seeds.push((f(&vec![0.0; dim]), vec![0.0; dim]));
    for _ in 0..n_seeds {
        let mut d: Vec<f64> = (0..dim).map(|_| standard_normal(&mut rng)).collect();
        let n = norm(&d);
        if n == 0.0 {
            continue;
        }
        d.iter_mut().for_each(|x| *x *= radius / n);
        seeds.push((f(&d), d));
    }
    seeds.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let mut best = seeds[0].0;
    for (_, start) in seeds.into_iter().take(4) {
        let mut p = start;
        let mut val = f(&p);
        let mut h = radius / 4.0;
        let mut budget = 1500usize;
        while h > radius * 1e-7 && budget > 0 {
            let mut improved = false;
            for k in 0..dim {
                for sgn in [1.0, -1.0] {
                    budget = budget.saturating_sub(1);
                    let mut q = p.clone();
                    q[k] += sgn * h;
                    let n = norm(&q);
                    if n > radius {
                        q.iter_mut().for_each(|x| *x *= radius / n);
                    }
                    let fq = f(&q);
                    if fq > val + 1e-13 * (1.0 + val.abs()) {
                        val = fq;
                        p = q;
                        improved = true;
                    }
                }
            }
            if !improved {
                h *= 0.5;
            }
        }
        best = best.max(val);
    }
    best
}

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller; deterministic given the seeded stream
    loop {
        let u: f64 = rng.gen::<f64>();
        let v: f64 = rng.gen::<f64>();
        if u > 1e-12 {
            return (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invert_recovers_identity() {
        let a = [2.0, 1.0, 0.0, 0.5, 1.0, -1.0, 0.25, 0.0, 3.0];
        let (inv, cond) = invert(3, &a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let v: f64 = (0..3).map(|k| a[i * 3 + k] * inv[k * 3 + j]).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((v - expect).abs() < 1e-12);
            }
        }
        assert!(cond > 1.0 && cond < 1e3);
        assert!(invert(2, &[1.0, 2.0, 2.0, 4.0]).is_none());
    }

    #[test]
    fn spectral_norm_of_diag_and_rect() {
        assert!((spectral_norm(2, 2, &[3.0, 0.0, 0.0, -5.0]) - 5.0).abs() < 1e-12);
        // rank-1: norm = |u| |v|
        let a = [2.0, 4.0, 6.0, 1.0, 2.0, 3.0];
        let expect = (5.0_f64).sqrt() * (14.0_f64).sqrt();
        assert!((spectral_norm(2, 3, &a) - expect).abs() < 1e-10);
    }

    #[test]
    fn bilinear_norm_of_identity_stack() {
        // T[i] = E_ii: T(v,w)_i = v_i w_i; sup at aligned basis vectors = 1
        let mut data = vec![0.0; 2 * 2 * 2];
        data[0] = 1.0; // T[0][0][0]
        data[7] = 1.0; // T[1][1][1]
        let t = Tensor3 { n1: 2, n2: 2, n3: 2, data: &data };
        assert!((t.bilinear_norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn ball_max_of_linear_functional() {
        let f = |p: &[f64]| 2.0 * p[0] - p[1];
        let m = max_over_ball(2, 0.5, &f);
        assert!((m - 0.5 * (5.0_f64).sqrt()).abs() < 1e-6);
    }
}
