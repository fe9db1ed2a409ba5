//! Interval vectors over configuration space and small interval matrices.

use crate::interval::Interval;
use crate::round::{add_up, mul_up, sqrt_up};
use std::fmt;

/// Axis-aligned box in (x1, y1, x3, y3) space: the search unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Box4 {
    pub components: [Interval; 4],
}

pub const COORD_NAMES: [&str; 4] = ["x1", "y1", "x3", "y3"];

impl Box4 {
    pub fn new(components: [Interval; 4]) -> Self {
        Box4 { components }
    }

    pub fn from_bounds(bounds: [(f64, f64); 4]) -> Self {
        Box4 {
            components: bounds.map(|(lo, hi)| Interval::new(lo, hi)),
        }
    }

    /// Box centered at `c` with halfwidth `r` in every coordinate.
    pub fn centered(c: [f64; 4], r: f64) -> Self {
        Box4 {
            components: c.map(|v| Interval::point(v).inflate(r)),
        }
    }

    pub fn midpoint(&self) -> [f64; 4] {
        self.components.map(|c| c.midpoint())
    }

    /// Largest component diameter.
    pub fn diameter(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.diameter())
            .fold(0.0, f64::max)
    }

    pub fn contains_point(&self, p: [f64; 4]) -> bool {
        self.components.iter().zip(p).all(|(c, v)| c.contains(v))
    }

    pub fn contains_box(&self, other: &Box4) -> bool {
        self.components
            .iter()
            .zip(&other.components)
            .all(|(a, b)| a.contains_interval(b))
    }

    /// Every component of `other` lies strictly inside the matching component.
    pub fn contains_in_interior(&self, other: &Box4) -> bool {
        self.components
            .iter()
            .zip(&other.components)
            .all(|(a, b)| a.contains_in_interior(b))
    }

    /// Disjoint iff some coordinate pair is disjoint.
    pub fn is_disjoint(&self, other: &Box4) -> bool {
        self.components
            .iter()
            .zip(&other.components)
            .any(|(a, b)| a.is_disjoint(b))
    }

    pub fn intersect(&self, other: &Box4) -> Option<Box4> {
        let mut out = [Interval::ZERO; 4];
        for i in 0..4 {
            out[i] = self.components[i].intersect(&other.components[i])?;
        }
        Some(Box4 { components: out })
    }

    pub fn hull(&self, other: &Box4) -> Box4 {
        let mut out = [Interval::ZERO; 4];
        for i in 0..4 {
            out[i] = self.components[i].hull(&other.components[i]);
        }
        Box4 { components: out }
    }

    /// Split at the midpoint of the widest coordinate; ties break toward the
    /// lowest coordinate index.
    pub fn bisect_longest(&self) -> (Box4, Box4) {
        let mut k = 0;
        let mut w = self.components[0].diameter();
        for (i, c) in self.components.iter().enumerate().skip(1) {
            let d = c.diameter();
            if d > w {
                w = d;
                k = i;
            }
        }
        let c = self.components[k];
        let m = c.midpoint();
        let mut left = *self;
        let mut right = *self;
        left.components[k] = Interval::new(c.lo(), m);
        right.components[k] = Interval::new(m, c.hi());
        (left, right)
    }

    /// Symmetric enlargement of every component by `delta >= 0`.
    pub fn inflate(&self, delta: f64) -> Box4 {
        Box4 {
            components: self.components.map(|c| c.inflate(delta)),
        }
    }

    /// Upper bound of the Euclidean norm over the box.
    pub fn norm_upper(&self) -> f64 {
        let mut s = 0.0;
        for c in &self.components {
            let m = c.magnitude();
            s = add_up(s, mul_up(m, m));
        }
        sqrt_up(s)
    }
}

impl fmt::Display for Box4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Dense interval matrix (row-major), used for interval Jacobians and the
/// Krawczyk contraction factor.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Interval>,
}

impl IntervalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntervalMatrix {
            rows,
            cols,
            entries: vec![Interval::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Interval::ONE;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Interval>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        IntervalMatrix {
            rows: r,
            cols: c,
            entries: rows.iter().flat_map(|row| row.iter().copied()).collect(),
        }
    }

    pub fn from_point(rows: usize, cols: usize, vals: &[f64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        IntervalMatrix {
            rows,
            cols,
            entries: vals.iter().map(|&v| Interval::point(v)).collect(),
        }
    }

    /// `self * v` with interval entries; `v.len() == cols`.
    pub fn mul_vec(&self, v: &[Interval]) -> Vec<Interval> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Interval::ZERO;
                for j in 0..self.cols {
                    acc = acc + self[(i, j)] * v[j];
                }
                acc
            })
            .collect()
    }

    /// `self - other` entrywise.
    pub fn sub(&self, other: &IntervalMatrix) -> IntervalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntervalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }

    /// Point matrix times interval matrix, enclosing all pointwise products.
    pub fn mul_point_left(&self, c: &[f64]) -> IntervalMatrix {
        // c is rows x rows row-major
        let n = self.rows;
        let mut out = IntervalMatrix::zeros(n, self.cols);
        for i in 0..n {
            for j in 0..self.cols {
                let mut acc = Interval::ZERO;
                for k in 0..n {
                    acc = acc + Interval::point(c[i * n + k]) * self[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    /// Entrywise magnitude bound max(|lo|, |hi|).
    pub fn magnitudes(&self) -> Vec<f64> {
        self.entries.iter().map(Interval::magnitude).collect()
    }

    /// Upward-rounded Frobenius norm of the entrywise magnitudes; an upper
    /// bound for the spectral norm of every point matrix in the enclosure.
    pub fn frobenius_norm_upper(&self) -> f64 {
        let mut s = 0.0;
        for e in &self.entries {
            let m = e.magnitude();
            s = add_up(s, mul_up(m, m));
        }
        sqrt_up(s)
    }

    /// Upper bound for the spectral norm: min of the Frobenius bound and the
    /// Holder bound sqrt(norm_1 * norm_inf), all on entrywise magnitudes with
    /// upward rounding.
    pub fn spectral_norm_upper(&self) -> f64 {
        let mags = self.magnitudes();
        let mut col_sums = vec![0.0; self.cols];
        let mut row_sums = vec![0.0; self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let m = mags[i * self.cols + j];
                col_sums[j] = add_up(col_sums[j], m);
                row_sums[i] = add_up(row_sums[i], m);
            }
        }
        let n1 = col_sums.iter().copied().fold(0.0, f64::max);
        let ninf = row_sums.iter().copied().fold(0.0, f64::max);
        let holder = sqrt_up(mul_up(n1, ninf));
        self.frobenius_norm_upper().min(holder)
    }
}

impl std::ops::Index<(usize, usize)> for IntervalMatrix {
    type Output = Interval;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Interval {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntervalMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Interval {
        &mut self.entries[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_longest_side_with_tie_rule() {
        let b = Box4::from_bounds([(0.0, 2.0), (0.0, 1.0), (0.0, 1.0), (0.0, 1.0)]);
        let (l, r) = b.bisect_longest();
        assert_eq!(l.components[0], Interval::new(0.0, 1.0));
        assert_eq!(r.components[0], Interval::new(1.0, 2.0));

        // all equal widths: coordinate 0 (x1) splits
        let b = Box4::from_bounds([(0.0, 1.0); 4]);
        let (l, _) = b.bisect_longest();
        assert_eq!(l.components[0], Interval::new(0.0, 0.5));
        assert_eq!(l.components[1], Interval::new(0.0, 1.0));

        // y3 widest
        let b = Box4::from_bounds([(0.0, 1.0), (0.0, 1.0), (0.0, 1.0), (0.0, 4.0)]);
        let (l, _) = b.bisect_longest();
        assert_eq!(l.components[3], Interval::new(0.0, 2.0));
    }

    #[test]
    fn union_of_halves_is_whole() {
        let b = Box4::from_bounds([(0.1, 0.9), (0.2, 0.3), (-1.0, 1.0), (-0.5, -0.1)]);
        let (l, r) = b.bisect_longest();
        let hull = l.hull(&r);
        assert_eq!(hull, b);
    }

    #[test]
    fn frobenius_of_identity() {
        let m = IntervalMatrix::identity(4);
        assert_eq!(m.frobenius_norm_upper(), 2.0);
        assert_eq!(IntervalMatrix::zeros(3, 5).frobenius_norm_upper(), 0.0);
    }

    #[test]
    fn matvec_contains_point_products() {
        let m = IntervalMatrix::from_rows(&[
            vec![Interval::new(1.0, 2.0), Interval::new(-1.0, 0.0)],
            vec![Interval::new(0.0, 0.5), Interval::new(3.0, 3.0)],
        ]);
        let v = [Interval::new(1.0, 1.0), Interval::new(2.0, 2.0)];
        let out = m.mul_vec(&v);
        // point instance A = [[1.5, -0.5],[0.25, 3]], v = (1,2)
        assert!(out[0].contains(1.5 - 1.0));
        assert!(out[1].contains(0.25 + 6.0));
    }
}
