//! Small dense-vector helpers used throughout the crate.
//!
//! Points are plain `Vec<f64>` / `&[f64]`; nalgebra is pulled in only where an
//! actual decomposition is needed (nullspaces, linear solves, least squares).

use nalgebra::{DMatrix, DVector};

use crate::error::{GeomError, Result};

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// a + s * b
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn normalize(a: &[f64]) -> Vec<f64> {
    let n = norm(a);
    scale(a, 1.0 / n)
}

/// Append a homogeneous coordinate 1: p ∈ R^n ↦ (p, 1) ∈ R^{n+1}.
pub fn lift(p: &[f64]) -> Vec<f64> {
    let mut v = p.to_vec();
    v.push(1.0);
    v
}

/// Inverse of [`lift`]: divide by the last coordinate.
pub fn dehomogenize(v: &[f64]) -> Result<Vec<f64>> {
    let last = *v.last().ok_or_else(|| {
        GeomError::InvalidArgument("cannot dehomogenize empty vector".into())
    })?;
    if last.abs() < 1e-300 {
        return Err(GeomError::InvalidArgument(
            "last homogeneous coordinate is zero".into(),
        ));
    }
    Ok(v[..v.len() - 1].iter().map(|x| x / last).collect())
}

pub fn mean(points: &[Vec<f64>]) -> Vec<f64> {
    let n = points.len() as f64;
    let dim = points[0].len();
    let mut m = vec![0.0; dim];
    for p in points {
        for (mi, pi) in m.iter_mut().zip(p) {
            *mi += pi / n;
        }
    }
    m
}

/// Dimension of the affine hull of a point set.
pub fn affine_rank(points: &[Vec<f64>], tol: f64) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let dim = points[0].len();
    let center = mean(points);
    let rows = points.len();
    let mat = DMatrix::from_fn(rows, dim, |r, c| points[r][c] - center[c]);
    mat.singular_values().iter().filter(|s| **s > tol).count()
}

/// Hyperplane through `n` points of R^n: returns a unit normal and offset with
/// `normal · p = offset` for every input point, or None when the points are
/// affinely degenerate.
pub fn hyperplane_through(points: &[Vec<f64>], tol: f64) -> Option<(Vec<f64>, f64)> {
    let n = points[0].len();
    debug_assert_eq!(points.len(), n);
    // Square matrix with the difference rows plus a zero row keeps the full
    // right singular basis available (thin SVD would drop the nullspace).
    let mut mat = DMatrix::zeros(n, n);
    for r in 1..n {
        for c in 0..n {
            mat[(r - 1, c)] = points[r][c] - points[0][c];
        }
    }
    let svd = mat.svd(false, true);
    let sv = &svd.singular_values;
    // Need rank exactly n-1 among the n-1 difference rows.
    if n >= 2 && sv[n - 2] <= tol {
        return None;
    }
    let v_t = svd.v_t.as_ref()?;
    let normal: Vec<f64> = (0..n).map(|c| v_t[(n - 1, c)]).collect();
    let nn = norm(&normal);
    if nn < tol {
        return None;
    }
    let normal = scale(&normal, 1.0 / nn);
    let offset = dot(&normal, &points[0]);
    Some((normal, offset))
}

/// Solve a square linear system with a residual guard against near-singular
/// inputs; returns None when no trustworthy solution exists.
pub fn solve_square(a: &DMatrix<f64>, b: &DVector<f64>, tol: f64) -> Option<DVector<f64>> {
    let lu = a.clone().lu();
    let x = lu.solve(b)?;
    let residual = (a * &x - b).norm();
    let scale = 1.0 + b.norm() + a.norm() * x.norm();
    if residual > tol * scale {
        return None;
    }
    Some(x)
}

/// Least-squares fit of a matrix B minimizing Σ‖B xᵢ - yᵢ‖²; also returns the
/// condition number of the sample Gram matrix.
pub fn fit_linear_map(xs: &[Vec<f64>], ys: &[Vec<f64>]) -> Result<(DMatrix<f64>, f64)> {
    let m = xs.len();
    let d_in = xs[0].len();
    let d_out = ys[0].len();
    if m < d_in {
        return Err(GeomError::InvalidArgument(format!(
            "linear fit needs at least {d_in} samples, got {m}"
        )));
    }
    let x = DMatrix::from_fn(m, d_in, |r, c| xs[r][c]);
    let y = DMatrix::from_fn(m, d_out, |r, c| ys[r][c]);
    let sv = x.clone().svd(false, false).singular_values;
    let cond = sv[0] / sv[sv.len() - 1].max(1e-300);
    // Normal equations are fine at desk scale given the condition guard.
    let gram = x.transpose() * &x;
    let rhs = x.transpose() * &y;
    let lu = gram.lu();
    let bt = lu
        .solve(&rhs)
        .ok_or_else(|| GeomError::Singular("linear fit normal equations".into()))?;
    Ok((bt.transpose(), cond))
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Iterator over all k-element index subsets of 0..n in lexicographic order.
pub struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    pub fn new(n: usize, k: usize) -> Self {
        let current = if k <= n { Some((0..k).collect()) } else { None };
        Subsets { n, current }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.clone()?;
        let k = cur.len();
        let mut next = cur.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] + 1 <= self.n - (k - i) {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_all() {
        let all: Vec<_> = Subsets::new(5, 3).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[9], vec![2, 3, 4]);
    }

    #[test]
    fn hyperplane_through_two_points() {
        let pts = vec![vec![1.0, -1.0], vec![1.0, 1.0]];
        let (normal, offset) = hyperplane_through(&pts, 1e-12).unwrap();
        // x = 1 line, normal ±(1, 0)
        assert!(normal[1].abs() < 1e-12);
        assert!((normal[0].abs() - 1.0).abs() < 1e-12);
        assert!((offset - normal[0]).abs() < 1e-12);
    }

    #[test]
    fn affine_rank_of_colinear_points() {
        let pts = vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]];
        assert_eq!(affine_rank(&pts, 1e-9), 1);
    }
}
