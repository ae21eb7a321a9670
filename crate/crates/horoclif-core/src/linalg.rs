//! Small dense helpers on `Vec<f64>` used by the flag code.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Orthonormal basis of the span, dropping vectors whose residual after
/// projection falls below `rel_tol` times their length.
pub(crate) fn orthonormalize(vectors: &[Vec<f64>], rel_tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let len = norm(v);
        let mut r = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&r, q);
                axpy(-c, q, &mut r);
            }
        }
        let rn = norm(&r);
        if len > 0.0 && rn > rel_tol * len {
            basis.push(r.iter().map(|x| x / rn).collect());
        }
    }
    basis
}

pub(crate) fn rank(vectors: &[Vec<f64>], rel_tol: f64) -> usize {
    orthonormalize(vectors, rel_tol).len()
}

/// Unit vector orthogonal to `span`, which should have dimension one less
/// than the ambient space.
pub(crate) fn complement_direction(span: &[Vec<f64>], dim: usize) -> Option<Vec<f64>> {
    let basis = orthonormalize(span, 1e-12);
    if basis.len() + 1 != dim {
        return None;
    }
    let mut best: Option<Vec<f64>> = None;
    let mut best_len = 0.0;
    for k in 0..dim {
        let mut r = vec![0.0; dim];
        r[k] = 1.0;
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&r, q);
                axpy(-c, q, &mut r);
            }
        }
        let len = norm(&r);
        if len > best_len {
            best_len = len;
            best = Some(r);
        }
    }
    best.map(|r| r.iter().map(|x| x / best_len).collect())
}

/// Determinant of the matrix whose columns are `cols`.
pub(crate) fn det(cols: &[Vec<f64>]) -> f64 {
    let n = cols.len();
    let mut m: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect();
    let mut sign = 1.0;
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| m[i][k].abs().partial_cmp(&m[j][k].abs()).unwrap_or(core::cmp::Ordering::Equal))
            .unwrap_or(k);
        if m[pivot][k] == 0.0 {
            return 0.0;
        }
        if pivot != k {
            m.swap(pivot, k);
            sign = -sign;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let p = &top[k];
        for row in rest {
            let f = row[k] / p[k];
            for (x, y) in row[k..].iter_mut().zip(&p[k..]) {
                *x -= f * y;
            }
        }
    }
    sign * (0..n).map(|k| m[k][k]).product::<f64>()
}

/// Coefficient of `b` in the least-squares fit of `v` by span{a, b}, plus
/// the residual length. Both `v` and `b` are reduced against `a` first.
pub(crate) fn project2(v: &[f64], a: &[f64], b: &[f64]) -> (f64, f64) {
    let aa = dot(a, a);
    let reject = |x: &[f64]| {
        let mut r = x.to_vec();
        for _ in 0..2 {
            let c = dot(&r, a) / aa;
            axpy(-c, a, &mut r);
        }
        r
    };
    let (mut r, bp) = (reject(v), reject(b));
    let beta = dot(&r, &bp) / dot(&bp, &bp);
    axpy(-beta, &bp, &mut r);
    (beta, norm(&r))
}
