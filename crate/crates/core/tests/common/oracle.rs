//! Brute-force reference implementations, independent of the library's
//! solvers. Only plain `Vec<f64>` arithmetic is used here.

#![allow(dead_code)]

use std::f64::consts::PI;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let k = b.len();
    for col in 0..k {
        let piv = (col..k).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-13 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..k {
            let f = a[r][col] / a[col][col];
            for c in col..k {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; k];
    for r in (0..k).rev() {
        let s: f64 = (r + 1..k).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// Minimum-norm point of `conv(v)` by enumerating every simplex of at most
/// `d + 1` vertices and keeping affine minimizers that lie inside it.
pub fn min_norm_point_by_faces(v: &[Vec<f64>]) -> Vec<f64> {
    let n = v.len();
    let d = v[0].len();
    let mut best: Option<Vec<f64>> = None;
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if idx.len() > d + 1 {
            continue;
        }
        let k = idx.len();
        let mut a = vec![vec![0.0; k + 1]; k + 1];
        for r in 0..k {
            for c in 0..k {
                a[r][c] = dot(&v[idx[r]], &v[idx[c]]);
            }
            a[r][k] = 1.0;
            a[k][r] = 1.0;
        }
        let mut b = vec![0.0; k + 1];
        b[k] = 1.0;
        let Some(sol) = solve_linear(a, b) else { continue };
        if sol[..k].iter().any(|&m| m < -1e-12) {
            continue;
        }
        let mut p = vec![0.0; d];
        for (r, &i) in idx.iter().enumerate() {
            for j in 0..d {
                p[j] += sol[r] * v[i][j];
            }
        }
        if best.as_ref().is_none_or(|b| norm(&p) < norm(b)) {
            best = Some(p);
        }
    }
    best.expect("a single vertex is always a candidate")
}

/// Margin of a labeling (0 when infeasible).
pub fn labeled_margin(points: &[Vec<f64>], labels: &[i8]) -> f64 {
    let signed: Vec<Vec<f64>> = points
        .iter()
        .zip(labels)
        .map(|(x, &y)| x.iter().map(|c| y as f64 * c).collect())
        .collect();
    let p = min_norm_point_by_faces(&signed);
    let r = norm(&p);
    if r <= 1e-9 {
        0.0
    } else {
        r
    }
}

/// Optimal margin by scanning all `2^n` labelings.
pub fn exhaustive_theta(points: &[Vec<f64>]) -> f64 {
    let n = points.len();
    (0..1u32 << n)
        .map(|mask| {
            let labels: Vec<i8> = (0..n).map(|i| if mask & (1 << i) != 0 { 1 } else { -1 }).collect();
            labeled_margin(points, &labels)
        })
        .fold(0.0, f64::max)
}

fn min_abs_projection(points: &[Vec<f64>], phi: f64) -> f64 {
    let w = [phi.cos(), phi.sin()];
    points.iter().map(|x| dot(&w, x).abs()).fold(f64::INFINITY, f64::min)
}

/// Exact optimal margin in the plane: the maximum of `min_i |⟨w(φ), x_i⟩|`
/// is attained where two terms cross or where one term peaks.
pub fn angle_sweep_theta(points: &[Vec<f64>]) -> f64 {
    let mut candidates = Vec::new();
    for (i, x) in points.iter().enumerate() {
        candidates.push(x[1].atan2(x[0]));
        for y in &points[i + 1..] {
            for s in [1.0, -1.0] {
                let dx = x[0] - s * y[0];
                let dy = x[1] - s * y[1];
                // w ⊥ (x − s·y)
                candidates.push(dy.atan2(dx) + PI / 2.0);
            }
        }
    }
    candidates.into_iter().map(|phi| min_abs_projection(points, phi)).fold(0.0, f64::max)
}

/// Number of distinct sign vectors of unit normals in the plane, counted
/// on the arcs between consecutive zero crossings.
pub fn angle_sweep_labelings(points: &[Vec<f64>]) -> usize {
    let mut zeros: Vec<f64> = Vec::new();
    for x in points {
        let base = x[1].atan2(x[0]) + PI / 2.0;
        for k in 0..2 {
            zeros.push((base + k as f64 * PI).rem_euclid(2.0 * PI));
        }
    }
    zeros.sort_by(f64::total_cmp);
    let mut seen = std::collections::BTreeSet::new();
    for k in 0..zeros.len() {
        let a = zeros[k];
        let b = if k + 1 < zeros.len() { zeros[k + 1] } else { zeros[0] + 2.0 * PI };
        if b - a < 1e-12 {
            continue;
        }
        let phi = (a + b) / 2.0;
        let w = [phi.cos(), phi.sin()];
        let sig: Vec<bool> = points.iter().map(|x| dot(&w, x) > 0.0).collect();
        seen.insert(sig);
    }
    seen.len()
}

/// Best affine margin in the plane for a fixed direction: half the largest
/// gap between consecutive projections.
fn affine_margin_at(points: &[Vec<f64>], phi: f64) -> f64 {
    let w = [phi.cos(), phi.sin()];
    let mut p: Vec<f64> = points.iter().map(|x| dot(&w, x)).collect();
    p.sort_by(f64::total_cmp);
    p.windows(2).map(|s| (s[1] - s[0]) / 2.0).fold(0.0, f64::max)
}

/// Dense sweep over directions followed by golden-section refinement of
/// the best cells.
pub fn mmc_sweep(points: &[Vec<f64>]) -> f64 {
    let steps = 20_000;
    let h = PI / steps as f64;
    let values: Vec<f64> = (0..steps).map(|k| affine_margin_at(points, k as f64 * h)).collect();
    let mut order: Vec<usize> = (0..steps).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let mut best = values[order[0]];
    for &k in order.iter().take(20) {
        let (mut lo, mut hi) = ((k as f64 - 1.0) * h, (k as f64 + 1.0) * h);
        let g = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..80 {
            let a = hi - g * (hi - lo);
            let b = lo + g * (hi - lo);
            if affine_margin_at(points, a) < affine_margin_at(points, b) {
                lo = a;
            } else {
                hi = b;
            }
        }
        best = best.max(affine_margin_at(points, (lo + hi) / 2.0));
    }
    best
}
