//! Minimum-norm point of the convex hull of a finite vector set.
//!
//! Wolfe's active-set method: a Frank–Wolfe vertex is added each major
//! cycle, and minor cycles drop atoms (away moves) until the affine
//! minimizer of the active set lies in its relative interior. The iteration
//! stops on the duality gap between `‖x‖` and the margin `min_i ⟨x, v_i⟩/‖x‖`
//! that the current iterate certifies.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{dot, norm};
use crate::tolerance::Tolerances;

/// Weights below this are dropped from the active set.
const WEIGHT_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct MinNormPoint {
    /// The closest hull point found.
    pub point: Vec<f64>,
    /// Upper bound on the hull distance (`‖point‖`).
    pub upper: f64,
    /// Margin achieved by `point / ‖point‖`, a lower bound on the distance.
    pub lower: f64,
    /// True when `‖point‖ ≤ tol.feas`, i.e. the hull contains the origin.
    pub contains_origin: bool,
    pub iterations: usize,
}

/// Computes the minimum-norm point of `conv(vectors)`.
///
/// `cap` bounds the total number of major and minor cycles.
pub fn min_norm_point(vectors: &[Vec<f64>], tol: &Tolerances, cap: usize) -> Result<MinNormPoint> {
    let Some(first) = vectors.first() else {
        return Err(Error::InvalidInput("empty vector set".into()));
    };
    let d = first.len();

    let start = (0..vectors.len())
        .min_by(|&a, &b| dot(&vectors[a], &vectors[a]).total_cmp(&dot(&vectors[b], &vectors[b])))
        .unwrap();
    let mut active: Vec<usize> = vec![start];
    let mut weights: Vec<f64> = vec![1.0];
    let mut x = vectors[start].clone();

    let mut iterations = 0usize;

    loop {
        let upper = norm(&x);
        if upper <= tol.feas {
            return Ok(MinNormPoint { point: x, upper, lower: 0.0, contains_origin: true, iterations });
        }

        let (fw, fw_val) = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| (i, dot(&x, v)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        let lower = fw_val / upper;
        if upper - lower <= tol.mnp || active.contains(&fw) {
            // a vertex already in the active set means the affine minimizer
            // is optimal up to rounding
            return Ok(MinNormPoint { point: x, upper, lower, contains_origin: false, iterations });
        }

        active.push(fw);
        weights.push(0.0);

        loop {
            iterations += 1;
            if iterations > cap {
                return Err(Error::Convergence { iterations: cap, lower: lower.max(0.0), upper });
            }
            let mu = affine_minimizer(vectors, &active);
            if mu.iter().all(|&m| m > WEIGHT_FLOOR) {
                weights = mu;
                x = combine(vectors, &active, &weights, d);
                break;
            }
            // move from the current weights toward mu until one hits zero
            let step = weights
                .iter()
                .zip(&mu)
                .filter(|(_, &m)| m <= WEIGHT_FLOOR)
                .map(|(&w, &m)| if w - m > 0.0 { w / (w - m) } else { 0.0 })
                .fold(1.0f64, f64::min);
            for (w, m) in weights.iter_mut().zip(&mu) {
                *w = step * m + (1.0 - step) * *w;
            }
            // drop at least the most negative coordinate
            let worst = weights
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .map(|(i, _)| i)
                .unwrap();
            let (kept_active, kept_weights): (Vec<usize>, Vec<f64>) = active
                .iter()
                .zip(&weights)
                .enumerate()
                .filter(|&(k, (_, &w))| k != worst && w > WEIGHT_FLOOR)
                .map(|(_, (&i, &w))| (i, w))
                .unzip();
            let total: f64 = kept_weights.iter().sum();
            if step == 0.0 && !kept_active.contains(&fw) {
                // the new vertex was rejected without moving: no descent
                // direction is left at this precision
                return Ok(MinNormPoint { point: x, upper, lower, contains_origin: false, iterations });
            }
            active = kept_active;
            weights = kept_weights.into_iter().map(|w| w / total).collect();
            x = combine(vectors, &active, &weights, d);
        }
    }
}

fn combine(vectors: &[Vec<f64>], active: &[usize], weights: &[f64], d: usize) -> Vec<f64> {
    let mut x = vec![0.0; d];
    for (&i, &w) in active.iter().zip(weights) {
        for (xk, vk) in x.iter_mut().zip(&vectors[i]) {
            *xk += w * vk;
        }
    }
    x
}

/// Weights `μ` (summing to one) of the point of minimum norm in the affine
/// hull of the active vectors, from the KKT system `[G 1; 1ᵀ 0]`.
fn affine_minimizer(vectors: &[Vec<f64>], active: &[usize]) -> Vec<f64> {
    let k = active.len();
    let mut kkt = DMatrix::<f64>::zeros(k + 1, k + 1);
    for a in 0..k {
        for b in a..k {
            let g = dot(&vectors[active[a]], &vectors[active[b]]);
            kkt[(a, b)] = g;
            kkt[(b, a)] = g;
        }
        kkt[(a, k)] = 1.0;
        kkt[(k, a)] = 1.0;
    }
    let mut rhs = DVector::<f64>::zeros(k + 1);
    rhs[k] = 1.0;

    let sol = kkt
        .clone()
        .lu()
        .solve(&rhs)
        .filter(|s| s.iter().all(|v| v.is_finite()))
        .or_else(|| kkt.svd(true, true).solve(&rhs, 1e-14).ok())
        .unwrap_or_else(|| {
            let mut s = DVector::zeros(k + 1);
            s.iter_mut().take(k).for_each(|v| *v = 1.0 / k as f64);
            s
        });
    let mu: Vec<f64> = sol.iter().take(k).copied().collect();
    let total: f64 = mu.iter().sum();
    mu.into_iter().map(|m| m / total).collect()
}
