//! Small dense helpers. Vectors are plain slices; the only matrix type is a
//! row-major symmetric `d × d` buffer used for Gram accumulations.

use crate::error::{Error, Result};

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Returns `a / ‖a‖`, or `None` when `‖a‖` is below `floor`.
pub fn normalized(a: &[f64], floor: f64) -> Option<Vec<f64>> {
    let n = norm(a);
    if n <= floor || !n.is_finite() {
        return None;
    }
    Some(a.iter().map(|x| x / n).collect())
}

/// Dense symmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Adds `weight · x xᵀ`.
    pub fn add_outer(&mut self, weight: f64, x: &[f64]) {
        let d = self.dim;
        for i in 0..d {
            let wi = weight * x[i];
            if wi == 0.0 {
                continue;
            }
            let row = &mut self.data[i * d..(i + 1) * d];
            for (r, xj) in row.iter_mut().zip(x) {
                *r += wi * xj;
            }
        }
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        let d = self.dim;
        (0..d).map(|i| dot(&self.data[i * d..(i + 1) * d], v)).collect()
    }

    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        dot(v, &self.mul_vec(v))
    }

    fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    fn squared_scaled(&self) -> SymMatrix {
        let d = self.dim;
        let mut out = SymMatrix::zeros(d);
        for i in 0..d {
            for j in i..d {
                let v: f64 = (0..d).map(|k| self.get(i, k) * self.get(k, j)).sum();
                out.data[i * d + j] = v;
                out.data[j * d + i] = v;
            }
        }
        let t = out.trace();
        if t > 0.0 {
            out.data.iter_mut().for_each(|x| *x /= t);
        }
        out
    }
}

/// Outcome of [`top_eigenvector`].
#[derive(Debug, Clone, PartialEq)]
pub struct TopEigen {
    pub vector: Vec<f64>,
    pub value: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Upper limit on repeated squaring; `2^40` plain steps per accelerated
/// step separates relative eigenvalue gaps down to about `1e-11`.
const MAX_SQUARINGS: usize = 40;

/// Iterations spent at each squaring level before squaring again.
const STEPS_PER_LEVEL: usize = 4;

/// Power iteration for the dominant eigenvector of a positive semidefinite
/// matrix. Convergence is declared when the Rayleigh residual
/// `‖G v − ρ v‖` drops below `tol · ρ`.
///
/// The iteration operator is squared (and rescaled by its trace) every few
/// steps while the residual stays above tolerance, so near-ties in the top
/// of the spectrum cost `O(log(1/gap))` matrix products instead of
/// `O(1/gap)` steps.
pub fn top_eigenvector(g: &SymMatrix, start: &[f64], tol: f64, cap: usize) -> Result<TopEigen> {
    let d = g.dim();
    let mut v = normalized(start, 0.0).unwrap_or_else(|| {
        let mut e = vec![0.0; d];
        e[0] = 1.0;
        e
    });
    if g.trace() <= 0.0 {
        // zero matrix: every vector is a top eigenvector
        return Ok(TopEigen { vector: v, value: 0.0, residual: 0.0, iterations: 0 });
    }

    let mut accel = g.clone();
    let mut squarings = 0;
    let mut residual = f64::INFINITY;
    for it in 1..=cap {
        if it % STEPS_PER_LEVEL == 0 && squarings < MAX_SQUARINGS {
            accel = accel.squared_scaled();
            squarings += 1;
        }
        // a plain step after the accelerated one keeps components the
        // squared operator may have rounded away
        for op in [&accel, g] {
            if let Some(u) = normalized(&op.mul_vec(&v), 0.0) {
                v = u;
            }
        }
        let gv = g.mul_vec(&v);
        let rho = dot(&v, &gv);
        residual = gv.iter().zip(&v).map(|(a, b)| (a - rho * b).powi(2)).sum::<f64>().sqrt();
        if residual <= tol * rho {
            return Ok(TopEigen { vector: v, value: rho, residual, iterations: it });
        }
    }
    Err(Error::PowerIteration { iterations: cap, residual })
}
