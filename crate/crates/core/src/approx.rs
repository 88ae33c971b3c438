//! Adaptive reweighting approximation.
//!
//! Points are reweighted by how poorly the previous top singular directions
//! separate them (`τ ← τ·(1 − σ²/2)`) until the total weight falls below
//! `1/n`. A Gaussian combination of the collected directions is then good
//! for most points at once: with probability at least 1/10 a single draw
//! keeps all but a `5α` fraction of the points at distance more than `αθ`.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{Hyperplane, PointSet};
use crate::linalg::{dot, norm, top_eigenvector, SymMatrix};
use crate::rng::{gaussian_vector, SeedStream};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxParams {
    pub alpha: f64,
    pub trials: usize,
    pub seed: u64,
    pub power_iter_tol: f64,
    pub power_iter_cap: usize,
    /// Safety bound on reweighting rounds; the loop length is otherwise
    /// governed by the margin, which is unknown.
    pub max_rounds: usize,
}

impl Default for ApproxParams {
    fn default() -> Self {
        Self {
            alpha: 0.1,
            trials: 32,
            seed: 0,
            power_iter_tol: 1e-10,
            power_iter_cap: 10_000,
            max_rounds: 100_000_000,
        }
    }
}

impl ApproxParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidInput(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if self.trials == 0 {
            return Err(Error::InvalidInput("trials must be at least 1".into()));
        }
        Ok(())
    }

    /// Number of points the coverage score is taken at: `⌈(1 − 5α)n⌉`,
    /// at least one.
    pub fn coverage_count(&self, n: usize) -> usize {
        (((1.0 - 5.0 * self.alpha) * n as f64).ceil().max(1.0) as usize).min(n)
    }
}

/// Record of the reweighting loop.
#[derive(Debug, Clone, PartialEq)]
pub struct ReweightTrace {
    /// `weights[j][i]` is the weight of point `i` entering round `j`; the
    /// last entry holds the weights after the final round (`t + 1` rows).
    pub weights: Vec<Vec<f64>>,
    /// `sigmas[j][i] = |⟨x_i, w_j⟩|`, clamped to `[0, 1]`.
    pub sigmas: Vec<Vec<f64>>,
    pub directions: Vec<Vec<f64>>,
    /// Top eigenvalue `Σ_i τ_j(i)⟨x_i, w_j⟩²` of each round.
    pub top_values: Vec<f64>,
}

impl ReweightTrace {
    /// Number of rounds `t`.
    pub fn rounds(&self) -> usize {
        self.directions.len()
    }

    /// `Σ_j σ_j(i)²` for every point.
    pub fn sigma_energy(&self) -> Vec<f64> {
        let n = self.weights[0].len();
        (0..n)
            .map(|i| self.sigmas.iter().map(|s| s[i] * s[i]).sum())
            .collect()
    }

    /// Total weight `Σ_i τ_j(i)` per row of `weights`.
    pub fn total_weights(&self) -> Vec<f64> {
        self.weights.iter().map(|w| w.iter().sum()).collect()
    }
}

/// Runs the reweighting loop to completion.
pub fn reweight_directions(ps: &PointSet, params: &ApproxParams) -> Result<ReweightTrace> {
    if let Some(i) = ps.zero_point(0.0) {
        return Err(Error::DegenerateInstance(format!(
            "point {i} is zero; its weight never decays"
        )));
    }
    let n = ps.len();
    let d = ps.dim();
    let threshold = 1.0 / n as f64;
    let mut rng = SeedStream::new(params.seed).substream(0);

    let mut tau = vec![1.0; n];
    let mut trace = ReweightTrace {
        weights: Vec::new(),
        sigmas: Vec::new(),
        directions: Vec::new(),
        top_values: Vec::new(),
    };

    while tau.iter().sum::<f64>() >= threshold {
        if trace.directions.len() >= params.max_rounds {
            return Err(Error::Convergence {
                iterations: params.max_rounds,
                lower: threshold,
                upper: tau.iter().sum(),
            });
        }
        let mut gram = SymMatrix::zeros(d);
        for (x, &t) in ps.points().iter().zip(&tau) {
            gram.add_outer(t, x);
        }
        let start = gaussian_vector(&mut rng, d);
        let top = top_eigenvector(&gram, &start, params.power_iter_tol, params.power_iter_cap)?;
        let w = top.vector;
        let sigma: Vec<f64> = ps
            .points()
            .iter()
            .map(|x| dot(x, &w).abs().min(1.0))
            .collect();
        let next: Vec<f64> = tau
            .iter()
            .zip(&sigma)
            .map(|(t, s)| t * (1.0 - s * s / 2.0))
            .collect();
        trace.weights.push(std::mem::replace(&mut tau, next));
        trace.sigmas.push(sigma);
        trace.directions.push(w);
        trace.top_values.push(top.value);
    }
    trace.weights.push(tau);
    Ok(trace)
}

/// One Gaussian combination `w' = Σ_j g_j w_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Combination {
    /// `w'/‖w'‖`.
    pub normal: Vec<f64>,
    /// `‖w'‖`.
    pub raw_norm: f64,
    pub coefficients: Vec<f64>,
}

/// Draws standard normal coefficients and returns the normalized
/// combination of the trace directions. A combination shorter than `1e-12`
/// is redrawn once.
pub fn combine_gaussian<R: Rng + ?Sized>(trace: &ReweightTrace, rng: &mut R) -> Result<Combination> {
    if trace.directions.is_empty() {
        return Err(Error::InvalidInput("trace has no directions".into()));
    }
    let d = trace.directions[0].len();
    for _ in 0..2 {
        let coefficients: Vec<f64> = (0..trace.rounds()).map(|_| rng.sample(StandardNormal)).collect();
        let mut w = vec![0.0; d];
        for (g, dir) in coefficients.iter().zip(&trace.directions) {
            for (wk, dk) in w.iter_mut().zip(dir) {
                *wk += g * dk;
            }
        }
        let raw_norm = norm(&w);
        if raw_norm >= 1e-12 {
            let normal = w.into_iter().map(|x| x / raw_norm).collect();
            return Ok(Combination { normal, raw_norm, coefficients });
        }
    }
    Err(Error::ZeroCombination)
}

/// `|⟨w, x_i⟩|` sorted in decreasing order. Entry `m − 1` is the largest
/// level that at least `m` points clear.
pub fn coverage_curve(w: &[f64], ps: &PointSet) -> Vec<f64> {
    let mut v: Vec<f64> = ps.points().iter().map(|x| dot(w, x).abs()).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub trial: usize,
    pub raw_norm: f64,
    /// Coverage level at `m = ⌈(1 − 5α)n⌉`.
    pub level: f64,
    pub normal: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxResult {
    /// The selected candidate, evaluated on every point.
    pub hyperplane: Hyperplane,
    pub best_trial: usize,
    pub coverage_count: usize,
    pub coverage_level: f64,
    /// Coverage curve of the selected candidate.
    pub curve: Vec<f64>,
    pub candidates: Vec<Candidate>,
    pub trace: ReweightTrace,
}

/// Reweighting followed by `params.trials` Gaussian combinations; the
/// candidate with the highest coverage level at `⌈(1 − 5α)n⌉` points wins
/// (earliest trial on ties).
pub fn approx_solve(ps: &PointSet, params: &ApproxParams) -> Result<ApproxResult> {
    params.validate()?;
    let trace = reweight_directions(ps, params)?;
    let m = params.coverage_count(ps.len());
    let stream = SeedStream::new(params.seed);

    let candidates: Vec<Result<Candidate>> = (0..params.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = stream.substream(trial as u64 + 1);
            let c = combine_gaussian(&trace, &mut rng)?;
            let level = coverage_curve(&c.normal, ps)[m - 1];
            Ok(Candidate { trial, raw_norm: c.raw_norm, level, normal: c.normal })
        })
        .collect();
    let candidates: Vec<Candidate> = candidates.into_iter().collect::<Result<_>>()?;

    let best = candidates
        .iter()
        .fold(&candidates[0], |b, c| if c.level > b.level { c } else { b });
    let curve = coverage_curve(&best.normal, ps);
    let hyperplane = Hyperplane { normal: best.normal.clone(), achieved_margin: *curve.last().unwrap() };
    Ok(ApproxResult {
        hyperplane,
        best_trial: best.trial,
        coverage_count: m,
        coverage_level: best.level,
        curve,
        candidates: candidates.clone(),
        trace,
    })
}
