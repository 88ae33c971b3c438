//! Margin of Gaussian point sets: a random-draw lower certificate and a
//! spectral upper bound, compared against the `[1/(c·n√d), C/√d]` band.

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{sauer_bound, solve_exact_bfs, ExactOptions};
use crate::geometry::{margin_of, PointSet};
use crate::linalg::norm;
use crate::rng::{sample_unit_vector, SeedStream};

use super::gen_gaussian;

/// Frozen band constants, from [`calibrate`] at n=20, d=10 over 200 trials
/// with seed [`CALIBRATION_SEED`] and 90% per-side coverage, rounded up.
pub const C_LOW: f64 = 9.8;
pub const C_HIGH: f64 = 1.7;
pub const CALIBRATION_SEED: u64 = 0xC0FF_EE00;

/// Below this many labelings the exact optimum replaces the spectral
/// upper bound.
pub const EXACT_UPPER_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialBounds {
    /// Margin of one random unit normal, in the unnormalized model's units.
    pub lower: f64,
    pub upper: f64,
    pub exact_upper: bool,
    pub inside: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomModelReport {
    pub n: usize,
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    pub c_low: f64,
    pub c_high: f64,
    pub band_low: f64,
    pub band_high: f64,
    pub per_trial: Vec<TrialBounds>,
    pub frequency: f64,
}

pub fn random_margin_study(n: usize, d: usize, trials: usize, seed: u64) -> Result<RandomModelReport> {
    random_margin_study_with(n, d, trials, seed, C_LOW, C_HIGH)
}

pub fn random_margin_study_with(
    n: usize,
    d: usize,
    trials: usize,
    seed: u64,
    c_low: f64,
    c_high: f64,
) -> Result<RandomModelReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("at least one trial is required".into()));
    }
    let band_low = 1.0 / (c_low * n as f64 * (d as f64).sqrt());
    let band_high = c_high / (d as f64).sqrt();
    let bounds = trial_bounds(n, d, trials, seed)?;
    let per_trial: Vec<TrialBounds> = bounds
        .into_iter()
        .map(|(lower, upper, exact_upper)| TrialBounds {
            lower,
            upper,
            exact_upper,
            inside: lower >= band_low && upper <= band_high,
        })
        .collect();
    let frequency = per_trial.iter().filter(|t| t.inside).count() as f64 / trials as f64;
    Ok(RandomModelReport { n, d, trials, seed, c_low, c_high, band_low, band_high, per_trial, frequency })
}

/// Smallest constants for which a `coverage` fraction of trials clears each
/// side of the band separately.
pub fn calibrate(n: usize, d: usize, trials: usize, seed: u64, coverage: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&coverage) || trials == 0 {
        return Err(Error::InvalidInput("coverage must lie in [0, 1] with at least one trial".into()));
    }
    let bounds = trial_bounds(n, d, trials, seed)?;
    let sd = (d as f64).sqrt();
    let mut lows: Vec<f64> = bounds.iter().map(|b| 1.0 / (b.0 * n as f64 * sd)).collect();
    let mut highs: Vec<f64> = bounds.iter().map(|b| b.1 * sd).collect();
    lows.sort_by(f64::total_cmp);
    highs.sort_by(f64::total_cmp);
    let k = ((coverage * trials as f64).ceil() as usize).clamp(1, trials) - 1;
    Ok((lows[k], highs[k]))
}

fn trial_bounds(n: usize, d: usize, trials: usize, seed: u64) -> Result<Vec<(f64, f64, bool)>> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidInput("n and d must be positive".into()));
    }
    let stream = SeedStream::new(seed);
    (0..trials)
        .into_par_iter()
        .map(|k| {
            let ps = gen_gaussian(n, d, stream.child(2 * k as u64).seed())?;
            let mut rng = stream.substream(2 * k as u64 + 1);
            let w = sample_unit_vector(&mut rng, d);
            let lower = margin_of(&w, &ps)? * ps.scale();
            let (upper, exact) = upper_bound(&ps)?;
            Ok((lower, upper * ps.scale(), exact))
        })
        .collect()
}

/// Upper bound on the optimal margin of `ps` in stored units: the exact
/// optimum when enumeration is cheap, otherwise
/// `min(σ_max(X)/√n, min_i ‖x_i‖)`.
pub fn upper_bound(ps: &PointSet) -> Result<(f64, bool)> {
    let (n, d) = (ps.len(), ps.dim());
    if sauer_bound(n, d) <= EXACT_UPPER_LIMIT {
        return Ok((solve_exact_bfs(ps, &ExactOptions::default())?.margin, true));
    }
    Ok((spectral_upper_bound(ps), false))
}

/// `θ ≤ ‖Σ y_i x_i‖/n ≤ σ_max(X)/√n`, and `θ ≤ ‖x_i‖` for every point.
pub fn spectral_upper_bound(ps: &PointSet) -> f64 {
    let (n, d) = (ps.len(), ps.dim());
    let mut g = DMatrix::<f64>::zeros(d, d);
    for x in ps.points() {
        for a in 0..d {
            for b in 0..d {
                g[(a, b)] += x[a] * x[b];
            }
        }
    }
    let top = SymmetricEigen::new(g).eigenvalues.iter().copied().fold(0.0f64, f64::max);
    let min_norm = ps.points().iter().map(|x| norm(x)).fold(f64::INFINITY, f64::min);
    ((top.max(0.0) / n as f64).sqrt()).min(min_norm)
}
