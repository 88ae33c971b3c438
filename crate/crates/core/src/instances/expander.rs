//! Random regular graphs with a numerically certified spectral gap.

use std::collections::{BTreeMap, HashSet};

use nalgebra::{DMatrix, SymmetricEigen};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::SeedStream;

pub const EXPANDER_DEGREE: usize = 14;
pub const MAX_ATTEMPTS: usize = 100;

/// Acceptance threshold on λ: 15% above the Ramanujan value `2√(d−1)`.
pub fn lambda_threshold(degree: usize) -> f64 {
    1.15 * 2.0 * ((degree - 1) as f64).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpanderGraph {
    vertices: usize,
    degree: usize,
    edges: Vec<(usize, usize)>,
    /// Largest nontrivial adjacency eigenvalue in absolute value.
    pub lambda2: f64,
    /// Cheeger lower bound `(d − λ)/2` on edge expansion.
    pub expansion_lb: f64,
    /// Graphs drawn before one was accepted.
    pub attempts: usize,
}

impl ExpanderGraph {
    /// Wraps an existing edge list, computing its spectral data; call
    /// [`certify`](Self::certify) to check it.
    pub fn from_edges(vertices: usize, degree: usize, mut edges: Vec<(usize, usize)>) -> Self {
        for e in &mut edges {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        let lambda2 = second_eigenvalue(vertices, &edges);
        ExpanderGraph { vertices, degree, edges, lambda2, expansion_lb: (degree as f64 - lambda2) / 2.0, attempts: 0 }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Sorted edges `(i, j)` with `i < j`, 0-based.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Recomputes regularity, simplicity, connectivity and the spectral
    /// bound from the edge list alone.
    pub fn certify(&self) -> std::result::Result<(), String> {
        let mut deg = vec![0usize; self.vertices];
        let mut seen = HashSet::new();
        for &(i, j) in &self.edges {
            if i >= j || j >= self.vertices {
                return Err(format!("edge ({i}, {j}) is not normalized"));
            }
            if !seen.insert((i, j)) {
                return Err(format!("repeated edge ({i}, {j})"));
            }
            deg[i] += 1;
            deg[j] += 1;
        }
        if let Some(v) = deg.iter().position(|&k| k != self.degree) {
            return Err(format!("vertex {v} has degree {}", deg[v]));
        }
        if !is_connected(self.vertices, &self.edges) {
            return Err("graph is disconnected".into());
        }
        let lambda = second_eigenvalue(self.vertices, &self.edges);
        if (lambda - self.lambda2).abs() > 1e-8 {
            return Err(format!("recorded λ {} but computed {lambda}", self.lambda2));
        }
        if lambda > lambda_threshold(self.degree) {
            return Err(format!("λ = {lambda} exceeds {}", lambda_threshold(self.degree)));
        }
        if (self.degree as f64 - lambda) / 2.0 <= self.degree as f64 / 5.0 {
            return Err(format!("expansion bound {} ≤ d/5", (self.degree as f64 - lambda) / 2.0));
        }
        Ok(())
    }
}

/// A certified 14-regular expander on `m` vertices.
pub fn build_expander(m: usize, seed: u64) -> Result<ExpanderGraph> {
    build_regular_expander(m, EXPANDER_DEGREE, seed, MAX_ATTEMPTS)
}

pub fn build_regular_expander(m: usize, degree: usize, seed: u64, max_attempts: usize) -> Result<ExpanderGraph> {
    if degree < 3 || m <= degree || (m * degree) % 2 != 0 {
        return Err(Error::InvalidInput(format!("no {degree}-regular expander on {m} vertices")));
    }
    let stream = SeedStream::new(seed);
    let mut last_lambda = f64::NAN;
    for attempt in 0..max_attempts {
        let mut rng = stream.substream(attempt as u64);
        let Some(edges) = random_regular_graph(m, degree, &mut rng) else {
            continue;
        };
        if !is_connected(m, &edges) {
            continue;
        }
        let lambda = second_eigenvalue(m, &edges);
        last_lambda = lambda;
        let expansion_lb = (degree as f64 - lambda) / 2.0;
        if lambda <= lambda_threshold(degree) && expansion_lb > degree as f64 / 5.0 {
            return Ok(ExpanderGraph {
                vertices: m,
                degree,
                edges,
                lambda2: lambda,
                expansion_lb,
                attempts: attempt + 1,
            });
        }
    }
    Err(Error::ExpanderGeneration { attempts: max_attempts, last_lambda })
}

/// Uniform-ish simple `d`-regular graph by repeated stub pairing, in the
/// style of Steger and Wormald. `None` when pairing gets stuck.
fn random_regular_graph<R: Rng + ?Sized>(m: usize, d: usize, rng: &mut R) -> Option<Vec<(usize, usize)>> {
    let mut edges: HashSet<(usize, usize)> = HashSet::with_capacity(m * d / 2);
    let mut stubs: Vec<usize> = (0..m).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    while !stubs.is_empty() {
        let mut leftover: BTreeMap<usize, usize> = BTreeMap::new();
        stubs.shuffle(rng);
        for pair in stubs.chunks(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a != b && edges.insert((a, b)) {
                continue;
            }
            *leftover.entry(a).or_default() += 1;
            *leftover.entry(b).or_default() += 1;
        }
        let open: Vec<usize> = leftover.keys().copied().collect();
        let can_continue = open
            .iter()
            .enumerate()
            .any(|(k, &a)| open[k + 1..].iter().any(|&b| !edges.contains(&(a, b))));
        if !open.is_empty() && !can_continue {
            return None;
        }
        stubs = leftover.into_iter().flat_map(|(v, c)| std::iter::repeat_n(v, c)).collect();
    }
    let mut out: Vec<(usize, usize)> = edges.into_iter().collect();
    out.sort_unstable();
    Some(out)
}

pub fn adjacency(m: usize, edges: &[(usize, usize)]) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(m, m);
    for &(i, j) in edges {
        a[(i, j)] += 1.0;
        a[(j, i)] += 1.0;
    }
    a
}

/// `max(|λ_2|, |λ_m|)` of the adjacency matrix.
pub fn second_eigenvalue(m: usize, edges: &[(usize, usize)]) -> f64 {
    if m < 2 {
        return 0.0;
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(adjacency(m, edges)).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev[1].abs().max(ev[m - 1].abs())
}

pub fn is_connected(m: usize, edges: &[(usize, usize)]) -> bool {
    if m == 0 {
        return true;
    }
    let mut adj = vec![Vec::new(); m];
    for &(i, j) in edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut seen = vec![false; m];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == m
}
