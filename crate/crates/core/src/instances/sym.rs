//! SYM formulas: clauses of width 2 or 4 in fully negated pairs.

use std::fmt::Write as _;

use super::cnf::{check_distinct, clause_satisfied, occurrence_counts, write_dimacs, CnfFormula};
use super::expander::ExpanderGraph;
use crate::error::{Error, Result};

/// Clause-occurrence limit per variable in a reduced formula: 2·13 for base
/// variables, 2 + 2·14 for pair variables.
pub const MAX_SYM_OCCURRENCES: usize = 30;

/// A SYM formula over base variables `1..=base_vars` followed by pair
/// variables `z_i = base_vars + i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymFormula {
    base_vars: usize,
    pair_vars: usize,
    clauses: Vec<Vec<i32>>,
    /// 0-based indices `(a, b)` of clauses that negate each other.
    pairs: Vec<(usize, usize)>,
    /// Number of leading pairs that came from input clauses.
    clause_pairs: usize,
    /// Expander edges between pair variables, 0-based.
    edges: Vec<(usize, usize)>,
}

/// Builds ψ from a bounded-occurrence formula φ and an expander on its
/// clauses: `(C_i ∨ ¬z_i) ∧ (C'_i ∨ z_i)` per clause and
/// `(z_i ∨ ¬z_j) ∧ (¬z_i ∨ z_j)` per edge.
pub fn sym_from_3sat(phi: &CnfFormula, g: &ExpanderGraph) -> Result<SymFormula> {
    phi.check_3sat13()?;
    let m = phi.num_clauses();
    if g.vertices() != m {
        return Err(Error::InvalidInput(format!(
            "expander has {} vertices, formula has {m} clauses",
            g.vertices()
        )));
    }
    for (c, clause) in phi.clauses().iter().enumerate() {
        if clause.len() == 2 {
            // would produce a 3-literal clause, which has no embedding
            return Err(Error::ClauseArity { clause: c, arity: 2, reason: "2-literal input clause".into() });
        }
    }
    let n = phi.num_vars();
    let z = |i: usize| (n + i + 1) as i32;
    let mut clauses = Vec::with_capacity(2 * m + 2 * g.edges().len());
    let mut pairs = Vec::new();
    for (i, c) in phi.clauses().iter().enumerate() {
        let mut a = c.clone();
        a.push(-z(i));
        let negated: Vec<i32> = a.iter().map(|l| -l).collect();
        pairs.push((clauses.len(), clauses.len() + 1));
        clauses.push(a);
        clauses.push(negated);
    }
    for &(i, j) in g.edges() {
        pairs.push((clauses.len(), clauses.len() + 1));
        clauses.push(vec![z(i), -z(j)]);
        clauses.push(vec![-z(i), z(j)]);
    }
    let psi = SymFormula { base_vars: n, pair_vars: m, clauses, pairs, clause_pairs: m, edges: g.edges().to_vec() };
    psi.validate()?;
    Ok(psi)
}

impl SymFormula {
    pub fn base_vars(&self) -> usize {
        self.base_vars
    }

    pub fn pair_vars(&self) -> usize {
        self.pair_vars
    }

    /// Total variable count `D`.
    pub fn num_vars(&self) -> usize {
        self.base_vars + self.pair_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn clause_pairs(&self) -> usize {
        self.clause_pairs
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn occurrences(&self) -> Vec<usize> {
        occurrence_counts(self.num_vars(), &self.clauses)
    }

    pub fn satisfied_count(&self, assignment: &[bool]) -> usize {
        self.clauses.iter().filter(|c| clause_satisfied(c, assignment)).count()
    }

    /// Extends an assignment of the base variables with every `z_i` true.
    pub fn extend_assignment(&self, base: &[bool]) -> Vec<bool> {
        let mut full = base.to_vec();
        full.resize(self.num_vars(), true);
        full
    }

    /// Checks widths, negation pairing, `M = 16m` and occurrence bounds.
    pub fn validate(&self) -> Result<()> {
        let d = self.num_vars() as u32;
        let mut paired = vec![false; self.clauses.len()];
        for (c, clause) in self.clauses.iter().enumerate() {
            if clause.len() != 2 && clause.len() != 4 {
                return Err(Error::ClauseArity { clause: c, arity: clause.len(), reason: "SYM clauses have 2 or 4 literals".into() });
            }
            if clause.iter().any(|&l| l == 0 || l.unsigned_abs() > d) {
                return Err(Error::InvalidInput(format!("clause {c} has a literal outside 1..={d}")));
            }
            check_distinct(c, clause)?;
        }
        for &(a, b) in &self.pairs {
            if a >= self.clauses.len() || b >= self.clauses.len() || paired[a] || paired[b] || a == b {
                return Err(Error::InvalidInput(format!("bad clause pair ({a}, {b})")));
            }
            let neg: Vec<i32> = self.clauses[a].iter().map(|l| -l).collect();
            if neg != self.clauses[b] {
                return Err(Error::InvalidInput(format!("clauses {a} and {b} are not negations")));
            }
            paired[a] = true;
            paired[b] = true;
        }
        if let Some(c) = paired.iter().position(|p| !p) {
            return Err(Error::InvalidInput(format!("clause {c} has no negated partner")));
        }
        if self.clauses.len() != 16 * self.pair_vars {
            return Err(Error::InvalidInput(format!(
                "{} clauses, expected 16·{} = {}",
                self.clauses.len(),
                self.pair_vars,
                16 * self.pair_vars
            )));
        }
        for (v, &count) in self.occurrences().iter().enumerate() {
            if count > MAX_SYM_OCCURRENCES {
                return Err(Error::OccurrenceBound { variable: v + 1, count, limit: MAX_SYM_OCCURRENCES });
            }
        }
        Ok(())
    }

    pub fn to_dimacs(&self) -> String {
        write_dimacs(self.num_vars(), &self.clauses)
    }

    /// Sidecar listing the negation pairs (1-based clause lines) and the
    /// expander edges (1-based pair-variable indices).
    pub fn to_sidecar(&self) -> String {
        let mut out = format!(
            "fhp-sym v1 base_vars={} pair_vars={} clause_pairs={}\n",
            self.base_vars, self.pair_vars, self.clause_pairs
        );
        for &(a, b) in &self.pairs {
            let _ = writeln!(out, "pair {} {}", a + 1, b + 1);
        }
        for &(i, j) in &self.edges {
            let _ = writeln!(out, "edge {} {}", i + 1, j + 1);
        }
        out
    }

    pub fn from_parts(dimacs: &str, sidecar: &str) -> Result<Self> {
        let cnf = CnfFormula::parse_dimacs(dimacs)?;
        let mut lines = sidecar.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty sidecar"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 5 || fields[0] != "fhp-sym" || fields[1] != "v1" {
            return Err(Error::parse(1, "expected `fhp-sym v1` header"));
        }
        let key = |f: &str, k: &str| -> Result<usize> {
            f.strip_prefix(k)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::parse(1, format!("expected `{k}<count>`")))
        };
        let base_vars = key(fields[2], "base_vars=")?;
        let pair_vars = key(fields[3], "pair_vars=")?;
        let clause_pairs = key(fields[4], "clause_pairs=")?;
        if base_vars + pair_vars != cnf.num_vars() {
            return Err(Error::parse(1, "variable counts disagree with the DIMACS header"));
        }
        let mut pairs = Vec::new();
        let mut edges = Vec::new();
        for (idx, line) in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            let nums: Option<Vec<usize>> = f.iter().skip(1).map(|t| t.parse::<usize>().ok().filter(|&v| v > 0)).collect();
            match (f.first().copied(), nums.as_deref()) {
                (Some("pair"), Some(&[a, b])) => pairs.push((a - 1, b - 1)),
                (Some("edge"), Some(&[a, b])) if a <= pair_vars && b <= pair_vars => edges.push((a - 1, b - 1)),
                _ => return Err(Error::parse(idx + 1, format!("bad sidecar line `{line}`"))),
            }
        }
        let psi = SymFormula {
            base_vars,
            pair_vars,
            clauses: cnf.clauses().to_vec(),
            pairs,
            clause_pairs,
            edges,
        };
        psi.validate()?;
        Ok(psi)
    }
}
