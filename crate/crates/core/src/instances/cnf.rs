//! CNF formulas with DIMACS I/O.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::SeedStream;

/// Per-variable clause-occurrence limit of the bounded-occurrence 3SAT
/// inputs the reduction accepts.
pub const MAX_3SAT_OCCURRENCES: usize = 13;

/// A CNF formula over variables `1..=num_vars`; literals are signed
/// variable indices as in DIMACS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for (c, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::ClauseArity { clause: c, arity: 0, reason: "empty clause".into() });
            }
            for &lit in clause {
                let v = lit.unsigned_abs() as usize;
                if lit == 0 || v > num_vars {
                    return Err(Error::InvalidInput(format!(
                        "clause {c} has literal {lit} outside 1..={num_vars}"
                    )));
                }
            }
        }
        Ok(Self { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Number of clauses each variable occurs in (index `v − 1`).
    pub fn occurrences(&self) -> Vec<usize> {
        occurrence_counts(self.num_vars, &self.clauses)
    }

    /// Checks clause width ≤ 3, distinct variables per clause, and at most
    /// 13 occurrences per variable.
    pub fn check_3sat13(&self) -> Result<()> {
        for (c, clause) in self.clauses.iter().enumerate() {
            if clause.len() > 3 {
                return Err(Error::ClauseArity {
                    clause: c,
                    arity: clause.len(),
                    reason: "more than 3 literals".into(),
                });
            }
            check_distinct(c, clause)?;
        }
        for (v, &count) in self.occurrences().iter().enumerate() {
            if count > MAX_3SAT_OCCURRENCES {
                return Err(Error::OccurrenceBound { variable: v + 1, count, limit: MAX_3SAT_OCCURRENCES });
            }
        }
        Ok(())
    }

    pub fn satisfied_count(&self, assignment: &[bool]) -> usize {
        self.clauses.iter().filter(|c| clause_satisfied(c, assignment)).count()
    }

    pub fn is_satisfied(&self, assignment: &[bool]) -> bool {
        self.satisfied_count(assignment) == self.clauses.len()
    }

    /// Backtracking search with unit propagation. Returns `None` when the
    /// formula is unsatisfiable.
    pub fn find_satisfying_assignment(&self) -> Option<Vec<bool>> {
        let mut partial: Vec<Option<bool>> = vec![None; self.num_vars];
        if dpll(&self.clauses, &mut partial) {
            Some(partial.into_iter().map(|v| v.unwrap_or(true)).collect())
        } else {
            None
        }
    }

    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses: Vec<Vec<i32>> = Vec::new();
        let mut current: Vec<i32> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let f: Vec<&str> = line.split_whitespace().collect();
                if f.len() != 4 || f[1] != "cnf" {
                    return Err(Error::parse(idx + 1, "expected `p cnf <vars> <clauses>`"));
                }
                let vars = f[2].parse().map_err(|_| Error::parse(idx + 1, "bad variable count"))?;
                let count = f[3].parse().map_err(|_| Error::parse(idx + 1, "bad clause count"))?;
                header = Some((vars, count));
                continue;
            }
            if header.is_none() {
                return Err(Error::parse(idx + 1, "clause before `p cnf` header"));
            }
            for tok in line.split_whitespace() {
                let lit: i32 = tok
                    .parse()
                    .map_err(|_| Error::parse(idx + 1, format!("bad literal `{tok}`")))?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    current.push(lit);
                }
            }
        }
        let (vars, count) = header.ok_or_else(|| Error::parse(1, "missing `p cnf` header"))?;
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != count {
            return Err(Error::parse(1, format!("header declares {count} clauses, found {}", clauses.len())));
        }
        Self::new(vars, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        write_dimacs(self.num_vars, &self.clauses)
    }

    /// A random formula with exactly three distinct variables per clause and
    /// at most 13 occurrences per variable, satisfied by the returned
    /// planted assignment.
    pub fn planted_3sat13(num_vars: usize, num_clauses: usize, seed: u64) -> Result<(Self, Vec<bool>)> {
        if num_vars < 3 || num_clauses * 3 > num_vars * MAX_3SAT_OCCURRENCES {
            return Err(Error::InvalidInput(format!(
                "cannot place {num_clauses} clauses on {num_vars} variables within the occurrence bound"
            )));
        }
        let mut rng = SeedStream::new(seed).substream(0);
        let planted: Vec<bool> = (0..num_vars).map(|_| rng.random()).collect();
        let mut counts = vec![0usize; num_vars];
        let mut clauses = Vec::with_capacity(num_clauses);
        for _ in 0..num_clauses {
            let mut open: Vec<usize> = (0..num_vars).filter(|&v| counts[v] < MAX_3SAT_OCCURRENCES).collect();
            // prefer the least-used variables so the bound never blocks a clause
            open.shuffle(&mut rng);
            open.sort_by_key(|&v| counts[v]);
            let vars = &open[..3];
            let clause: Vec<i32> = loop {
                let c: Vec<i32> = vars
                    .iter()
                    .map(|&v| if rng.random::<bool>() { v as i32 + 1 } else { -(v as i32 + 1) })
                    .collect();
                if clause_satisfied(&c, &planted) {
                    break c;
                }
            };
            for &v in vars {
                counts[v] += 1;
            }
            clauses.push(clause);
        }
        Ok((Self::new(num_vars, clauses)?, planted))
    }
}

pub(crate) fn clause_satisfied(clause: &[i32], assignment: &[bool]) -> bool {
    clause.iter().any(|&lit| literal_value(lit, assignment))
}

pub(crate) fn literal_value(lit: i32, assignment: &[bool]) -> bool {
    let v = assignment[lit.unsigned_abs() as usize - 1];
    if lit > 0 {
        v
    } else {
        !v
    }
}

pub(crate) fn occurrence_counts(num_vars: usize, clauses: &[Vec<i32>]) -> Vec<usize> {
    let mut counts = vec![0usize; num_vars];
    for clause in clauses {
        let mut vars: Vec<usize> = clause.iter().map(|l| l.unsigned_abs() as usize - 1).collect();
        vars.sort_unstable();
        vars.dedup();
        for v in vars {
            counts[v] += 1;
        }
    }
    counts
}

pub(crate) fn check_distinct(c: usize, clause: &[i32]) -> Result<()> {
    let mut vars: Vec<u32> = clause.iter().map(|l| l.unsigned_abs()).collect();
    vars.sort_unstable();
    if vars.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::ClauseArity {
            clause: c,
            arity: clause.len(),
            reason: "repeated variable".into(),
        });
    }
    Ok(())
}

pub(crate) fn write_dimacs(num_vars: usize, clauses: &[Vec<i32>]) -> String {
    let mut out = format!("p cnf {} {}\n", num_vars, clauses.len());
    for c in clauses {
        for lit in c {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}

fn dpll(clauses: &[Vec<i32>], partial: &mut Vec<Option<bool>>) -> bool {
    let mut trail: Vec<usize> = Vec::new();
    // unit propagation to a fixed point
    loop {
        let mut unit: Option<i32> = None;
        for clause in clauses {
            let mut unassigned: Option<i32> = None;
            let mut free = 0;
            let mut sat = false;
            for &lit in clause {
                match partial[lit.unsigned_abs() as usize - 1] {
                    Some(v) if v == (lit > 0) => {
                        sat = true;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        free += 1;
                        unassigned = Some(lit);
                    }
                }
            }
            if sat {
                continue;
            }
            if free == 0 {
                for v in trail {
                    partial[v] = None;
                }
                return false;
            }
            if free == 1 {
                unit = unassigned;
                break;
            }
        }
        match unit {
            Some(lit) => {
                let v = lit.unsigned_abs() as usize - 1;
                partial[v] = Some(lit > 0);
                trail.push(v);
            }
            None => break,
        }
    }
    let Some(branch) = partial.iter().position(Option::is_none) else {
        return true;
    };
    for value in [true, false] {
        partial[branch] = Some(value);
        if dpll(clauses, partial) {
            return true;
        }
    }
    partial[branch] = None;
    for v in trail {
        partial[v] = None;
    }
    false
}
