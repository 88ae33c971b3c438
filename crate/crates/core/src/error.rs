use thiserror::Error;

/// Errors produced by the solvers, generators and parsers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("normal vector is not unit length (norm {norm})")]
    NotUnit { norm: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate instance: {0}")]
    DegenerateInstance(String),

    #[error("point {index} has norm {norm} which exceeds 1")]
    NormTooLarge { index: usize, norm: f64 },

    #[error("no convergence after {iterations} iterations (bounds [{lower}, {upper}])")]
    Convergence { iterations: usize, lower: f64, upper: f64 },

    #[error("power iteration did not converge after {iterations} iterations (residual {residual})")]
    PowerIteration { iterations: usize, residual: f64 },

    #[error("labeling enumeration explored {explored} labelings, above the bound {bound}; perturb the instance")]
    Degeneracy { explored: usize, bound: usize },

    #[error("instance has no feasible labeling")]
    NoFeasibleLabeling,

    #[error("no separation with two nonempty clusters exists")]
    NoSeparation,

    #[error("variable {variable} occurs in {count} clauses (limit {limit})")]
    OccurrenceBound { variable: usize, count: usize, limit: usize },

    #[error("clause {clause} has arity {arity}: {reason}")]
    ClauseArity { clause: usize, arity: usize, reason: String },

    #[error("expander certification failed after {attempts} attempts (last lambda {last_lambda})")]
    ExpanderGeneration { attempts: usize, last_lambda: f64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("combined direction collapsed to zero length")]
    ZeroCombination,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
