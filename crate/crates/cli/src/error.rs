use std::path::PathBuf;

use fhp_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 input, 3 convergence, 4 invariant violation.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                Error::Convergence { .. }
                | Error::PowerIteration { .. }
                | Error::ExpanderGeneration { .. }
                | Error::ZeroCombination => 3,
                Error::Degeneracy { .. } => 4,
                _ => 2,
            },
            CliError::Io { .. } | CliError::Usage(_) => 2,
        }
    }
}

pub fn read(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn write(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}
