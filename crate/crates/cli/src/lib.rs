//! Library half of the `risage` command-line tool. The binary only parses
//! arguments; everything it runs lives here so tests can drive it directly.

pub mod checks;
pub mod commands;
pub mod grid;
pub mod manifest;

use std::path::{Path, PathBuf};

use risage::mcsim::PartitionPlan;
use risage::scenario::{load_scenario, Scenario};
use thiserror::Error;

/// Bumped whenever a CSV column is added, removed or reordered.
pub const CSV_SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Scenario { path: PathBuf, source: risage::Error },
    #[error(transparent)]
    Model(#[from] risage::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0} validation check(s) failed")]
    Validation(usize),
}

impl CliError {
    /// 0 success, 1 failed validation, 2 usage or configuration error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            _ => 2,
        }
    }

    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunContext {
    pub scenario: Scenario,
    pub scenario_path: PathBuf,
    pub seed: u64,
    pub samples: usize,
    pub workers: usize,
    pub out_dir: PathBuf,
    /// Full command line, recorded in the manifest.
    pub command: String,
}

impl RunContext {
    pub fn load(
        scenario_path: &Path,
        seed: u64,
        samples: usize,
        workers: usize,
        out_dir: &Path,
        command: String,
    ) -> CliResult<Self> {
        let text = std::fs::read_to_string(scenario_path).map_err(|e| CliError::io(scenario_path, e))?;
        let scenario = load_scenario(&text).map_err(|source| CliError::Scenario {
            path: scenario_path.to_path_buf(),
            source,
        })?;
        if samples == 0 {
            return Err(CliError::Usage("--samples must be at least 1".into()));
        }
        Ok(Self {
            scenario,
            scenario_path: scenario_path.to_path_buf(),
            seed,
            samples,
            workers: workers.max(1),
            out_dir: out_dir.to_path_buf(),
            command,
        })
    }

    pub fn plan(&self) -> PartitionPlan {
        PartitionPlan::default().with_workers(self.workers)
    }
}
