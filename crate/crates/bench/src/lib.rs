//! Benchmark harness around `vqe-core`: FCIDUMP input, sweeps over
//! molecules, ansatzes and bond lengths, JSON result files and comparison
//! tables.

use std::path::{Path, PathBuf};

pub mod compare;
pub mod fcidump;
pub mod molecule;
pub mod record;
pub mod sweep;

pub use compare::{emit_comparison, ComparisonKind, Format};
pub use fcidump::{load_fcidump, parse_fcidump, FcidumpError};
pub use molecule::MoleculeSpec;
pub use record::{initdata, rounddata, savedata, BenchRecord};
pub use sweep::{run_sweep, AnsatzKind, StdClock, SweepConfig};

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "VQE_BENCH_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("{0}")]
    Usage(String),
    #[error("unknown ansatz `{0}`")]
    UnknownAnsatz(String),
    #[error("no fixtures for molecule `{0}`")]
    UnknownMolecule(String),
    #[error("bond length {0} is not part of this record")]
    UnknownBondLength(f64),
    #[error("{} already exists (use --force to replace it)", .0.display())]
    FileExists(PathBuf),
    #[error("{} is held by another writer", .0.display())]
    Locked(PathBuf),
    #[error("malformed data file: {0}")]
    Malformed(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}: FCI energies are missing")]
    MissingFci(String),
    #[error(transparent)]
    Fcidump(#[from] FcidumpError),
    #[error(transparent)]
    Numerical(#[from] vqe_core::Error),
}

impl BenchError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        BenchError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// 1 usage, 2 data file, 3 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Usage(_) | BenchError::UnknownAnsatz(_) | BenchError::UnknownMolecule(_) => 1,
            BenchError::UnknownBondLength(_)
            | BenchError::FileExists(_)
            | BenchError::Locked(_)
            | BenchError::Malformed(_)
            | BenchError::Io { .. }
            | BenchError::MissingFci(_)
            | BenchError::Fcidump(_) => 2,
            BenchError::Numerical(_) => 3,
        }
    }
}
