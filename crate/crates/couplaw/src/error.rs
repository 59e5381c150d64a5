use std::path::PathBuf;

use couplaw_core::corpus::CorpusError;
use couplaw_core::robustness::RobustnessError;
use couplaw_core::stats::StatsError;
use couplaw_core::synth::SynthError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Format {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Robustness(#[from] RobustnessError),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn is_empty_corpus(&self) -> bool {
        matches!(self, Error::Corpus(CorpusError::EmptyCorpus))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
