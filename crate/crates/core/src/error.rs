use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid Pauli character {0:?}")]
    InvalidPauliChar(char),
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("binary check matrix has odd column count {0}")]
    OddColumnCount(usize),
    #[error("invalid code parameters: {0}")]
    InvalidCode(String),
    #[error("code construction failed: {0}")]
    Construction(String),
    #[error("invalid decoder parameters: {0}")]
    InvalidDecoder(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Toml(#[from] toml::de::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
