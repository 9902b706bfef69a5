//! On-disk formats: binary CIR records and CSV metric tables.

mod cir_file;
mod csv;

use std::path::{Path, PathBuf};

pub use cir_file::{read_cir, read_cir_header, write_cir, CirFileHeader, HEADER_LEN, MAGIC, VERSION};
pub use csv::{axis_column, export_grid, export_metrics, read_table, value_column, Table};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{}: {source}", path.display())]
    Os {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("bad magic {found:?}, expected \"V2VCIR01\"")]
    BadMagic { found: [u8; 8] },
    #[error("unsupported file version {found}, expected {expected}")]
    Version { found: u16, expected: u16 },
    #[error("truncated {what}: expected {expected} bytes, found {actual}")]
    Truncated {
        what: &'static str,
        expected: u64,
        actual: u64,
    },
    #[error("{extra} unexpected bytes after the payload")]
    TrailingBytes { extra: u64 },
    #[error("invalid header: {0}")]
    BadHeader(String),
    #[error("invalid payload: {0}")]
    BadPayload(String),
    #[error("cannot export: {0}")]
    Export(String),
    #[error("{}:{line}: {reason}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        reason: String,
    },
}

impl IoError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        IoError::Os {
            path: path.to_path_buf(),
            source,
        }
    }
}
