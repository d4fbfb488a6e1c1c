//! Reading matrices and vectors, with diagnostics that name the offending
//! line.

use std::fmt;
use std::path::{Path, PathBuf};

use semipos::ratmat::{parse_matrix, parse_vector};
use semipos::{Error, RatMatrix, RatVector};
use sha2::{Digest, Sha256};

/// Failures the CLI reports before or after running a command.
#[derive(Debug)]
pub enum CliError {
    /// Bad input: unreadable or malformed file, wrong shape, failed
    /// precondition. Exit 64.
    Input(String),
    /// A witness failed re-verification or the library reported an internal
    /// inconsistency. Exit 70.
    Internal(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(m) => CliError::Internal(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Where an input came from, with the SHA-256 of its bytes.
#[derive(Debug, Clone)]
pub struct InputRecord {
    pub name: String,
    pub source: String,
    pub sha256: String,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// A parsed matrix file together with the line number of each data row.
pub struct MatrixFile {
    pub path: PathBuf,
    pub matrix: RatMatrix,
    pub row_lines: Vec<usize>,
    pub record: InputRecord,
}

impl MatrixFile {
    pub fn read(name: &str, path: &Path) -> CliResult<Self> {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::Input(format!("{}: cannot read: {e}", path.display())))?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| CliError::Input(format!("{}: not valid UTF-8", path.display())))?;
        let matrix =
            parse_matrix(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let row_lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| {
                let l = l.split('#').next().unwrap_or("").trim();
                !l.is_empty()
            })
            .map(|(i, _)| i + 1)
            .collect();
        Ok(MatrixFile {
            path: path.to_path_buf(),
            matrix,
            row_lines,
            record: InputRecord {
                name: name.to_string(),
                source: path.display().to_string(),
                sha256: digest(&bytes),
            },
        })
    }

    /// Input error pointing at data row `row` (0-based).
    pub fn error_at(&self, row: usize, msg: impl fmt::Display) -> CliError {
        let line = self.row_lines.get(row).copied().unwrap_or(0);
        CliError::Input(format!("{}: line {line}: {msg}", self.path.display()))
    }

    pub fn require_square(&self) -> CliResult<()> {
        let (r, c) = (self.matrix.rows(), self.matrix.cols());
        if r == c {
            return Ok(());
        }
        // The first row past the square size, or the first row if too short.
        let row = if r > c { c } else { 0 };
        Err(self.error_at(
            row,
            format!("{} must be square but is {r}x{c}", self.record.name),
        ))
    }
}

/// Parses a whitespace-separated vector given on the command line.
pub fn read_vector(name: &str, text: &str) -> CliResult<(RatVector, InputRecord)> {
    let v = parse_vector(text).map_err(|e| CliError::Input(format!("--{name}: {e}")))?;
    Ok((
        v,
        InputRecord {
            name: name.to_string(),
            source: "argument".to_string(),
            sha256: digest(text.as_bytes()),
        },
    ))
}
