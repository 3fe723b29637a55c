//! Command-line front end for graph permutation entropy: single computations
//! (`pe`, `peg`) and the experiment sweeps behind `experiment`.

pub mod commands;
pub mod experiments;
pub mod specs;
pub mod table;

use std::fmt;

use peg_core::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Bad flags, unknown specs, invalid parameters, signal/graph size mismatch.
    pub const CONFIG: i32 = 2;
    /// Malformed input file.
    pub const PARSE: i32 = 3;
    /// Undirected graph with an isolated vertex.
    pub const ISOLATED_VERTEX: i32 = 4;
    /// Directed graph with no vertex that starts a long enough walk.
    pub const EMPTY_DOMAIN: i32 = 5;
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError {
            code: exit::CONFIG,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let from_file = matches!(e, Error::File { .. });
        let code = match e.root() {
            Error::IsolatedVertex { .. } => exit::ISOLATED_VERTEX,
            Error::EmptyDomain(_) => exit::EMPTY_DOMAIN,
            Error::Parse { .. } | Error::ParseBytes { .. } | Error::Json(_) => exit::PARSE,
            // Content problems found while reading a file, e.g. a self-loop.
            Error::Io(_) => exit::CONFIG,
            _ if from_file => exit::PARSE,
            _ => exit::CONFIG,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
