//! Command-line front end for `structexp`.
//!
//! The binary is a thin wrapper over [`commands`]; each subcommand turns a
//! parsed [`document::Matrix`] into the text it prints.

pub mod commands;
pub mod document;
pub mod format;

use std::io::Read as _;

use commands::CliError;
use document::Matrix;

/// Matrix from a file path, `-` for stdin, or (with `inline`) the text itself.
pub fn load(source: &str, inline: bool) -> Result<Matrix, CliError> {
    let text = if inline {
        source.to_string()
    } else if source == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io { path: "<stdin>".into(), source: e })?;
        s
    } else {
        std::fs::read_to_string(source).map_err(|e| CliError::Io { path: source.into(), source: e })?
    };
    Ok(document::parse(&text)?.to_matrix()?)
}
