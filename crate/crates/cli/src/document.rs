//! Matrix files: a whitespace-separated plaintext format and a JSON document.
//!
//! Plaintext is row-major scalars with `#` comments. An optional leading
//! `complex` token switches to interleaved `re im` pairs; the size is inferred
//! from the entry count. JSON input is recognized by a leading `{`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("entry {index} (`{token}`) is not a number")]
    BadNumber { index: usize, token: String },
    #[error("{count} {kind} entries do not form a 2x2, 3x3 or 4x4 matrix")]
    BadCount { count: usize, kind: Kind },
    #[error("document says n = {n} but has {count} entries; a {kind} {n}x{n} matrix needs {expected}")]
    CountMismatch { n: usize, kind: Kind, count: usize, expected: usize },
    #[error("unsupported size n = {0}; expected 2, 3 or 4")]
    BadSize(usize),
    #[error("entry {0} is not finite")]
    NonFinite(usize),
    #[error("invalid JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Real,
    Complex,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::Real => "real",
            Kind::Complex => "complex",
        })
    }
}

/// Serialized form of a matrix. Complex entries are interleaved `re, im`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub n: usize,
    pub kind: Kind,
    pub entries: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Matrix {
    Real(DMatrix<f64>),
    Complex(DMatrix<Complex64>),
}

impl Matrix {
    pub fn n(&self) -> usize {
        match self {
            Matrix::Real(m) => m.nrows(),
            Matrix::Complex(m) => m.nrows(),
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Matrix::Real(_) => Kind::Real,
            Matrix::Complex(_) => Kind::Complex,
        }
    }
}

fn entries_per_scalar(kind: Kind) -> usize {
    match kind {
        Kind::Real => 1,
        Kind::Complex => 2,
    }
}

impl MatrixDocument {
    pub fn validate(&self) -> Result<(), ParseError> {
        if !(2..=4).contains(&self.n) {
            return Err(ParseError::BadSize(self.n));
        }
        let expected = self.n * self.n * entries_per_scalar(self.kind);
        if self.entries.len() != expected {
            return Err(ParseError::CountMismatch {
                n: self.n,
                kind: self.kind,
                count: self.entries.len(),
                expected,
            });
        }
        if let Some(i) = self.entries.iter().position(|x| !x.is_finite()) {
            return Err(ParseError::NonFinite(i));
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> Result<Matrix, ParseError> {
        self.validate()?;
        let n = self.n;
        Ok(match self.kind {
            Kind::Real => Matrix::Real(DMatrix::from_row_slice(n, n, &self.entries)),
            Kind::Complex => {
                let z: Vec<_> = self.entries.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect();
                Matrix::Complex(DMatrix::from_row_slice(n, n, &z))
            }
        })
    }

    pub fn from_matrix(m: &Matrix, label: Option<String>) -> Self {
        let n = m.n();
        let entries = match m {
            Matrix::Real(a) => (0..n).flat_map(|r| (0..n).map(move |c| a[(r, c)])).collect(),
            Matrix::Complex(a) => (0..n)
                .flat_map(|r| (0..n).flat_map(move |c| [a[(r, c)].re, a[(r, c)].im]))
                .collect(),
        };
        MatrixDocument { n, kind: m.kind(), entries, label }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

/// Plaintext or JSON, chosen by the first non-blank character.
pub fn parse(text: &str) -> Result<MatrixDocument, ParseError> {
    if text.trim_start().starts_with('{') {
        let doc: MatrixDocument = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    } else {
        parse_plain(text)
    }
}

pub fn parse_plain(text: &str) -> Result<MatrixDocument, ParseError> {
    let mut tokens = text
        .lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .peekable();
    let kind = match tokens.peek() {
        Some(t) if t.eq_ignore_ascii_case("complex") => {
            tokens.next();
            Kind::Complex
        }
        Some(t) if t.eq_ignore_ascii_case("real") => {
            tokens.next();
            Kind::Real
        }
        _ => Kind::Real,
    };
    let entries = tokens
        .enumerate()
        .map(|(index, token)| {
            token.parse::<f64>().map_err(|_| ParseError::BadNumber {
                index,
                token: token.to_string(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let per = entries_per_scalar(kind);
    let n = (2..=4)
        .find(|n| n * n * per == entries.len())
        .ok_or(ParseError::BadCount { count: entries.len(), kind })?;
    let doc = MatrixDocument { n, kind, entries, label: None };
    doc.validate()?;
    Ok(doc)
}
