//! JSON exchange formats.
//!
//! Matrices: `{"dim": N, "entries": [[[re, im], ...], ...]}`, row-major.
//! Probability vectors and eigenvalue lists: plain JSON arrays of numbers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            dim: m.dim(),
            entries: m
                .rows()
                .into_iter()
                .map(|r| r.into_iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        if j.entries.len() != j.dim {
            return Err(Error::InvalidArgument(format!(
                "\"dim\" is {} but \"entries\" has {} rows",
                j.dim,
                j.entries.len()
            )));
        }
        let rows: Vec<Vec<C64>> = j
            .entries
            .iter()
            .map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect())
            .collect();
        ComplexMatrix::from_rows(&rows)
    }
}

/// Failure to read an input document, with location for syntax errors.
#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("JSON error at line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] Error),
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError::Syntax {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        }
    }
}

pub fn parse_matrix(text: &str) -> std::result::Result<ComplexMatrix, ParseError> {
    let j: MatrixJson = serde_json::from_str(text)?;
    Ok(ComplexMatrix::try_from(j)?)
}

pub fn matrix_to_json(m: &ComplexMatrix) -> String {
    serde_json::to_string(&MatrixJson::from(m)).expect("matrix serialization")
}

pub fn parse_vector(text: &str) -> std::result::Result<Vec<f64>, ParseError> {
    Ok(serde_json::from_str(text)?)
}

/// Either a bare eigenvalue list or a matrix document.
#[derive(Debug, Clone, PartialEq)]
pub enum VectorOrMatrix {
    Vector(Vec<f64>),
    Matrix(ComplexMatrix),
}

pub fn parse_vector_or_matrix(text: &str) -> std::result::Result<VectorOrMatrix, ParseError> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    if v.is_array() {
        Ok(VectorOrMatrix::Vector(serde_json::from_value(v).map_err(|e| {
            ParseError::Invalid(Error::InvalidArgument(e.to_string()))
        })?))
    } else {
        let j: MatrixJson = serde_json::from_value(v)
            .map_err(|e| ParseError::Invalid(Error::InvalidArgument(e.to_string())))?;
        Ok(VectorOrMatrix::Matrix(ComplexMatrix::try_from(j)?))
    }
}

/// Rounds to 15 significant digits for report output.
pub fn round_sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}
