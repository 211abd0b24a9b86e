//! Decoders for JSON input from untrusted sources. Every error carries the
//! line and column where decoding stopped.

use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::approx::{BlaschkeProduct, QuatRationalApprox};
use crate::linalg::{ChiBlock, QuatMatrix};
use crate::quaternion::{ImaginaryUnit, Quaternion};
use crate::series::{AnySeries, MatrixSeries, ScalarSeries, SplitPair};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at line {line} column {column}")]
pub struct DecodeError {
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl From<serde_json::Error> for DecodeError {
    fn from(e: serde_json::Error) -> Self {
        let full = e.to_string();
        // serde_json appends " at line L column C"; keep the bare message
        let message = match full.rfind(" at line ") {
            Some(i) => full[..i].to_string(),
            None => full,
        };
        DecodeError { message, line: e.line(), column: e.column() }
    }
}

pub type DecodeResult<T> = std::result::Result<T, DecodeError>;

/// Decodes any deserializable value, rejecting trailing input.
pub fn decode<T: DeserializeOwned>(text: &str) -> DecodeResult<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn decode_quaternion(text: &str) -> DecodeResult<Quaternion> {
    decode(text)
}

pub fn decode_unit(text: &str) -> DecodeResult<ImaginaryUnit> {
    decode(text)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ArrayForm {
    Rows(Vec<Vec<Quaternion>>),
    Flat(Vec<Quaternion>),
}

/// Accepted matrix forms: `{"rows", "cols", "entries"}`, nested rows
/// `[[q, ...], ...]`, or a flat row-major list of `n^2` quaternions.
pub fn decode_matrix(text: &str) -> DecodeResult<QuatMatrix> {
    let value: serde_json::Value = decode(text)?;
    if !value.is_array() {
        return decode(text);
    }
    let bad = |message: String| DecodeError { message, line: 1, column: 1 };
    let form = ArrayForm::deserialize(&value)
        .map_err(|_| bad("expected nested rows of quaternions or a flat square list of quaternions".into()))?;
    match form {
        ArrayForm::Rows(rows) => {
            let cols = rows.first().map_or(0, Vec::len);
            if rows.iter().any(|r| r.len() != cols) {
                return Err(bad("matrix rows have different lengths".into()));
            }
            let n = rows.len();
            QuatMatrix::new(n, cols, rows.into_iter().flatten().collect()).map_err(|e| bad(e.to_string()))
        }
        ArrayForm::Flat(entries) => {
            let n = (entries.len() as f64).sqrt().round() as usize;
            if n * n != entries.len() {
                return Err(bad(format!("flat matrix needs a square number of entries, got {}", entries.len())));
            }
            QuatMatrix::new(n, n, entries).map_err(|e| bad(e.to_string()))
        }
    }
}

pub fn decode_chi(text: &str) -> DecodeResult<ChiBlock> {
    decode(text)
}

pub fn decode_scalar_series(text: &str) -> DecodeResult<ScalarSeries> {
    decode(text)
}

pub fn decode_matrix_series(text: &str) -> DecodeResult<MatrixSeries> {
    decode(text)
}

pub fn decode_series(text: &str) -> DecodeResult<AnySeries> {
    decode(text)
}

pub fn decode_split(text: &str) -> DecodeResult<SplitPair> {
    decode(text)
}

pub fn decode_blaschke(text: &str) -> DecodeResult<BlaschkeProduct> {
    decode(text)
}

pub fn decode_approximant(text: &str) -> DecodeResult<QuatRationalApprox> {
    decode(text)
}
