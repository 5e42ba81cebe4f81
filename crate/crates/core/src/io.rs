//! JSON and CSV emission for matrices.
//!
//! In JSON an entry is a number when it fits in `i64` and a decimal string
//! otherwise; both forms are accepted when reading.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::intmat::IntMatrix;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("bad matrix entry {0:?}")]
    BadEntry(String),
    #[error("ragged matrix rows")]
    Ragged,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for Entry {
    fn from(x: &BigInt) -> Self {
        match x.to_i64() {
            Some(v) => Entry::Small(v),
            None => Entry::Big(x.to_string()),
        }
    }
}

impl TryFrom<&Entry> for BigInt {
    type Error = IoError;

    fn try_from(e: &Entry) -> Result<Self, IoError> {
        match e {
            Entry::Small(v) => Ok(BigInt::from(*v)),
            Entry::Big(s) => s.parse().map_err(|_| IoError::BadEntry(s.clone())),
        }
    }
}

/// Serialized form: `{"rows", "cols", "entries": [[...]], ...labels}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub col_region: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row_crossing: Option<Vec<usize>>,
}

impl MatrixJson {
    pub fn new(m: &IntMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m
                .row_iter()
                .map(|r| r.iter().map(Entry::from).collect())
                .collect(),
            col_region: None,
            row_crossing: None,
        }
    }

    pub fn with_labels(mut self, col_region: Vec<usize>, row_crossing: Vec<usize>) -> Self {
        self.col_region = Some(col_region);
        self.row_crossing = Some(row_crossing);
        self
    }

    pub fn to_matrix(&self) -> Result<IntMatrix, IoError> {
        if self.entries.len() != self.rows {
            return Err(IoError::Ragged);
        }
        let rows = self
            .entries
            .iter()
            .map(|r| {
                if r.len() != self.cols {
                    return Err(IoError::Ragged);
                }
                r.iter().map(BigInt::try_from).collect()
            })
            .collect::<Result<Vec<Vec<BigInt>>, _>>()?;
        IntMatrix::from_big_rows(rows, self.cols).map_err(|_| IoError::Ragged)
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixJson::new(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        MatrixJson::deserialize(d)?
            .to_matrix()
            .map_err(serde::de::Error::custom)
    }
}

pub fn matrix_to_json(m: &IntMatrix) -> Result<String, IoError> {
    Ok(serde_json::to_string(&MatrixJson::new(m))?)
}

pub fn matrix_from_json(text: &str) -> Result<IntMatrix, IoError> {
    serde_json::from_str::<MatrixJson>(text)?.to_matrix()
}

/// Entries only, one line per row.
pub fn matrix_to_csv(m: &IntMatrix) -> Result<String, IoError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    for r in m.row_iter() {
        w.write_record(r.iter().map(ToString::to_string))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| IoError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn matrix_from_csv(text: &str) -> Result<IntMatrix, IoError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|f| {
                f.parse::<BigInt>()
                    .map_err(|_| IoError::BadEntry(f.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    let cols = rows.first().map_or(0, Vec::len);
    IntMatrix::from_big_rows(rows, cols).map_err(|_| IoError::Ragged)
}
