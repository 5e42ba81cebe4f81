//! The Dehn coloring matrix: one relation per crossing over the region variables.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::intmat::IntMatrix;
use crate::pdcode::{Checkerboard, Diagram, RegionSet};
use crate::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DehnError {
    #[error("column {column} out of range ({cols} columns)")]
    ColumnOutOfRange { column: usize, cols: usize },
    #[error("row {row} is not a Dehn relation: {reason}")]
    BadRow { row: usize, reason: String },
    #[error("{shaded} shaded columns exceed {cols} columns")]
    BadShadedCount { shaded: usize, cols: usize },
    #[error("expected a permutation of {0} entries")]
    BadPermutation(usize),
}

/// Coefficient matrix of the Dehn coloring equations. Columns `0..b` are the
/// shaded regions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DehnMatrix {
    pub matrix: IntMatrix,
    pub shaded_count: usize,
    /// Region index of each column.
    pub col_region: Vec<usize>,
    /// Crossing index of each row.
    pub row_crossing: Vec<usize>,
}

/// At each crossing the two corners on the side of the over-strand containing
/// the incoming under-edge (corners 3 and 0) get `+1`, the other two get `-1`.
/// Corners of the same region add up, so a nugatory crossing leaves two nonzero
/// entries.
pub fn dehn_matrix(d: &Diagram, r: &RegionSet, cb: &Checkerboard) -> DehnMatrix {
    let m = r.region_count();
    let mut column_of = vec![0; m];
    for (col, &region) in cb.ordering().iter().enumerate() {
        column_of[region] = col;
    }
    let mut matrix = IntMatrix::zeros(d.crossing_count(), m);
    for c in 0..d.crossing_count() {
        for (pos, coeff) in [(0, 1), (3, 1), (1, -1), (2, -1)] {
            let col = column_of[r.region_at(c, pos)];
            let v = matrix.get(c, col) + coeff;
            matrix.set(c, col, v);
        }
    }
    DehnMatrix {
        matrix,
        shaded_count: cb.shaded_count(),
        col_region: cb.ordering().to_vec(),
        row_crossing: (0..d.crossing_count()).collect(),
    }
}

impl DehnMatrix {
    /// Wraps a bare coefficient matrix whose first `shaded_count` columns are the
    /// shaded regions. Rows are checked to be Dehn relations: entries in
    /// `{-1, 0, 1}`, zero sum, two or four nonzero entries.
    pub fn from_matrix(matrix: IntMatrix, shaded_count: usize) -> Result<Self, DehnError> {
        if shaded_count > matrix.cols() {
            return Err(DehnError::BadShadedCount {
                shaded: shaded_count,
                cols: matrix.cols(),
            });
        }
        for (i, row) in matrix.row_iter().enumerate() {
            check_row(i, row)?;
        }
        Ok(Self {
            col_region: (0..matrix.cols()).collect(),
            row_crossing: (0..matrix.rows()).collect(),
            matrix,
            shaded_count,
        })
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        // entries are units or zero by construction
        let v = self.matrix.get(row, col);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn is_shaded_column(&self, col: usize) -> bool {
        col < self.shaded_count
    }

    /// Rows with a nonzero entry in column `j`, with that entry.
    pub fn select_rows(&self, j: usize) -> Result<Vec<(usize, Sign)>, DehnError> {
        if j >= self.cols() {
            return Err(DehnError::ColumnOutOfRange {
                column: j,
                cols: self.cols(),
            });
        }
        Ok((0..self.rows())
            .filter_map(|r| Sign::from_i64(self.entry(r, j)).map(|s| (r, s)))
            .collect())
    }

    /// Copy with row `i` multiplied by `signs[i]`.
    pub fn with_row_signs(&self, signs: &[Sign]) -> Self {
        assert_eq!(signs.len(), self.rows());
        let mut out = self.clone();
        for (i, s) in signs.iter().enumerate() {
            if *s == Sign::Minus {
                for x in out.matrix.row_mut(i) {
                    *x = -&*x;
                }
            }
        }
        out
    }

    /// Copy whose row `i` is row `perm[i]` of `self`.
    pub fn with_row_order(&self, perm: &[usize]) -> Result<Self, DehnError> {
        let n = self.rows();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(DehnError::BadPermutation(n));
        }
        let rows: Vec<Vec<BigInt>> = perm.iter().map(|&p| self.matrix.row(p).to_vec()).collect();
        Ok(Self {
            matrix: IntMatrix::from_big_rows(rows, self.cols()).expect("same width"),
            shaded_count: self.shaded_count,
            col_region: self.col_region.clone(),
            row_crossing: perm.iter().map(|&p| self.row_crossing[p]).collect(),
        })
    }

    /// Structural checks on every row; see [`DehnMatrix::from_matrix`].
    pub fn validate(&self) -> Result<(), DehnError> {
        for (i, row) in self.matrix.row_iter().enumerate() {
            check_row(i, row)?;
        }
        Ok(())
    }
}

fn check_row(i: usize, row: &[BigInt]) -> Result<(), DehnError> {
    let bad = |reason: &str| DehnError::BadRow {
        row: i,
        reason: reason.to_string(),
    };
    if row.iter().any(|x| x.abs() > BigInt::from(1)) {
        return Err(bad("entry outside {-1, 0, 1}"));
    }
    if !row.iter().sum::<BigInt>().is_zero() {
        return Err(bad("nonzero row sum"));
    }
    let nonzero = row.iter().filter(|x| !x.is_zero()).count();
    if nonzero != 2 && nonzero != 4 {
        return Err(bad("expected 2 or 4 nonzero entries"));
    }
    Ok(())
}
