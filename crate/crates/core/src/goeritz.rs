//! Goeritz matrices built directly from the shaded regions.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::intmat::{IntMatrix, MatrixError};
use crate::pdcode::{Checkerboard, Diagram, GoeritzIndexTable, RegionSet};

/// The full (pre-)Goeritz matrix over the shaded regions, in checkerboard column
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoeritzMatrix {
    pub matrix: IntMatrix,
    /// Region index of each row/column.
    pub shaded_labels: Vec<usize>,
}

/// Off-diagonal entries sum the indices of crossings where two distinct shaded
/// regions meet; the diagonal makes every row sum to zero.
pub fn goeritz_matrix(
    d: &Diagram,
    r: &RegionSet,
    cb: &Checkerboard,
    idx: &GoeritzIndexTable,
) -> GoeritzMatrix {
    let shaded = cb.shaded_regions();
    let b = shaded.len();
    let mut pos = vec![usize::MAX; r.region_count()];
    for (i, &region) in shaded.iter().enumerate() {
        pos[region] = i;
    }
    let mut off = vec![vec![0i64; b]; b];
    for c in 0..d.crossing_count() {
        let first = if cb.is_shaded(r.region_at(c, 0)) {
            0
        } else {
            1
        };
        let (x, y) = (pos[r.region_at(c, first)], pos[r.region_at(c, first + 2)]);
        if x == y {
            continue;
        }
        let g = idx.get(c).to_i64();
        off[x][y] += g;
        off[y][x] += g;
    }
    for (j, row) in off.iter_mut().enumerate() {
        row[j] = 0;
        row[j] = -row.iter().sum::<i64>();
    }
    GoeritzMatrix {
        matrix: IntMatrix::from_rows_with_cols(&off, b).expect("square"),
        shaded_labels: shaded.to_vec(),
    }
}

impl GoeritzMatrix {
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// Deletes row and column `k`.
    pub fn reduced(&self, k: usize) -> Result<IntMatrix, MatrixError> {
        self.matrix.minor(k, k)
    }

    /// `|det|` of the reduced matrix with the last row and column removed.
    pub fn knot_determinant(&self) -> BigInt {
        let b = self.size();
        if b == 0 {
            return BigInt::from(1);
        }
        self.reduced(b - 1)
            .and_then(|m| m.det())
            .expect("reduced Goeritz matrix is square")
            .abs()
    }

    /// `|det|` of every reduction, in order of the deleted index.
    pub fn reduced_determinants(&self) -> Vec<BigInt> {
        (0..self.size())
            .map(|k| {
                self.reduced(k)
                    .and_then(|m| m.det())
                    .expect("reduced Goeritz matrix is square")
                    .abs()
            })
            .collect()
    }

    /// Symmetric with zero row sums.
    pub fn is_well_formed(&self) -> bool {
        self.matrix.is_symmetric()
            && self
                .matrix
                .row_iter()
                .all(|r| r.iter().sum::<BigInt>().is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pdcode::{checkerboard, faces, parse_pd};

    fn goeritz_for(text: &str, selector: Option<usize>) -> GoeritzMatrix {
        let d = parse_pd(text).unwrap();
        let r = faces(&d);
        let cb = checkerboard(&d, &r, selector).unwrap();
        let idx = GoeritzIndexTable::new(&d, &r, &cb);
        goeritz_matrix(&d, &r, &cb, &idx)
    }

    #[test]
    fn trefoil_two_shaded_regions() {
        let d = parse_pd("X 1 4 2 5 / X 3 6 4 1 / X 5 2 6 3").unwrap();
        let r = faces(&d);
        let cb = checkerboard(&d, &r, None).unwrap();
        let cb = if cb.shaded_count() == 2 {
            cb
        } else {
            cb.swapped()
        };
        let idx = GoeritzIndexTable::new(&d, &r, &cb);
        let g = goeritz_matrix(&d, &r, &cb, &idx);
        // three crossings join the two shaded regions, all with the same index
        let i = idx.get(0).to_i64();
        let expected = IntMatrix::from_rows(&[[-3 * i, 3 * i], [3 * i, -3 * i]]).unwrap();
        assert_eq!(g.matrix, expected);
        assert_eq!(g.knot_determinant(), BigInt::from(3));
    }

    #[test]
    fn unknot_is_zero_by_one() {
        let g = goeritz_for("unknot", None);
        assert_eq!(g.matrix, IntMatrix::zeros(1, 1));
        assert_eq!(g.reduced(0).unwrap(), IntMatrix::zeros(0, 0));
        assert_eq!(g.knot_determinant(), BigInt::from(1));
        assert!(g.reduced(1).is_err());
    }

    #[test]
    fn figure_eight_both_shadings() {
        let text = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
        for sel in 0..6 {
            let g = goeritz_for(text, Some(sel));
            assert!(g.is_well_formed());
            assert!(g.matrix.det().unwrap().is_zero());
            assert!(g
                .reduced_determinants()
                .iter()
                .all(|x| *x == BigInt::from(5)));
        }
    }

    #[test]
    fn kink_contributes_nothing_off_diagonal() {
        // the nugatory crossing has both shaded corners in the outer face
        let g = goeritz_for("X 1 2 2 1", None);
        assert_eq!(g.matrix, IntMatrix::zeros(1, 1));
        let g = goeritz_for("X 1 2 2 1", Some(1));
        assert_eq!(g.size(), 2);
        assert_eq!(g.knot_determinant(), BigInt::from(1));
    }
}
