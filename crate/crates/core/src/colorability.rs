//! Dehn colorings modulo `p` and their relation to the knot determinant.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::dehn::DehnMatrix;
use crate::intmat::{check_prime, MatrixError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ColoringKind {
    Trivial,
    Checkerboard,
    Essential,
}

/// Colors per column of the Dehn matrix, as residues mod `modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DehnColoring {
    pub colors: Vec<u64>,
    pub modulus: u64,
}

impl DehnColoring {
    pub fn satisfies(&self, md: &DehnMatrix) -> bool {
        let p = BigInt::from(self.modulus);
        md.matrix.row_iter().all(|row| {
            let s: BigInt = row
                .iter()
                .zip(&self.colors)
                .map(|(x, &c)| x * BigInt::from(c))
                .sum();
            s.mod_floor(&p).is_zero()
        })
    }

    /// Trivial if constant; checkerboard if constant on each color class
    /// (the span of the constant and shaded-indicator vectors); else essential.
    pub fn kind(&self, shaded_count: usize) -> ColoringKind {
        let (shaded, unshaded) = self.colors.split_at(shaded_count.min(self.colors.len()));
        let constant = |xs: &[u64]| xs.windows(2).all(|w| w[0] == w[1]);
        if constant(&self.colors) {
            ColoringKind::Trivial
        } else if constant(shaded) && constant(unshaded) {
            ColoringKind::Checkerboard
        } else {
            ColoringKind::Essential
        }
    }
}

/// Basis of the Dehn colorings mod a prime `p`.
pub fn coloring_space(md: &DehnMatrix, p: u64) -> Result<Vec<DehnColoring>, MatrixError> {
    Ok(md
        .matrix
        .kernel_mod_p(p)?
        .into_iter()
        .map(|colors| DehnColoring { colors, modulus: p })
        .collect())
}

/// An essential coloring exists exactly when the solution space is larger than
/// the two dimensions spanned by the constant and checkerboard colorings.
pub fn is_dehn_p_colorable(md: &DehnMatrix, p: u64) -> Result<bool, MatrixError> {
    check_prime(p)?;
    Ok(md.cols() - md.matrix.rank_mod_p(p)? > 2)
}

/// Number of Dehn colorings mod any `n >= 2`, from the Smith normal form:
/// `n^(cols - rank) · Π gcd(d_i, n)`.
pub fn coloring_count(md: &DehnMatrix, n: u64) -> BigUint {
    let snf = md.matrix.smith_normal_form();
    let nb = BigInt::from(n);
    let free = md.cols() - snf.rank();
    let torsion: BigInt = snf
        .invariant_factors
        .iter()
        .filter(|d| !d.is_zero())
        .map(|d| d.gcd(&nb))
        .product();
    let count = num_traits::pow(nb, free) * torsion;
    count.to_biguint().expect("count is positive")
}

/// Composite-modulus variant via [`coloring_count`]: more than the `n²`
/// colorings spanned by the constant and checkerboard vectors.
pub fn is_dehn_n_colorable(md: &DehnMatrix, n: u64) -> bool {
    n >= 2 && coloring_count(md, n) > BigUint::from(n) * BigUint::from(n)
}

/// Colorability against divisibility of the determinant, for one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub p: u64,
    pub kernel_dimension: usize,
    pub colorable: bool,
    pub determinant: String,
    pub divides_determinant: bool,
    pub agree: bool,
}

pub fn divisibility_report(
    md: &DehnMatrix,
    determinant: &BigInt,
    p: u64,
) -> Result<DivisibilityReport, MatrixError> {
    check_prime(p)?;
    let kernel_dimension = md.cols() - md.matrix.rank_mod_p(p)?;
    let colorable = kernel_dimension > 2;
    let divides = determinant.is_multiple_of(&BigInt::from(p));
    Ok(DivisibilityReport {
        p,
        kernel_dimension,
        colorable,
        determinant: determinant.to_string(),
        divides_determinant: divides,
        agree: colorable == divides,
    })
}

/// `true` when `v` lies in the span of `basis` mod `p`.
pub fn in_span_mod_p(basis: &[Vec<u64>], v: &[u64], p: u64) -> bool {
    let rows: Vec<Vec<i64>> = basis
        .iter()
        .map(|b| b.iter().map(|&x| x as i64).collect())
        .collect();
    let cols = v.len();
    let without = crate::IntMatrix::from_rows_with_cols(&rows, cols).expect("same width");
    let mut with_rows = rows.clone();
    with_rows.push(v.iter().map(|&x| x as i64).collect());
    let with = crate::IntMatrix::from_rows_with_cols(&with_rows, cols).expect("same width");
    with.rank_mod_p(p).expect("prime") == without.rank_mod_p(p).expect("prime")
}

/// Constant and shaded-indicator vectors, the colorings every diagram has.
pub fn trivial_colorings(md: &DehnMatrix) -> [Vec<u64>; 2] {
    let constant = vec![1; md.cols()];
    let indicator = (0..md.cols())
        .map(|c| u64::from(md.is_shaded_column(c)))
        .collect();
    [constant, indicator]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dehn::dehn_matrix;
    use crate::pdcode::{checkerboard, faces, parse_pd};

    fn trefoil() -> DehnMatrix {
        let d = parse_pd("X 1 4 2 5 / X 3 6 4 1 / X 5 2 6 3").unwrap();
        let r = faces(&d);
        let cb = checkerboard(&d, &r, None).unwrap();
        dehn_matrix(&d, &r, &cb)
    }

    #[test]
    fn trefoil_is_three_colorable_only() {
        let md = trefoil();
        assert!(is_dehn_p_colorable(&md, 3).unwrap());
        for p in [2, 5, 7, 11] {
            assert!(!is_dehn_p_colorable(&md, p).unwrap());
        }
        assert_eq!(is_dehn_p_colorable(&md, 4), Err(MatrixError::NotPrime(4)));
    }

    #[test]
    fn basis_solves_equations_and_spans_trivial_ones() {
        let md = trefoil();
        for p in [2, 3, 5] {
            let basis = coloring_space(&md, p).unwrap();
            assert!(basis.iter().all(|c| c.satisfies(&md)));
            let vecs: Vec<Vec<u64>> = basis.iter().map(|c| c.colors.clone()).collect();
            for t in trivial_colorings(&md) {
                assert!(in_span_mod_p(&vecs, &t, p));
            }
        }
        let kinds: Vec<ColoringKind> = coloring_space(&md, 3)
            .unwrap()
            .iter()
            .map(|c| c.kind(md.shaded_count))
            .collect();
        assert!(kinds.contains(&ColoringKind::Essential));
    }

    #[test]
    fn counts_via_smith_form() {
        let md = trefoil();
        // kernel dimension 3 mod 3, 2 mod 5
        assert_eq!(coloring_count(&md, 3), BigUint::from(27u32));
        assert_eq!(coloring_count(&md, 5), BigUint::from(25u32));
        assert_eq!(coloring_count(&md, 6), BigUint::from(108u32));
        assert!(is_dehn_n_colorable(&md, 6));
        assert!(is_dehn_n_colorable(&md, 9));
        assert!(!is_dehn_n_colorable(&md, 4));
        assert!(!is_dehn_n_colorable(&md, 1));
    }

    #[test]
    fn kinds() {
        let c = DehnColoring {
            colors: vec![2, 2, 2, 2],
            modulus: 5,
        };
        assert_eq!(c.kind(2), ColoringKind::Trivial);
        let c = DehnColoring {
            colors: vec![1, 1, 4, 4],
            modulus: 5,
        };
        assert_eq!(c.kind(2), ColoringKind::Checkerboard);
        let c = DehnColoring {
            colors: vec![1, 2, 4, 4],
            modulus: 5,
        };
        assert_eq!(c.kind(2), ColoringKind::Essential);
    }

    #[test]
    fn report_flags_agreement() {
        let md = trefoil();
        let r = divisibility_report(&md, &BigInt::from(3), 3).unwrap();
        assert!(r.colorable && r.divides_determinant && r.agree);
        let r = divisibility_report(&md, &BigInt::from(3), 7).unwrap();
        assert!(!r.colorable && !r.divides_determinant && r.agree);
        let r = divisibility_report(&md, &BigInt::from(5), 3).unwrap();
        assert!(!r.agree);
        assert!(divisibility_report(&md, &BigInt::from(1), 10).is_err());
    }
}
