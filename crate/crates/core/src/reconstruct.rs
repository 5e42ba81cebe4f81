//! Recovering the Goeritz matrix from the Dehn coloring matrix.
//!
//! Both methods produce, for every shaded column `j`, a signed sum of the Dehn
//! rows that are nonzero in column `j`. With the Goeritz indices at hand the signs
//! are read off directly ([`thm1_reconstruct`]). Without them, on a prime diagram,
//! the signs are forced (up to one global flip per column) by requiring every
//! unshaded coefficient to cancel ([`thm2_sign_solve`]), and a final per-row
//! re-signing makes the result symmetric ([`symmetrize`]).

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::dehn::DehnMatrix;
use crate::intmat::IntMatrix;
use crate::pdcode::GoeritzIndexTable;
use crate::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error("inconsistent inputs: {0}")]
    InconsistentInputs(String),
    #[error("diagram is not prime")]
    NotPrime,
    #[error("column {column} is not a shaded column ({shaded} shaded)")]
    NotShadedColumn { column: usize, shaded: usize },
    #[error("column {column}: unshaded column {unshaded} is nonzero in {count} selected rows (expected 2)")]
    NotTwoIncident {
        column: usize,
        unshaded: usize,
        count: usize,
    },
    #[error("column {column}: sign constraints do not connect all selected rows")]
    Disconnected { column: usize },
    #[error("column {column}: sign constraints conflict on a cycle")]
    Inconsistent { column: usize },
    #[error("column {column}: anchor row {row} has a zero entry in that column")]
    AnchorNotSelected { column: usize, row: usize },
    #[error(transparent)]
    Symmetrize(#[from] SymmetrizeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetrizeError {
    #[error("entries ({row}, {col}) and ({col}, {row}) differ in absolute value")]
    AsymmetricMagnitudes { row: usize, col: usize },
    #[error("no re-signing of the rows is symmetric")]
    Inconsistent,
    #[error("rows {0:?} are not linked to row 0 by nonzero entries")]
    Disconnected(Vec<usize>),
    #[error("need at least {needed} columns, found {found}")]
    TooNarrow { needed: usize, found: usize },
}

/// Per-row signs used for one shaded column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignAssignment {
    pub column: usize,
    pub signs: BTreeMap<usize, Sign>,
    pub anchor: usize,
}

impl SignAssignment {
    pub fn flipped(&self) -> SignAssignment {
        SignAssignment {
            column: self.column,
            signs: self.signs.iter().map(|(&r, &s)| (r, -s)).collect(),
            anchor: self.anchor,
        }
    }

    /// `Σ s_r · row_r` over the assigned rows.
    pub fn apply(&self, md: &DehnMatrix) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); md.cols()];
        for (&r, &s) in &self.signs {
            for (a, x) in acc.iter_mut().zip(md.matrix.row(r)) {
                match s {
                    Sign::Plus => *a += x,
                    Sign::Minus => *a -= x,
                }
            }
        }
        acc
    }
}

/// Row `0..b` per shaded column; `full` is `b x m`, `left` its leading `b x b`
/// block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReconstructionResult {
    pub full: IntMatrix,
    pub left: IntMatrix,
    /// True when the global sign is determined by the method itself (Goeritz
    /// indices) rather than by a normalization convention.
    pub sign_fixed: bool,
    pub assignments: Vec<SignAssignment>,
    /// Output row re-signing applied after the per-column solves, if any.
    pub row_signs: Option<Vec<Sign>>,
    /// Same matrix before the sign normalization: row 0 left as solved.
    pub unnormalized: Option<IntMatrix>,
}

impl ReconstructionResult {
    fn new(
        rows: Vec<Vec<BigInt>>,
        cols: usize,
        b: usize,
        sign_fixed: bool,
        assignments: Vec<SignAssignment>,
    ) -> Self {
        let full = IntMatrix::from_big_rows(rows, cols).expect("rows have equal width");
        let left = full.column_block(0, b);
        Self {
            full,
            left,
            sign_fixed,
            assignments,
            row_signs: None,
            unnormalized: None,
        }
    }

    /// Every entry right of the shaded block is zero.
    pub fn right_block_zero(&self) -> bool {
        let b = self.left.cols();
        self.full.column_block(b, self.full.cols()).is_zero()
    }
}

/// Signed row sums with `s_r = -index(crossing_r) · M[r, j]`, for `j` over the
/// shaded columns.
pub fn thm1_reconstruct(
    md: &DehnMatrix,
    idx: &GoeritzIndexTable,
) -> Result<ReconstructionResult, ReconstructError> {
    if let Some(&c) = md.row_crossing.iter().find(|&&c| c >= idx.len()) {
        return Err(ReconstructError::InconsistentInputs(format!(
            "row crossing {c} has no Goeritz index ({} indexed)",
            idx.len()
        )));
    }
    if idx.len() != md.rows() {
        return Err(ReconstructError::InconsistentInputs(format!(
            "{} Goeritz indices for {} Dehn rows",
            idx.len(),
            md.rows()
        )));
    }
    let b = md.shaded_count;
    let mut rows = Vec::with_capacity(b);
    let mut assignments = Vec::with_capacity(b);
    for j in 0..b {
        let selected = md.select_rows(j).expect("shaded column is in range");
        let signs: BTreeMap<usize, Sign> = selected
            .iter()
            .map(|&(r, entry)| (r, -(idx.get(md.row_crossing[r]) * entry)))
            .collect();
        let assignment = SignAssignment {
            column: j,
            anchor: selected.first().map_or(0, |&(r, _)| r),
            signs,
        };
        rows.push(assignment.apply(md));
        assignments.push(assignment);
    }
    Ok(ReconstructionResult::new(
        rows,
        md.cols(),
        b,
        true,
        assignments,
    ))
}

/// Which selected row is held fixed, and with what sign, when solving one column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Anchor {
    /// `None` picks the lowest-index selected row.
    pub row: Option<usize>,
    pub sign: Sign,
}

impl Default for Anchor {
    fn default() -> Self {
        Self {
            row: None,
            sign: Sign::Plus,
        }
    }
}

/// Finds the unique (given the anchor) signs on the rows selected by shaded
/// column `j` that cancel every unshaded coefficient, and returns them with the
/// summed row.
pub fn thm2_sign_solve(
    md: &DehnMatrix,
    j: usize,
    anchor: Anchor,
) -> Result<(SignAssignment, Vec<BigInt>), ReconstructError> {
    let b = md.shaded_count;
    if j >= b {
        return Err(ReconstructError::NotShadedColumn {
            column: j,
            shaded: b,
        });
    }
    let selected: Vec<usize> = md
        .select_rows(j)
        .expect("shaded column is in range")
        .into_iter()
        .map(|(r, _)| r)
        .collect();
    let slot: BTreeMap<usize, usize> = selected.iter().enumerate().map(|(i, &r)| (r, i)).collect();

    let anchor_row = match anchor.row {
        Some(row) if !slot.contains_key(&row) => {
            return Err(ReconstructError::AnchorNotSelected { column: j, row })
        }
        Some(row) => row,
        None => match selected.first() {
            Some(&r) => r,
            None => {
                let assignment = SignAssignment {
                    column: j,
                    signs: BTreeMap::new(),
                    anchor: 0,
                };
                return Ok((assignment, vec![BigInt::zero(); md.cols()]));
            }
        },
    };

    // links[i]: (other slot, parity) meaning s_other = parity * s_i
    let mut links: Vec<Vec<(usize, Sign)>> = vec![Vec::new(); selected.len()];
    for k in b..md.cols() {
        let hits: Vec<usize> = selected
            .iter()
            .copied()
            .filter(|&r| md.entry(r, k) != 0)
            .collect();
        match hits.len() {
            0 => continue,
            2 => {}
            count => {
                return Err(ReconstructError::NotTwoIncident {
                    column: j,
                    unshaded: k,
                    count,
                })
            }
        }
        let (r1, r2) = (hits[0], hits[1]);
        // s1 * e1 + s2 * e2 = 0  =>  s2 = -(e1 * e2) * s1
        let e1 = Sign::from_i64(md.entry(r1, k)).expect("unit");
        let e2 = Sign::from_i64(md.entry(r2, k)).expect("unit");
        let parity = -(e1 * e2);
        links[slot[&r1]].push((slot[&r2], parity));
        links[slot[&r2]].push((slot[&r1], parity));
    }

    let mut sign: Vec<Option<Sign>> = vec![None; selected.len()];
    sign[slot[&anchor_row]] = Some(anchor.sign);
    let mut queue = VecDeque::from([slot[&anchor_row]]);
    while let Some(i) = queue.pop_front() {
        let si = sign[i].expect("queued rows are signed");
        for &(t, parity) in &links[i] {
            let want = parity * si;
            match sign[t] {
                None => {
                    sign[t] = Some(want);
                    queue.push_back(t);
                }
                Some(st) if st != want => return Err(ReconstructError::Inconsistent { column: j }),
                Some(_) => {}
            }
        }
    }
    if sign.iter().any(Option::is_none) {
        return Err(ReconstructError::Disconnected { column: j });
    }

    let assignment = SignAssignment {
        column: j,
        signs: selected
            .iter()
            .zip(&sign)
            .map(|(&r, s)| (r, s.expect("all signed")))
            .collect(),
        anchor: anchor_row,
    };
    let summed = assignment.apply(md);
    debug_assert!(summed[b..].iter().all(Zero::is_zero));
    Ok((assignment, summed))
}

/// Outcome of [`symmetrize`]: `raw` keeps row 0 as given, `normalized` makes the
/// first nonzero entry of row 0 positive. Both are valid; they differ by a global
/// flip.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Symmetrization {
    pub raw: Vec<Sign>,
    pub normalized: Vec<Sign>,
}

/// Finds `ε` with `ε_j · rows[j][k] = ε_k · rows[k][j]` on the leading square
/// block, by propagating parities across nonzero off-diagonal entries.
pub fn symmetrize(rows: &IntMatrix) -> Result<Symmetrization, SymmetrizeError> {
    let b = rows.rows();
    if rows.cols() < b {
        return Err(SymmetrizeError::TooNarrow {
            needed: b,
            found: rows.cols(),
        });
    }
    let mut links: Vec<Vec<(usize, Sign)>> = vec![Vec::new(); b];
    for j in 0..b {
        for k in j + 1..b {
            let (x, y) = (rows.get(j, k), rows.get(k, j));
            if x.abs() != y.abs() {
                return Err(SymmetrizeError::AsymmetricMagnitudes { row: j, col: k });
            }
            if x.is_zero() {
                continue;
            }
            // ε_k = ε_j · sign(x) · sign(y)
            let parity = if x.is_positive() == y.is_positive() {
                Sign::Plus
            } else {
                Sign::Minus
            };
            links[j].push((k, parity));
            links[k].push((j, parity));
        }
    }
    let mut eps: Vec<Option<Sign>> = vec![None; b];
    if b > 0 {
        eps[0] = Some(Sign::Plus);
    }
    let mut queue: VecDeque<usize> = (0..b.min(1)).collect();
    while let Some(j) = queue.pop_front() {
        let ej = eps[j].expect("queued rows are signed");
        for &(k, parity) in &links[j] {
            let want = ej * parity;
            match eps[k] {
                None => {
                    eps[k] = Some(want);
                    queue.push_back(k);
                }
                Some(ek) if ek != want => return Err(SymmetrizeError::Inconsistent),
                Some(_) => {}
            }
        }
    }
    let missing: Vec<usize> = (0..b).filter(|&j| eps[j].is_none()).collect();
    if !missing.is_empty() {
        return Err(SymmetrizeError::Disconnected(missing));
    }
    let raw: Vec<Sign> = eps.into_iter().map(|e| e.expect("all signed")).collect();
    let first = (0..b).map(|k| rows.get(0, k)).find(|x| !x.is_zero());
    let flip = first.is_some_and(|x| x.is_negative());
    let normalized = raw.iter().map(|&e| if flip { -e } else { e }).collect();
    Ok(Symmetrization { raw, normalized })
}

fn resign_rows(rows: &IntMatrix, signs: &[Sign]) -> IntMatrix {
    let mut out = rows.clone();
    for (i, s) in signs.iter().enumerate() {
        if *s == Sign::Minus {
            for x in out.row_mut(i) {
                *x = -&*x;
            }
        }
    }
    out
}

/// Per-column sign solves followed by symmetrization. `anchors` overrides the
/// default anchor for individual shaded columns. The caller is responsible for
/// checking that the diagram is prime; on non-prime input the solves usually
/// fail with [`ReconstructError::NotTwoIncident`].
pub fn thm2_reconstruct(
    md: &DehnMatrix,
    anchors: &BTreeMap<usize, Anchor>,
) -> Result<ReconstructionResult, ReconstructError> {
    let b = md.shaded_count;
    let mut rows = Vec::with_capacity(b);
    let mut assignments = Vec::with_capacity(b);
    for j in 0..b {
        let anchor = anchors.get(&j).copied().unwrap_or_default();
        let (assignment, summed) = thm2_sign_solve(md, j, anchor)?;
        rows.push(summed);
        assignments.push(assignment);
    }
    let stacked = IntMatrix::from_big_rows(rows, md.cols()).expect("rows have equal width");
    let eps = symmetrize(&stacked)?;
    let unnormalized = resign_rows(&stacked, &eps.raw);
    let full = resign_rows(&stacked, &eps.normalized);
    let row_rows: Vec<Vec<BigInt>> = full.row_iter().map(<[BigInt]>::to_vec).collect();
    let mut result = ReconstructionResult::new(row_rows, md.cols(), b, false, assignments);
    result.row_signs = Some(eps.normalized);
    result.unnormalized = Some(unnormalized);
    Ok(result)
}
