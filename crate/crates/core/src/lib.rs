//! Dehn coloring matrices and Goeritz matrices of knot diagrams.
//!
//! A diagram is read from a PD code ([`pdcode::parse_pd`]), its faces and
//! checkerboard coloring are computed combinatorially, and from there the crate
//! builds the Dehn coloring matrix ([`dehn`]), the Goeritz matrix ([`goeritz`]),
//! and recovers the latter from the former in two ways ([`reconstruct`]): one
//! guided by per-crossing Goeritz indices, one purely algebraic for prime
//! diagrams. [`colorability`] ties kernels mod `p` to the knot determinant.

pub mod analysis;
pub mod colorability;
pub mod dehn;
pub mod goeritz;
pub mod intmat;
pub mod io;
pub mod pdcode;
pub mod reconstruct;

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

pub use analysis::DiagramAnalysis;
pub use dehn::DehnMatrix;
pub use goeritz::GoeritzMatrix;
pub use intmat::{IntMatrix, MatrixError};
pub use pdcode::{parse_pd, Checkerboard, Diagram, DiagramError, GoeritzIndexTable, RegionSet};

/// A unit `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.to_i64() as i8
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> Result<Self, Self::Error> {
        Sign::from_i64(v as i64).ok_or_else(|| format!("{v} is not a sign"))
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}
