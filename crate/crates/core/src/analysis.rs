//! Everything derived from one diagram and one choice of shaded class.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::colorability::{divisibility_report, DivisibilityReport};
use crate::dehn::{dehn_matrix, DehnMatrix};
use crate::goeritz::{goeritz_matrix, GoeritzMatrix};
use crate::intmat::MatrixError;
use crate::pdcode::{
    checkerboard, faces, is_prime_diagram, Checkerboard, Diagram, DiagramError, GoeritzIndexTable,
    RegionSet,
};
use crate::reconstruct::{
    thm1_reconstruct, thm2_reconstruct, Anchor, ReconstructError, ReconstructionResult,
};

#[derive(Debug, Clone)]
pub struct DiagramAnalysis {
    pub diagram: Diagram,
    pub regions: RegionSet,
    pub checkerboard: Checkerboard,
    pub indices: GoeritzIndexTable,
    pub dehn: DehnMatrix,
    pub goeritz: GoeritzMatrix,
    pub prime: bool,
}

impl DiagramAnalysis {
    pub fn new(diagram: Diagram, shade_selector: Option<usize>) -> Result<Self, DiagramError> {
        let regions = faces(&diagram);
        let cb = checkerboard(&diagram, &regions, shade_selector)?;
        Ok(Self::with_checkerboard(diagram, regions, cb))
    }

    pub fn with_checkerboard(diagram: Diagram, regions: RegionSet, cb: Checkerboard) -> Self {
        let indices = GoeritzIndexTable::new(&diagram, &regions, &cb);
        let dehn = dehn_matrix(&diagram, &regions, &cb);
        let goeritz = goeritz_matrix(&diagram, &regions, &cb, &indices);
        let prime = is_prime_diagram(&diagram, &regions);
        Self {
            diagram,
            regions,
            checkerboard: cb,
            indices,
            dehn,
            goeritz,
            prime,
        }
    }

    /// Re-run with a custom column order (shaded regions first).
    pub fn reordered(&self, order: Vec<usize>) -> Result<Self, DiagramError> {
        let cb = self.checkerboard.with_ordering(order)?;
        Ok(Self::with_checkerboard(
            self.diagram.clone(),
            self.regions.clone(),
            cb,
        ))
    }

    /// Same diagram with the other color class shaded.
    pub fn swapped(&self) -> Self {
        Self::with_checkerboard(
            self.diagram.clone(),
            self.regions.clone(),
            self.checkerboard.swapped(),
        )
    }

    pub fn knot_determinant(&self) -> BigInt {
        self.goeritz.knot_determinant()
    }

    pub fn thm1(&self) -> Result<ReconstructionResult, ReconstructError> {
        thm1_reconstruct(&self.dehn, &self.indices)
    }

    /// Refuses non-prime diagrams before attempting the algebraic solve.
    pub fn thm2(
        &self,
        anchors: &BTreeMap<usize, Anchor>,
    ) -> Result<ReconstructionResult, ReconstructError> {
        if !self.prime {
            return Err(ReconstructError::NotPrime);
        }
        thm2_reconstruct(&self.dehn, anchors)
    }

    pub fn divisibility(&self, p: u64) -> Result<DivisibilityReport, MatrixError> {
        divisibility_report(&self.dehn, &self.knot_determinant(), p)
    }
}

/// Builds the default analysis of `d` and compares Dehn `p`-colorability with
/// `p | det`.
pub fn determinant_divisibility_check(
    d: &Diagram,
    p: u64,
) -> Result<DivisibilityReport, MatrixError> {
    let a = DiagramAnalysis::new(d.clone(), None).expect("default shading of a valid diagram");
    a.divisibility(p)
}
