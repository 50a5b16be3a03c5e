//! JSON exchange format for a Hamiltonian together with a diagonal state:
//!
//! ```json
//! {"energies": [0.0, 1.0], "degeneracies": [1, 1], "populations": [0.7, 0.3]}
//! ```
//!
//! Populations are listed level by level, and inside a level by degeneracy index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::thermo::{BlockDiagonalState, HamiltonianSpectrum};

/// Largest normalization error that is silently corrected.
pub const FILE_NORMALIZATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub energies: Vec<f64>,
    pub degeneracies: Vec<usize>,
    pub populations: Vec<f64>,
}

impl StateFile {
    pub fn from_parts(h: &HamiltonianSpectrum, rho: &BlockDiagonalState) -> Self {
        Self {
            energies: h.levels().iter().map(|l| l.energy).collect(),
            degeneracies: h.levels().iter().map(|l| l.degeneracy).collect(),
            populations: rho.populations().to_vec(),
        }
    }

    /// Checks the file against the invariants of both types.
    pub fn validate(&self) -> Result<(HamiltonianSpectrum, BlockDiagonalState)> {
        if self.energies.len() != self.degeneracies.len() {
            return Err(Error::Shape(format!(
                "{} energies but {} degeneracies",
                self.energies.len(),
                self.degeneracies.len()
            )));
        }
        let h = HamiltonianSpectrum::new(
            self.energies
                .iter()
                .copied()
                .zip(self.degeneracies.iter().copied()),
        )?;
        if self.populations.len() != h.dimension() {
            return Err(Error::Shape(format!(
                "{} populations but the degeneracies add up to {}",
                self.populations.len(),
                h.dimension()
            )));
        }
        if let Some(i) = self
            .populations
            .iter()
            .position(|p| !p.is_finite() || *p < 0.0)
        {
            return Err(Error::InvalidState(format!(
                "population {i} is negative or not finite ({})",
                self.populations[i]
            )));
        }
        let total: f64 = self.populations.iter().sum();
        if (total - 1.0).abs() > FILE_NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidState(format!(
                "populations sum to {total}; deviation from 1 exceeds {FILE_NORMALIZATION_TOLERANCE:e}"
            )));
        }
        let rho = BlockDiagonalState::from_weights(self.populations.clone())?;
        Ok((h, rho))
    }
}

/// Parses and validates a state file.
pub fn parse_state(json: &str) -> Result<(HamiltonianSpectrum, BlockDiagonalState)> {
    let file: StateFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.validate()
}
