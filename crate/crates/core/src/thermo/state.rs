use crate::error::{Error, Result};

use super::spectrum::{Support, SUPPORT_TOLERANCE};

/// Largest deviation of `Σ λ` from one accepted by [`BlockDiagonalState::new`].
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// A state diagonal in the energy eigenbasis, `ρ = Σ λ_{E,g} |E,g⟩⟨E,g|`.
///
/// Populations follow the basis order of the [`HamiltonianSpectrum`] the state
/// is used with; alignment is checked by every functional.
///
/// [`HamiltonianSpectrum`]: super::HamiltonianSpectrum
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDiagonalState {
    populations: Vec<f64>,
}

impl BlockDiagonalState {
    /// Wraps a population vector that already sums to one.
    pub fn new(populations: Vec<f64>) -> Result<Self> {
        check_entries(&populations)?;
        let total: f64 = populations.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidState(format!(
                "populations sum to {total}, expected 1"
            )));
        }
        Ok(Self { populations })
    }

    /// Normalizes nonnegative weights into a state.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        check_entries(&weights)?;
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) {
            return Err(Error::InvalidState("weights sum to zero".into()));
        }
        Ok(Self {
            populations: weights.into_iter().map(|w| w / total).collect(),
        })
    }

    /// All weight on one basis state.
    pub fn pure(dimension: usize, index: usize) -> Result<Self> {
        if index >= dimension {
            return Err(Error::Shape(format!(
                "basis index {index} out of range (dimension {dimension})"
            )));
        }
        let mut populations = vec![0.0; dimension];
        populations[index] = 1.0;
        Ok(Self { populations })
    }

    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    pub fn dimension(&self) -> usize {
        self.populations.len()
    }

    /// Basis states with population above [`SUPPORT_TOLERANCE`].
    pub fn support(&self) -> Support {
        Support::from_mask(
            self.populations
                .iter()
                .map(|&p| p > SUPPORT_TOLERANCE)
                .collect(),
        )
    }

    /// Product state `self ⊗ other`, with `other` as the fast index.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut populations = Vec::with_capacity(self.dimension() * other.dimension());
        for &a in &self.populations {
            populations.extend(other.populations.iter().map(|&b| a * b));
        }
        Self { populations }
    }
}

fn check_entries(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidState("population vector is empty".into()));
    }
    if let Some(i) = values.iter().position(|p| !p.is_finite() || *p < 0.0) {
        return Err(Error::InvalidState(format!(
            "population {i} is negative or not finite ({})",
            values[i]
        )));
    }
    Ok(())
}
