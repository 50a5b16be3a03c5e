use serde::{Deserialize, Serialize};

use crate::error::{domain, shape, Result};

/// Populations at or below this value are treated as outside the support.
pub const SUPPORT_TOLERANCE: f64 = 1e-12;

/// One energy shell of a Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub energy: f64,
    pub degeneracy: usize,
}

/// A finite Hamiltonian `H = Σ_E E Π_E`, stored as its energy shells.
///
/// Basis states are ordered level by level, and within a level by degeneracy
/// index. Every population vector in the crate uses this ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSpectrum {
    levels: Vec<Level>,
    basis: Vec<f64>,
    level_of: Vec<usize>,
}

impl HamiltonianSpectrum {
    /// Builds a spectrum from `(energy, degeneracy)` pairs with strictly
    /// increasing energies.
    pub fn new(levels: impl IntoIterator<Item = (f64, usize)>) -> Result<Self> {
        let levels: Vec<Level> = levels
            .into_iter()
            .map(|(energy, degeneracy)| Level { energy, degeneracy })
            .collect();
        if levels.is_empty() {
            return Err(domain("a spectrum needs at least one level"));
        }
        for (i, level) in levels.iter().enumerate() {
            if !level.energy.is_finite() {
                return Err(domain(format!("energy of level {i} is not finite")));
            }
            if level.degeneracy == 0 {
                return Err(domain(format!("degeneracy of level {i} must be >= 1")));
            }
        }
        if let Some(i) = levels.windows(2).position(|w| w[1].energy <= w[0].energy) {
            return Err(domain(format!(
                "energies must be strictly increasing (levels {i} and {})",
                i + 1
            )));
        }
        let mut basis = Vec::new();
        let mut level_of = Vec::new();
        for (i, level) in levels.iter().enumerate() {
            for _ in 0..level.degeneracy {
                basis.push(level.energy);
                level_of.push(i);
            }
        }
        Ok(Self {
            levels,
            basis,
            level_of,
        })
    }

    /// Nondegenerate qubit `ω |1⟩⟨1|`.
    pub fn qubit(omega: f64) -> Result<Self> {
        if !(omega > 0.0) {
            return Err(domain(format!("qubit gap must be positive, got {omega}")));
        }
        Self::new([(0.0, 1), (omega, 1)])
    }

    /// Groups an arbitrary list of basis-state energies into shells.
    ///
    /// Returns the spectrum and, for every input position, the index of the
    /// basis state it became. Equal energies share a shell; inside a shell the
    /// input order is kept.
    pub fn from_basis_energies(energies: &[f64]) -> Result<(Self, Vec<usize>)> {
        if energies.is_empty() {
            return Err(domain("a spectrum needs at least one basis state"));
        }
        if let Some(i) = energies.iter().position(|e| !e.is_finite()) {
            return Err(domain(format!("basis energy {i} is not finite")));
        }
        let mut order: Vec<usize> = (0..energies.len()).collect();
        order.sort_by(|&a, &b| energies[a].total_cmp(&energies[b]).then(a.cmp(&b)));
        let mut levels: Vec<(f64, usize)> = Vec::new();
        let mut placement = vec![0; energies.len()];
        for (slot, &src) in order.iter().enumerate() {
            match levels.last_mut() {
                Some((e, g)) if *e == energies[src] => *g += 1,
                _ => levels.push((energies[src], 1)),
            }
            placement[src] = slot;
        }
        Ok((Self::new(levels)?, placement))
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Total Hilbert-space dimension `Σ g(E)`.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Energy of every basis state, in basis order.
    pub fn basis_energies(&self) -> &[f64] {
        &self.basis
    }

    /// Shell index of every basis state.
    pub fn level_of(&self, basis_index: usize) -> usize {
        self.level_of[basis_index]
    }

    /// Range of basis indices spanned by one shell.
    pub fn level_range(&self, level: usize) -> std::ops::Range<usize> {
        let start: usize = self.levels[..level].iter().map(|l| l.degeneracy).sum();
        start..start + self.levels[level].degeneracy
    }

    /// `ln Z` at the given bath, over all basis states.
    pub fn ln_partition(&self, bath: Bath) -> f64 {
        let beta = bath.beta();
        let terms: Vec<f64> = self
            .levels
            .iter()
            .map(|l| (l.degeneracy as f64).ln() - beta * l.energy)
            .collect();
        crate::logmath::log_sum_exp(&terms)
    }

    pub(crate) fn check_aligned(&self, len: usize, what: &str) -> Result<()> {
        if len != self.dimension() {
            return Err(shape(format!(
                "{what} has {len} entries but the Hamiltonian dimension is {}",
                self.dimension()
            )));
        }
        Ok(())
    }
}

/// A heat bath, identified by its temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bath {
    temperature: f64,
}

impl Bath {
    pub fn new(temperature: f64) -> Result<Self> {
        if !(temperature > 0.0) || !temperature.is_finite() {
            return Err(domain(format!(
                "temperature must be positive and finite, got {temperature}"
            )));
        }
        Ok(Self { temperature })
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn beta(&self) -> f64 {
        1.0 / self.temperature
    }
}

/// A set of basis states of a spectrum, e.g. the support of a state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    mask: Vec<bool>,
}

impl Support {
    /// Every basis state of the listed shells.
    pub fn from_levels(spectrum: &HamiltonianSpectrum, levels: &[usize]) -> Result<Self> {
        if levels.is_empty() {
            return Err(domain("level set must not be empty"));
        }
        let mut mask = vec![false; spectrum.dimension()];
        for &level in levels {
            if level >= spectrum.levels().len() {
                return Err(domain(format!(
                    "level index {level} out of range ({} levels)",
                    spectrum.levels().len()
                )));
            }
            for i in spectrum.level_range(level) {
                mask[i] = true;
            }
        }
        Ok(Self { mask })
    }

    /// An explicit list of basis indices.
    pub fn from_basis(spectrum: &HamiltonianSpectrum, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(domain("support must not be empty"));
        }
        let mut mask = vec![false; spectrum.dimension()];
        for &i in indices {
            if i >= mask.len() {
                return Err(domain(format!(
                    "basis index {i} out of range (dimension {})",
                    mask.len()
                )));
            }
            mask[i] = true;
        }
        Ok(Self { mask })
    }

    pub fn full(spectrum: &HamiltonianSpectrum) -> Self {
        Self {
            mask: vec![true; spectrum.dimension()],
        }
    }

    pub(crate) fn from_mask(mask: Vec<bool>) -> Self {
        Self { mask }
    }

    pub fn contains(&self, basis_index: usize) -> bool {
        self.mask[basis_index]
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_full(&self) -> bool {
        self.mask.iter().all(|&m| m)
    }

    pub fn dimension(&self) -> usize {
        self.mask.len()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
    }
}
