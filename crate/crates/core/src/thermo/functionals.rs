use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::logmath::{log_sum_exp, xlogx};

use super::spectrum::{Bath, HamiltonianSpectrum, Support};
use super::state::BlockDiagonalState;

/// Default relative tolerance of [`is_reversible`].
pub const REVERSIBILITY_TOLERANCE: f64 = 1e-9;

/// Average energy, von Neumann entropy (nats) and free energy `F = E - T S`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Functionals {
    pub energy: f64,
    pub entropy: f64,
    pub free_energy: f64,
}

impl Functionals {
    /// Recomputes `F` at another temperature from the same `E` and `S`.
    pub fn at(self, bath: Bath) -> Self {
        Self {
            free_energy: self.energy - bath.temperature() * self.entropy,
            ..self
        }
    }
}

/// Thermal state `e^{-βH}/Z`.
pub fn gibbs_state(h: &HamiltonianSpectrum, bath: Bath) -> BlockDiagonalState {
    thermal_like_state(h, &Support::full(h), bath).expect("full support is never empty")
}

/// Thermal-like state on an arbitrary set of basis states: populations
/// `e^{-βE_i}/Z_U` on the set and zero elsewhere.
pub fn thermal_like_state(
    h: &HamiltonianSpectrum,
    support: &Support,
    bath: Bath,
) -> Result<BlockDiagonalState> {
    h.check_aligned(support.dimension(), "support")?;
    if support.is_empty() {
        return Err(domain("support must not be empty"));
    }
    let beta = bath.beta();
    let e_min = support
        .indices()
        .map(|i| h.basis_energies()[i])
        .fold(f64::INFINITY, f64::min);
    let weights = h
        .basis_energies()
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            if support.contains(i) {
                (-beta * (e - e_min)).exp()
            } else {
                0.0
            }
        })
        .collect();
    BlockDiagonalState::from_weights(weights)
}

/// Restricted thermal state `τ|_U`: every degenerate state of the listed
/// energy levels populated with Gibbs weights, everything else empty.
pub fn restricted_thermal_state(
    h: &HamiltonianSpectrum,
    levels: &[usize],
    bath: Bath,
) -> Result<BlockDiagonalState> {
    thermal_like_state(h, &Support::from_levels(h, levels)?, bath)
}

/// `E`, `S` and `F` of [`thermal_like_state`] computed from `ln Z_U`, which
/// keeps full relative precision for nearly pure states.
pub fn thermal_like_functionals(
    h: &HamiltonianSpectrum,
    support: &Support,
    bath: Bath,
) -> Result<Functionals> {
    h.check_aligned(support.dimension(), "support")?;
    let beta = bath.beta();
    let exponents: Vec<(f64, f64)> = support
        .indices()
        .map(|i| (-beta * h.basis_energies()[i], h.basis_energies()[i]))
        .collect();
    if exponents.is_empty() {
        return Err(domain("support must not be empty"));
    }
    let ln_z = log_sum_exp(&exponents.iter().map(|e| e.0).collect::<Vec<_>>());
    let energy: f64 = exponents.iter().map(|&(x, e)| (x - ln_z).exp() * e).sum();
    Ok(Functionals {
        energy,
        entropy: ln_z + beta * energy,
        free_energy: -bath.temperature() * ln_z,
    })
}

/// Equilibrium free energy `-T ln Z`.
pub fn equilibrium_free_energy(h: &HamiltonianSpectrum, bath: Bath) -> f64 {
    -bath.temperature() * h.ln_partition(bath)
}

/// `E`, `S` and `F` of a state at the bath temperature.
pub fn state_functionals(
    rho: &BlockDiagonalState,
    h: &HamiltonianSpectrum,
    bath: Bath,
) -> Result<Functionals> {
    h.check_aligned(rho.dimension(), "state")?;
    let energy: f64 = rho
        .populations()
        .iter()
        .zip(h.basis_energies())
        .map(|(p, e)| p * e)
        .sum();
    let entropy = -rho.populations().iter().map(|&p| xlogx(p)).sum::<f64>();
    Ok(Functionals {
        energy,
        entropy,
        free_energy: energy - bath.temperature() * entropy,
    })
}

/// `F_0(ρ) = -T ln Σ_{i ∈ supp ρ} e^{-βE_i}`, counting basis states.
pub fn min_free_energy(
    rho: &BlockDiagonalState,
    h: &HamiltonianSpectrum,
    bath: Bath,
) -> Result<f64> {
    h.check_aligned(rho.dimension(), "state")?;
    let beta = bath.beta();
    let terms: Vec<f64> = rho
        .support()
        .indices()
        .map(|i| -beta * h.basis_energies()[i])
        .collect();
    if terms.is_empty() {
        return Err(domain("state has empty support"));
    }
    Ok(-bath.temperature() * log_sum_exp(&terms))
}

/// `F_∞(ρ) = T ln max_i λ_i e^{βE_i}`.
pub fn max_free_energy(
    rho: &BlockDiagonalState,
    h: &HamiltonianSpectrum,
    bath: Bath,
) -> Result<f64> {
    h.check_aligned(rho.dimension(), "state")?;
    let max = log_keys(rho, h, bath)
        .into_iter()
        .flatten()
        .fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return Err(domain("state has empty support"));
    }
    Ok(bath.temperature() * max)
}

/// Largest deterministic work obtainable while relaxing to the bath,
/// `F_0(ρ) - F(τ)`.
pub fn extractable_work(
    rho: &BlockDiagonalState,
    h: &HamiltonianSpectrum,
    bath: Bath,
) -> Result<f64> {
    Ok(min_free_energy(rho, h, bath)? - equilibrium_free_energy(h, bath))
}

/// Smallest deterministic work needed to create `ρ` from the thermal state,
/// `F_∞(ρ) - F(τ)`.
pub fn work_of_formation(
    rho: &BlockDiagonalState,
    h: &HamiltonianSpectrum,
    bath: Bath,
) -> Result<f64> {
    Ok(max_free_energy(rho, h, bath)? - equilibrium_free_energy(h, bath))
}

/// Whether `λ_i e^{βE_i}` is constant over the support, up to a relative
/// tolerance `tol`. These are exactly the states with `W_form = W_ext`.
pub fn is_reversible(
    rho: &BlockDiagonalState,
    h: &HamiltonianSpectrum,
    bath: Bath,
    tol: f64,
) -> Result<bool> {
    h.check_aligned(rho.dimension(), "state")?;
    let keys: Vec<f64> = log_keys(rho, h, bath).into_iter().flatten().collect();
    if keys.is_empty() {
        return Err(domain("state has empty support"));
    }
    let lo = keys.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = keys.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(hi - lo <= tol.ln_1p())
}

/// `ln(λ_i e^{βE_i})` for basis states in the support, `None` elsewhere.
pub(crate) fn log_keys(
    rho: &BlockDiagonalState,
    h: &HamiltonianSpectrum,
    bath: Bath,
) -> Vec<Option<f64>> {
    let beta = bath.beta();
    let support = rho.support();
    rho.populations()
        .iter()
        .zip(h.basis_energies())
        .enumerate()
        .map(|(i, (&p, &e))| support.contains(i).then(|| p.ln() + beta * e))
        .collect()
}
