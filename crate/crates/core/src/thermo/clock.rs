use crate::error::{shape, Result};

use super::functionals::state_functionals;
use super::majorization::thermo_majorizes;
use super::spectrum::{Bath, HamiltonianSpectrum, Support};
use super::state::BlockDiagonalState;

/// `H1 ⊗ |0⟩⟨0| + H2 ⊗ |1⟩⟨1|` with the clock value of every basis state.
#[derive(Debug, Clone, PartialEq)]
pub struct ClockedSpectrum {
    spectrum: HamiltonianSpectrum,
    /// `clock_index[c][i]`: joint basis index of system state `i` under clock `c`.
    clock_index: [Vec<usize>; 2],
}

/// Joins two Hamiltonians of the same system into one fixed Hamiltonian,
/// tagging each basis state with the clock value that selects it.
pub fn extend_with_clock(
    h1: &HamiltonianSpectrum,
    h2: &HamiltonianSpectrum,
) -> Result<ClockedSpectrum> {
    if h1.dimension() != h2.dimension() {
        return Err(shape(format!(
            "Hamiltonians act on different dimensions ({} and {})",
            h1.dimension(),
            h2.dimension()
        )));
    }
    let d = h1.dimension();
    let energies: Vec<f64> = h1
        .basis_energies()
        .iter()
        .chain(h2.basis_energies())
        .copied()
        .collect();
    let (spectrum, place) = HamiltonianSpectrum::from_basis_energies(&energies)?;
    Ok(ClockedSpectrum {
        spectrum,
        clock_index: [place[..d].to_vec(), place[d..].to_vec()],
    })
}

impl ClockedSpectrum {
    pub fn spectrum(&self) -> &HamiltonianSpectrum {
        &self.spectrum
    }

    pub fn system_dimension(&self) -> usize {
        self.clock_index[0].len()
    }

    /// Clock value (0 or 1) of a joint basis state.
    pub fn clock_of(&self, joint_index: usize) -> usize {
        usize::from(!self.clock_index[0].contains(&joint_index))
    }

    /// Joint basis index of a system basis state under the given clock value.
    pub fn index(&self, clock: usize, system_index: usize) -> usize {
        self.clock_index[clock][system_index]
    }

    /// `ρ ⊗ |c⟩⟨c|` as a state of the joint spectrum.
    pub fn embed(&self, clock: usize, rho: &BlockDiagonalState) -> Result<BlockDiagonalState> {
        if rho.dimension() != self.system_dimension() {
            return Err(shape(format!(
                "state has {} entries but the system dimension is {}",
                rho.dimension(),
                self.system_dimension()
            )));
        }
        let mut pops = vec![0.0; self.spectrum.dimension()];
        for (i, &p) in rho.populations().iter().enumerate() {
            pops[self.clock_index[clock][i]] = p;
        }
        BlockDiagonalState::new(pops)
    }

    /// Every joint basis state carrying the given clock value.
    pub fn support(&self, clock: usize) -> Support {
        Support::from_basis(&self.spectrum, &self.clock_index[clock])
            .expect("clock block is nonempty")
    }
}

/// Whether the driven stroke `(ρ_from, H_from) → (ρ_to, H_to)` yielding `work`
/// to a two-level battery `{0, W}` is a thermal operation at the bath.
///
/// The check is a thermo-majorization test on system ⊗ clock ⊗ battery with
/// the fixed Hamiltonian `H1⊗|0⟩⟨0| + H2⊗|1⟩⟨1| + H_W`.
pub fn stroke_feasible(
    from: (&BlockDiagonalState, &HamiltonianSpectrum),
    to: (&BlockDiagonalState, &HamiltonianSpectrum),
    bath: Bath,
    work: f64,
) -> Result<bool> {
    let clocked = extend_with_clock(from.1, to.1)?;
    let sc = clocked.spectrum().basis_energies();
    let battery = [0.0, work];
    let energies: Vec<f64> = sc
        .iter()
        .flat_map(|&e| battery.iter().map(move |&w| e + w))
        .collect();
    let (joint, place) = HamiltonianSpectrum::from_basis_energies(&energies)?;

    let lift =
        |clock: usize, rho: &BlockDiagonalState, level: usize| -> Result<BlockDiagonalState> {
            let sc_state = clocked.embed(clock, rho)?;
            let mut pops = vec![0.0; joint.dimension()];
            for (j, &p) in sc_state.populations().iter().enumerate() {
                pops[place[2 * j + level]] = p;
            }
            BlockDiagonalState::new(pops)
        };
    let initial = lift(0, from.0, 0)?;
    let target = lift(1, to.0, 1)?;
    thermo_majorizes(&initial, &target, &joint, bath)
}

/// [`stroke_feasible`] for Gibbs states at the bath temperature, which holds
/// iff `work <= F(τ_from) - F(τ_to)`.
pub fn driven_stroke_feasible(
    from: &HamiltonianSpectrum,
    to: &HamiltonianSpectrum,
    bath: Bath,
    work: f64,
) -> Result<bool> {
    let a = super::functionals::gibbs_state(from, bath);
    let b = super::functionals::gibbs_state(to, bath);
    stroke_feasible((&a, from), (&b, to), bath, work)
}

/// Free-energy difference `F(ρ_from) - F(ρ_to)` at the bath temperature.
pub fn free_energy_drop(
    from: (&BlockDiagonalState, &HamiltonianSpectrum),
    to: (&BlockDiagonalState, &HamiltonianSpectrum),
    bath: Bath,
) -> Result<f64> {
    let a = state_functionals(from.0, from.1, bath)?;
    let b = state_functionals(to.0, to.1, bath)?;
    Ok(a.free_energy - b.free_energy)
}
