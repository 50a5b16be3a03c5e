//! Single-shot functionals of block-diagonal states.

mod clock;
mod functionals;
mod majorization;
mod spectrum;
mod state;

pub use clock::{
    driven_stroke_feasible, extend_with_clock, free_energy_drop, stroke_feasible, ClockedSpectrum,
};
pub use functionals::{
    equilibrium_free_energy, extractable_work, gibbs_state, is_reversible, max_free_energy,
    min_free_energy, restricted_thermal_state, state_functionals, thermal_like_functionals,
    thermal_like_state, work_of_formation, Functionals, REVERSIBILITY_TOLERANCE,
};
pub use majorization::{
    beta_order, curve_dominates, lorenz_curve, thermo_majorizes, ThermoCurve, CURVE_TOLERANCE,
};
pub use spectrum::{Bath, HamiltonianSpectrum, Level, Support, SUPPORT_TOLERANCE};
pub use state::{BlockDiagonalState, NORMALIZATION_TOLERANCE};
