//! Single-shot (resource-theoretic) thermodynamics for finite block-diagonal
//! quantum states, and the deterministic heat-engine cycles built on it.
//!
//! Units are `k_B = ħ = 1`: temperatures and energies share one unit and
//! entropies are in nats.
//!
//! - [`thermo`]: Gibbs states, free energies `F`, `F_0`, `F_∞`, deterministic
//!   extractable work and work of formation, thermo-majorization curves,
//!   reversible (thermal-like) states and the clock construction for
//!   Hamiltonian switching.
//! - [`cycles`]: the equilibrium and non-equilibrium four-stroke engines, the
//!   single-qubit engine and the refrigerator obtained by swapping the baths
//!   of the thermalization strokes.
//! - [`fluctuations`]: average work during thermalization strokes when the
//!   work is allowed to fluctuate within a bounded window.
//! - [`manybody`]: log-domain asymptotics of correlated `N`-qubit working
//!   media and their convergence to Carnot efficiency.
//! - [`statefile`]: the JSON state/Hamiltonian exchange format.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cycles;
pub mod error;
pub mod fluctuations;
pub mod logmath;
pub mod manybody;
pub mod statefile;
pub mod thermo;

pub use error::{Error, Result};
pub use thermo::{Bath, BlockDiagonalState, HamiltonianSpectrum, Support};
