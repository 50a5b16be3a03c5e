//! Four-stroke engines built from deterministic driven strokes and
//! thermalizations, plus the refrigerator that runs them backwards.
//!
//! Corners are labelled `A = (H1, T_hot)`, `B = (H2, T_hot)`,
//! `C = (H2, T_cold)` and `D = (H1, T_cold)`. Work is positive when it goes to
//! the battery and heat is positive when the system absorbs it.

use serde::{Deserialize, Serialize};

use crate::error::{domain, shape, Error, Result};
use crate::thermo::{
    extend_with_clock, thermal_like_functionals, Bath, Functionals, HamiltonianSpectrum, Support,
};

/// Names of the strokes, written as their start and end corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stroke {
    AB,
    BC,
    CD,
    DA,
    AD,
    DC,
    CB,
    BA,
}

/// Energy balance of one stroke.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrokeRecord {
    pub label: Stroke,
    pub bath_temperature: f64,
    pub work_extracted: f64,
    pub delta_e: f64,
    pub heat_absorbed: f64,
}

impl StrokeRecord {
    fn new(
        label: Stroke,
        bath: Bath,
        from: &Functionals,
        to: &Functionals,
        work_extracted: f64,
    ) -> Self {
        let delta_e = to.energy - from.energy;
        Self {
            label,
            bath_temperature: bath.temperature(),
            work_extracted,
            delta_e,
            heat_absorbed: delta_e + work_extracted,
        }
    }
}

/// Per-stroke balances and cycle totals of an engine.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleReport {
    pub strokes: Vec<StrokeRecord>,
    pub w_cycle: f64,
    pub q_hot: f64,
    pub q_cold: f64,
    pub eta: f64,
    pub eta_carnot: f64,
    pub q_irr_bc: f64,
    pub q_irr_da: f64,
}

/// Net work below this fraction of the summed stroke works and energy
/// changes is treated as roundoff.
pub const ENGINE_WORK_TOLERANCE: f64 = 1e-12;

impl CycleReport {
    /// Whether the cycle turns heat into work: positive net work beyond
    /// roundoff and positive heat drawn from the hot bath.
    pub fn is_engine(&self) -> bool {
        let scale: f64 = self
            .strokes
            .iter()
            .map(|s| s.work_extracted.abs() + s.delta_e.abs())
            .sum();
        self.w_cycle > ENGINE_WORK_TOLERANCE * scale && self.q_hot > 0.0
    }

    fn stroke(&self, label: Stroke) -> Option<&StrokeRecord> {
        self.strokes.iter().find(|s| s.label == label)
    }

    /// Checks the bookkeeping identities every report must satisfy and
    /// returns a description of each one that fails.
    pub fn invariant_violations(&self, tol: f64) -> Vec<String> {
        let mut out = Vec::new();
        let labels = [Stroke::AB, Stroke::BC, Stroke::CD, Stroke::DA];
        if self.strokes.len() != 4 || labels.iter().any(|&l| self.stroke(l).is_none()) {
            out.push("report must contain the strokes AB, BC, CD and DA".to_string());
            return out;
        }
        for s in &self.strokes {
            if (s.heat_absorbed - s.delta_e - s.work_extracted).abs() > tol {
                out.push(format!("stroke {:?} violates Q = dE + W", s.label));
            }
        }
        let w_sum: f64 = self.strokes.iter().map(|s| s.work_extracted).sum();
        if (w_sum - self.w_cycle).abs() > tol {
            out.push(format!(
                "stroke works sum to {w_sum}, w_cycle is {}",
                self.w_cycle
            ));
        }
        let de: f64 = self.strokes.iter().map(|s| s.delta_e).sum();
        if de.abs() > tol {
            out.push(format!("energy changes do not close ({de})"));
        }
        if (self.w_cycle - self.q_hot + self.q_cold).abs() > tol {
            out.push("first law W = Q_hot - Q_cold violated".to_string());
        }
        let engine = self.is_engine();
        if self.q_irr_bc + self.q_irr_da > 1e-9 && engine && self.eta >= self.eta_carnot {
            out.push(format!(
                "eta {} is not below Carnot {}",
                self.eta, self.eta_carnot
            ));
        }
        if self.eta > self.eta_carnot + 1e-9 && engine {
            out.push(format!(
                "eta {} exceeds Carnot {}",
                self.eta, self.eta_carnot
            ));
        }
        out
    }
}

/// `1 - T_cold / T_hot`.
pub fn carnot_efficiency(t_hot: f64, t_cold: f64) -> Result<f64> {
    let (hot, cold) = (Bath::new(t_hot)?, Bath::new(t_cold)?);
    if cold.temperature() > hot.temperature() {
        return Err(domain(format!(
            "cold bath ({t_cold}) is hotter than hot bath ({t_hot})"
        )));
    }
    Ok(1.0 - t_cold / t_hot)
}

/// Hot and cold baths with `T_hot > T_cold`.
pub(crate) fn baths(t_hot: f64, t_cold: f64) -> Result<(Bath, Bath)> {
    let (hot, cold) = (Bath::new(t_hot)?, Bath::new(t_cold)?);
    if !(t_hot > t_cold) {
        return Err(domain(format!(
            "engine needs T_hot > T_cold, got T_hot = {t_hot}, T_cold = {t_cold}"
        )));
    }
    Ok((hot, cold))
}

/// `E`, `S` and `F` of the four corners, each `F` at the temperature of the
/// bath the corner is in contact with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Corners {
    pub a: Functionals,
    pub b: Functionals,
    pub c: Functionals,
    pub d: Functionals,
}

impl Corners {
    /// Deterministic cycle work `F_A - F_B - F_D + F_C`.
    pub fn deterministic_work(&self) -> f64 {
        self.a.free_energy - self.b.free_energy - self.d.free_energy + self.c.free_energy
    }

    /// Engine report; `thermal_work` holds extra work drawn during the
    /// thermalizations B→C and D→A (zero for deterministic strokes).
    pub fn engine_report(&self, hot: Bath, cold: Bath, thermal_work: (f64, f64)) -> CycleReport {
        let Corners { a, b, c, d } = self;
        let strokes = vec![
            StrokeRecord::new(Stroke::AB, hot, a, b, a.free_energy - b.free_energy),
            StrokeRecord::new(Stroke::BC, cold, b, c, thermal_work.0),
            StrokeRecord::new(Stroke::CD, cold, c, d, c.free_energy - d.free_energy),
            StrokeRecord::new(Stroke::DA, hot, d, a, thermal_work.1),
        ];
        let w_cycle = strokes.iter().map(|s| s.work_extracted).sum::<f64>();
        let q_hot = strokes[0].heat_absorbed + strokes[3].heat_absorbed;
        let q_cold = -(strokes[1].heat_absorbed + strokes[2].heat_absorbed);
        let mut report = CycleReport {
            strokes,
            w_cycle,
            q_hot,
            q_cold,
            eta: 0.0,
            eta_carnot: 1.0 - cold.temperature() / hot.temperature(),
            q_irr_bc: b.energy - c.energy,
            q_irr_da: a.energy - d.energy,
        };
        if report.is_engine() {
            report.eta = w_cycle / q_hot;
        }
        report
    }

    /// The cycle run backwards, A→D→C→B→A, with the thermalizations done
    /// against the swapped baths.
    pub fn refrigerator_report(&self, hot: Bath, cold: Bath) -> Result<RefrigeratorReport> {
        let Corners { a, b, c, d } = self;
        let strokes = vec![
            StrokeRecord::new(Stroke::AD, cold, a, d, 0.0),
            StrokeRecord::new(Stroke::DC, cold, d, c, d.free_energy - c.free_energy),
            StrokeRecord::new(Stroke::CB, hot, c, b, 0.0),
            StrokeRecord::new(Stroke::BA, hot, b, a, b.free_energy - a.free_energy),
        ];
        let w_input = -strokes.iter().map(|s| s.work_extracted).sum::<f64>();
        if !(w_input > 1e-12) {
            return Err(Error::DegenerateCycle(format!(
                "refrigerator needs positive work input, got {w_input}"
            )));
        }
        let q_cold_extracted = strokes[0].heat_absorbed + strokes[1].heat_absorbed;
        let q_hot_dumped = -(strokes[2].heat_absorbed + strokes[3].heat_absorbed);
        let (th, tc) = (hot.temperature(), cold.temperature());
        Ok(RefrigeratorReport {
            strokes,
            w_input,
            q_cold_extracted,
            q_hot_dumped,
            cop: q_cold_extracted / w_input,
            cop_carnot: tc / (th - tc),
        })
    }
}

/// Balances of the reversed cycle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefrigeratorReport {
    pub strokes: Vec<StrokeRecord>,
    pub w_input: f64,
    pub q_cold_extracted: f64,
    pub q_hot_dumped: f64,
    pub cop: f64,
    pub cop_carnot: f64,
}

fn equilibrium_corners(
    h1: &HamiltonianSpectrum,
    h2: &HamiltonianSpectrum,
    hot: Bath,
    cold: Bath,
) -> Result<Corners> {
    if h1.dimension() != h2.dimension() {
        return Err(shape(format!(
            "H1 and H2 act on different dimensions ({} and {})",
            h1.dimension(),
            h2.dimension()
        )));
    }
    let corner =
        |h: &HamiltonianSpectrum, bath: Bath| thermal_like_functionals(h, &Support::full(h), bath);
    Ok(Corners {
        a: corner(h1, hot)?,
        b: corner(h2, hot)?,
        c: corner(h2, cold)?,
        d: corner(h1, cold)?,
    })
}

fn nonequilibrium_corners(
    h: &HamiltonianSpectrum,
    u: &Support,
    v: &Support,
    hot: Bath,
    cold: Bath,
) -> Result<Corners> {
    if h.dimension() == 1 {
        return Err(Error::DegenerateCycle(
            "a one-state system admits no non-trivial cycle".into(),
        ));
    }
    let corner = |s: &Support, bath: Bath| thermal_like_functionals(h, s, bath);
    Ok(Corners {
        a: corner(u, hot)?,
        b: corner(v, hot)?,
        c: corner(v, cold)?,
        d: corner(u, cold)?,
    })
}

/// Cycle between the Gibbs states of `H1` and `H2` at two temperatures.
pub fn equilibrium_cycle(
    h1: &HamiltonianSpectrum,
    h2: &HamiltonianSpectrum,
    t_hot: f64,
    t_cold: f64,
) -> Result<CycleReport> {
    let (hot, cold) = baths(t_hot, t_cold)?;
    Ok(equilibrium_corners(h1, h2, hot, cold)?.engine_report(hot, cold, (0.0, 0.0)))
}

/// Equilibrium cycle of a qubit whose gap is switched between `ω1` and `ω2`.
pub fn qubit_engine(omega1: f64, omega2: f64, t_hot: f64, t_cold: f64) -> Result<CycleReport> {
    equilibrium_cycle(
        &HamiltonianSpectrum::qubit(omega1)?,
        &HamiltonianSpectrum::qubit(omega2)?,
        t_hot,
        t_cold,
    )
}

/// Cycle on a fixed Hamiltonian between the thermal-like states `τ|_U` and
/// `τ|_V`; the driven strokes change the support instead of the Hamiltonian.
pub fn nonequilibrium_cycle(
    h: &HamiltonianSpectrum,
    u: &Support,
    v: &Support,
    t_hot: f64,
    t_cold: f64,
) -> Result<CycleReport> {
    let (hot, cold) = baths(t_hot, t_cold)?;
    Ok(nonequilibrium_corners(h, u, v, hot, cold)?.engine_report(hot, cold, (0.0, 0.0)))
}

/// The equilibrium cycle of `(H1, H2)` written as a non-equilibrium cycle on
/// the clock-extended Hamiltonian, with `U` the clock-0 and `V` the clock-1
/// block.
pub fn clocked_equilibrium_cycle(
    h1: &HamiltonianSpectrum,
    h2: &HamiltonianSpectrum,
    t_hot: f64,
    t_cold: f64,
) -> Result<CycleReport> {
    let clocked = extend_with_clock(h1, h2)?;
    nonequilibrium_cycle(
        clocked.spectrum(),
        &clocked.support(0),
        &clocked.support(1),
        t_hot,
        t_cold,
    )
}

/// Reversed equilibrium cycle.
pub fn refrigerator_cycle(
    h1: &HamiltonianSpectrum,
    h2: &HamiltonianSpectrum,
    t_hot: f64,
    t_cold: f64,
) -> Result<RefrigeratorReport> {
    let (hot, cold) = baths(t_hot, t_cold)?;
    equilibrium_corners(h1, h2, hot, cold)?.refrigerator_report(hot, cold)
}

/// Reversed equilibrium cycle of a qubit.
pub fn qubit_refrigerator(
    omega1: f64,
    omega2: f64,
    t_hot: f64,
    t_cold: f64,
) -> Result<RefrigeratorReport> {
    refrigerator_cycle(
        &HamiltonianSpectrum::qubit(omega1)?,
        &HamiltonianSpectrum::qubit(omega2)?,
        t_hot,
        t_cold,
    )
}

/// Reversed non-equilibrium cycle.
pub fn nonequilibrium_refrigerator(
    h: &HamiltonianSpectrum,
    u: &Support,
    v: &Support,
    t_hot: f64,
    t_cold: f64,
) -> Result<RefrigeratorReport> {
    let (hot, cold) = baths(t_hot, t_cold)?;
    nonequilibrium_corners(h, u, v, hot, cold)?.refrigerator_report(hot, cold)
}

/// Corners of the qubit engine, used by the fluctuation module.
pub(crate) fn qubit_corners(omega1: f64, omega2: f64, hot: Bath, cold: Bath) -> Result<Corners> {
    equilibrium_corners(
        &HamiltonianSpectrum::qubit(omega1)?,
        &HamiltonianSpectrum::qubit(omega2)?,
        hot,
        cold,
    )
}
