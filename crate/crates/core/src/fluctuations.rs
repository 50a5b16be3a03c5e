//! Average work drawn during a thermalization stroke when the work may
//! fluctuate inside a window of half-width `ΔW`.
//!
//! The battery is a ladder of energies `w_j` and is translation invariant:
//! the joint channel only depends on energy differences, so it cannot use the
//! battery as an entropy sink. With the system ending in the bath's Gibbs
//! state `τ`, such a channel can be taken to be `P(j, w | i) = τ_j R(w | i)`,
//! and the Gibbs-preservation condition collapses to the single budget
//!
//! ```text
//! Σ_i τ_i Σ_w R(w | i) e^{βw} <= 1.
//! ```
//!
//! Maximizing `Σ_i λ_i Σ_w R(w | i) w` under that budget, with every
//! `R(· | i)` supported in the window, is a fractional multiple-choice
//! knapsack. Because `w ↦ e^{βw}` is convex, each item's upgrade steps have
//! decreasing gain per unit cost, and the greedy below is exact.

use serde::{Deserialize, Serialize};

use crate::cycles::{baths, qubit_corners, CycleReport};
use crate::error::{domain, Result};
use crate::thermo::{
    gibbs_state, state_functionals, thermo_majorizes, Bath, BlockDiagonalState, HamiltonianSpectrum,
};

/// Evenly spaced battery energies `w_min, ..., w_max`, one of which is zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatteryGrid {
    levels: Vec<f64>,
    zero: usize,
}

impl BatteryGrid {
    pub fn new(w_min: f64, w_max: f64, n_levels: usize) -> Result<Self> {
        if !(w_min.is_finite() && w_max.is_finite() && w_min < w_max) {
            return Err(domain(format!(
                "battery grid needs w_min < w_max, got [{w_min}, {w_max}]"
            )));
        }
        if n_levels < 2 {
            return Err(domain(format!(
                "battery grid needs at least 2 levels, got {n_levels}"
            )));
        }
        let step = (w_max - w_min) / (n_levels - 1) as f64;
        let mut levels: Vec<f64> = (0..n_levels).map(|j| w_min + step * j as f64).collect();
        levels[n_levels - 1] = w_max;
        let zero = levels
            .iter()
            .position(|w| w.abs() <= 1e-9 * step)
            .ok_or_else(|| {
                domain(format!(
                    "battery grid [{w_min}, {w_max}] with {n_levels} levels misses 0"
                ))
            })?;
        levels[zero] = 0.0;
        Ok(Self { levels, zero })
    }

    /// Grid with spacing as close as possible to `step`.
    pub fn with_step(w_min: f64, w_max: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) {
            return Err(domain(format!("grid step must be positive, got {step}")));
        }
        let n = ((w_max - w_min) / step).round() as usize + 1;
        Self::new(w_min, w_max, n)
    }

    /// `[-2, 2]` with 41 levels.
    pub fn qubit_default() -> Self {
        Self::new(-2.0, 2.0, 41).expect("default grid is valid")
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn zero_index(&self) -> usize {
        self.zero
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

/// Distribution of the battery energy after the stroke.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorkDistribution {
    pub levels: Vec<f64>,
    pub probabilities: Vec<f64>,
    pub mean: f64,
    /// Middle of the window `[c - ΔW, c + ΔW]` that holds the support.
    pub center: f64,
    pub delta_w: f64,
}

/// Optimal work distribution and the channel that achieves it.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundedWork {
    pub mean: f64,
    pub distribution: WorkDistribution,
    /// `R(w | i)` for every system basis state; rows outside the support of
    /// the initial state are zero.
    pub conditional: Vec<Vec<f64>>,
}

struct WindowOptimum {
    mean: f64,
    conditional: Vec<Vec<f64>>,
}

/// Largest average work obtainable while `ρ` thermalizes to the Gibbs state of
/// `H` at the bath, with all work outcomes inside a window of width `2ΔW`
/// on the battery grid.
pub fn max_avg_work_bounded(
    rho: &BlockDiagonalState,
    h: &HamiltonianSpectrum,
    bath: Bath,
    delta_w: f64,
    grid: &BatteryGrid,
) -> Result<BoundedWork> {
    if !(delta_w >= 0.0) {
        return Err(domain(format!(
            "fluctuation bound must be nonnegative, got {delta_w}"
        )));
    }
    let tau = gibbs_state(h, bath);
    h.check_aligned(rho.dimension(), "state")?;
    let w = grid.levels();
    let n = w.len();
    let width = 2.0 * delta_w + 1e-12 * (w[n - 1] - w[0]);

    let mut best: Option<(WindowOptimum, usize, usize)> = None;
    let mut best_mean = 0.0;
    let mut last_end = None;
    for a in 0..n {
        let mut b = a;
        while b + 1 < n && w[b + 1] - w[a] <= width {
            b += 1;
        }
        if last_end == Some(b) {
            continue;
        }
        last_end = Some(b);
        if let Some(opt) = solve_window(rho, &tau, bath.beta(), &w[a..=b]) {
            if opt.mean > best_mean + 1e-15 {
                best_mean = opt.mean;
                best = Some((opt, a, b));
            }
        }
    }

    let z = grid.zero_index();
    let (conditional, lo, hi) = match best {
        Some((opt, a, b)) => {
            let rows: Vec<Vec<f64>> = opt
                .conditional
                .into_iter()
                .map(|row| {
                    let mut full = vec![0.0; n];
                    full[a..=b].copy_from_slice(&row);
                    full
                })
                .collect();
            (rows, a, b)
        }
        None => {
            let support = rho.support();
            let rows = (0..rho.dimension())
                .map(|i| {
                    let mut full = vec![0.0; n];
                    if support.contains(i) {
                        full[z] = 1.0;
                    }
                    full
                })
                .collect();
            (rows, z, z)
        }
    };

    let mut probabilities = vec![0.0; n];
    for (row, &lambda) in conditional.iter().zip(rho.populations()) {
        for (q, &r) in probabilities.iter_mut().zip(row) {
            *q += lambda * r;
        }
    }
    let total: f64 = probabilities.iter().sum();
    probabilities.iter_mut().for_each(|q| *q /= total);
    let mean = probabilities.iter().zip(w).map(|(q, w)| q * w).sum();

    Ok(BoundedWork {
        mean,
        distribution: WorkDistribution {
            levels: w.to_vec(),
            probabilities,
            mean,
            center: 0.5 * (w[lo] + w[hi]),
            delta_w,
        },
        conditional,
    })
}

/// Greedy solution of the budgeted problem restricted to one window.
fn solve_window(
    rho: &BlockDiagonalState,
    tau: &BlockDiagonalState,
    beta: f64,
    w: &[f64],
) -> Option<WindowOptimum> {
    let support: Vec<usize> = rho.support().indices().collect();
    let lambda = rho.populations();
    let tau = tau.populations();
    let boltz: Vec<f64> = w.iter().map(|&x| (beta * x).exp()).collect();

    let tau_supp: f64 = support.iter().map(|&i| tau[i]).sum();
    let base_cost = boltz[0] * tau_supp;
    if base_cost > 1.0 + 1e-14 {
        return None;
    }
    let mut budget = (1.0 - base_cost).max(0.0);

    // (ratio, item, step)
    let mut steps: Vec<(f64, usize, usize)> = Vec::with_capacity(support.len() * (w.len() - 1));
    for (slot, &i) in support.iter().enumerate() {
        for s in 0..w.len() - 1 {
            let gain = lambda[i] * (w[s + 1] - w[s]);
            let cost = tau[i] * (boltz[s + 1] - boltz[s]);
            steps.push((gain / cost, slot, s));
        }
    }
    steps.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));

    // Mass of item `slot` that has been moved past level `s`, i.e. the
    // cumulative tail. Starts with everything on the lowest level.
    let mut moved = vec![vec![0.0; w.len() - 1]; support.len()];
    for (_, slot, s) in steps {
        if budget <= 0.0 {
            break;
        }
        let i = support[slot];
        let cost = tau[i] * (boltz[s + 1] - boltz[s]);
        let frac = if cost <= budget { 1.0 } else { budget / cost };
        // A step can only move mass that already sits on level `s`.
        let available = if s == 0 { 1.0 } else { moved[slot][s - 1] };
        let amount = frac.min(available);
        moved[slot][s] = amount;
        budget -= amount * cost;
    }

    let mut conditional = vec![vec![0.0; w.len()]; rho.dimension()];
    let mut mean = 0.0;
    for (slot, &i) in support.iter().enumerate() {
        let row = &mut conditional[i];
        let tail = &moved[slot];
        if tail.is_empty() {
            row[0] = 1.0;
        } else {
            row[0] = 1.0 - tail[0];
            for s in 1..tail.len() {
                row[s] = tail[s - 1] - tail[s];
            }
            row[tail.len()] = tail[tail.len() - 1];
        }
        mean += lambda[i] * row.iter().zip(w).map(|(r, x)| r * x).sum::<f64>();
    }
    Some(WindowOptimum { mean, conditional })
}

/// Independent check of a result: `ρ ⊗ δ_0` thermo-majorizes `τ ⊗ q` on the
/// system-battery Hamiltonian `H + H_W`.
pub fn verify_feasible(
    rho: &BlockDiagonalState,
    h: &HamiltonianSpectrum,
    bath: Bath,
    grid: &BatteryGrid,
    q: &[f64],
) -> Result<bool> {
    let w = grid.levels();
    let energies: Vec<f64> = h
        .basis_energies()
        .iter()
        .flat_map(|&e| w.iter().map(move |&x| e + x))
        .collect();
    let (joint, place) = HamiltonianSpectrum::from_basis_energies(&energies)?;
    let delta0 = BlockDiagonalState::pure(w.len(), grid.zero_index())?;
    let battery = BlockDiagonalState::from_weights(q.to_vec())?;
    let relabel = |s: BlockDiagonalState| {
        let mut pops = vec![0.0; joint.dimension()];
        for (k, &p) in s.populations().iter().enumerate() {
            pops[place[k]] = p;
        }
        BlockDiagonalState::from_weights(pops)
    };
    let initial = relabel(rho.tensor(&delta0))?;
    let target = relabel(gibbs_state(h, bath).tensor(&battery))?;
    thermo_majorizes(&initial, &target, &joint, bath)
}

/// `F(ρ) - F(τ)` at the bath, the unbounded-fluctuation value of the average work.
pub fn free_energy_excess(
    rho: &BlockDiagonalState,
    h: &HamiltonianSpectrum,
    bath: Bath,
) -> Result<f64> {
    let f = state_functionals(rho, h, bath)?;
    let g = state_functionals(&gibbs_state(h, bath), h, bath)?;
    Ok(f.free_energy - g.free_energy)
}

/// Qubit engine whose thermalization strokes also deliver bounded-fluctuation work.
#[derive(Debug, Clone, PartialEq)]
pub struct FluctuationReport {
    /// Cycle balance with the average thermalization work included.
    pub report: CycleReport,
    /// Work of the two driven strokes alone.
    pub w_deterministic: f64,
    pub w_bc: BoundedWork,
    pub w_da: BoundedWork,
    pub eta: f64,
    pub eta_carnot: f64,
}

/// Runs the qubit engine and adds the best bounded-fluctuation work from the
/// thermalizations B→C (at `T_cold`) and D→A (at `T_hot`).
pub fn fluctuation_cycle(
    omega1: f64,
    omega2: f64,
    t_hot: f64,
    t_cold: f64,
    delta_w: f64,
    grid: &BatteryGrid,
) -> Result<FluctuationReport> {
    let (hot, cold) = baths(t_hot, t_cold)?;
    let h1 = HamiltonianSpectrum::qubit(omega1)?;
    let h2 = HamiltonianSpectrum::qubit(omega2)?;
    let corners = qubit_corners(omega1, omega2, hot, cold)?;
    let rho_b = gibbs_state(&h2, hot);
    let rho_d = gibbs_state(&h1, cold);
    let w_bc = max_avg_work_bounded(&rho_b, &h2, cold, delta_w, grid)?;
    let w_da = max_avg_work_bounded(&rho_d, &h1, hot, delta_w, grid)?;
    let report = corners.engine_report(hot, cold, (w_bc.mean, w_da.mean));
    Ok(FluctuationReport {
        eta: report.eta,
        eta_carnot: report.eta_carnot,
        w_deterministic: corners.deterministic_work(),
        report,
        w_bc,
        w_da,
    })
}
