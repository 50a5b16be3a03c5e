//! Reference computations used to cross-check the library. Each one follows
//! a different route from the code it checks: closed forms, linear programs
//! over explicit channels, vertex enumeration, or explicit `2^N` states.
#![allow(dead_code, clippy::needless_range_loop)]

use microlp::{ComparisonOp, OptimizationDirection, Problem};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use ssot_core::thermo::{BlockDiagonalState, HamiltonianSpectrum};

// ---------------------------------------------------------------------------
// Closed-form qubit thermodynamics.

/// `(E, S, F)` of a thermal qubit with gap `omega` at temperature `t`.
pub fn qubit_thermo(omega: f64, t: f64) -> (f64, f64, f64) {
    let x = (-omega / t).exp();
    let p = x / (1.0 + x);
    let ln_z = x.ln_1p();
    (p * omega, ln_z + p * omega / t, -t * ln_z)
}

#[derive(Debug, Clone, Copy)]
pub struct QubitOracle {
    pub w: f64,
    pub q_hot: f64,
    pub q_cold: f64,
    pub eta: f64,
    pub q_irr_bc: f64,
    pub q_irr_da: f64,
    pub q_cold_fridge: f64,
    pub cop: f64,
}

pub fn qubit_engine_oracle(w1: f64, w2: f64, th: f64, tc: f64) -> QubitOracle {
    let (ea, sa, fa) = qubit_thermo(w1, th);
    let (eb, sb, fb) = qubit_thermo(w2, th);
    let (ec, sc, fc) = qubit_thermo(w2, tc);
    let (ed, sd, fd) = qubit_thermo(w1, tc);
    let w = fa - fb - fd + fc;
    let q_hot = th * (sb - sa) + (ea - ed);
    let q_cold_fridge = tc * (sc - sd) + (ed - ea);
    QubitOracle {
        w,
        q_hot,
        q_cold: q_hot - w,
        eta: w / q_hot,
        q_irr_bc: eb - ec,
        q_irr_da: ea - ed,
        q_cold_fridge,
        cop: q_cold_fridge / w,
    }
}

// ---------------------------------------------------------------------------
// Thermo-majorization by its definition.

/// Searches for a stochastic matrix `G` with `Gτ = τ` and `Gρ = σ`.
pub fn gibbs_stochastic_exists(rho: &[f64], sigma: &[f64], gibbs: &[f64]) -> bool {
    let d = rho.len();
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let g: Vec<Vec<_>> = (0..d)
        .map(|_| {
            (0..d)
                .map(|_| lp.add_var(0.0, (0.0, f64::INFINITY)))
                .collect()
        })
        .collect();
    for i in 0..d {
        let col: Vec<_> = (0..d).map(|j| (g[j][i], 1.0)).collect();
        lp.add_constraint(col, ComparisonOp::Eq, 1.0);
    }
    for j in 0..d {
        let tau_row: Vec<_> = (0..d).map(|i| (g[j][i], gibbs[i])).collect();
        lp.add_constraint(tau_row, ComparisonOp::Eq, gibbs[j]);
        let rho_row: Vec<_> = (0..d).map(|i| (g[j][i], rho[i])).collect();
        lp.add_constraint(rho_row.clone(), ComparisonOp::Le, sigma[j] + 1e-9);
        lp.add_constraint(rho_row, ComparisonOp::Ge, sigma[j] - 1e-9);
    }
    match lp.solve() {
        Ok(outcome) => outcome.into_solution().is_ok(),
        Err(_) => false,
    }
}

/// `Σ_i (p_i - t g_i)_+`.
fn hockey(p: &[f64], g: &[f64], t: f64) -> f64 {
    p.iter().zip(g).map(|(a, b)| (a - t * b).max(0.0)).sum()
}

/// Relative-majorization test through hockey-stick divergences. Returns the
/// smallest margin `min_t [H_t(ρ) - H_t(σ)]`, which is `>= 0` iff `ρ`
/// thermo-majorizes `σ`.
pub fn hockey_stick_margin(rho: &[f64], sigma: &[f64], gibbs: &[f64]) -> f64 {
    let mut ts = vec![0.0];
    for (i, &g) in gibbs.iter().enumerate() {
        ts.push(rho[i] / g);
        ts.push(sigma[i] / g);
    }
    ts.iter()
        .map(|&t| hockey(rho, gibbs, t) - hockey(sigma, gibbs, t))
        .fold(f64::INFINITY, f64::min)
}

/// Unnormalized Gibbs weights `e^{-βE_i}`, the Gibbs vector up to `1/Z`.
pub fn gibbs_weights(h: &HamiltonianSpectrum, t: f64) -> Vec<f64> {
    let z: f64 = h.basis_energies().iter().map(|e| (-e / t).exp()).sum();
    h.basis_energies()
        .iter()
        .map(|e| (-e / t).exp() / z)
        .collect()
}

// ---------------------------------------------------------------------------
// Bounded-fluctuation work by brute force.

/// Contiguous windows `[a, b]` of the grid with `w_b - w_a <= 2ΔW`.
pub fn all_windows(w: &[f64], delta_w: f64) -> Vec<(usize, usize)> {
    let eps = 1e-12 * (w[w.len() - 1] - w[0]);
    let mut out = Vec::new();
    for a in 0..w.len() {
        for b in a..w.len() {
            if w[b] - w[a] <= 2.0 * delta_w + eps {
                out.push((a, b));
            }
        }
    }
    out
}

/// Maximum of `Σ λ_i ⟨w⟩_i` subject to `Σ τ_i ⟨e^{βw}⟩_i <= 1`, found by
/// visiting every vertex of the feasible polytope of each window. A vertex
/// puts every item on one level except at most one item split between two.
pub fn vertex_enumeration(lambda: &[f64], tau: &[f64], beta: f64, w: &[f64], delta_w: f64) -> f64 {
    let items: Vec<usize> = (0..lambda.len()).filter(|&i| lambda[i] > 1e-12).collect();
    let mut best = 0.0f64;
    for (a, b) in all_windows(w, delta_w) {
        let levels: Vec<usize> = (a..=b).collect();
        let m = levels.len();
        let total = m.pow(items.len() as u32);
        for code in 0..total {
            let mut assign = Vec::with_capacity(items.len());
            let mut c = code;
            for _ in &items {
                assign.push(levels[c % m]);
                c /= m;
            }
            let cost: f64 = items
                .iter()
                .zip(&assign)
                .map(|(&i, &l)| tau[i] * (beta * w[l]).exp())
                .sum();
            let value: f64 = items
                .iter()
                .zip(&assign)
                .map(|(&i, &l)| lambda[i] * w[l])
                .sum();
            if cost <= 1.0 + 1e-12 {
                best = best.max(value);
            }
            // Split one item between two levels so that the budget is tight.
            for (slot, &i) in items.iter().enumerate() {
                let rest_cost = cost - tau[i] * (beta * w[assign[slot]]).exp();
                let rest_value = value - lambda[i] * w[assign[slot]];
                for &l1 in &levels {
                    for &l2 in &levels {
                        if l2 <= l1 {
                            continue;
                        }
                        let (c1, c2) = ((beta * w[l1]).exp(), (beta * w[l2]).exp());
                        let x = (1.0 - rest_cost - tau[i] * c1) / (tau[i] * (c2 - c1));
                        if (0.0..=1.0).contains(&x) {
                            let v = rest_value + lambda[i] * ((1.0 - x) * w[l1] + x * w[l2]);
                            best = best.max(v);
                        }
                    }
                }
            }
        }
    }
    best
}

/// The same optimum from a linear program over the full channel
/// `P(j, w | i)` with one translation-invariant Gibbs condition per output
/// state `j` and no product assumption on the final state.
pub fn channel_lp(lambda: &[f64], tau: &[f64], beta: f64, w: &[f64], delta_w: f64) -> f64 {
    let d = lambda.len();
    let support: Vec<usize> = (0..d).filter(|&i| lambda[i] > 1e-12).collect();
    let mut best = 0.0f64;
    let windows = all_windows(w, delta_w);
    for &(a, b) in &windows {
        // Only maximal windows matter.
        if windows
            .iter()
            .any(|&(c, e)| c <= a && e >= b && (c, e) != (a, b))
        {
            continue;
        }
        let mut lp = Problem::new(OptimizationDirection::Maximize);
        let mut vars = Vec::new();
        for &i in &support {
            for j in 0..d {
                for l in a..=b {
                    vars.push((i, j, l, lp.add_var(lambda[i] * w[l], (0.0, f64::INFINITY))));
                }
            }
        }
        for &i in &support {
            let row: Vec<_> = vars
                .iter()
                .filter(|v| v.0 == i)
                .map(|v| (v.3, 1.0))
                .collect();
            lp.add_constraint(row, ComparisonOp::Eq, 1.0);
        }
        for j in 0..d {
            let row: Vec<_> = vars
                .iter()
                .filter(|v| v.1 == j)
                .map(|v| (v.3, tau[v.0] * (beta * w[v.2]).exp()))
                .collect();
            lp.add_constraint(row, ComparisonOp::Le, tau[j]);
            let marginal: Vec<_> = vars
                .iter()
                .filter(|v| v.1 == j)
                .map(|v| (v.3, lambda[v.0]))
                .collect();
            lp.add_constraint(marginal, ComparisonOp::Eq, tau[j]);
        }
        if let Ok(outcome) = lp.solve() {
            if let Ok(sol) = outcome.into_solution() {
                best = best.max(sol.objective());
            }
        }
    }
    best
}

/// Two-level grid `{w0, w1}`: best mean over battery distributions on a
/// probability lattice of spacing `step`. A lattice point `x` (mass on `w1`)
/// is feasible when the cheapest channel producing it meets the budget.
pub fn lattice_two_level(
    lambda: &[f64],
    tau: &[f64],
    beta: f64,
    w0: f64,
    w1: f64,
    step: f64,
) -> f64 {
    let mut items: Vec<usize> = (0..lambda.len()).filter(|&i| lambda[i] > 1e-12).collect();
    items.sort_by(|&a, &b| (tau[a] / lambda[a]).total_cmp(&(tau[b] / lambda[b])));
    let (c0, c1) = ((beta * w0).exp(), (beta * w1).exp());
    let base: f64 = items.iter().map(|&i| tau[i]).sum::<f64>() * c0;
    let mut best = f64::NEG_INFINITY;
    let steps = (1.0 / step).round() as usize;
    for s in 0..=steps {
        let x = s as f64 * step;
        let mut need = x;
        let mut cost = base;
        for &i in &items {
            let take = need.min(lambda[i]);
            cost += tau[i] * (c1 - c0) * take / lambda[i];
            need -= take;
        }
        if need <= 1e-15 && cost <= 1.0 + 1e-12 {
            best = best.max((1.0 - x) * w0 + x * w1);
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Explicit N-qubit states.

/// Every one of the `2^N` product-basis states, with energy `ω · popcount`.
pub fn qubit_register(n: u32, omega: f64) -> (HamiltonianSpectrum, Vec<usize>, Vec<u32>) {
    let energies: Vec<f64> = (0..1u32 << n)
        .map(|s| omega * s.count_ones() as f64)
        .collect();
    let (h, place) = HamiltonianSpectrum::from_basis_energies(&energies).unwrap();
    let mut popcount = vec![0; energies.len()];
    for (s, &p) in place.iter().enumerate() {
        popcount[p] = (s as u32).count_ones();
    }
    (h, place, popcount)
}

/// Total correlation per particle of a register state, from its explicit
/// single-qubit marginals.
pub fn explicit_correlations(pops: &[f64], place: &[usize], n: u32) -> f64 {
    let s_total: f64 = -pops
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|p| p * p.ln())
        .sum::<f64>();
    let mut s_local = 0.0;
    for q in 0..n {
        let p1: f64 = (0..1usize << n)
            .filter(|s| s >> q & 1 == 1)
            .map(|s| pops[place[s]])
            .sum();
        s_local -= [p1, 1.0 - p1]
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|p| p * p.ln())
            .sum::<f64>();
    }
    (s_local - s_total) / n as f64
}

// ---------------------------------------------------------------------------
// Random instances.

pub fn random_spectrum(rng: &mut ChaCha8Rng, max_dim: usize) -> HamiltonianSpectrum {
    loop {
        let n_levels = rng.random_range(1..=max_dim);
        let mut e = 0.0;
        let mut levels = Vec::new();
        let mut dim = 0;
        for _ in 0..n_levels {
            let g = rng.random_range(1..=2usize);
            if dim + g > max_dim {
                break;
            }
            levels.push((e, g));
            dim += g;
            e += rng.random_range(0.05..3.0);
        }
        if !levels.is_empty() {
            let shift = rng.random_range(-1.0..1.0);
            return HamiltonianSpectrum::new(levels.into_iter().map(|(e, g)| (e + shift, g)))
                .unwrap();
        }
    }
}

/// Random populations; about one entry in four is exactly zero.
pub fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> BlockDiagonalState {
    loop {
        let w: Vec<f64> = (0..dim)
            .map(|_| {
                if rng.random_bool(0.25) {
                    0.0
                } else {
                    -rng.random::<f64>().max(1e-300).ln()
                }
            })
            .collect();
        if w.iter().any(|&x| x > 0.0) {
            return BlockDiagonalState::from_weights(w).unwrap();
        }
    }
}

/// Random state supported exactly on the given basis states.
pub fn random_state_on(rng: &mut ChaCha8Rng, dim: usize, support: &[usize]) -> BlockDiagonalState {
    let mut w = vec![0.0; dim];
    for &i in support {
        w[i] = rng.random_range(0.05..1.0);
    }
    BlockDiagonalState::from_weights(w).unwrap()
}
