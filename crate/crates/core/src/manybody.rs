//! Correlated `N`-qubit working media in the log domain.
//!
//! The state with cutoff `k` is thermal-like on every collective shell with at
//! most `k` excitations: `m` excitations carry energy `mω` and degeneracy
//! `C(N, m)`. Nothing here builds the `2^N`-dimensional state; all sums run
//! over `m` with log-gamma binomials and log-sum-exp.

use serde::{Deserialize, Serialize};

use crate::cycles::{baths, Corners, CycleReport};
use crate::error::{domain, Result};
use crate::logmath::{binary_entropy, binary_relative_entropy, ln_choose, log_sum_exp};
use crate::thermo::{Bath, Functionals, HamiltonianSpectrum};

/// `(N, k, ω)`: `N` qubits of gap `ω` restricted to at most `k` excitations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelatedEnsembleSpec {
    pub n: u64,
    pub k: u64,
    pub omega: f64,
}

/// Log-domain summary of the ensemble at one temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleThermo {
    pub ln_z: f64,
    pub functionals: Functionals,
    /// Excitation probability of a single qubit.
    pub p_local: f64,
}

impl CorrelatedEnsembleSpec {
    pub fn new(n: u64, k: u64, omega: f64) -> Result<Self> {
        if n == 0 {
            return Err(domain("ensemble needs at least one qubit"));
        }
        if k > n {
            return Err(domain(format!("cutoff k = {k} exceeds N = {n}")));
        }
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(domain(format!("gap must be positive, got {omega}")));
        }
        Ok(Self { n, k, omega })
    }

    fn log_weights(&self, beta: f64) -> Vec<f64> {
        (0..=self.k)
            .map(|m| ln_choose(self.n, m) - m as f64 * beta * self.omega)
            .collect()
    }

    /// `ln Z_k`, `E`, `S = ln Z_k + βE`, `F = -T ln Z_k` and `p_k`.
    pub fn thermo(&self, bath: Bath) -> EnsembleThermo {
        let beta = bath.beta();
        let a = self.log_weights(beta);
        let ln_z = log_sum_exp(&a);
        let mean_m: f64 = a
            .iter()
            .enumerate()
            .map(|(m, &x)| m as f64 * (x - ln_z).exp())
            .sum();
        let energy = mean_m * self.omega;
        let entropy = ln_z + beta * energy;
        EnsembleThermo {
            ln_z,
            functionals: Functionals {
                energy,
                entropy,
                free_energy: -bath.temperature() * ln_z,
            },
            p_local: mean_m / self.n as f64,
        }
    }

    /// Total correlation per particle, `h(p_k) - S_k / N`.
    pub fn correlations_per_particle(&self, bath: Bath) -> f64 {
        let t = self.thermo(bath);
        (binary_entropy(t.p_local) - t.functionals.entropy / self.n as f64).max(0.0)
    }

    /// Collective spectrum `{mω}` with degeneracies `C(N, m)`, for small `N`.
    pub fn collective_spectrum(&self) -> Result<HamiltonianSpectrum> {
        if self.n > 30 {
            return Err(domain(format!(
                "explicit spectrum for N = {} is too large",
                self.n
            )));
        }
        HamiltonianSpectrum::new((0..=self.n).map(|m| {
            (
                m as f64 * self.omega,
                ln_choose(self.n, m).exp().round() as usize,
            )
        }))
    }
}

/// Local excitation probability `p_k` at a given `βω`.
pub fn local_pk(n: u64, k: u64, beta_omega: f64) -> Result<f64> {
    let spec = CorrelatedEnsembleSpec::new(n, k, 1.0)?;
    Ok(spec.thermo(Bath::new(1.0 / beta_omega)?).p_local)
}

/// `ln Z_k(β) = ln Σ_{m<=k} C(N, m) e^{-mβω}`.
pub fn log_restricted_partition(n: u64, k: u64, beta: f64, omega: f64) -> Result<f64> {
    let spec = CorrelatedEnsembleSpec::new(n, k, omega)?;
    Ok(spec.thermo(Bath::new(1.0 / beta)?).ln_z)
}

/// `I / N` for the ensemble at inverse temperature `β`.
pub fn correlations_per_particle(n: u64, k: u64, beta: f64, omega: f64) -> Result<f64> {
    let spec = CorrelatedEnsembleSpec::new(n, k, omega)?;
    Ok(spec.correlations_per_particle(Bath::new(1.0 / beta)?))
}

/// Excitation probability of a thermal qubit, `e^{-βω} / (1 + e^{-βω})`.
pub fn thermal_excitation(beta_omega: f64) -> f64 {
    1.0 / (1.0 + beta_omega.exp())
}

/// `P(X <= k)` for `X ~ Bin(N, p)`, summed in the log domain.
pub fn binomial_tail_exact(n: u64, k: u64, p: f64) -> Result<f64> {
    Ok(ln_binomial_tail(n, k, p)?.exp().min(1.0))
}

/// `ln P(X <= k)`; stays finite where the tail itself underflows.
pub fn ln_binomial_tail(n: u64, k: u64, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(domain(format!("p must lie in (0, 1), got {p}")));
    }
    if k > n {
        return Err(domain(format!("k = {k} exceeds N = {n}")));
    }
    let (lp, lq) = (p.ln(), (-p).ln_1p());
    let terms: Vec<f64> = (0..=k)
        .map(|m| ln_choose(n, m) + m as f64 * lp + (n - m) as f64 * lq)
        .collect();
    Ok(log_sum_exp(&terms).min(0.0))
}

/// Large-deviation bounds on the lower binomial tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailBounds {
    pub lower: f64,
    pub upper: f64,
    pub ln_lower: f64,
    pub ln_upper: f64,
    /// `D(k/N ‖ p)`.
    pub rate: f64,
}

/// `e^{-N D} / √(8Nq(1-q)) <= P(X <= k) <= e^{-N D}` with `q = k/N < p`.
pub fn binomial_tail_bounds(n: u64, k: u64, p: f64) -> Result<TailBounds> {
    if n == 0 {
        return Err(domain("N must be positive"));
    }
    let q = k as f64 / n as f64;
    if !(q > 0.0 && q < p && p < 1.0) {
        return Err(domain(format!(
            "bounds need 0 < k/N < p < 1, got k/N = {q}, p = {p}"
        )));
    }
    let nf = n as f64;
    let rate = binary_relative_entropy(q, p);
    let ln_upper = -nf * rate;
    let ln_lower = ln_upper - 0.5 * (8.0 * nf * q * (1.0 - q)).ln();
    Ok(TailBounds {
        lower: ln_lower.exp(),
        upper: ln_upper.exp(),
        ln_lower,
        ln_upper,
        rate,
    })
}

/// Non-equilibrium cycle on `N` qubits between the cutoffs `k` and `l`.
#[derive(Debug, Clone, PartialEq)]
pub struct ManyBodyCycle {
    pub report: CycleReport,
    pub w_per_particle: f64,
    /// Largest correlation per particle among the four corner states.
    pub corr_per_particle: f64,
}

/// Runs the cycle `A = τ|_k(T_hot)`, `B = τ|_l(T_hot)`, `C = τ|_l(T_cold)`,
/// `D = τ|_k(T_cold)` entirely through the log-domain partition functions.
pub fn manybody_cycle(
    n: u64,
    k: u64,
    l: u64,
    omega: f64,
    t_hot: f64,
    t_cold: f64,
) -> Result<ManyBodyCycle> {
    if n < 2 {
        return Err(domain(
            "a single qubit admits no non-trivial cycle of this kind; need N >= 2",
        ));
    }
    if !(1 <= k && k < l && l <= n) {
        return Err(domain(format!(
            "cutoffs need 1 <= k < l <= N, got k = {k}, l = {l}, N = {n}"
        )));
    }
    let (hot, cold) = baths(t_hot, t_cold)?;
    let small = CorrelatedEnsembleSpec::new(n, k, omega)?;
    let large = CorrelatedEnsembleSpec::new(n, l, omega)?;
    let corners = Corners {
        a: small.thermo(hot).functionals,
        b: large.thermo(hot).functionals,
        c: large.thermo(cold).functionals,
        d: small.thermo(cold).functionals,
    };
    let report = corners.engine_report(hot, cold, (0.0, 0.0));
    let corr = [
        small.correlations_per_particle(hot),
        large.correlations_per_particle(hot),
        large.correlations_per_particle(cold),
        small.correlations_per_particle(cold),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    Ok(ManyBodyCycle {
        w_per_particle: report.w_cycle / n as f64,
        corr_per_particle: corr,
        report,
    })
}

/// Per-particle free energy of a qubit with excitation probability `q`,
/// `qω - T h(q)`.
pub fn local_free_energy(q: f64, omega: f64, bath: Bath) -> f64 {
    q * omega - bath.temperature() * binary_entropy(q)
}

/// Large-`N` work per particle, `F(q,β_h) - F(r,β_h) - F(q,β_c) + F(r,β_c)`.
pub fn asymptotic_work_per_particle(
    q: f64,
    r: f64,
    omega: f64,
    t_hot: f64,
    t_cold: f64,
) -> Result<f64> {
    let (hot, cold) = baths(t_hot, t_cold)?;
    Ok(local_free_energy(q, omega, hot)
        - local_free_energy(r, omega, hot)
        - local_free_energy(q, omega, cold)
        + local_free_energy(r, omega, cold))
}

/// One row of a convergence scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: u64,
    pub k: u64,
    pub l: u64,
    pub eta: f64,
    pub eta_carnot: f64,
    pub w_per_particle: f64,
    pub corr_per_particle: f64,
    /// `p_k` of the hot corner `A`.
    pub p_k: f64,
    /// Whether `k` or `l` had to be raised to keep `1 <= k < l`.
    pub clamped: bool,
}

/// Cutoffs `k = max(1, ⌊qN⌋)` and `l = max(k + 1, ⌊rN⌋)`, plus whether either
/// was raised.
pub fn scan_cutoffs(n: u64, q: f64, r: f64) -> (u64, u64, bool) {
    let kf = (q * n as f64).floor() as u64;
    let lf = (r * n as f64).floor() as u64;
    let k = kf.max(1);
    let l = lf.max(k + 1);
    (k, l, k != kf || l != lf)
}

/// Checks `0 < q < r < min(p_hot, p_cold)`.
pub fn check_scan_fractions(q: f64, r: f64, omega: f64, t_hot: f64, t_cold: f64) -> Result<()> {
    let (hot, cold) = baths(t_hot, t_cold)?;
    let p_min = thermal_excitation(hot.beta() * omega).min(thermal_excitation(cold.beta() * omega));
    if !(0.0 < q && q < r && r < p_min) {
        return Err(domain(format!(
            "scan needs 0 < q < r < {p_min:.6} (thermal excitation at the colder bath), got q = {q}, r = {r}"
        )));
    }
    Ok(())
}

/// One scan row for `N` qubits.
pub fn scan_row(n: u64, q: f64, r: f64, omega: f64, t_hot: f64, t_cold: f64) -> Result<ScanRow> {
    let (k, l, clamped) = scan_cutoffs(n, q, r);
    let cycle = manybody_cycle(n, k, l, omega, t_hot, t_cold)?;
    let hot = Bath::new(t_hot)?;
    Ok(ScanRow {
        n,
        k,
        l,
        eta: cycle.report.eta,
        eta_carnot: cycle.report.eta_carnot,
        w_per_particle: cycle.w_per_particle,
        corr_per_particle: cycle.corr_per_particle,
        p_k: CorrelatedEnsembleSpec::new(n, k, omega)?
            .thermo(hot)
            .p_local,
        clamped,
    })
}

/// Efficiency, work and correlations per particle along a list of sizes.
pub fn convergence_scan(
    n_list: &[u64],
    q: f64,
    r: f64,
    omega: f64,
    t_hot: f64,
    t_cold: f64,
) -> Result<Vec<ScanRow>> {
    check_scan_fractions(q, r, omega, t_hot, t_cold)?;
    n_list
        .iter()
        .map(|&n| scan_row(n, q, r, omega, t_hot, t_cold))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn pk_examples() {
        close(local_pk(7, 7, 1.3).unwrap(), thermal_excitation(1.3), 1e-14);
        close(local_pk(2, 1, 1.0).unwrap(), 0.211941557617, 1e-12);
        assert_eq!(local_pk(5, 0, 1.0).unwrap(), 0.0);
        assert!(local_pk(3, 4, 1.0).is_err());
    }

    #[test]
    fn partition_examples() {
        close(
            log_restricted_partition(2, 1, 1.0, 1.0).unwrap(),
            0.551444713932,
            1e-12,
        );
        let full = log_restricted_partition(9, 9, 0.7, 1.5).unwrap();
        close(full, 9.0 * (-0.7f64 * 1.5).exp().ln_1p(), 1e-12);
        let big = log_restricted_partition(100_000, 100_000, 1.0, 1.0).unwrap();
        close(big / 1e5, 0.313261687518, 0.313261687518 * 1e-6);
    }

    #[test]
    fn correlation_examples() {
        close(
            correlations_per_particle(2, 1, 1.0, 1.0).unwrap(),
            0.0288538394422,
            1e-12,
        );
        assert!(correlations_per_particle(12, 12, 1.0, 1.0).unwrap().abs() < 1e-12);
        assert!(
            correlations_per_particle(4096, 409, 1.0, 1.0).unwrap()
                < correlations_per_particle(64, 6, 1.0, 1.0).unwrap()
        );
    }

    #[test]
    fn tail_example() {
        let b = binomial_tail_bounds(100, 20, 0.3).unwrap();
        let exact = binomial_tail_exact(100, 20, 0.3).unwrap();
        close(b.lower, 0.006743175114, 1e-11);
        close(b.upper, 0.076290317602, 1e-11);
        close(exact, 0.016462853242, 1e-11);
        assert!(binomial_tail_bounds(100, 30, 0.3).is_err());
        assert!(binomial_tail_bounds(100, 0, 0.3).is_err());
    }

    #[test]
    fn upper_bound_tends_to_one_near_p() {
        let b = binomial_tail_bounds(1000, 299, 0.3).unwrap();
        assert!(b.upper > 0.99);
    }

    #[test]
    fn two_qubit_cycle() {
        let c = manybody_cycle(2, 1, 2, 1.0, 2.0, 1.0).unwrap();
        close(c.report.w_cycle, 0.232475736781, 1e-11);
        close(c.report.eta, 0.36395269, 1e-8);
        assert!(manybody_cycle(1, 0, 1, 1.0, 2.0, 1.0).is_err());
        assert!(manybody_cycle(4, 2, 2, 1.0, 2.0, 1.0).is_err());
        assert!(manybody_cycle(4, 0, 2, 1.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn large_n_approaches_carnot() {
        let (k, l, clamped) = scan_cutoffs(4096, 0.1, 0.2);
        assert_eq!((k, l, clamped), (409, 819, false));
        let c = manybody_cycle(4096, k, l, 1.0, 2.0, 1.0).unwrap();
        assert!((0.5 - c.report.eta) < 0.02 && c.report.eta < 0.5);
        let lim = asymptotic_work_per_particle(0.1, 0.2, 1.0, 2.0, 1.0).unwrap();
        assert!((c.w_per_particle - lim).abs() / lim < 0.02);
    }

    #[test]
    fn scan_rejects_inadmissible_fractions() {
        assert!(convergence_scan(&[16], 0.2, 0.1, 1.0, 2.0, 1.0).is_err());
        assert!(convergence_scan(&[16], 0.1, 0.3, 1.0, 2.0, 1.0).is_err());
        assert_eq!(scan_cutoffs(4, 0.1, 0.2), (1, 2, true));
    }

    #[test]
    fn collective_spectrum_degeneracies() {
        let h = CorrelatedEnsembleSpec::new(4, 2, 1.0)
            .unwrap()
            .collective_spectrum()
            .unwrap();
        let g: Vec<usize> = h.levels().iter().map(|l| l.degeneracy).collect();
        assert_eq!(g, vec![1, 4, 6, 4, 1]);
    }
}
