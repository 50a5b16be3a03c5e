//! Small log-domain helpers shared by the partition-function code.

use statrs::function::gamma::ln_gamma;

/// `ln Σ exp(x_i)`, shifted by the maximum. The remaining terms go through
/// `ln_1p`, so contributions far below the largest one are not lost.
/// Returns `-inf` for an empty input or when every term is `-inf`.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let Some((arg, max)) = xs.iter().copied().enumerate().fold(
        None,
        |best: Option<(usize, f64)>, (i, x)| match best {
            Some((_, m)) if m >= x => best,
            _ => Some((i, x)),
        },
    ) else {
        return f64::NEG_INFINITY;
    };
    if max.is_infinite() {
        return max;
    }
    let rest: f64 = xs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != arg)
        .map(|(_, &x)| (x - max).exp())
        .sum();
    max + rest.ln_1p()
}

/// `ln C(n, m)` via log-gamma.
pub fn ln_choose(n: u64, m: u64) -> f64 {
    debug_assert!(m <= n);
    if m == 0 || m == n {
        return 0.0;
    }
    let n = n as f64;
    let m = m as f64;
    ln_gamma(n + 1.0) - ln_gamma(m + 1.0) - ln_gamma(n - m + 1.0)
}

/// `x ln x` with `0 ln 0 = 0`.
#[inline]
pub fn xlogx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// Binary entropy in nats.
pub fn binary_entropy(p: f64) -> f64 {
    -(xlogx(p) + xlogx(1.0 - p))
}

/// Binary relative entropy `D(q‖p) = q ln(q/p) + (1-q) ln((1-q)/(1-p))`.
pub fn binary_relative_entropy(q: f64, p: f64) -> f64 {
    let a = if q > 0.0 { q * (q / p).ln() } else { 0.0 };
    let b = if q < 1.0 {
        (1.0 - q) * ((1.0 - q) / (1.0 - p)).ln()
    } else {
        0.0
    };
    a + b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_sum_exp_keeps_tiny_terms() {
        let ln_z = log_sum_exp(&[0.0, -60.0]);
        assert!((ln_z / (-60.0f64).exp() - 1.0).abs() < 1e-12);
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        assert!((log_sum_exp(&[1.0, 1.0]) - (1.0 + 2f64.ln())).abs() < 1e-15);
    }

    #[test]
    fn log_sum_exp_matches_naive() {
        let xs = [-1.0, 0.5, 2.0, -3.0];
        let naive: f64 = xs.iter().map(|x: &f64| x.exp()).sum::<f64>().ln();
        assert!((log_sum_exp(&xs) - naive).abs() < 1e-14);
    }

    #[test]
    fn log_sum_exp_survives_large_arguments() {
        let v = log_sum_exp(&[1000.0, 1000.0]);
        assert!((v - (1000.0 + 2f64.ln())).abs() < 1e-12);
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY]), f64::NEG_INFINITY);
    }

    #[test]
    fn ln_choose_small_values_are_exact() {
        let mut c = 1u64;
        for m in 0..=20u64 {
            assert!((ln_choose(20, m) - (c as f64).ln()).abs() < 1e-12, "m={m}");
            c = c * (20 - m) / (m + 1);
        }
    }

    #[test]
    fn relative_entropy_vanishes_on_diagonal() {
        assert_eq!(binary_relative_entropy(0.3, 0.3), 0.0);
        assert!(binary_relative_entropy(0.2, 0.3) > 0.0);
        assert!((binary_entropy(0.5) - 2f64.ln()).abs() < 1e-15);
    }
}
