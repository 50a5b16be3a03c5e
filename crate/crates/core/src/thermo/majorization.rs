use crate::error::Result;

use super::spectrum::{Bath, HamiltonianSpectrum};
use super::state::BlockDiagonalState;

/// Absolute tolerance in `y` used when comparing two curves.
pub const CURVE_TOLERANCE: f64 = 1e-10;

/// Keys closer than this (in the log domain) count as tied.
const TIE_TOLERANCE: f64 = 1e-12;

/// Basis indices sorted by `λ_i e^{βE_i}` descending.
///
/// Tied keys are ordered by energy ascending, then by index. Empty basis
/// states come last.
pub fn beta_order(
    rho: &BlockDiagonalState,
    h: &HamiltonianSpectrum,
    bath: Bath,
) -> Result<Vec<usize>> {
    h.check_aligned(rho.dimension(), "state")?;
    let beta = bath.beta();
    let energies = h.basis_energies();
    let keys: Vec<f64> = rho
        .populations()
        .iter()
        .zip(energies)
        .map(|(&p, &e)| {
            if p > 0.0 {
                p.ln() + beta * e
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();

    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[b].total_cmp(&keys[a]).then(a.cmp(&b)));

    let tied = |a: f64, b: f64| a == b || (a - b).abs() <= TIE_TOLERANCE;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && tied(keys[order[end - 1]], keys[order[end]]) {
            end += 1;
        }
        order[start..end].sort_by(|&a, &b| energies[a].total_cmp(&energies[b]).then(a.cmp(&b)));
        start = end;
    }
    Ok(order)
}

/// Piecewise-linear thermo-majorization curve.
///
/// Breakpoints are `(Σ e^{-βE}, Σ λ)` accumulated along the β-order, starting
/// at the origin and ending at `(Z, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermoCurve {
    points: Vec<(f64, f64)>,
}

impl ThermoCurve {
    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// The final `x`, i.e. the partition function.
    pub fn partition_function(&self) -> f64 {
        self.points.last().map_or(0.0, |p| p.0)
    }

    /// Linear interpolation; `y` stays at its final value past the end.
    pub fn eval(&self, x: f64) -> f64 {
        let pts = &self.points;
        if x <= 0.0 {
            return 0.0;
        }
        let k = pts.partition_point(|p| p.0 < x);
        if k >= pts.len() {
            return pts[pts.len() - 1].1;
        }
        let (x1, y1) = pts[k];
        let (x0, y0) = pts[k - 1];
        if x1 == x0 {
            return y1;
        }
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// Whether the slopes are nonincreasing, up to `tol` in `y`.
    pub fn is_concave(&self, tol: f64) -> bool {
        self.points.windows(3).all(|w| {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            let (x2, y2) = w[2];
            (y2 - y1) * (x1 - x0) <= (y1 - y0) * (x2 - x1) + tol * (x2 - x0)
        })
    }
}

/// Thermo-majorization curve of `ρ` at the bath temperature.
pub fn lorenz_curve(
    rho: &BlockDiagonalState,
    h: &HamiltonianSpectrum,
    bath: Bath,
) -> Result<ThermoCurve> {
    let order = beta_order(rho, h, bath)?;
    let beta = bath.beta();
    let mut points = Vec::with_capacity(order.len() + 1);
    points.push((0.0, 0.0));
    let (mut x, mut y) = (0.0, 0.0);
    for i in order {
        x += (-beta * h.basis_energies()[i]).exp();
        y += rho.populations()[i];
        points.push((x, y));
    }
    Ok(ThermoCurve { points })
}

/// Whether `ρ` can be turned into `σ` by a thermal operation, i.e. `ρ`'s
/// curve lies on or above `σ`'s at every breakpoint of either curve.
pub fn thermo_majorizes(
    rho: &BlockDiagonalState,
    sigma: &BlockDiagonalState,
    h: &HamiltonianSpectrum,
    bath: Bath,
) -> Result<bool> {
    let a = lorenz_curve(rho, h, bath)?;
    let b = lorenz_curve(sigma, h, bath)?;
    Ok(curve_dominates(&a, &b, CURVE_TOLERANCE))
}

/// `a(x) >= b(x) - tol` on the union of both breakpoint sets.
pub fn curve_dominates(a: &ThermoCurve, b: &ThermoCurve, tol: f64) -> bool {
    let above = |x: f64| a.eval(x) >= b.eval(x) - tol;
    a.points.iter().all(|p| above(p.0)) && b.points.iter().all(|p| above(p.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermo::functionals::gibbs_state;

    fn bath(t: f64) -> Bath {
        Bath::new(t).unwrap()
    }

    #[test]
    fn gibbs_order_is_identity() {
        let h = HamiltonianSpectrum::new([(0.0, 1), (0.3, 3), (2.0, 2)]).unwrap();
        let g = gibbs_state(&h, bath(0.8));
        assert_eq!(
            beta_order(&g, &h, bath(0.8)).unwrap(),
            (0..6).collect::<Vec<_>>()
        );
    }

    #[test]
    fn order_examples() {
        let h = HamiltonianSpectrum::qubit(1.0).unwrap();
        let u = BlockDiagonalState::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(beta_order(&u, &h, bath(1.0)).unwrap(), vec![1, 0]);
        let ground = BlockDiagonalState::pure(2, 0).unwrap();
        assert_eq!(beta_order(&ground, &h, bath(1.0)).unwrap(), vec![0, 1]);
        let excited = BlockDiagonalState::pure(2, 1).unwrap();
        assert_eq!(beta_order(&excited, &h, bath(1.0)).unwrap(), vec![1, 0]);
    }

    #[test]
    fn curve_examples() {
        let h = HamiltonianSpectrum::qubit(1.0).unwrap();
        let t = bath(1.0);
        let c = lorenz_curve(&BlockDiagonalState::pure(2, 0).unwrap(), &h, t).unwrap();
        let expected = [(0.0, 0.0), (1.0, 1.0), (1.367879441171, 1.0)];
        for (p, e) in c.points().iter().zip(expected) {
            assert!((p.0 - e.0).abs() < 1e-12 && (p.1 - e.1).abs() < 1e-12);
        }
        let g = lorenz_curve(&gibbs_state(&h, t), &h, t).unwrap();
        let z = g.partition_function();
        for &(x, y) in g.points() {
            assert!((y - x / z).abs() < 1e-12);
        }
        let flat = HamiltonianSpectrum::new([(0.0, 2)]).unwrap();
        let u = BlockDiagonalState::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(
            lorenz_curve(&u, &flat, t).unwrap().points(),
            &[(0.0, 0.0), (1.0, 0.5), (2.0, 1.0)]
        );
    }

    #[test]
    fn majorization_examples() {
        let h = HamiltonianSpectrum::qubit(1.0).unwrap();
        let t = bath(1.0);
        let g = gibbs_state(&h, t);
        let ground = BlockDiagonalState::pure(2, 0).unwrap();
        assert!(thermo_majorizes(&ground, &g, &h, t).unwrap());
        assert!(!thermo_majorizes(&g, &ground, &h, t).unwrap());
        assert!(thermo_majorizes(&ground, &ground, &h, t).unwrap());
    }

    #[test]
    fn eval_interpolates_and_saturates() {
        let c = ThermoCurve {
            points: vec![(0.0, 0.0), (1.0, 0.8), (3.0, 1.0)],
        };
        assert_eq!(c.eval(0.5), 0.4);
        assert!((c.eval(2.0) - 0.9).abs() < 1e-15);
        assert_eq!(c.eval(10.0), 1.0);
        assert!(c.is_concave(0.0));
    }
}
