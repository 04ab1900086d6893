//! Position and momentum densities, Rényi entropies and the Rényi
//! uncertainty bound.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fock::{psi_table, symmetric_grid, trapezoid, FockVector, C64};
use crate::kerr::{evolve_kerr, KerrParams};

/// Allowed deviation of ∫f dx from one.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-3;

/// Shannon limit of the bound as both orders approach one.
pub const SHANNON_LIMIT: f64 = 1.0 + 1.144_729_885_849_400_2;

/// Quadrature nodes used by [`renyi_sum_timeseries`]: 3201 points on [-16, 16].
pub fn entropy_grid() -> Vec<f64> {
    symmetric_grid(16.0, 3201)
}

/// Conjugate orders with 1/ζ + 1/η = 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RenyiOrderPair {
    zeta: f64,
    eta: f64,
}

impl RenyiOrderPair {
    pub fn new(zeta: f64, eta: f64) -> Result<Self> {
        if !(zeta > 0.0 && eta > 0.0 && zeta.is_finite() && eta.is_finite()) {
            return Err(invalid(format!(
                "Rényi orders ({zeta}, {eta}) must be positive"
            )));
        }
        if zeta == 1.0 || eta == 1.0 {
            return Err(invalid("order 1 is the Shannon limit, use SHANNON_LIMIT"));
        }
        if (1.0 / zeta + 1.0 / eta - 2.0).abs() > 1e-12 {
            return Err(invalid(format!(
                "orders ({zeta}, {eta}) violate 1/ζ + 1/η = 2"
            )));
        }
        Ok(Self { zeta, eta })
    }

    /// Pair completed from ζ > 1/2.
    pub fn conjugate_of(zeta: f64) -> Result<Self> {
        if !(zeta > 0.5) {
            return Err(invalid(format!("order {zeta} has no positive conjugate")));
        }
        Self::new(zeta, zeta / (2.0 * zeta - 1.0))
    }

    /// (2/3, 2).
    pub fn standard() -> Self {
        Self {
            zeta: 2.0 / 3.0,
            eta: 2.0,
        }
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn swapped(&self) -> Self {
        Self {
            zeta: self.eta,
            eta: self.zeta,
        }
    }
}

fn density_with_phase(v: &FockVector, xs: &[f64], momentum: bool) -> Vec<f64> {
    let amps: Vec<C64> = if momentum {
        // (-i)^n cycles through 1, -i, -1, i
        let cycle = [
            C64::new(1.0, 0.0),
            C64::new(0.0, -1.0),
            C64::new(-1.0, 0.0),
            C64::new(0.0, 1.0),
        ];
        v.amps()
            .iter()
            .enumerate()
            .map(|(n, c)| c * cycle[n % 4])
            .collect()
    } else {
        v.amps().to_vec()
    };
    let nmax = amps.len() - 1;
    xs.par_iter()
        .map(|&x| {
            let psi = psi_table(nmax, x);
            amps.iter()
                .zip(&psi)
                .map(|(c, p)| c * p)
                .sum::<C64>()
                .norm_sqr()
        })
        .collect()
}

/// |Σ_n c_n ψ_n(x)|².
pub fn position_density(v: &FockVector, x_values: &[f64]) -> Vec<f64> {
    density_with_phase(v, x_values, false)
}

/// |Σ_n (-i)^n c_n ψ_n(p)|².
pub fn momentum_density(v: &FockVector, p_values: &[f64]) -> Vec<f64> {
    density_with_phase(v, p_values, true)
}

fn uniform_step(xs: &[f64]) -> Result<f64> {
    if xs.len() < 2 {
        return Err(invalid("quadrature needs at least two nodes"));
    }
    let step = xs[1] - xs[0];
    let span = xs[xs.len() - 1] - xs[0];
    let expected = step * (xs.len() - 1) as f64;
    if !(step > 0.0) || (span - expected).abs() > 1e-9 * span.abs().max(1.0) {
        return Err(invalid("quadrature nodes must be uniform and increasing"));
    }
    Ok(step)
}

/// (1/(1-q)) ln ∫ f^q dx by the trapezoid rule on uniform nodes.
pub fn renyi_entropy(density: &[f64], x_values: &[f64], order: f64) -> Result<f64> {
    if density.len() != x_values.len() {
        return Err(invalid(format!(
            "density has {} samples but there are {} nodes",
            density.len(),
            x_values.len()
        )));
    }
    if !(order > 0.0 && order.is_finite()) || order == 1.0 {
        return Err(invalid(format!(
            "Rényi order {order} must be positive and not 1"
        )));
    }
    let step = uniform_step(x_values)?;
    let integral = trapezoid(density, step);
    if (integral - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::NonNormalizedDensity { integral });
    }
    let powered: Vec<f64> = density.iter().map(|f| f.max(0.0).powf(order)).collect();
    Ok(trapezoid(&powered, step).ln() / (1.0 - order))
}

/// -ln(ζ/π)/(2(1-ζ)) - ln(η/π)/(2(1-η)).
pub fn renyi_bound(orders: RenyiOrderPair) -> f64 {
    let term = |q: f64| -(q / PI).ln() / (2.0 * (1.0 - q));
    term(orders.zeta) + term(orders.eta)
}

/// Position entropy of order ζ plus momentum entropy of order η.
pub fn renyi_sum(v: &FockVector, orders: RenyiOrderPair, nodes: &[f64]) -> Result<f64> {
    let rho = position_density(v, nodes);
    let gamma = momentum_density(v, nodes);
    Ok(renyi_entropy(&rho, nodes, orders.zeta)? + renyi_entropy(&gamma, nodes, orders.eta)?)
}

/// Rényi sum of the Kerr-evolved state at each time in [0, π/χ].
pub fn renyi_sum_timeseries(
    initial: &FockVector,
    chi: f64,
    times: &[f64],
    orders: RenyiOrderPair,
) -> Result<Vec<f64>> {
    let params: Vec<KerrParams> = times
        .iter()
        .map(|&t| {
            let p = KerrParams::new(chi, t)?;
            if t > p.revival_time() * (1.0 + 1e-12) {
                return Err(invalid(format!("time {t} exceeds the revival time")));
            }
            Ok(p)
        })
        .collect::<Result<_>>()?;
    renyi_sum_series_with(initial, &params, orders)
}

/// As [`renyi_sum_timeseries`] with times given by Kerr parameters.
pub fn renyi_sum_series_with(
    initial: &FockVector,
    params: &[KerrParams],
    orders: RenyiOrderPair,
) -> Result<Vec<f64>> {
    let nodes = entropy_grid();
    let nmax = initial.cutoff();
    let table: Vec<Vec<f64>> = nodes.par_iter().map(|&x| psi_table(nmax, x)).collect();
    let cycle = [
        C64::new(1.0, 0.0),
        C64::new(0.0, -1.0),
        C64::new(-1.0, 0.0),
        C64::new(0.0, 1.0),
    ];
    params
        .par_iter()
        .map(|p| {
            let c = evolve_kerr(initial, p).into_amps();
            let cm: Vec<C64> = c
                .iter()
                .enumerate()
                .map(|(n, a)| a * cycle[n % 4])
                .collect();
            let (rho, gamma): (Vec<f64>, Vec<f64>) = table
                .iter()
                .map(|psi| {
                    let (mut a, mut b) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
                    for n in 0..psi.len() {
                        a += c[n] * psi[n];
                        b += cm[n] * psi[n];
                    }
                    (a.norm_sqr(), b.norm_sqr())
                })
                .unzip();
            Ok(renyi_entropy(&rho, &nodes, orders.zeta)?
                + renyi_entropy(&gamma, &nodes, orders.eta)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn shannon_constant() {
        assert_abs_diff_eq!(SHANNON_LIMIT, 1.0 + PI.ln(), epsilon = 1e-15);
    }

    #[test]
    fn standard_bound_value() {
        let b = renyi_bound(RenyiOrderPair::standard());
        let expected = 1.5 * (1.5 * PI).ln() + 0.5 * (2.0 / PI).ln();
        assert_abs_diff_eq!(b, expected, epsilon = 1e-14);
        assert_abs_diff_eq!(b, 2.0995, epsilon = 1e-4);
    }

    #[test]
    fn bad_pairs_rejected() {
        assert!(RenyiOrderPair::new(2.0, 2.0).is_err());
        assert!(RenyiOrderPair::new(1.0, 1.0).is_err());
        assert!(RenyiOrderPair::conjugate_of(0.5).is_err());
        let p = RenyiOrderPair::conjugate_of(0.75).unwrap();
        assert_abs_diff_eq!(p.eta(), 1.5, epsilon = 1e-15);
    }

    #[test]
    fn uniform_density() {
        let xs: Vec<f64> = (0..=100).map(|i| 3.0 * i as f64 / 100.0).collect();
        let f = vec![1.0 / 3.0; xs.len()];
        for q in [0.5, 2.0, 3.0] {
            assert_abs_diff_eq!(
                renyi_entropy(&f, &xs, q).unwrap(),
                3f64.ln(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn unnormalized_density_rejected() {
        let xs: Vec<f64> = (0..=10).map(f64::from).collect();
        let f = vec![1.0; xs.len()];
        assert!(matches!(
            renyi_entropy(&f, &xs, 2.0),
            Err(Error::NonNormalizedDensity { .. })
        ));
    }
}
