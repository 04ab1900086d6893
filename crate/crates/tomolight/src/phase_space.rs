//! Wigner and Husimi functions on the phase plane β = (x + ip)/√2.
//!
//! Both functions are densities with respect to d²β = dx dp / 2.

use std::f64::consts::PI;

use rayon::prelude::*;
use statrs::function::factorial::ln_factorial;

use crate::error::{invalid, Result};
use crate::fock::{ln_coherent_inner, symmetric_grid, trapezoid, FockVector, C64};
use crate::states::CoherentSuperposition;

/// Uniform symmetric grid in x and p.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePlaneGrid {
    x: Vec<f64>,
    p: Vec<f64>,
}

impl Default for PhasePlaneGrid {
    fn default() -> Self {
        Self::new(12.0, 481).expect("valid default grid")
    }
}

impl PhasePlaneGrid {
    /// Square grid with `n` points per axis on [-half_width, half_width].
    pub fn new(half_width: f64, n: usize) -> Result<Self> {
        Self::rectangular(half_width, n, half_width, n)
    }

    pub fn rectangular(x_half: f64, nx: usize, p_half: f64, np: usize) -> Result<Self> {
        if nx < 3 || np < 3 {
            return Err(invalid("phase-plane grid needs at least 3 points per axis"));
        }
        if !(x_half > 0.0 && p_half > 0.0 && x_half.is_finite() && p_half.is_finite()) {
            return Err(invalid("phase-plane extent must be positive"));
        }
        Ok(Self {
            x: symmetric_grid(x_half, nx),
            p: symmetric_grid(p_half, np),
        })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    fn beta(&self, i: usize, j: usize) -> C64 {
        C64::new(self.x[i], self.p[j]) * std::f64::consts::FRAC_1_SQRT_2
    }
}

/// Real function sampled on a [`PhasePlaneGrid`], row-major in x.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePlaneMap {
    grid: PhasePlaneGrid,
    values: Vec<f64>,
}

impl PhasePlaneMap {
    pub fn grid(&self) -> &PhasePlaneGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.p.len() + j]
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// ∫ f d²β by the trapezoid rule.
    pub fn integral(&self) -> f64 {
        let dx = self.grid.x[1] - self.grid.x[0];
        0.5 * trapezoid(&self.marginal_x_raw(), dx)
    }

    fn marginal_x_raw(&self) -> Vec<f64> {
        let dp = self.grid.p[1] - self.grid.p[0];
        self.values
            .chunks(self.grid.p.len())
            .map(|r| trapezoid(r, dp))
            .collect()
    }

    /// ∫ f dp / 2: for the Wigner function this is the position density.
    pub fn marginal_x(&self) -> Vec<f64> {
        self.marginal_x_raw().into_iter().map(|v| 0.5 * v).collect()
    }

    /// Strict 8-neighbour local maxima above `fraction` of the global maximum.
    pub fn count_peaks(&self, fraction: f64) -> usize {
        let (nx, np) = (self.grid.x.len(), self.grid.p.len());
        let threshold = fraction * self.max();
        let mut count = 0;
        for i in 1..nx - 1 {
            for j in 1..np - 1 {
                let v = self.value(i, j);
                if v <= threshold {
                    continue;
                }
                let is_peak = (i - 1..=i + 1)
                    .flat_map(|a| (j - 1..=j + 1).map(move |b| (a, b)))
                    .filter(|&(a, b)| (a, b) != (i, j))
                    .all(|(a, b)| self.value(a, b) < v);
                if is_peak {
                    count += 1;
                }
            }
        }
        count
    }
}

fn map_grid(grid: &PhasePlaneGrid, f: impl Fn(C64) -> f64 + Sync) -> PhasePlaneMap {
    let np = grid.p.len();
    let values = (0..grid.x.len())
        .into_par_iter()
        .flat_map_iter(|i| (0..np).map(move |j| (i, j)).collect::<Vec<_>>())
        .map(|(i, j)| f(grid.beta(i, j)))
        .collect();
    PhasePlaneMap {
        grid: grid.clone(),
        values,
    }
}

/// Closed-form Wigner function of Σ_s c_s |α_s⟩.
///
/// Pair (a, b) contributes (2/π) c_a c_b* ⟨b|a⟩ e^{-2(β-a)(β*-b*)}; the
/// overlap and Gaussian are combined into one exponent.
pub fn wigner_superposition(s: &CoherentSuperposition, grid: &PhasePlaneGrid) -> PhasePlaneMap {
    let terms = s.terms();
    map_grid(grid, |beta| {
        let mut acc = 0.0;
        for (ia, a) in terms.iter().enumerate() {
            for b in &terms[ia..] {
                let w = a.coeff
                    * b.coeff.conj()
                    * (ln_coherent_inner(b.label, a.label)
                        - 2.0 * (beta - a.label) * (beta.conj() - b.label.conj()))
                    .exp();
                acc += if std::ptr::eq(a, b) { w.re } else { 2.0 * w.re };
            }
        }
        2.0 / PI * acc
    })
}

/// Q(β) = |⟨β|ψ⟩|²/π.
pub fn husimi_q(v: &FockVector, grid: &PhasePlaneGrid) -> PhasePlaneMap {
    let amps = v.amps();
    let half_ln_fact: Vec<f64> = (0..amps.len())
        .map(|n| 0.5 * ln_factorial(n as u64))
        .collect();
    map_grid(grid, |beta| {
        let r = beta.norm();
        if r == 0.0 {
            return amps[0].norm_sqr() / PI;
        }
        let (ln_r, phi) = (r.ln(), beta.arg());
        let overlap: C64 = amps
            .iter()
            .enumerate()
            .map(|(n, c)| {
                let nf = n as f64;
                c * C64::from_polar(
                    (-0.5 * r * r + nf * ln_r - half_ln_fact[n]).exp(),
                    -nf * phi,
                )
            })
            .sum();
        overlap.norm_sqr() / PI
    })
}

/// 2π|α| / (2√ln 10): the number of coherent packets of amplitude |α|
/// that fit on a circle without overlapping at 1/10 of their height.
pub fn n_max_distinguishable(abs_alpha: f64) -> f64 {
    PI * abs_alpha / std::f64::consts::LN_10.sqrt()
}
