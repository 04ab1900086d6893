//! Optical tomograms ω(X_θ, θ): Fock-sum and closed-form evaluation for
//! single-mode pure and mixed states, two-mode slices and strand counting.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::beamsplitter::{conditional_project, TwoModeState};
use crate::error::{invalid, Error, Result};
use crate::fock::{
    ln_quad_overlap_coherent, psi_table, symmetric_grid, trapezoid, FockVector, C64,
};
use crate::states::{CoherentSuperposition, DensityMatrix};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Sampling grid over local-oscillator phase θ and quadrature value X.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    theta: Vec<f64>,
    x: Vec<f64>,
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        Self::new(201, 12.0, 1201).expect("valid default grid")
    }
}

impl QuadratureGrid {
    /// `n_theta` phases spanning [0, 2π] and `n_x` (odd) points on [-x_max, x_max].
    pub fn new(n_theta: usize, x_max: f64, n_x: usize) -> Result<Self> {
        if n_theta == 0 {
            return Err(invalid("theta grid needs at least one point"));
        }
        let theta = if n_theta == 1 {
            vec![0.0]
        } else {
            let step = 2.0 * PI / (n_theta - 1) as f64;
            (0..n_theta).map(|i| i as f64 * step).collect()
        };
        Self::with_thetas(theta, x_max, n_x)
    }

    /// Explicit sorted phases in [0, 2π].
    pub fn with_thetas(theta: Vec<f64>, x_max: f64, n_x: usize) -> Result<Self> {
        if theta.is_empty() {
            return Err(invalid("theta grid needs at least one point"));
        }
        if theta.windows(2).any(|w| w[1] < w[0])
            || theta.iter().any(|t| !(0.0..=2.0 * PI + 1e-12).contains(t))
        {
            return Err(invalid("theta values must be sorted within [0, 2pi]"));
        }
        if n_x < 3 || n_x % 2 == 0 {
            return Err(invalid(format!("x grid size {n_x} must be odd and >= 3")));
        }
        if !(x_max > 0.0 && x_max.is_finite()) {
            return Err(invalid(format!("x range {x_max} must be positive")));
        }
        Ok(Self {
            theta,
            x: symmetric_grid(x_max, n_x),
        })
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn x_step(&self) -> f64 {
        self.x[1] - self.x[0]
    }

    pub fn counts(&self) -> (usize, usize) {
        (self.theta.len(), self.x.len())
    }
}

/// ω sampled on a [`QuadratureGrid`], row-major in θ.
#[derive(Debug, Clone, PartialEq)]
pub struct TomogramGrid {
    grid: QuadratureGrid,
    omega: Vec<f64>,
}

impl TomogramGrid {
    pub(crate) fn from_rows(grid: &QuadratureGrid, rows: Vec<Vec<f64>>) -> Self {
        Self {
            grid: grid.clone(),
            omega: rows.into_iter().flatten().collect(),
        }
    }

    pub fn grid(&self) -> &QuadratureGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.omega
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let nx = self.grid.x.len();
        &self.omega[i * nx..(i + 1) * nx]
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.row(i)[j]
    }

    /// Trapezoid ∫ω dX for every θ row.
    pub fn row_integrals(&self) -> Vec<f64> {
        let dx = self.grid.x_step();
        (0..self.grid.theta.len())
            .map(|i| trapezoid(self.row(i), dx))
            .collect()
    }

    /// Largest |ω(X, θ+π) - ω(-X, θ)| over θ pairs present on the grid.
    pub fn symmetry_defect(&self) -> f64 {
        let th = &self.grid.theta;
        let nx = self.grid.x.len();
        let mut worst: f64 = 0.0;
        for (i, &t) in th.iter().enumerate() {
            if let Some(ip) = th.iter().position(|&u| (u - (t + PI)).abs() < 1e-9) {
                for j in 0..nx {
                    worst = worst.max((self.value(ip, j) - self.value(i, nx - 1 - j)).abs());
                }
            }
        }
        worst
    }

    /// Largest absolute difference from another tomogram on the same grid.
    pub fn max_abs_diff(&self, other: &TomogramGrid) -> f64 {
        self.omega
            .iter()
            .zip(&other.omega)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Table ψ_n(x_j) laid out per x point.
fn psi_rows(nmax: usize, xs: &[f64]) -> Vec<Vec<f64>> {
    xs.par_iter().map(|&x| psi_table(nmax, x)).collect()
}

fn phases(n: usize, theta: f64) -> Vec<C64> {
    (0..n)
        .map(|k| C64::from_polar(1.0, -(k as f64) * theta))
        .collect()
}

/// One θ row of |Σ_n c_n ψ_n(X) e^{-inθ}|².
pub fn tomogram_row_pure(v: &FockVector, theta: f64, xs: &[f64]) -> Vec<f64> {
    let psi = psi_rows(v.cutoff(), xs);
    row_from_table(v, theta, &psi)
}

fn row_from_table(v: &FockVector, theta: f64, psi: &[Vec<f64>]) -> Vec<f64> {
    let w: Vec<C64> = v
        .amps()
        .iter()
        .zip(phases(v.amps().len(), theta))
        .map(|(c, p)| c * p)
        .collect();
    psi.iter()
        .map(|p| w.iter().zip(p).map(|(a, b)| a * *b).sum::<C64>().norm_sqr())
        .collect()
}

/// Fock-sum tomogram of a pure state.
pub fn tomogram_pure(v: &FockVector, grid: &QuadratureGrid) -> TomogramGrid {
    let psi = psi_rows(v.cutoff(), &grid.x);
    let rows = grid
        .theta
        .par_iter()
        .map(|&t| row_from_table(v, t, &psi))
        .collect();
    TomogramGrid::from_rows(grid, rows)
}

/// (1/√π) exp{-[X - √(2|α|²) cos(δ - θ)]²}.
pub fn tomogram_coherent_closed(alpha: C64, grid: &QuadratureGrid) -> TomogramGrid {
    let r = std::f64::consts::SQRT_2 * alpha.norm();
    let delta = alpha.arg();
    let rows = grid
        .theta
        .iter()
        .map(|&t| {
            let centre = r * (delta - t).cos();
            grid.x
                .iter()
                .map(|&x| (-(x - centre) * (x - centre)).exp() / SQRT_PI)
                .collect()
        })
        .collect();
    TomogramGrid::from_rows(grid, rows)
}

/// One θ row of |Σ_s c_s η(X, θ, α_s)|²/√π.
pub fn tomogram_row_superposition(s: &CoherentSuperposition, theta: f64, xs: &[f64]) -> Vec<f64> {
    xs.iter()
        .map(|&x| {
            s.terms()
                .iter()
                .map(|t| t.coeff * ln_quad_overlap_coherent(x, theta, t.label).exp())
                .sum::<C64>()
                .norm_sqr()
                / SQRT_PI
        })
        .collect()
}

/// Closed-form tomogram of a coherent superposition.
pub fn tomogram_superposition_closed(
    s: &CoherentSuperposition,
    grid: &QuadratureGrid,
) -> TomogramGrid {
    let rows = grid
        .theta
        .par_iter()
        .map(|&t| tomogram_row_superposition(s, t, &grid.x))
        .collect();
    TomogramGrid::from_rows(grid, rows)
}

/// Values below this are reported as [`Error::NegativeTomogram`].
pub const NEGATIVE_TOLERANCE: f64 = 1e-6;

/// Σ_{n,n'} ρ_{nn'} ψ_n ψ_{n'} e^{-i(n-n')θ}, clipped at zero.
pub fn tomogram_density(rho: &DensityMatrix, grid: &QuadratureGrid) -> Result<TomogramGrid> {
    let m = rho.elems();
    let d = rho.dim();
    // S_k(X) = Σ_n ρ_{n+k, n} ψ_{n+k}(X) ψ_n(X), k ≥ 0
    let diag_sums: Vec<Vec<C64>> = grid
        .x
        .par_iter()
        .map(|&x| {
            let psi = psi_table(d - 1, x);
            (0..d)
                .map(|k| {
                    (0..d - k)
                        .map(|n| m[(n + k, n)] * (psi[n + k] * psi[n]))
                        .sum()
                })
                .collect()
        })
        .collect();
    let rows: Vec<Vec<f64>> = grid
        .theta
        .par_iter()
        .map(|&t| {
            let ph = phases(d, t);
            diag_sums
                .iter()
                .map(|s| {
                    let mut acc = s[0].re;
                    for k in 1..d {
                        acc += 2.0 * (ph[k] * s[k]).re;
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let min = rows.iter().flatten().copied().fold(f64::INFINITY, f64::min);
    if min < -NEGATIVE_TOLERANCE {
        return Err(Error::NegativeTomogram { min });
    }
    let rows = rows
        .into_iter()
        .map(|r| r.into_iter().map(|v| v.max(0.0)).collect())
        .collect();
    Ok(TomogramGrid::from_rows(grid, rows))
}

/// Two-mode tomogram at fixed (θ1, θ2) over the X1 × X2 plane.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeSlice {
    pub theta1: f64,
    pub theta2: f64,
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    /// Row-major in X1.
    pub omega: Vec<f64>,
}

impl TwoModeSlice {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.omega[i * self.x2.len() + j]
    }

    /// Double trapezoid ∫∫ω dX1 dX2.
    pub fn integral(&self) -> f64 {
        let dx1 = self.x1[1] - self.x1[0];
        let dx2 = self.x2[1] - self.x2[0];
        let inner: Vec<f64> = self
            .omega
            .chunks(self.x2.len())
            .map(|r| trapezoid(r, dx2))
            .collect();
        trapezoid(&inner, dx1)
    }
}

/// Matrix W[n, j] = ψ_n(x_j) e^{-inθ}.
fn quadrature_matrix(dim: usize, theta: f64, xs: &[f64]) -> DMatrix<C64> {
    let ph = phases(dim, theta);
    let cols: Vec<Vec<f64>> = psi_rows(dim - 1, xs);
    DMatrix::from_fn(dim, xs.len(), |n, j| ph[n] * cols[j][n])
}

/// ω(X1, θ1; X2, θ2) on one (θ1, θ2) slice, evaluated on demand.
pub fn tomogram_two_mode_slice(
    state: &TwoModeState,
    theta1: f64,
    theta2: f64,
    x1: &[f64],
    x2: &[f64],
) -> TwoModeSlice {
    let (d1, d2) = state.dims();
    let w1 = quadrature_matrix(d1, theta1, x1);
    let w2 = quadrature_matrix(d2, theta2, x2);
    let omega: Vec<f64> = match state {
        TwoModeState::Pure(c) => {
            let amp = w1.transpose() * c * &w2;
            (0..x1.len())
                .flat_map(|i| (0..x2.len()).map(move |j| (i, j)))
                .map(|(i, j)| amp[(i, j)].norm_sqr())
                .collect()
        }
        TwoModeState::Mixed { elems, .. } => (0..x1.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                let a = DMatrix::from_fn(d2, d2, |m2, n2| {
                    let mut acc = C64::new(0.0, 0.0);
                    for m1 in 0..d1 {
                        let wm = w1[(m1, i)];
                        for n1 in 0..d1 {
                            acc += wm * w1[(n1, i)].conj() * elems[(m1 * d2 + m2, n1 * d2 + n2)];
                        }
                    }
                    acc
                });
                let aw = &a * w2.map(|z| z.conj());
                (0..x2.len())
                    .map(|j| {
                        (0..d2)
                            .map(|m2| w2[(m2, j)] * aw[(m2, j)])
                            .sum::<C64>()
                            .re
                            .max(0.0)
                    })
                    .collect::<Vec<_>>()
            })
            .collect(),
    };
    TwoModeSlice {
        theta1,
        theta2,
        x1: x1.to_vec(),
        x2: x2.to_vec(),
        omega,
    }
}

/// Largest number of two-mode tomogram entries materialised at once.
pub const TWO_MODE_ENTRY_LIMIT: usize = 10_000_000;

/// Two-mode tomogram over every (θ1, θ2) pair of the two grids.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeTomogramGrid {
    pub grids: (QuadratureGrid, QuadratureGrid),
    /// θ1-major order.
    pub slices: Vec<TwoModeSlice>,
}

/// Materialises all slices when the total size stays within [`TWO_MODE_ENTRY_LIMIT`].
pub fn tomogram_two_mode(
    state: &TwoModeState,
    grids: (&QuadratureGrid, &QuadratureGrid),
) -> Result<TwoModeTomogramGrid> {
    let (g1, g2) = grids;
    let entries = g1.theta.len() * g2.theta.len() * g1.x.len() * g2.x.len();
    if entries > TWO_MODE_ENTRY_LIMIT {
        return Err(Error::GridTooLarge {
            entries,
            limit: TWO_MODE_ENTRY_LIMIT,
        });
    }
    let mut slices = Vec::with_capacity(g1.theta.len() * g2.theta.len());
    for &t1 in &g1.theta {
        for &t2 in &g2.theta {
            slices.push(tomogram_two_mode_slice(state, t1, t2, &g1.x, &g2.x));
        }
    }
    Ok(TwoModeTomogramGrid {
        grids: (g1.clone(), g2.clone()),
        slices,
    })
}

/// Tomogram of mode c after measuring X_{θ2} = `x2` on mode d.
pub fn conditional_tomogram(
    state: &TwoModeState,
    x2: f64,
    theta2: f64,
    grid: &QuadratureGrid,
) -> Result<TomogramGrid> {
    let v = conditional_project(state, x2, theta2)?;
    Ok(tomogram_pure(&v, grid))
}

/// Threshold for a local maximum to count as a strand.
pub const STRAND_THRESHOLD: f64 = 0.1 / SQRT_PI;

/// Number of 3-point local maxima above [`STRAND_THRESHOLD`] along one θ row.
pub fn count_strands(row: &[f64]) -> usize {
    row.windows(3)
        .filter(|w| w[1] > w[0] && w[1] >= w[2] && w[1] > STRAND_THRESHOLD)
        .count()
}
