//! Oscillator wavefunctions, coherent-state amplitudes and quadrature overlaps.
//!
//! Quadratures follow X_θ = (a e^{-iθ} + a† e^{iθ})/√2, so the vacuum has
//! variance 1/2 and ⟨X, θ|n⟩ = ψ_n(X) e^{-inθ}.

use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::distribution::{DiscreteCDF, Poisson};
use statrs::function::factorial::ln_factorial;

use crate::error::{invalid, Error, Result};

pub type C64 = Complex64;

/// π^{-1/4}
pub const PI_QUARTER_INV: f64 = 0.751_125_544_464_942_5;

const RESCALE_HI: f64 = 1e150;

/// Normalised oscillator eigenfunction ψ_n(x) = H_n(x) e^{-x²/2} / √(2^n n! √π).
///
/// Runs the three-term recurrence on ψ_n itself with a running log-scale, so
/// neither large `n` nor large `|x|` overflows or underflows prematurely.
pub fn hermite_psi(n: usize, x: f64) -> f64 {
    // p_k = ψ_k · e^{-log_scale}
    let mut log_scale = -0.25 * PI.ln() - 0.5 * x * x;
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..n {
        let next =
            x * (2.0 / (k as f64 + 1.0)).sqrt() * cur - (k as f64 / (k as f64 + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_HI {
            prev /= RESCALE_HI;
            cur /= RESCALE_HI;
            log_scale += RESCALE_HI.ln();
        }
    }
    if cur == 0.0 {
        return 0.0;
    }
    cur.signum() * (cur.abs().ln() + log_scale).exp()
}

/// ψ_0(x) … ψ_nmax(x) in one pass.
pub fn psi_table(nmax: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; nmax + 1];
    if 0.5 * x * x < 690.0 {
        out[0] = PI_QUARTER_INV * (-0.5 * x * x).exp();
        if nmax >= 1 {
            out[1] = std::f64::consts::SQRT_2 * x * out[0];
        }
        for k in 1..nmax {
            let kf = k as f64;
            out[k + 1] =
                x * (2.0 / (kf + 1.0)).sqrt() * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        }
    } else {
        for (n, v) in out.iter_mut().enumerate() {
            *v = hermite_psi(n, x);
        }
    }
    out
}

/// ⟨X, θ|n⟩ = ψ_n(X) e^{-inθ}.
pub fn quad_overlap_fock(x: f64, theta: f64, n: usize) -> C64 {
    hermite_psi(n, x) * C64::from_polar(1.0, -(n as f64) * theta)
}

/// Logarithm of ⟨X, θ|α⟩ (without the π^{-1/4} prefactor).
pub(crate) fn ln_quad_overlap_coherent(x: f64, theta: f64, alpha: C64) -> C64 {
    let rot = C64::from_polar(1.0, -theta);
    -0.5 * x * x - 0.5 * alpha.norm_sqr() - 0.5 * alpha * alpha * rot * rot
        + std::f64::consts::SQRT_2 * alpha * x * rot
}

/// ⟨X, θ|α⟩ in closed form.
pub fn quad_overlap_coherent(x: f64, theta: f64, alpha: C64) -> C64 {
    PI_QUARTER_INV * ln_quad_overlap_coherent(x, theta, alpha).exp()
}

/// ln⟨b|a⟩ for coherent states.
pub(crate) fn ln_coherent_inner(b: C64, a: C64) -> C64 {
    -0.5 * a.norm_sqr() - 0.5 * b.norm_sqr() + b.conj() * a
}

/// ⟨b|a⟩ for coherent states.
pub fn coherent_inner(b: C64, a: C64) -> C64 {
    ln_coherent_inner(b, a).exp()
}

/// Principal argument of α mapped into [0, 2π).
pub fn phase_of(alpha: C64) -> f64 {
    let d = alpha.arg();
    if d < 0.0 {
        d + 2.0 * PI
    } else {
        d
    }
}

/// Truncated pure single-mode state with amplitudes c_0 … c_cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amps: Vec<C64>,
}

impl FockVector {
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(invalid("a Fock vector needs at least one amplitude"));
        }
        if amps.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(invalid("non-finite Fock amplitude"));
        }
        Ok(Self { amps })
    }

    /// Number state |n⟩ truncated at `cutoff`.
    pub fn number(n: usize, cutoff: usize) -> Result<Self> {
        if n > cutoff {
            return Err(invalid(format!("photon number {n} above cutoff {cutoff}")));
        }
        let mut amps = vec![C64::new(0.0, 0.0); cutoff + 1];
        amps[n] = C64::new(1.0, 0.0);
        Ok(Self { amps })
    }

    pub fn vacuum(cutoff: usize) -> Self {
        Self::number(0, cutoff).expect("0 <= cutoff")
    }

    pub fn cutoff(&self) -> usize {
        self.amps.len() - 1
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 {
            return Err(invalid("cannot normalise the zero vector"));
        }
        Ok(Self {
            amps: self.amps.iter().map(|c| c / n).collect(),
        })
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &FockVector) -> Result<C64> {
        if self.amps.len() != other.amps.len() {
            return Err(Error::CutoffMismatch {
                left: self.cutoff(),
                right: other.cutoff(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// |⟨self|other⟩|².
    pub fn fidelity(&self, other: &FockVector) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// ⟨n⟩.
    pub fn mean_photon_number(&self) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(n, c)| n as f64 * c.norm_sqr())
            .sum()
    }

    /// Zero-padded or truncated copy with a new cutoff.
    pub fn with_cutoff(&self, cutoff: usize) -> Self {
        let mut amps = self.amps.clone();
        amps.resize(cutoff + 1, C64::new(0.0, 0.0));
        Self { amps }
    }
}

/// Tail-probability rule for choosing Fock cutoffs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    epsilon: f64,
    hard_max: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            epsilon: 1e-12,
            hard_max: 4096,
        }
    }
}

impl TruncationPolicy {
    pub fn new(epsilon: f64, hard_max: usize) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 1e-3) {
            return Err(invalid(format!(
                "truncation epsilon {epsilon} outside (0, 1e-3]"
            )));
        }
        Ok(Self { epsilon, hard_max })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn hard_max(&self) -> usize {
        self.hard_max
    }

    /// Smallest N whose Poisson(|α|²) tail beyond N is below ε, floored at
    /// |α|² + 10√(|α|² + 1).
    pub fn cutoff_for(&self, abs_alpha_sq: f64) -> Result<usize> {
        if !(abs_alpha_sq >= 0.0) || abs_alpha_sq > 1e4 {
            return Err(invalid(format!(
                "|alpha|^2 = {abs_alpha_sq} outside [0, 1e4]"
            )));
        }
        let floor = (abs_alpha_sq + 10.0 * (abs_alpha_sq + 1.0).sqrt()).ceil() as usize;
        if floor > self.hard_max {
            return Err(Error::CutoffOverflow {
                required: floor,
                max: self.hard_max,
            });
        }
        if abs_alpha_sq == 0.0 {
            return Ok(floor);
        }
        let poisson = Poisson::new(abs_alpha_sq).map_err(|e| invalid(e.to_string()))?;
        let mut n = floor;
        while poisson.sf(n as u64) >= self.epsilon {
            n += 1;
            if n > self.hard_max {
                return Err(Error::CutoffOverflow {
                    required: n,
                    max: self.hard_max,
                });
            }
        }
        Ok(n)
    }
}

/// Coherent state |α⟩ with cutoff chosen by `policy`.
pub fn coherent_amps(alpha: C64, policy: &TruncationPolicy) -> Result<FockVector> {
    let cutoff = policy.cutoff_for(alpha.norm_sqr())?;
    Ok(coherent_amps_at(alpha, cutoff))
}

/// Coherent state |α⟩ truncated at an explicit cutoff (not renormalised).
pub fn coherent_amps_at(alpha: C64, cutoff: usize) -> FockVector {
    let r = alpha.norm();
    let delta = alpha.arg();
    let amps = (0..=cutoff)
        .map(|n| {
            if r == 0.0 {
                return if n == 0 {
                    C64::new(1.0, 0.0)
                } else {
                    C64::new(0.0, 0.0)
                };
            }
            let nf = n as f64;
            let ln_mod = -0.5 * r * r + nf * r.ln() - 0.5 * ln_factorial(n as u64);
            C64::from_polar(ln_mod.exp(), nf * delta)
        })
        .collect();
    FockVector { amps }
}

/// Uniform grid of `n` points spanning [-half_width, half_width], exactly symmetric.
pub fn symmetric_grid(half_width: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.0];
    }
    let centre = (n - 1) as f64 / 2.0;
    let dx = 2.0 * half_width / (n - 1) as f64;
    (0..n).map(|j| (j as f64 - centre) * dx).collect()
}

/// Trapezoid rule on a uniform grid.
pub fn trapezoid(values: &[f64], step: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => step * (values[1..n - 1].iter().sum::<f64>() + 0.5 * (values[0] + values[n - 1])),
    }
}
