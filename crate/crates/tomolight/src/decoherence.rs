//! Exact solutions of the zero-temperature amplitude-decay and
//! phase-damping master equations.
//!
//! Every formula depends on rate and duration only through their product,
//! so parameters carry the scaled time s = γτ (or κτ).

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_factorial;

use crate::beamsplitter::{bs_output_cat, TwoModeState};
use crate::error::{invalid, Result};
use crate::fock::{
    coherent_amps_at, ln_coherent_inner, ln_quad_overlap_coherent, TruncationPolicy, C64,
};
use crate::states::{cat_superposition_form, CatSpec, CoherentSuperposition, DensityMatrix};
use crate::tomography::{QuadratureGrid, TomogramGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecoherenceModel {
    AmplitudeDecay,
    PhaseDamping,
}

/// Channel and scaled time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecoherenceParams {
    model: DecoherenceModel,
    scaled: f64,
}

impl DecoherenceParams {
    pub fn new(model: DecoherenceModel, scaled: f64) -> Result<Self> {
        if !(scaled >= 0.0 && scaled.is_finite()) {
            return Err(invalid(format!(
                "scaled time {scaled} must be finite and >= 0"
            )));
        }
        Ok(Self { model, scaled })
    }

    /// Rate γ (or κ) and duration τ.
    pub fn from_rate(model: DecoherenceModel, rate: f64, tau: f64) -> Result<Self> {
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(invalid(format!("decay rate {rate} must be positive")));
        }
        if !(tau >= 0.0 && tau.is_finite()) {
            return Err(invalid(format!("duration {tau} must be finite and >= 0")));
        }
        Self::new(model, rate * tau)
    }

    pub fn amplitude(scaled: f64) -> Result<Self> {
        Self::new(DecoherenceModel::AmplitudeDecay, scaled)
    }

    pub fn phase(scaled: f64) -> Result<Self> {
        Self::new(DecoherenceModel::PhaseDamping, scaled)
    }

    pub fn model(&self) -> DecoherenceModel {
        self.model
    }

    pub fn scaled(&self) -> f64 {
        self.scaled
    }

    fn expect(&self, model: DecoherenceModel) -> Result<()> {
        if self.model != model {
            return Err(invalid(format!(
                "{:?} parameters passed to a {:?} solver",
                self.model, model
            )));
        }
        Ok(())
    }

    /// 1 - e^{-2s} without cancellation at small s.
    fn loss(&self) -> f64 {
        -(-2.0 * self.scaled).exp_m1()
    }
}

/// Weights c_r c*_{r'} ⟨α_{r'}|α_r⟩^{power·(1 - e^{-2s})}.
fn decay_weights(s: &CoherentSuperposition, p: &DecoherenceParams, power: f64) -> DMatrix<C64> {
    let t = s.terms();
    let loss = power * p.loss();
    DMatrix::from_fn(t.len(), t.len(), |r, q| {
        t[r].coeff * t[q].coeff.conj() * (loss * ln_coherent_inner(t[q].label, t[r].label)).exp()
    })
}

fn shrink(p: &DecoherenceParams) -> f64 {
    (-p.scaled).exp()
}

/// ρ(s) = Σ_{r,r'} w_{rr'} |α_r e^{-s}⟩⟨α_{r'} e^{-s}| with the cutoff taken from `policy`.
pub fn amp_decay_superposition(
    s: &CoherentSuperposition,
    p: &DecoherenceParams,
    policy: &TruncationPolicy,
) -> Result<DensityMatrix> {
    let cutoff = policy.cutoff_for(s.max_abs_label_sq())?;
    amp_decay_superposition_at(s, p, cutoff)
}

/// As [`amp_decay_superposition`] at an explicit cutoff.
pub fn amp_decay_superposition_at(
    s: &CoherentSuperposition,
    p: &DecoherenceParams,
    cutoff: usize,
) -> Result<DensityMatrix> {
    p.expect(DecoherenceModel::AmplitudeDecay)?;
    let e = shrink(p);
    let cols: Vec<DVector<C64>> = s
        .terms()
        .iter()
        .map(|t| DVector::from_column_slice(coherent_amps_at(t.label * e, cutoff).amps()))
        .collect();
    let u = DMatrix::from_columns(&cols);
    let w = decay_weights(s, p, 1.0);
    DensityMatrix::new(&u * w * u.adjoint())
}

/// Amplitude decay of an arbitrary truncated density matrix:
/// ρ_{mn}(s) = Σ_k √(C(m+k,k) C(n+k,k)) e^{-s(m+n)} (1-e^{-2s})^k ρ_{m+k,n+k}(0).
pub fn amp_decay_density(rho0: &DensityMatrix, p: &DecoherenceParams) -> Result<DensityMatrix> {
    p.expect(DecoherenceModel::AmplitudeDecay)?;
    let m0 = rho0.elems();
    let d = rho0.dim();
    let s = p.scaled;
    let ln_loss = p.loss().ln();
    let lf: Vec<f64> = (0..d).map(|n| ln_factorial(n as u64)).collect();
    let ln_binom = |n: usize, k: usize| lf[n] - lf[k] - lf[n - k];
    let out = DMatrix::from_fn(d, d, |m, n| {
        if s == 0.0 {
            return m0[(m, n)];
        }
        (0..d - m.max(n))
            .map(|k| {
                let ln_w = 0.5 * (ln_binom(m + k, k) + ln_binom(n + k, k)) - s * (m + n) as f64
                    + if k == 0 { 0.0 } else { k as f64 * ln_loss };
                m0[(m + k, n + k)] * ln_w.exp()
            })
            .sum()
    });
    DensityMatrix::new(out)
}

/// ρ_{nn'} ↦ e^{-s(n-n')²} ρ_{nn'}; the diagonal is copied unchanged.
pub fn phase_damp_density(rho0: &DensityMatrix, p: &DecoherenceParams) -> Result<DensityMatrix> {
    p.expect(DecoherenceModel::PhaseDamping)?;
    let s = p.scaled;
    let m = rho0.elems();
    let out = DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
        if i == j {
            m[(i, j)]
        } else {
            let d = i as f64 - j as f64;
            m[(i, j)] * (-s * d * d).exp()
        }
    });
    DensityMatrix::new(out)
}

/// Closed-form tomogram of an amplitude-decayed coherent superposition.
///
/// ω = π^{-1/2} Σ_{r,r'} w_{rr'} ζ_r ζ*_{r'} where ζ_r is the exponent of
/// ⟨X, θ|α_r e^{-s}⟩.
pub fn amp_decay_tomogram(
    s: &CoherentSuperposition,
    p: &DecoherenceParams,
    grid: &QuadratureGrid,
) -> Result<TomogramGrid> {
    p.expect(DecoherenceModel::AmplitudeDecay)?;
    let e = shrink(p);
    let w = decay_weights(s, p, 1.0);
    let labels: Vec<C64> = s.terms().iter().map(|t| t.label * e).collect();
    let k = labels.len();
    let rows = grid
        .theta()
        .par_iter()
        .map(|&theta| {
            grid.x()
                .iter()
                .map(|&x| {
                    let z: Vec<C64> = labels
                        .iter()
                        .map(|&a| ln_quad_overlap_coherent(x, theta, a))
                        .collect();
                    let mut acc = 0.0;
                    for r in 0..k {
                        acc += (w[(r, r)] * (z[r] + z[r].conj()).exp()).re;
                        for q in r + 1..k {
                            acc += 2.0 * (w[(r, q)] * (z[r] + z[q].conj()).exp()).re;
                        }
                    }
                    (acc / std::f64::consts::PI.sqrt()).max(0.0)
                })
                .collect()
        })
        .collect();
    Ok(TomogramGrid::from_rows(grid, rows))
}

/// Vacuum projector: the γτ → ∞ limit of any input.
pub fn amp_decay_limit(cutoff: usize) -> DensityMatrix {
    let mut m = DMatrix::zeros(cutoff + 1, cutoff + 1);
    m[(0, 0)] = C64::new(1.0, 0.0);
    DensityMatrix::new(m).expect("square")
}

/// Diagonal part of ρ: the κτ → ∞ limit.
pub fn phase_damp_limit(rho0: &DensityMatrix) -> DensityMatrix {
    let m = rho0.elems();
    DensityMatrix::new(DMatrix::from_diagonal(&m.diagonal())).expect("square")
}

/// Beam-splitter output of the cat `spec` after amplitude decay of both
/// modes at equal rates, each mode truncated at `cutoff`.
///
/// ρ = Σ_{r,r'} c_r c*_{r'} ⟨β_{r'}|β_r⟩^{2(1-e^{-2s})} |u_r u_r⟩⟨u_{r'} u_{r'}|
/// with β_r = α_r/√2 and u_r = β_r e^{-s}.
pub fn two_mode_amp_decay(
    spec: CatSpec,
    p: &DecoherenceParams,
    cutoff: usize,
) -> Result<TwoModeState> {
    p.expect(DecoherenceModel::AmplitudeDecay)?;
    let sup = cat_superposition_form(spec)?;
    let half: Vec<_> = sup
        .terms()
        .iter()
        .map(|t| crate::states::Term {
            coeff: t.coeff,
            label: t.label * std::f64::consts::FRAC_1_SQRT_2,
        })
        .collect();
    let half = CoherentSuperposition::new(half)?;
    let e = shrink(p);
    let cols: Vec<DVector<C64>> = half
        .terms()
        .iter()
        .map(|t| {
            let u = DVector::from_column_slice(coherent_amps_at(t.label * e, cutoff).amps());
            u.kronecker(&u)
        })
        .collect();
    let v = DMatrix::from_columns(&cols);
    let w = decay_weights(&half, p, 2.0);
    TwoModeState::mixed((cutoff + 1, cutoff + 1), &v * w * v.adjoint())
}

/// Two-mode phase damping at equal rates:
/// ρ_{(m1 m2),(n1 n2)} ↦ e^{-s[(m1-n1)² + (m2-n2)²]} ρ_{(m1 m2),(n1 n2)}.
pub fn two_mode_phase_damp_state(
    state: &TwoModeState,
    p: &DecoherenceParams,
) -> Result<TwoModeState> {
    p.expect(DecoherenceModel::PhaseDamping)?;
    let (d1, d2) = state.dims();
    let rho = state.to_density();
    let s = p.scaled;
    let out = DMatrix::from_fn(d1 * d2, d1 * d2, |i, j| {
        if i == j {
            return rho[(i, j)];
        }
        let a = (i / d2) as f64 - (j / d2) as f64;
        let b = (i % d2) as f64 - (j % d2) as f64;
        rho[(i, j)] * (-s * (a * a + b * b)).exp()
    });
    TwoModeState::mixed((d1, d2), out)
}

/// Beam-splitter output of the cat `spec` after phase damping of both modes.
pub fn two_mode_phase_damp(
    spec: CatSpec,
    p: &DecoherenceParams,
    cutoff: usize,
) -> Result<TwoModeState> {
    two_mode_phase_damp_state(&bs_output_cat(spec, cutoff)?, p)
}

/// Two-mode vacuum projector.
pub fn two_mode_amp_decay_limit(cutoff: usize) -> TwoModeState {
    let d = cutoff + 1;
    let mut m = DMatrix::zeros(d * d, d * d);
    m[(0, 0)] = C64::new(1.0, 0.0);
    TwoModeState::mixed((d, d), m).expect("square")
}

/// Elements with m1 = n1 and m2 = n2 only.
pub fn two_mode_phase_damp_limit(state: &TwoModeState) -> TwoModeState {
    let dims = state.dims();
    let rho = state.to_density();
    TwoModeState::mixed(dims, DMatrix::from_diagonal(&rho.diagonal())).expect("square")
}
