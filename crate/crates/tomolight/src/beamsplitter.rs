//! 50/50 beam splitter with a vacuum second port, reduced states,
//! entanglement measures, Mandel Q and quadrature-conditioned projection.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use statrs::function::factorial::ln_factorial;

use crate::error::{invalid, Error, Result};
use crate::fock::{coherent_amps_at, psi_table, FockVector, TruncationPolicy, C64};
use crate::kerr::{evolve_kerr, KerrParams};
use crate::states::{cat_superposition_form, hermitian_eigenvalues, CatSpec, DensityMatrix};

/// Two-mode state; mode c is the first index, mode d the second.
#[derive(Debug, Clone, PartialEq)]
pub enum TwoModeState {
    /// Amplitudes c_{mn} as a (N1+1)×(N2+1) matrix.
    Pure(DMatrix<C64>),
    /// ρ_{(m1 m2),(n1 n2)} with combined index m1·(N2+1) + m2.
    Mixed {
        dims: (usize, usize),
        elems: DMatrix<C64>,
    },
}

/// Which subsystem to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    C,
    D,
}

impl TwoModeState {
    pub fn mixed(dims: (usize, usize), elems: DMatrix<C64>) -> Result<Self> {
        let d = dims.0 * dims.1;
        if elems.nrows() != d || elems.ncols() != d {
            return Err(invalid("two-mode density has the wrong shape"));
        }
        Ok(Self::Mixed { dims, elems })
    }

    /// Per-mode dimensions (N1+1, N2+1).
    pub fn dims(&self) -> (usize, usize) {
        match self {
            Self::Pure(c) => (c.nrows(), c.ncols()),
            Self::Mixed { dims, .. } => *dims,
        }
    }

    pub fn is_pure(&self) -> bool {
        matches!(self, Self::Pure(_))
    }

    /// Σ|c|² for pure states, Tr ρ for mixed ones.
    pub fn trace(&self) -> f64 {
        match self {
            Self::Pure(c) => c.iter().map(|z| z.norm_sqr()).sum(),
            Self::Mixed { elems, .. } => elems.diagonal().iter().map(|z| z.re).sum(),
        }
    }

    /// Density-matrix form.
    pub fn to_density(&self) -> DMatrix<C64> {
        match self {
            Self::Pure(c) => {
                let (d1, d2) = (c.nrows(), c.ncols());
                let v = DVector::from_fn(d1 * d2, |i, _| c[(i / d2, i % d2)]);
                &v * v.adjoint()
            }
            Self::Mixed { elems, .. } => elems.clone(),
        }
    }

    /// ⟨self|other⟩ between pure states.
    pub fn inner(&self, other: &TwoModeState) -> Result<C64> {
        match (self, other) {
            (Self::Pure(a), Self::Pure(b)) => {
                if a.shape() != b.shape() {
                    return Err(Error::CutoffMismatch {
                        left: a.nrows() - 1,
                        right: b.nrows() - 1,
                    });
                }
                Ok(a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum())
            }
            _ => Err(Error::RequiresPureState),
        }
    }
}

/// c_{p, n-p} = c_n 2^{-n/2} √C(n, p); both output cutoffs equal the input cutoff.
pub fn bs_transform(v: &FockVector) -> TwoModeState {
    let amps = v.amps();
    let d = amps.len();
    let mut out = DMatrix::<C64>::zeros(d, d);
    let ln2 = std::f64::consts::LN_2;
    for (n, c) in amps.iter().enumerate() {
        if *c == C64::new(0.0, 0.0) {
            continue;
        }
        let ln_nf = ln_factorial(n as u64);
        for p in 0..=n {
            let ln_w = 0.5 * (ln_nf - ln_factorial(p as u64) - ln_factorial((n - p) as u64))
                - 0.5 * n as f64 * ln2;
            out[(p, n - p)] = c * ln_w.exp();
        }
    }
    TwoModeState::Pure(out)
}

/// Beam-splitter output of a cat, Σ_r c_r |α_r/√2⟩|α_r/√2⟩, truncated per mode.
pub fn bs_output_cat(spec: CatSpec, cutoff: usize) -> Result<TwoModeState> {
    let sup = cat_superposition_form(spec)?;
    let d = cutoff + 1;
    let mut out = DMatrix::<C64>::zeros(d, d);
    for t in sup.terms() {
        let u = DVector::from_column_slice(
            coherent_amps_at(t.label * std::f64::consts::FRAC_1_SQRT_2, cutoff).amps(),
        );
        out += (&u * u.transpose()) * t.coeff;
    }
    Ok(TwoModeState::Pure(out))
}

/// Partial trace keeping `mode`.
pub fn reduced_density(s: &TwoModeState, mode: Mode) -> DensityMatrix {
    let m = match s {
        TwoModeState::Pure(c) => match mode {
            Mode::C => c * c.adjoint(),
            Mode::D => c.transpose() * c.map(|z| z.conj()),
        },
        TwoModeState::Mixed { dims, elems } => {
            let (d1, d2) = *dims;
            match mode {
                Mode::C => DMatrix::from_fn(d1, d1, |m1, n1| {
                    (0..d2).map(|k| elems[(m1 * d2 + k, n1 * d2 + k)]).sum()
                }),
                Mode::D => DMatrix::from_fn(d2, d2, |m2, n2| {
                    (0..d1).map(|k| elems[(k * d2 + m2, k * d2 + n2)]).sum()
                }),
            }
        }
    };
    DensityMatrix::new(m).expect("finite square matrix")
}

/// Entanglement value with the spectrum it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementResult {
    /// Ebits.
    pub value: f64,
    /// Ascending eigenvalues (reduced density or partial transpose).
    pub spectrum: Vec<f64>,
    /// Eigenvalues discarded by the clipping threshold.
    pub clipped: usize,
}

pub const EIGEN_CLIP: f64 = 1e-14;

/// -Σ λ log₂ λ over eigenvalues above 1e-14.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<EntanglementResult> {
    let spectrum = rho.eigenvalues()?;
    let min = spectrum.first().copied().unwrap_or(0.0);
    if min < -1e-6 {
        return Err(Error::NonPositiveDensity {
            min_eigenvalue: min,
        });
    }
    let mut value = 0.0;
    let mut clipped = 0;
    for &l in &spectrum {
        if l > EIGEN_CLIP {
            value -= l * l.log2();
        } else {
            clipped += 1;
        }
    }
    Ok(EntanglementResult {
        value: value.max(0.0),
        spectrum,
        clipped,
    })
}

/// ρ^{T_c}: transpose on the first mode.
pub fn partial_transpose(dims: (usize, usize), rho: &DMatrix<C64>) -> DMatrix<C64> {
    let (d1, d2) = dims;
    DMatrix::from_fn(d1 * d2, d1 * d2, |row, col| {
        let (m1, m2) = (row / d2, row % d2);
        let (n1, n2) = (col / d2, col % d2);
        rho[(n1 * d2 + m2, m1 * d2 + n2)]
    })
}

/// log₂ ‖ρ^{T_c}‖₁.
///
/// Pure states use their Schmidt values σ (E_N = 2 log₂ Σσ); mixed states
/// diagonalise the partial transpose.
pub fn log_negativity(s: &TwoModeState) -> Result<EntanglementResult> {
    match s {
        TwoModeState::Pure(c) => {
            let sv = c.clone().singular_values();
            let mut spectrum: Vec<f64> = sv.iter().map(|x| x * x).collect();
            spectrum.sort_by(|a, b| a.total_cmp(b));
            let total: f64 = sv.iter().sum();
            Ok(EntanglementResult {
                value: (2.0 * total.log2()).max(0.0),
                spectrum,
                clipped: 0,
            })
        }
        TwoModeState::Mixed { dims, elems } => {
            let pt = partial_transpose(*dims, elems);
            let spectrum = hermitian_eigenvalues(&pt)?;
            let norm: f64 = spectrum.iter().map(|l| l.abs()).sum();
            Ok(EntanglementResult {
                value: norm.log2().max(0.0),
                spectrum,
                clipped: 0,
            })
        }
    }
}

/// (⟨n²⟩ - ⟨n⟩²)/⟨n⟩ - 1, with 0 for the vacuum.
pub fn mandel_q(v: &FockVector) -> f64 {
    let norm = v.norm_sqr();
    let (mut m1, mut m2) = (0.0, 0.0);
    for (n, c) in v.amps().iter().enumerate() {
        let p = c.norm_sqr() / norm;
        m1 += n as f64 * p;
        m2 += (n * n) as f64 * p;
    }
    if m1 == 0.0 {
        return 0.0;
    }
    (m2 - m1 * m1) / m1 - 1.0
}

/// Smallest conditional probability density accepted by [`conditional_project`].
pub const MIN_CONDITIONAL_PROBABILITY: f64 = 1e-12;

/// Mode-c state after measuring X_{θ2} = `x2` on mode d.
pub fn conditional_project(s: &TwoModeState, x2: f64, theta2: f64) -> Result<FockVector> {
    let c = match s {
        TwoModeState::Pure(c) => c,
        TwoModeState::Mixed { .. } => return Err(Error::RequiresPureState),
    };
    let psi = psi_table(c.ncols() - 1, x2);
    let w = DVector::from_fn(c.ncols(), |n, _| {
        psi[n] * C64::from_polar(1.0, -(n as f64) * theta2)
    });
    let amps = c * w;
    let prob: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    if !(prob > MIN_CONDITIONAL_PROBABILITY) {
        return Err(Error::ZeroProbabilitySlice { probability: prob });
    }
    let s = prob.sqrt();
    FockVector::new(amps.iter().map(|z| z / s).collect())
}

/// E(t) of the beam-splitter output for the Kerr-evolved coherent state |α⟩.
pub fn entanglement_timeseries(
    alpha: C64,
    chi: f64,
    times: &[f64],
    policy: &TruncationPolicy,
) -> Result<Vec<f64>> {
    let v = crate::fock::coherent_amps(alpha, policy)?;
    entanglement_timeseries_from(&v, chi, times)
}

/// E(t) for an arbitrary initial single-mode state.
pub fn entanglement_timeseries_from(
    initial: &FockVector,
    chi: f64,
    times: &[f64],
) -> Result<Vec<f64>> {
    times
        .par_iter()
        .map(|&t| entanglement_at(initial, &KerrParams::new(chi, t)?))
        .collect()
}

/// evolve → beam splitter → reduce → von Neumann entropy.
pub fn entanglement_at(initial: &FockVector, params: &KerrParams) -> Result<f64> {
    let out = bs_transform(&evolve_kerr(initial, params));
    Ok(von_neumann_entropy(&reduced_density(&out, Mode::C))?.value)
}
