//! Coherent states, order-l superposed coherent ("cat") states, the symbolic
//! coherent-superposition form and single-mode density matrices.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_factorial;

use crate::error::{invalid, Error, Result};
use crate::fock::{coherent_amps_at, ln_coherent_inner, FockVector, TruncationPolicy, C64};

/// Superposition of `l` coherent states α e^{2πir/l} with parity index `h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CatSpec {
    pub l: usize,
    pub h: usize,
    pub alpha: C64,
}

impl CatSpec {
    pub fn new(l: usize, h: usize, alpha: C64) -> Result<Self> {
        let spec = Self { l, h, alpha };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.l == 0 {
            return Err(invalid("cat order l must be at least 1"));
        }
        if self.h >= self.l {
            return Err(invalid(format!(
                "parity index h={} must be below l={}",
                self.h, self.l
            )));
        }
        if !(self.alpha.re.is_finite() && self.alpha.im.is_finite()) {
            return Err(invalid("non-finite alpha"));
        }
        Ok(())
    }

    /// Same cat with α rotated by `angle`.
    pub fn rotated(&self, angle: f64) -> Self {
        Self {
            alpha: self.alpha * C64::from_polar(1.0, angle),
            ..*self
        }
    }
}

/// Positive normalisation constant N_{l,h}.
///
/// Evaluated as N^{-2} = l² Σ_{n ≡ h (mod l)} Poisson(n; |α|²), which is the
/// same quantity as the roots-of-unity sum but free of cancellation.
pub fn cat_normalization(l: usize, h: usize, abs_alpha_sq: f64) -> Result<f64> {
    if l == 0 || h >= l {
        return Err(invalid(format!("invalid cat indices l={l}, h={h}")));
    }
    if !(abs_alpha_sq >= 0.0 && abs_alpha_sq.is_finite()) {
        return Err(invalid(format!(
            "|alpha|^2 = {abs_alpha_sq} must be finite and >= 0"
        )));
    }
    let residue_mass = if abs_alpha_sq == 0.0 {
        if h == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        let ln_a = abs_alpha_sq.ln();
        let last = (abs_alpha_sq + 40.0 * (abs_alpha_sq + 1.0).sqrt() + 60.0) as usize;
        (h..=last)
            .step_by(l)
            .map(|n| (-abs_alpha_sq + n as f64 * ln_a - ln_factorial(n as u64)).exp())
            .sum()
    };
    if residue_mass <= 0.0 {
        return Err(Error::DegenerateCat { l, h, abs_alpha_sq });
    }
    Ok(1.0 / (l as f64 * residue_mass.sqrt()))
}

/// Fock form of a cat state with the cutoff chosen by `policy`.
pub fn make_cat(spec: CatSpec, policy: &TruncationPolicy) -> Result<FockVector> {
    let cutoff = policy.cutoff_for(spec.alpha.norm_sqr())?;
    make_cat_at(spec, cutoff)
}

/// Fock form of a cat state truncated at `cutoff`: l N e^{-|α|²/2} α^n/√n! on n ≡ h (mod l).
pub fn make_cat_at(spec: CatSpec, cutoff: usize) -> Result<FockVector> {
    spec.validate()?;
    let norm = cat_normalization(spec.l, spec.h, spec.alpha.norm_sqr())?;
    let scale = spec.l as f64 * norm;
    let amps = coherent_amps_at(spec.alpha, cutoff)
        .into_amps()
        .into_iter()
        .enumerate()
        .map(|(n, c)| {
            if n % spec.l == spec.h {
                c * scale
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect();
    FockVector::new(amps)
}

/// One coherent component `coeff · |label⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: C64,
    pub label: C64,
}

/// Exact finite superposition Σ_s c_s |α_s⟩ of coherent states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoherentSuperposition {
    terms: Vec<Term>,
}

impl CoherentSuperposition {
    pub fn new(terms: Vec<Term>) -> Result<Self> {
        if terms.is_empty() {
            return Err(invalid("a superposition needs at least one term"));
        }
        Ok(Self { terms })
    }

    pub fn coherent(alpha: C64) -> Self {
        Self {
            terms: vec![Term {
                coeff: C64::new(1.0, 0.0),
                label: alpha,
            }],
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// ⟨ψ|ψ⟩ from pairwise coherent overlaps.
    pub fn norm_sqr(&self) -> f64 {
        self.inner(self).re
    }

    /// ⟨self|other⟩ from pairwise coherent overlaps.
    pub fn inner(&self, other: &CoherentSuperposition) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for a in &self.terms {
            for b in &other.terms {
                acc += a.coeff.conj() * b.coeff * ln_coherent_inner(a.label, b.label).exp();
            }
        }
        acc
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if !(n > 0.0) {
            return Err(invalid("superposition has zero norm"));
        }
        let s = n.sqrt();
        Ok(Self {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff / s,
                    label: t.label,
                })
                .collect(),
        })
    }

    /// Largest |label|², used to size Fock cutoffs.
    pub fn max_abs_label_sq(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.label.norm_sqr())
            .fold(0.0, f64::max)
    }

    /// Terms whose labels agree within `tol` are summed; zero coefficients dropped.
    pub fn merged(&self, tol: f64) -> Self {
        let mut out: Vec<Term> = Vec::new();
        for t in &self.terms {
            match out.iter_mut().find(|o| (o.label - t.label).norm() <= tol) {
                Some(o) => o.coeff += t.coeff,
                None => out.push(*t),
            }
        }
        let scale = out.iter().map(|t| t.coeff.norm()).fold(0.0, f64::max);
        out.retain(|t| t.coeff.norm() > 1e-13 * scale);
        Self { terms: out }
    }

    /// Fock expansion with the cutoff chosen by `policy` from the largest label.
    pub fn to_fock(&self, policy: &TruncationPolicy) -> Result<FockVector> {
        let cutoff = policy.cutoff_for(self.max_abs_label_sq())?;
        Ok(self.to_fock_at(cutoff))
    }

    /// Fock expansion truncated at `cutoff`.
    pub fn to_fock_at(&self, cutoff: usize) -> FockVector {
        let mut amps = vec![C64::new(0.0, 0.0); cutoff + 1];
        for t in &self.terms {
            for (a, c) in amps
                .iter_mut()
                .zip(coherent_amps_at(t.label, cutoff).amps())
            {
                *a += t.coeff * c;
            }
        }
        FockVector::new(amps).expect("finite amplitudes")
    }
}

/// Cat state written as l coherent terms N e^{-2πirh/l} |α e^{2πir/l}⟩.
pub fn cat_superposition_form(spec: CatSpec) -> Result<CoherentSuperposition> {
    spec.validate()?;
    let norm = cat_normalization(spec.l, spec.h, spec.alpha.norm_sqr())?;
    let l = spec.l as f64;
    let terms = (0..spec.l)
        .map(|r| {
            let rf = r as f64;
            Term {
                coeff: C64::from_polar(norm, -2.0 * PI * rf * spec.h as f64 / l),
                label: spec.alpha * C64::from_polar(1.0, 2.0 * PI * rf / l),
            }
        })
        .collect();
    CoherentSuperposition::new(terms)
}

/// Single-mode density matrix in a truncated Fock basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    elems: DMatrix<C64>,
}

impl DensityMatrix {
    pub fn new(elems: DMatrix<C64>) -> Result<Self> {
        if elems.nrows() != elems.ncols() || elems.nrows() == 0 {
            return Err(invalid("density matrix must be square and non-empty"));
        }
        if elems.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(invalid("non-finite density-matrix element"));
        }
        Ok(Self { elems })
    }

    pub fn dim(&self) -> usize {
        self.elems.nrows()
    }

    pub fn elems(&self) -> &DMatrix<C64> {
        &self.elems
    }

    pub fn into_elems(self) -> DMatrix<C64> {
        self.elems
    }

    pub fn trace(&self) -> f64 {
        self.elems.diagonal().iter().map(|c| c.re).sum()
    }

    /// Tr ρ².
    pub fn purity(&self) -> f64 {
        self.elems.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Largest |ρ - ρ†| element.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.elems[(i, j)] - self.elems[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.elems)
    }

    /// Photon-number distribution ρ_nn.
    pub fn populations(&self) -> Vec<f64> {
        self.elems.diagonal().iter().map(|c| c.re).collect()
    }

    /// Hermitian with unit trace and no eigenvalue below `-tol`.
    pub fn check_physical(&self, tol: f64) -> Result<()> {
        if self.hermiticity_defect() > 1e-12 {
            return Err(invalid("density matrix is not Hermitian"));
        }
        if (self.trace() - 1.0).abs() > 1e-9 {
            return Err(invalid(format!(
                "density matrix trace {} is not 1",
                self.trace()
            )));
        }
        let min = self.eigenvalues()?.first().copied().unwrap_or(0.0);
        if min < -tol {
            return Err(Error::NonPositiveDensity {
                min_eigenvalue: min,
            });
        }
        Ok(())
    }
}

/// Eigenvalues of a Hermitian matrix (symmetrised first), ascending.
pub(crate) fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Result<Vec<f64>> {
    let dim = m.nrows();
    let sym = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let mut vals: Vec<f64> = sym
        .clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    if vals.iter().any(|v| !v.is_finite()) {
        // The implicit QR sweep can break down on large clusters of
        // near-zero eigenvalues; a uniform shift moves them away from zero.
        let shift = sym.norm().max(1.0);
        let shifted = sym + DMatrix::<C64>::identity(dim, dim) * C64::new(shift, 0.0);
        vals = shifted
            .symmetric_eigenvalues()
            .iter()
            .map(|v| v - shift)
            .collect();
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::EigenFailure { dim });
        }
    }
    vals.sort_by(|a, b| a.total_cmp(b));
    Ok(vals)
}

/// ρ = |v⟩⟨v|.
pub fn density_from_pure(v: &FockVector) -> DensityMatrix {
    let a = nalgebra::DVector::from_column_slice(v.amps());
    DensityMatrix {
        elems: &a * a.adjoint(),
    }
}

/// a|v⟩ on the truncated space (the top amplitude drops out).
pub fn apply_lowering(v: &FockVector) -> FockVector {
    let amps = v.amps();
    let n = amps.len();
    let mut out = vec![C64::new(0.0, 0.0); n];
    for k in 0..n - 1 {
        out[k] = amps[k + 1] * ((k + 1) as f64).sqrt();
    }
    FockVector::new(out).expect("finite amplitudes")
}
