//! Kerr-medium evolution under H = χ N(N-1), fractional-revival
//! decompositions and moments of the evolved field.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_factorial;

use crate::error::{invalid, Result};
use crate::fock::{FockVector, C64};
use crate::states::{cat_superposition_form, CatSpec, CoherentSuperposition, Term};

/// Nonlinearity χ and elapsed time t; the revival time is π/χ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KerrParams {
    chi: f64,
    t: f64,
    /// t / T_rev, kept separately so exact fractions survive.
    frac: f64,
}

impl KerrParams {
    pub fn new(chi: f64, t: f64) -> Result<Self> {
        Self::check(chi, t)?;
        Ok(Self {
            chi,
            t,
            frac: chi * t / PI,
        })
    }

    /// Time given as a fraction of the revival time.
    pub fn at_fraction(chi: f64, t_over_trev: f64) -> Result<Self> {
        let t = t_over_trev * PI / chi;
        Self::check(chi, t)?;
        Ok(Self {
            chi,
            t,
            frac: t_over_trev,
        })
    }

    fn check(chi: f64, t: f64) -> Result<()> {
        if !(chi > 0.0 && chi.is_finite()) {
            return Err(invalid(format!("chi = {chi} must be positive")));
        }
        if !(t >= 0.0 && t.is_finite()) {
            return Err(invalid(format!("time {t} must be finite and >= 0")));
        }
        Ok(())
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn t_over_trev(&self) -> f64 {
        self.frac
    }

    pub fn revival_time(&self) -> f64 {
        PI / self.chi
    }
}

/// e^{-iπ f m} with the product f·m split exactly so large m keeps full phase accuracy.
fn kerr_phase(frac: f64, m: u64) -> C64 {
    let mf = m as f64;
    let hi = frac * mf;
    let lo = frac.mul_add(mf, -hi);
    let r = (hi.rem_euclid(2.0) + lo).rem_euclid(2.0);
    let (s, c) = (PI * r).sin_cos();
    C64::new(c, -s)
}

/// c_n ↦ c_n e^{-iχt n(n-1)}.
pub fn evolve_kerr(v: &FockVector, params: &KerrParams) -> FockVector {
    let amps = v
        .amps()
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let n = n as u64;
            c * kerr_phase(params.frac, n * n.saturating_sub(1))
        })
        .collect();
    FockVector::new(amps).expect("phases keep amplitudes finite")
}

/// Revival instant t = j T_rev / k in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalRevivalSpec {
    j: u64,
    k: u64,
    /// Set when the requested (j, k) shared a common factor.
    reduced: bool,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl FractionalRevivalSpec {
    /// Accepts any j ≥ 1, k ≥ 1 and reduces j/k, flagging the reduction.
    pub fn new(j: u64, k: u64) -> Result<Self> {
        if j == 0 || k == 0 {
            return Err(invalid(format!(
                "revival indices j={j}, k={k} must be >= 1"
            )));
        }
        let g = gcd(j, k);
        Ok(Self {
            j: j / g,
            k: k / g,
            reduced: g != 1,
        })
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn was_reduced(&self) -> bool {
        self.reduced
    }

    pub fn t_over_trev(&self) -> f64 {
        self.j as f64 / self.k as f64
    }

    /// Labels of the k sub-packets are offset by e^{iπ/k} when the Kerr phase
    /// is antiperiodic in n with period k (even k).
    fn label_offset(&self) -> f64 {
        if self.k % 2 == 0 {
            PI / self.k as f64
        } else {
            0.0
        }
    }
}

/// Fourier coefficients of the Kerr phase at t = j T_rev / k.
///
/// They satisfy e^{-iπ j n(n-1)/k} = Σ_s c_s e^{i n (o - 2πs/k)} for every n,
/// with o = π/k for even k and 0 otherwise.
pub fn revival_coeffs(spec: &FractionalRevivalSpec) -> Vec<C64> {
    let k = spec.k;
    let kf = k as f64;
    let offset = spec.label_offset();
    (0..k)
        .map(|s| {
            let sum: C64 = (0..k)
                .map(|n| {
                    let reduced = (spec.j * n * n.saturating_sub(1)) % (2 * k);
                    let kerr = -PI * reduced as f64 / kf;
                    let shift = 2.0 * PI * ((s * n) % k) as f64 / kf - offset * n as f64;
                    C64::from_polar(1.0, kerr + shift)
                })
                .sum();
            sum / kf
        })
        .collect()
}

/// Coefficients f_s (odd k) or g_s (even k) of the k-subpacket revival at T_rev/k.
pub fn fractional_revival_coeffs(k: u64) -> Result<Vec<C64>> {
    Ok(revival_coeffs(&FractionalRevivalSpec::new(1, k)?))
}

/// Kerr evolution to t = j T_rev / k of every coherent component of `s`.
pub fn evolve_superposition(
    s: &CoherentSuperposition,
    spec: &FractionalRevivalSpec,
) -> CoherentSuperposition {
    let coeffs = revival_coeffs(spec);
    let kf = spec.k as f64;
    let offset = spec.label_offset();
    let mut terms = Vec::with_capacity(s.len() * coeffs.len());
    for t in s.terms() {
        for (sidx, f) in coeffs.iter().enumerate() {
            terms.push(Term {
                coeff: t.coeff * f,
                label: t.label * C64::from_polar(1.0, offset - 2.0 * PI * sidx as f64 / kf),
            });
        }
    }
    CoherentSuperposition::new(terms).expect("non-empty")
}

/// Coherent state evolved to T_rev/k as k coherent terms.
pub fn fractional_revival_state(alpha: C64, k: u64) -> Result<CoherentSuperposition> {
    let spec = FractionalRevivalSpec::new(1, k)?;
    Ok(evolve_superposition(
        &CoherentSuperposition::coherent(alpha),
        &spec,
    ))
}

/// Cat state evolved to T_rev/k as l·k coherent terms.
pub fn cat_fractional_revival_state(spec: CatSpec, k: u64) -> Result<CoherentSuperposition> {
    let rev = FractionalRevivalSpec::new(1, k)?;
    Ok(evolve_superposition(&cat_superposition_form(spec)?, &rev))
}

/// Rotation angle φ such that the cat evolved to j T_rev / l² equals, up to a
/// global phase, the same cat with α → α e^{iφ}.
pub fn cat_rotation_angle(l: usize, h: usize, j: u64) -> f64 {
    let lf = l as f64;
    -PI * j as f64 * (2.0 * h as f64 - 1.0 + lf) / (lf * lf)
}

/// |⟨v0|vt⟩|².
pub fn autocorrelation(v0: &FockVector, vt: &FockVector) -> Result<f64> {
    v0.fidelity(vt)
}

/// ⟨a^m⟩ = Σ_n c*_n c_{n+m} √((n+m)!/n!).
pub fn moment_a_power(v: &FockVector, m: usize) -> C64 {
    let c = v.amps();
    if m >= c.len() {
        return C64::new(0.0, 0.0);
    }
    (0..c.len() - m)
        .map(|n| {
            let w = (0.5 * (ln_factorial((n + m) as u64) - ln_factorial(n as u64))).exp();
            c[n].conj() * c[n + m] * w
        })
        .sum()
}

fn apply_position(v: &[C64]) -> Vec<C64> {
    let n = v.len();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (0..n)
        .map(|k| {
            let down = if k > 0 {
                v[k - 1] * (k as f64).sqrt()
            } else {
                C64::new(0.0, 0.0)
            };
            let up = if k + 1 < n {
                v[k + 1] * ((k + 1) as f64).sqrt()
            } else {
                C64::new(0.0, 0.0)
            };
            (down + up) * s
        })
        .collect()
}

/// ⟨x^m⟩ with x = (a + a†)/√2 as a truncated tridiagonal matrix, 1 ≤ m ≤ 12.
pub fn moment_x_power(v: &FockVector, m: usize) -> Result<f64> {
    if !(1..=12).contains(&m) {
        return Err(invalid(format!("moment order {m} outside [1, 12]")));
    }
    let left_pow = m / 2;
    let mut left = v.amps().to_vec();
    for _ in 0..left_pow {
        left = apply_position(&left);
    }
    let mut right = v.amps().to_vec();
    for _ in left_pow..m {
        right = apply_position(&right);
    }
    Ok(left
        .iter()
        .zip(&right)
        .map(|(a, b)| a.conj() * b)
        .sum::<C64>()
        .re)
}
