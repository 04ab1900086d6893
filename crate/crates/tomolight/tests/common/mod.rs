//! Fourth-order Runge–Kutta integration of the zero-temperature Lindblad
//! equations, used as an independent oracle for the closed-form channels.
//!
//! Amplitude decay: dρ/ds = 2aρa† - a†aρ - ρa†a.
//! Phase damping:   dρ/ds = 2NρN - N²ρ - ρN², N = a†a.
//!
//! Both generators (applied to each mode) preserve the offsets
//! (m1 - n1, m2 - n2) of an element ρ_{(m1 m2),(n1 n2)}, so every offset
//! sector is integrated on its own small array. The RK4 steps are the same
//! as for the full matrix.

#![allow(dead_code)]

use nalgebra::DMatrix;
use tomolight::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    Amplitude,
    Phase,
}

pub const RK4_STEP: f64 = 1e-4;

/// Elements of one offset sector, indexed by (a, b) with
/// m1 = m1_0 + a, n1 = m1_0 + a - p1 and likewise for mode 2.
struct Sector {
    m0: (usize, usize),
    p: (isize, isize),
    len: (usize, usize),
    diag: Vec<f64>,
    up1: Vec<f64>,
    up2: Vec<f64>,
}

impl Sector {
    fn new(dims: (usize, usize), p: (isize, isize), channel: Channel) -> Self {
        let span = |d: usize, p: isize| {
            let lo = p.max(0) as usize;
            let hi = (d as isize).min(d as isize + p) as usize;
            (lo, hi - lo)
        };
        let (m10, l1) = span(dims.0, p.0);
        let (m20, l2) = span(dims.1, p.1);
        let n = |m0: usize, a: usize, p: isize| (m0 + a) as isize - p;
        let mut diag = vec![0.0; l1 * l2];
        for a in 0..l1 {
            for b in 0..l2 {
                let (m1, n1) = ((m10 + a) as f64, n(m10, a, p.0) as f64);
                let (m2, n2) = ((m20 + b) as f64, n(m20, b, p.1) as f64);
                diag[a * l2 + b] = match channel {
                    Channel::Amplitude => -(m1 + n1 + m2 + n2),
                    Channel::Phase => -((m1 - n1).powi(2) + (m2 - n2).powi(2)),
                };
            }
        }
        let feed = |m0: usize, l: usize, p: isize| -> Vec<f64> {
            (0..l)
                .map(|a| match channel {
                    Channel::Amplitude if a + 1 < l => {
                        2.0 * (((m0 + a + 1) as f64) * (n(m0, a, p) + 1) as f64).sqrt()
                    }
                    _ => 0.0,
                })
                .collect()
        };
        Self {
            m0: (m10, m20),
            p,
            len: (l1, l2),
            up1: feed(m10, l1, p.0),
            up2: feed(m20, l2, p.1),
            diag,
        }
    }

    /// Zero-padded storage: stride `l2 + 1` and one extra row, so the
    /// upward neighbours of edge elements read zeros.
    fn padded_len(&self) -> usize {
        (self.len.0 + 1) * (self.len.1 + 1)
    }

    fn derivative(&self, x: &[C64], out: &mut [C64]) {
        let (l1, l2) = self.len;
        let stride = l2 + 1;
        for a in 0..l1 {
            let row = a * stride;
            let u1 = self.up1[a];
            for b in 0..l2 {
                let k = row + b;
                out[k] = self.diag[a * l2 + b] * x[k] + u1 * x[k + stride] + self.up2[b] * x[k + 1];
            }
        }
    }

    /// (row, col) of element (a, b) in the full matrix.
    fn position(&self, dims: (usize, usize), a: usize, b: usize) -> (usize, usize) {
        let m1 = self.m0.0 + a;
        let m2 = self.m0.1 + b;
        let n1 = (m1 as isize - self.p.0) as usize;
        let n2 = (m2 as isize - self.p.1) as usize;
        (m1 * dims.1 + m2, n1 * dims.1 + n2)
    }
}

/// Integrates from s = 0 and returns ρ at each checkpoint (ascending scaled
/// times). Per-mode dimensions; a single mode is (d, 1).
pub fn integrate(
    rho0: &DMatrix<C64>,
    dims: (usize, usize),
    channel: Channel,
    checkpoints: &[f64],
) -> Vec<DMatrix<C64>> {
    let dim = dims.0 * dims.1;
    assert_eq!(rho0.nrows(), dim);
    let steps: Vec<usize> = checkpoints
        .iter()
        .map(|t| (t / RK4_STEP).round() as usize)
        .collect();
    assert!(
        steps.windows(2).all(|w| w[0] <= w[1]),
        "checkpoints must ascend"
    );
    let mut out = vec![DMatrix::<C64>::zeros(dim, dim); checkpoints.len()];
    let h = RK4_STEP;
    let (r1, r2) = (dims.0 as isize - 1, dims.1 as isize - 1);
    for p1 in -r1..=r1 {
        for p2 in -r2..=r2 {
            let sec = Sector::new(dims, (p1, p2), channel);
            let (l1, l2) = sec.len;
            let stride = l2 + 1;
            let zero = C64::new(0.0, 0.0);
            let n = sec.padded_len();
            let mut y = vec![zero; n];
            for a in 0..l1 {
                for b in 0..l2 {
                    y[a * stride + b] = rho0[sec.position(dims, a, b)];
                }
            }
            let (mut k1, mut k2, mut k3, mut k4) =
                (vec![zero; n], vec![zero; n], vec![zero; n], vec![zero; n]);
            let mut tmp = vec![zero; n];
            let mut done = 0;
            for (slot, &target) in steps.iter().enumerate() {
                for _ in done..target {
                    sec.derivative(&y, &mut k1);
                    for k in 0..n {
                        tmp[k] = y[k] + 0.5 * h * k1[k];
                    }
                    sec.derivative(&tmp, &mut k2);
                    for k in 0..n {
                        tmp[k] = y[k] + 0.5 * h * k2[k];
                    }
                    sec.derivative(&tmp, &mut k3);
                    for k in 0..n {
                        tmp[k] = y[k] + h * k3[k];
                    }
                    sec.derivative(&tmp, &mut k4);
                    for k in 0..n {
                        y[k] += h / 6.0 * (k1[k] + 2.0 * (k2[k] + k3[k]) + k4[k]);
                    }
                }
                done = target;
                for a in 0..l1 {
                    for b in 0..l2 {
                        out[slot][sec.position(dims, a, b)] = y[a * stride + b];
                    }
                }
            }
        }
    }
    out
}

pub fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
