//! Truncated Fock-space simulation of nonclassical light: optical tomograms
//! of coherent and cat states, Kerr revivals and fractional revivals,
//! Wigner and Husimi functions, Rényi entropies, amplitude-decay and
//! phase-damping decoherence, and beam-splitter entanglement.
//!
//! Conventions used throughout:
//! - quadrature X_θ = (a e^{-iθ} + a† e^{iθ})/√2, so the vacuum tomogram is e^{-X²}/√π;
//! - Kerr Hamiltonian χ N(N-1) with revival time T_rev = π/χ;
//! - phase-plane point β = (x + ip)/√2 with measure d²β = dx dp/2;
//! - entanglement in ebits (log base 2).

// Negated comparisons double as NaN rejection in input validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod beamsplitter;
pub mod cli;
pub mod decoherence;
pub mod entropy;
pub mod error;
pub mod fock;
pub mod kerr;
pub mod output;
pub mod phase_space;
pub mod states;
pub mod tomography;

pub use error::{Error, Result};
pub use fock::{
    coherent_amps, coherent_amps_at, hermite_psi, quad_overlap_coherent, quad_overlap_fock,
    FockVector, TruncationPolicy, C64,
};
pub use states::{
    cat_normalization, cat_superposition_form, density_from_pure, make_cat, make_cat_at, CatSpec,
    CoherentSuperposition, DensityMatrix, Term,
};
