//! Tomogram of a coherent state: Fock-basis sum against the closed form.

use tomolight::tomography::{tomogram_coherent_closed, tomogram_pure, QuadratureGrid};
use tomolight::{coherent_amps, TruncationPolicy, C64};

fn main() -> tomolight::Result<()> {
    let alpha = C64::from_polar(20f64.sqrt(), 0.35);
    let v = coherent_amps(alpha, &TruncationPolicy::default())?;
    let grid = QuadratureGrid::default();
    let fock = tomogram_pure(&v, &grid);
    let closed = tomogram_coherent_closed(alpha, &grid);
    let norms = fock.row_integrals();
    let worst_norm = norms.iter().map(|n| (n - 1.0).abs()).fold(0.0, f64::max);
    println!("cutoff {}", v.cutoff());
    println!("max |fock - closed| = {:.3e}", fock.max_abs_diff(&closed));
    println!("max row-normalisation error = {worst_norm:.3e}");
    println!("reflection defect = {:.3e}", fock.symmetry_defect());
    Ok(())
}
