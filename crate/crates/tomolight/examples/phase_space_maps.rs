//! Wigner function of a cat state and Husimi lobes at fractional revivals.

use tomolight::kerr::{evolve_kerr, KerrParams};
use tomolight::phase_space::{
    husimi_q, n_max_distinguishable, wigner_superposition, PhasePlaneGrid,
};
use tomolight::{cat_superposition_form, coherent_amps_at, CatSpec, C64};

fn main() -> tomolight::Result<()> {
    let grid = PhasePlaneGrid::default();
    let cat = cat_superposition_form(CatSpec::new(2, 0, C64::new(2.0, 0.0))?)?;
    let w = wigner_superposition(&cat, &grid);
    println!(
        "even cat Wigner: integral {:.6}, min {:.4}, max {:.4}",
        w.integral(),
        w.min(),
        w.max()
    );

    let alpha = C64::new(5f64.sqrt(), 0.0);
    let v0 = coherent_amps_at(alpha, 60);
    for k in 1..=6 {
        let v = evolve_kerr(&v0, &KerrParams::at_fraction(1.0, 1.0 / k as f64)?);
        let q = husimi_q(&v, &grid);
        println!("Husimi at T/{k}: {} lobes", q.count_peaks(0.5));
    }
    println!(
        "distinguishable packets for |alpha|^2 = 5: {:.5}",
        n_max_distinguishable(alpha.norm())
    );
    Ok(())
}
