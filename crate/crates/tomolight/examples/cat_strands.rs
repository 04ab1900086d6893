//! Strand counts of cat-state tomograms along the θ = arg α row.

use tomolight::tomography::{count_strands, tomogram_row_pure, QuadratureGrid};
use tomolight::{make_cat, CatSpec, TruncationPolicy, C64};

fn main() -> tomolight::Result<()> {
    let delta = 0.35;
    let alpha = C64::from_polar(20f64.sqrt(), delta);
    let grid = QuadratureGrid::default();
    for l in 1..=4 {
        for h in 0..l {
            let v = make_cat(CatSpec::new(l, h, alpha)?, &TruncationPolicy::default())?;
            let row = tomogram_row_pure(&v, delta, grid.x());
            println!(
                "l={l} h={h} strands on theta=delta: {}",
                count_strands(&row)
            );
        }
    }
    Ok(())
}
