//! Conditioning one beam-splitter output on a quadrature measurement.

use tomolight::beamsplitter::{bs_output_cat, conditional_project, mandel_q};
use tomolight::{CatSpec, C64};

fn main() -> tomolight::Result<()> {
    let alpha = C64::from_polar(1.5f64.sqrt(), 0.2);
    let out = bs_output_cat(CatSpec::new(2, 0, alpha)?, 30)?;
    let theta2 = 0.2 - std::f64::consts::FRAC_PI_2;
    for x2 in [0.0, 0.4, 0.8, 1.2] {
        let v = conditional_project(&out, x2, theta2)?;
        println!(
            "x2 = {x2}: <n> = {:.4}, Mandel Q = {:.4}",
            v.mean_photon_number(),
            mandel_q(&v)
        );
    }
    Ok(())
}
