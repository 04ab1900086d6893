//! Amplitude decay and phase damping of a cat state.

use tomolight::decoherence::{amp_decay_superposition, phase_damp_density, DecoherenceParams};
use tomolight::tomography::{count_strands, tomogram_density, QuadratureGrid};
use tomolight::{
    cat_superposition_form, density_from_pure, make_cat, CatSpec, TruncationPolicy, C64,
};

fn main() -> tomolight::Result<()> {
    let policy = TruncationPolicy::default();
    let spec = CatSpec::new(2, 0, C64::new(3.0, 0.0))?;
    let sup = cat_superposition_form(spec)?;
    let grid = QuadratureGrid::new(3, 8.0, 801)?;
    for s in [0.0, 0.05, 0.2, 1.0] {
        let rho = amp_decay_superposition(&sup, &DecoherenceParams::amplitude(s)?, &policy)?;
        let tomo = tomogram_density(&rho, &grid)?;
        println!(
            "amplitude s={s}: purity {:.4}, strands at theta=0: {}",
            rho.purity(),
            count_strands(tomo.row(0))
        );
    }
    let rho0 = density_from_pure(&make_cat(spec, &policy)?);
    for s in [0.0, 0.01, 0.1] {
        let rho = phase_damp_density(&rho0, &DecoherenceParams::phase(s)?)?;
        println!("phase s={s}: purity {:.4}", rho.purity());
    }
    Ok(())
}
