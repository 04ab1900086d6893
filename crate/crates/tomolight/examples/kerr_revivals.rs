//! Kerr evolution of a coherent state: fractional revivals as finite
//! superpositions, checked against direct Fock-basis evolution.

use tomolight::kerr::{
    autocorrelation, evolve_kerr, fractional_revival_state, FractionalRevivalSpec, KerrParams,
};
use tomolight::{coherent_amps_at, C64};

fn main() -> tomolight::Result<()> {
    let alpha = C64::from_polar(5f64.sqrt(), 0.0);
    let cutoff = 60;
    let v0 = coherent_amps_at(alpha, cutoff);
    for k in 1..=6u64 {
        let t = FractionalRevivalSpec::new(1, k)?.t_over_trev();
        let evolved = evolve_kerr(&v0, &KerrParams::at_fraction(1.0, t)?);
        let sup = fractional_revival_state(alpha, k)?;
        let fid = evolved.fidelity(&sup.to_fock_at(cutoff))?;
        println!(
            "t = T/{k}: {} components, fidelity {fid:.12}, autocorrelation {:.6}",
            sup.len(),
            autocorrelation(&v0, &evolved)?
        );
    }
    Ok(())
}
