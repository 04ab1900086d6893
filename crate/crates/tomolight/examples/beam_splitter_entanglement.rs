//! Entanglement of a Kerr-evolved coherent state after a 50:50 beam splitter.

use tomolight::beamsplitter::{bs_output_cat, entanglement_timeseries, log_negativity};
use tomolight::decoherence::{two_mode_amp_decay, DecoherenceParams};
use tomolight::{CatSpec, TruncationPolicy, C64};

fn main() -> tomolight::Result<()> {
    let alpha = C64::new(2.0, 0.0);
    let times: Vec<f64> = (0..=8)
        .map(|i| std::f64::consts::PI * i as f64 / 8.0)
        .collect();
    let e = entanglement_timeseries(alpha, 1.0, &times, &TruncationPolicy::default())?;
    for (i, v) in e.iter().enumerate() {
        println!("t = {i}T/8  E = {v:.5} ebits");
    }

    let spec = CatSpec::new(2, 1, alpha)?;
    let pure = bs_output_cat(spec, 24)?;
    println!("odd cat output E_N = {:.5}", log_negativity(&pure)?.value);
    for s in [0.05, 0.2] {
        let decayed = two_mode_amp_decay(spec, &DecoherenceParams::amplitude(s)?, 24)?;
        println!(
            "after amplitude decay s={s}: E_N = {:.5}",
            log_negativity(&decayed)?.value
        );
    }
    Ok(())
}
