//! Rényi entropic uncertainty sum over a Kerr revival period.

use std::f64::consts::PI;

use tomolight::entropy::{renyi_bound, renyi_sum_timeseries, RenyiOrderPair};
use tomolight::{coherent_amps_at, C64};

fn main() -> tomolight::Result<()> {
    let v = coherent_amps_at(C64::new(3.0, 0.0), 60);
    let orders = RenyiOrderPair::standard();
    let times: Vec<f64> = (0..=8).map(|i| PI * i as f64 / 8.0).collect();
    let sums = renyi_sum_timeseries(&v, 1.0, &times, orders)?;
    println!("bound {:.7}", renyi_bound(orders));
    for (t, s) in times.iter().zip(&sums) {
        println!("t/T = {:.3}  sum {s:.7}", t / PI);
    }
    Ok(())
}
