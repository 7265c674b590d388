//! Sends one photon of a Bell pair through `C_s` and reads back the pair fidelity.

use pdc_purify::analysis::{fidelity, reduce_to_pair};
use pdc_purify::channel::depolarize_partial;
use pdc_purify::fock::{DensityOperator, Spatial, SpatialMode};
use pdc_purify::protocol::input_fidelity;
use pdc_purify::source::{k_plus_state, SourceParams};

fn main() -> pdc_purify::Result<()> {
    let pair = k_plus_state(&SourceParams::spatially_entangled(0.0, 0.0, 1)?)?;
    let rho = DensityOperator::from_pure(&pair)?;
    println!("{:>5} {:>10} {:>10}", "s", "measured", "(1+3s)/4");
    for i in 0..=10 {
        let s = i as f64 / 10.0;
        let out = depolarize_partial(&rho, SpatialMode::A1, s)?;
        let f = fidelity(&reduce_to_pair(&out, Spatial::Upper, Spatial::Upper)?);
        println!("{s:>5.1} {f:>10.6} {:>10.6}", input_fidelity(s));
    }
    Ok(())
}
