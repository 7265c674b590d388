//! A phase flip becomes a bit flip after a 45° polarization rotation on both
//! photons of a pair.

use pdc_purify::fock::{PureState, SpatialMode};
use pdc_purify::optics::{phase_flip, rotate_polarization};
use pdc_purify::source::{k_plus_state, SourceParams};

fn show(label: &str, state: &PureState) {
    println!("{label}:");
    for (ket, amp) in state.iter() {
        println!("    {:+.4}  |{ket}>", amp.re);
    }
}

fn rotate_both(state: &PureState) -> PureState {
    rotate_polarization(
        &rotate_polarization(state, SpatialMode::A1),
        SpatialMode::B1,
    )
}

fn main() -> pdc_purify::Result<()> {
    let pair = k_plus_state(&SourceParams::spatially_entangled(0.0, 0.0, 1)?)?;
    let dephased = phase_flip(&pair, SpatialMode::A1);
    show("bell pair", &pair);
    show("phase flipped", &dephased);
    show("bell pair, rotated", &rotate_both(&pair));
    show("phase flipped, rotated", &rotate_both(&dephased));
    Ok(())
}
