//! A bit flip on `a1` sends photons to the wrong PBS ports, so the flipped
//! component never produces a valid detection pattern.

use pdc_purify::analysis::{postselect, SelectionPattern};
use pdc_purify::channel::inject_bitflip;
use pdc_purify::fock::{DensityOperator, PureState, SpatialMode};
use pdc_purify::optics::apply_both_pbs;
use pdc_purify::source::independent_pairs_state;

fn four_mode_probability(state: &PureState) -> pdc_purify::Result<f64> {
    let rho = DensityOperator::from_pure(&apply_both_pbs(state))?;
    Ok(postselect(&rho, &SelectionPattern::four_mode())?.probability)
}

fn main() -> pdc_purify::Result<()> {
    let clean = independent_pairs_state();
    let flipped = inject_bitflip(&clean, SpatialMode::A1);
    println!(
        "clean:   p(four-mode) = {:.6}",
        four_mode_probability(&clean)?
    );
    println!(
        "flipped: p(four-mode) = {:.6}",
        four_mode_probability(&flipped)?
    );
    for (ket, amp) in apply_both_pbs(&flipped).iter() {
        println!("    {amp:.3}  |{ket}>");
    }
    Ok(())
}
