//! Prints the emitted source states and their Alice/Bob Schmidt spectra.

use pdc_purify::analysis::schmidt_alice_bob;
use pdc_purify::source::{k_plus_state, SourceParams};

fn main() -> pdc_purify::Result<()> {
    for (r, phi, pairs) in [(1.0, 0.0, 1), (0.0, 0.0, 1), (1.0, 0.0, 2), (0.9, 0.451, 2)] {
        let psi = k_plus_state(&SourceParams::spatially_entangled(r, phi, pairs)?)?;
        let sch = schmidt_alice_bob(&psi)?;
        println!(
            "r={r} phi={phi} pairs={pairs}: {} kets, {} Schmidt terms, {:.6} ebits",
            psi.len(),
            sch.coefficients.len(),
            sch.entropy_ebits
        );
        if pairs == 1 {
            for (ket, amp) in psi.iter() {
                println!("    {amp:.4}  |{ket}>");
            }
        }
    }
    Ok(())
}
