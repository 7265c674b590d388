//! Single spatially entangled pair: success probability and output fidelity
//! versus channel quality.

use pdc_purify::protocol::run_two_photon;

fn main() -> pdc_purify::Result<()> {
    let (r, phi) = (1.0, 0.0);
    println!("{:>5} {:>8} {:>8} {:>8}", "s", "f_in", "p", "f_out");
    for i in 0..=10 {
        let res = run_two_photon(r, phi, i as f64 / 10.0)?;
        println!(
            "{:>5.1} {:>8.5} {:>8.5} {:>8.5}",
            res.s,
            res.f_in,
            res.p_success,
            res.f_upper.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
