//! Two independent pairs purified with a PBS and a ±45° measurement of the
//! second pair, compared with the Werner-state recurrence.

use pdc_purify::protocol::{bennett_reference, run_independent_pairs};

fn main() -> pdc_purify::Result<()> {
    println!(
        "{:>6} {:>8} {:>8} {:>10} {:>9}",
        "s", "f_in", "p", "simulated", "recursion"
    );
    for i in 0..=10 {
        let res = run_independent_pairs(i as f64 / 10.0)?;
        let f = res.f_upper.unwrap_or(f64::NAN);
        println!(
            "{:>6.2} {:>8.5} {:>8.5} {:>10.6} {:>9.6}",
            res.s,
            res.f_in,
            res.p_success,
            f,
            bennett_reference(res.f_in)?
        );
    }
    Ok(())
}
