//! Initial Bell-function maximum and concurrence of EWL states, and the
//! purity below which they are separable.

use vsdsim::prelude::*;

fn main() -> Result<()> {
    println!("{:>6} {:>6} {:>8} {:>8} {:>8}", "a2", "r", "B", "C", "r*");
    for a2 in [0.5, 0.2, 0.05] {
        for r in [0.3, 0.6, 0.9, 1.0] {
            let p = EwlParams::from_a2(Family::Phi, r, a2)?;
            let x = ewl_state(&p)?;
            println!(
                "{a2:>6.2} {r:>6.2} {:>8.4} {:>8.4} {:>8.4}",
                bell_max_x(&x).b,
                concurrence_x(&x),
                p.entanglement_threshold()
            );
        }
    }
    Ok(())
}
