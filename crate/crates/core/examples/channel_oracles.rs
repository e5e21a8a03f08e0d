//! The closed-form X-state route against the dense oracles: the 16×16
//! product superoperator, the Horodecki criterion and Wootters concurrence.

use vsdsim::prelude::*;

fn main() -> Result<()> {
    let noise = NoiseParams::josephson_reference();
    let x0 = ewl_state(&EwlParams::from_a2(Family::Psi, 0.95, 0.3)?)?;
    println!(
        "{:>9} {:>9} {:>10} {:>10} {:>10} {:>10}",
        "omega_t", "mode", "B_x", "B_dense", "C_x", "C_dense"
    );
    for mode in NoiseMode::ALL {
        for omega_t in [0.0, 2e3, 2e4] {
            let m = TwoQubitMap::identical(omega_t / noise.omega, &noise, mode)?;
            let x = apply_x(&m, &x0)?;
            let rho = apply_general(&m, &to_dense(&x0));
            println!(
                "{omega_t:>9.0} {:>9} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
                mode.as_str(),
                bell_max_x(&x).b,
                bell_max_general(&rho),
                concurrence_x(&x),
                concurrence_general(&rho)
            );
        }
    }
    Ok(())
}
