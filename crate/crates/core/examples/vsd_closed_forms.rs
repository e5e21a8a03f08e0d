//! Adiabatic VSD time: bisection against the two closed forms in use.

use vsdsim::prelude::*;

fn main() -> Result<()> {
    let noise = NoiseParams::josephson_reference();
    let a = C64::new(0.5f64.sqrt(), 0.0);
    println!(
        "{:>6} {:>12} {:>12} {:>12}",
        "r", "bisection", "(1-r^2)", "(1-r)^2"
    );
    for r in [0.75, 0.8, 0.9, 0.95] {
        let cfg = SweepConfig::new(
            EwlParams::new(Family::Phi, r, a)?,
            noise,
            NoiseMode::Adiabatic,
        );
        let numeric = vsd_time(&cfg)?.time().unwrap_or(f64::NAN);
        let root = vsd_time_adiabatic_closed_form(r, a, noise.sigma_over_omega());
        let alt = vsd_time_adiabatic_alt_form(r, a, noise.sigma_over_omega());
        println!(
            "{r:>6.2} {numeric:>12.3} {:>12.3} {:>12.3}",
            root.time().unwrap_or(f64::NAN),
            alt.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
