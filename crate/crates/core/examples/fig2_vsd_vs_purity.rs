//! Time at which the CHSH violation vanishes, against purity, for each
//! noise channel alone and combined.

use vsdsim::prelude::*;

fn main() -> Result<()> {
    let noise = NoiseParams::josephson_reference();
    println!(
        "{:>6} {:>12} {:>12} {:>12}",
        "r", "adiabatic", "quantum", "both"
    );
    for r in [0.72, 0.8, 0.85, 0.91, 0.95, 0.99, 0.999] {
        let mut row = format!("{r:>6.3}");
        for mode in NoiseMode::ALL {
            let cfg =
                SweepConfig::new(EwlParams::bell(Family::Phi, r)?, noise, mode).with_t_max(1e6);
            let v = vsd_time(&cfg)?;
            row += &match v.time() {
                Some(t) => format!(" {t:>12.1}"),
                None => format!(" {:>12}", v.flag()),
            };
        }
        println!("{row}");
    }
    Ok(())
}
