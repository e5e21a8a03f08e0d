//! B against C along the decay of both Bell states, with the concurrence
//! left when the violation ends.

use vsdsim::prelude::*;

fn main() -> Result<()> {
    for family in [Family::Phi, Family::Psi] {
        let cfg = SweepConfig::new(
            EwlParams::bell(family, 1.0)?,
            NoiseParams::josephson_reference(),
            NoiseMode::Both,
        )
        .with_t_max(1e4);
        let trace = b_vs_c_trace(&cfg)?;
        println!("{}:", family.as_str());
        for p in &trace.markers {
            println!(
                "  omega_t = {:>6.0}  C = {:.4}  B = {:.4}",
                p.omega_t, p.c, p.b
            );
        }
        let th = c_threshold(&cfg)?;
        println!(
            "  B = 2 at omega_t = {:.1} with C = {:.4}",
            th.omega_t.unwrap_or(f64::NAN),
            th.c
        );
    }
    Ok(())
}
