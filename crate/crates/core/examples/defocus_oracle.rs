//! Quasi-static 1/f defocusing: closed form versus a seeded Monte-Carlo
//! average over the Gaussian detuning ensemble.

use vsdsim::prelude::*;

fn main() -> Result<()> {
    let noise = NoiseParams::josephson_reference();
    let rel = relaxation_rates(&noise);
    println!(
        "T1 = {:.3e} s, T2 = {:.3e} s, p_eq = {:.3e}",
        rel.t1, rel.t2, rel.p_eq
    );
    println!(
        "{:>8} {:>10} {:>10} {:>10}",
        "omega_t", "|D|", "|D_mc|", "z"
    );
    for (k, omega_t) in [0.0, 500.0, 2e3, 1e4, 5e4].into_iter().enumerate() {
        let t = omega_t / noise.omega;
        let exact = adiabatic_defocus(t, &noise)?;
        let mc = mc_defocus_oracle(t, &noise, 200_000, k as u64)?;
        let z = (mc.estimate - exact).norm() / mc.std_error.max(f64::MIN_POSITIVE);
        println!(
            "{omega_t:>8.0} {:>10.6} {:>10.6} {z:>10.2}",
            exact.norm(),
            mc.estimate.norm()
        );
    }
    Ok(())
}
