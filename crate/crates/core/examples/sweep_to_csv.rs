//! A fully specified time sweep from `key=value` settings, written as CSV
//! plus manifest.
//!
//! `cargo run --example sweep_to_csv -- out.csv`

use std::path::PathBuf;

use vsdsim::cli::{cmd_sweep, RawSettings};

const SETTINGS: &str = "
family = psi
r = 0.95
a2 = 0.5
mode = both
sigma-ratio = 0.01
t-max = 2e4
n-steps = 201
";

fn main() -> vsdsim::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("sweep.csv"));
    let params = RawSettings::parse(SETTINGS)?.resolve()?;
    let manifest = cmd_sweep(&params, &out)?;
    println!("{} ({})", out.display(), manifest.output_checksum);
    Ok(())
}
