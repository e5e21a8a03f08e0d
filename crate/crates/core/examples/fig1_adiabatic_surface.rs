//! Bell-function surface under pure 1/f dephasing, written as CSV.
//!
//! `cargo run --example fig1_adiabatic_surface -- a out.csv`

use std::path::PathBuf;

use vsdsim::cli::{cmd_fig1, Fig1Options, Panel};

fn main() -> vsdsim::Result<()> {
    let mut args = std::env::args().skip(1);
    let panel: Panel = args.next().unwrap_or_else(|| "a".into()).parse()?;
    let out = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("fig1.csv"));
    let manifest = cmd_fig1(&Fig1Options::new(panel), &out)?;
    println!("{} ({})", out.display(), manifest.output_checksum);
    Ok(())
}
