//! Command layer behind the `vsdsim` binary.

pub mod commands;
pub mod config;
pub mod output;

pub use commands::{
    cmd_fig1, cmd_fig2, cmd_fig3, cmd_sweep, cmd_vsd, fig1_table, fig2_table, fig3_table,
    vsd_record, Fig1Options, Fig2Options, Fig3Options, Panel, VsdRecord,
};
pub use config::{OutputFormat, RawSettings, RunParams};
pub use output::{CsvTable, Field, RunManifest};
