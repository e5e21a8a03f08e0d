//! Figure-reproduction and generic sweep/VSD commands.

use std::path::Path;

use serde::Serialize;

use crate::analysis::{
    b_vs_c_trace, time_sweep, uniform_grid, vsd_time, vsd_time_adiabatic_alt_form,
    vsd_time_adiabatic_closed_form, SweepConfig, VsdOutcome,
};
use crate::cli::config::{OutputFormat, RunParams};
use crate::cli::output::{write_csv, write_json, CsvTable, Field, RunManifest};
use crate::error::{Error, Result};
use crate::noise::{NoiseMode, NoiseParams};
use crate::qstate::{EwlParams, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Panel {
    /// B over (Ωt, |a|²) at r = 0.9.
    A,
    /// B over (Ωt, r) at a = 1/√2.
    B,
}

impl std::str::FromStr for Panel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Panel::A),
            "b" => Ok(Panel::B),
            other => Err(Error::usage(format!("panel: unknown value '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Fig1Options {
    pub panel: Panel,
    pub t_max: f64,
    pub n_t: usize,
    pub n_param: usize,
}

impl Fig1Options {
    pub fn new(panel: Panel) -> Self {
        Fig1Options {
            panel,
            t_max: 1e4,
            n_t: 201,
            n_param: 101,
        }
    }
}

/// Adiabatic-only B surface; columns `omega_t,param,b`.
pub fn fig1_table(opts: &Fig1Options) -> Result<CsvTable> {
    if opts.n_param < 2 {
        return Err(Error::usage("n_param: must be >= 2"));
    }
    let noise = NoiseParams::josephson_reference();
    let mut table = CsvTable::new(&["omega_t", "param", "b"]);
    for param in uniform_grid(1.0, opts.n_param) {
        let ewl = match opts.panel {
            Panel::A => EwlParams::from_a2(Family::Phi, 0.9, param)?,
            Panel::B => EwlParams::bell(Family::Phi, param)?,
        };
        let cfg = SweepConfig::new(ewl, noise, NoiseMode::Adiabatic)
            .with_t_max(opts.t_max)
            .with_n_steps(opts.n_t);
        for rec in time_sweep(&cfg)?.records {
            table.push(vec![rec.omega_t.into(), param.into(), rec.b.into()]);
        }
    }
    Ok(table)
}

pub fn cmd_fig1(opts: &Fig1Options, out: &Path) -> Result<RunManifest> {
    let table = fig1_table(opts)?;
    let manifest = RunManifest::new(
        "fig1",
        serde_json::json!({ "options": opts, "noise": NoiseParams::josephson_reference(), "mode": NoiseMode::Adiabatic }),
    )?;
    write_csv(out, &table, manifest)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Fig2Options {
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    /// Above this purity the adiabatic curve is reported as asymptotic.
    pub r_cap: f64,
    pub t_max: f64,
    pub scan_resolution: usize,
    /// Purity of the annotated point.
    pub marker_r: f64,
}

impl Default for Fig2Options {
    fn default() -> Self {
        Fig2Options {
            r_min: 0.72,
            r_max: 0.999,
            n_r: 200,
            r_cap: 0.9999,
            t_max: 1e6,
            scan_resolution: 10_000,
            marker_r: 0.91,
        }
    }
}

fn fig2_vsd(opts: &Fig2Options, mode: NoiseMode, r: f64) -> Result<VsdOutcome> {
    if mode == NoiseMode::Adiabatic && r > opts.r_cap {
        return Ok(VsdOutcome::Asymptotic);
    }
    let cfg = SweepConfig {
        scan_resolution: opts.scan_resolution,
        ..SweepConfig::new(
            EwlParams::bell(Family::Phi, r)?,
            NoiseParams::josephson_reference(),
            mode,
        )
        .with_t_max(opts.t_max)
    };
    vsd_time(&cfg)
}

/// VSD time versus purity for each noise mode; columns
/// `mode,r,omega_t_vsd,flag,kind` with `kind` either `curve` or `marker`.
pub fn fig2_table(opts: &Fig2Options) -> Result<CsvTable> {
    if opts.n_r < 2 || !(opts.r_min < opts.r_max) || opts.r_max > 1.0 || opts.r_min < 0.0 {
        return Err(Error::usage(
            "r grid: need 0 <= r_min < r_max <= 1 and n_r >= 2",
        ));
    }
    let mut table = CsvTable::new(&["mode", "r", "omega_t_vsd", "flag", "kind"]);
    let span = opts.r_max - opts.r_min;
    for mode in NoiseMode::ALL {
        for r in uniform_grid(span, opts.n_r).map(|d| opts.r_min + d) {
            let v = fig2_vsd(opts, mode, r)?;
            table.push(vec![
                mode.as_str().into(),
                r.into(),
                v.time().into(),
                v.flag().into(),
                "curve".into(),
            ]);
        }
    }
    for mode in NoiseMode::ALL {
        let v = fig2_vsd(opts, mode, opts.marker_r)?;
        table.push(vec![
            mode.as_str().into(),
            opts.marker_r.into(),
            v.time().into(),
            v.flag().into(),
            "marker".into(),
        ]);
    }
    Ok(table)
}

pub fn cmd_fig2(opts: &Fig2Options, out: &Path) -> Result<RunManifest> {
    let table = fig2_table(opts)?;
    let manifest = RunManifest::new(
        "fig2",
        serde_json::json!({ "options": opts, "noise": NoiseParams::josephson_reference(), "family": Family::Phi, "a2": 0.5 }),
    )?;
    write_csv(out, &table, manifest)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Fig3Options {
    pub t_max: f64,
    pub n_steps: usize,
}

impl Default for Fig3Options {
    fn default() -> Self {
        Fig3Options {
            t_max: 1e4,
            n_steps: 1001,
        }
    }
}

/// Parametric (C, B) traces from both Bell states under both channels;
/// columns `family,kind,omega_t,c,b`.
pub fn fig3_table(opts: &Fig3Options) -> Result<CsvTable> {
    let mut table = CsvTable::new(&["family", "kind", "omega_t", "c", "b"]);
    for family in [Family::Phi, Family::Psi] {
        let cfg = SweepConfig::new(
            EwlParams::bell(family, 1.0)?,
            NoiseParams::josephson_reference(),
            NoiseMode::Both,
        )
        .with_t_max(opts.t_max)
        .with_n_steps(opts.n_steps);
        let trace = b_vs_c_trace(&cfg)?;
        for (kind, pts) in [("trace", &trace.points), ("marker", &trace.markers)] {
            for p in pts {
                table.push(vec![
                    family.as_str().into(),
                    kind.into(),
                    p.omega_t.into(),
                    p.c.into(),
                    p.b.into(),
                ]);
            }
        }
    }
    Ok(table)
}

pub fn cmd_fig3(opts: &Fig3Options, out: &Path) -> Result<RunManifest> {
    let table = fig3_table(opts)?;
    let manifest = RunManifest::new(
        "fig3",
        serde_json::json!({ "options": opts, "noise": NoiseParams::josephson_reference(), "mode": NoiseMode::Both }),
    )?;
    write_csv(out, &table, manifest)
}

pub const SWEEP_COLUMNS: [&str; 14] = [
    "omega_t", "b", "b1", "b2", "u1", "u2", "u3", "c", "p11", "p22", "p33", "p44", "c14_abs",
    "c23_abs",
];

pub fn cmd_sweep(params: &RunParams, out: &Path) -> Result<RunManifest> {
    let cfg = params.sweep_config()?;
    let series = time_sweep(&cfg)?;
    let manifest = RunManifest::new("sweep", params)?;
    match params.format {
        OutputFormat::Json => write_json(out, &series.records, manifest),
        OutputFormat::Csv => {
            let mut table = CsvTable::new(&SWEEP_COLUMNS);
            for r in &series.records {
                let mut row: Vec<Field> = vec![
                    r.omega_t.into(),
                    r.b.into(),
                    r.b1.into(),
                    r.b2.into(),
                    r.u1.into(),
                    r.u2.into(),
                    r.u3.into(),
                    r.c.into(),
                ];
                row.extend(r.populations.iter().map(|&p| Field::Num(p)));
                row.push(r.c14_abs.into());
                row.push(r.c23_abs.into());
                table.push(row);
            }
            write_csv(out, &table, manifest)
        }
    }
}

/// Single-record result of `vsd`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VsdRecord {
    pub omega_t_vsd: Option<f64>,
    pub flag: String,
    /// Adiabatic mode only: root of `B_ad = 2` with `(1 - r²)`.
    pub closed_form: Option<f64>,
    /// Adiabatic mode only: the `(1 - r)²` variant, for comparison.
    pub closed_form_alt: Option<f64>,
}

pub fn vsd_record(params: &RunParams) -> Result<VsdRecord> {
    let cfg = params.sweep_config()?;
    let outcome = vsd_time(&cfg)?;
    let (closed_form, closed_form_alt) = if params.mode == NoiseMode::Adiabatic {
        let ratio = cfg.noise.sigma_over_omega();
        (
            vsd_time_adiabatic_closed_form(cfg.ewl.r, cfg.ewl.a, ratio).time(),
            vsd_time_adiabatic_alt_form(cfg.ewl.r, cfg.ewl.a, ratio),
        )
    } else {
        (None, None)
    };
    Ok(VsdRecord {
        omega_t_vsd: outcome.time(),
        flag: outcome.flag().to_string(),
        closed_form,
        closed_form_alt,
    })
}

pub fn cmd_vsd(params: &RunParams, out: &Path) -> Result<(VsdRecord, RunManifest)> {
    let rec = vsd_record(params)?;
    let manifest = RunManifest::new("vsd", params)?;
    let manifest = match params.format {
        OutputFormat::Json => write_json(out, &[&rec], manifest)?,
        OutputFormat::Csv => {
            let mut table =
                CsvTable::new(&["omega_t_vsd", "flag", "closed_form", "closed_form_alt"]);
            table.push(vec![
                rec.omega_t_vsd.into(),
                rec.flag.as_str().into(),
                rec.closed_form.into(),
                rec.closed_form_alt.into(),
            ]);
            write_csv(out, &table, manifest)?
        }
    };
    Ok((rec, manifest))
}
