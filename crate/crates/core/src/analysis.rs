//! Time sweeps, violation-sudden-death (VSD) search and B-versus-C traces.
//!
//! Times are dimensionless throughout this module: `omega_t = Ω·t`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolve::{apply_x_unchecked, TwoQubitMap};
use crate::linalg::C64;
use crate::measures::{bell_max_x, concurrence_x, BellResult};
use crate::noise::{relaxation_rates, NoiseMode, NoiseParams, SingleQubitMap};
use crate::qstate::{ewl_state, EwlParams, XState};

pub const DEFAULT_SCAN_RESOLUTION: usize = 10_000;
/// Horizon in Ωt that covers every VSD time at the reference noise level.
pub const DEFAULT_T_MAX: f64 = 1e5;
/// Times (Ωt) of the annotated points on the B-versus-C traces.
pub const TRACE_MARKERS: [f64; 5] = [1000.0, 2000.0, 3000.0, 4000.0, 5000.0];

const CLASSICAL_BOUND: f64 = 2.0;
const MAX_BISECTIONS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepConfig {
    pub ewl: EwlParams,
    pub noise: NoiseParams,
    pub mode: NoiseMode,
    /// Horizon in units of 1/Ω.
    pub t_max: f64,
    pub n_steps: usize,
    pub scan_resolution: usize,
}

impl SweepConfig {
    pub fn new(ewl: EwlParams, noise: NoiseParams, mode: NoiseMode) -> Self {
        SweepConfig {
            ewl,
            noise,
            mode,
            t_max: DEFAULT_T_MAX,
            n_steps: 1001,
            scan_resolution: DEFAULT_SCAN_RESOLUTION,
        }
    }

    pub fn with_t_max(mut self, t_max: f64) -> Self {
        self.t_max = t_max;
        self
    }

    pub fn with_n_steps(mut self, n_steps: usize) -> Self {
        self.n_steps = n_steps;
        self
    }

    pub fn check(&self) -> Result<()> {
        self.ewl.check()?;
        self.noise.check()?;
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::usage(format!(
                "t_max: {} must be positive",
                self.t_max
            )));
        }
        if self.n_steps < 2 {
            return Err(Error::usage(format!(
                "n_steps: {} must be >= 2",
                self.n_steps
            )));
        }
        if self.scan_resolution < 100 {
            return Err(Error::usage(format!(
                "scan_resolution: {} must be >= 100",
                self.scan_resolution
            )));
        }
        Ok(())
    }

    /// Evolved X state at dimensionless time `omega_t`.
    pub fn state_at(&self, omega_t: f64) -> Result<XState> {
        let x0 = ewl_state(&self.ewl)?;
        let m = TwoQubitMap::identical(omega_t / self.noise.omega, &self.noise, self.mode)?;
        Ok(apply_x_unchecked(&m, &x0))
    }

    pub fn bell_at(&self, omega_t: f64) -> Result<f64> {
        Ok(bell_max_x(&self.state_at(omega_t)?).b)
    }

    /// The `t -> ∞` state: coherences gone (unless nothing dephases them) and
    /// populations either frozen or thermalized.
    pub fn limit_state(&self) -> Result<XState> {
        let x0 = ewl_state(&self.ewl)?;
        let relax = relaxation_rates(&self.noise);
        let relaxing = self.mode != NoiseMode::Adiabatic && relax.t1.is_finite();
        let defocusing = self.mode != NoiseMode::Quantum && self.noise.sigma > 0.0;
        let single = SingleQubitMap {
            time: f64::INFINITY,
            pop_survival: if relaxing { 0.0 } else { 1.0 },
            p_eq: relax.p_eq,
            coherence_factor: if relaxing || defocusing {
                C64::new(0.0, 0.0)
            } else {
                C64::new(1.0, 0.0)
            },
        };
        Ok(apply_x_unchecked(&TwoQubitMap::new(single, single), &x0))
    }
}

/// One row of a time sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    pub omega_t: f64,
    pub b: f64,
    pub b1: f64,
    pub b2: f64,
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
    pub c: f64,
    pub populations: [f64; 4],
    pub c14_abs: f64,
    pub c23_abs: f64,
}

impl SweepRecord {
    pub fn from_state(omega_t: f64, x: &XState) -> Self {
        let BellResult {
            b,
            b1,
            b2,
            u1,
            u2,
            u3,
        } = bell_max_x(x);
        SweepRecord {
            omega_t,
            b,
            b1,
            b2,
            u1,
            u2,
            u3,
            c: concurrence_x(x),
            populations: x.populations(),
            c14_abs: x.c14.norm(),
            c23_abs: x.c23.norm(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SweepSeries {
    pub records: Vec<SweepRecord>,
}

/// `n` evenly spaced points on `[0, t_max]`, endpoints included.
pub fn uniform_grid(t_max: f64, n: usize) -> impl Iterator<Item = f64> {
    let last = (n - 1) as f64;
    (0..n).map(move |k| {
        if k + 1 == n {
            t_max
        } else {
            t_max * k as f64 / last
        }
    })
}

pub fn time_sweep(cfg: &SweepConfig) -> Result<SweepSeries> {
    cfg.check()?;
    let x0 = ewl_state(&cfg.ewl)?;
    let records = uniform_grid(cfg.t_max, cfg.n_steps)
        .map(|wt| {
            let m = TwoQubitMap::identical(wt / cfg.noise.omega, &cfg.noise, cfg.mode)?;
            Ok(SweepRecord::from_state(wt, &apply_x_unchecked(&m, &x0)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepSeries { records })
}

/// `B_ad(Ωt) = 2r sqrt(1 + 4|ab|² / (1 + (Σ/Ω)⁴ (Ωt)²))`.
pub fn bell_ad_closed_form(omega_t: f64, r: f64, a: C64, sigma_over_omega: f64) -> f64 {
    let ab2 = a.norm_sqr() * (1.0 - a.norm_sqr()).max(0.0);
    let x = sigma_over_omega.powi(2) * omega_t;
    2.0 * r * (1.0 + 4.0 * ab2 / (1.0 + x * x)).sqrt()
}

/// Outcome of a search for the first time `B` falls to 2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum VsdOutcome {
    /// Crossing found at this Ωt.
    Found(f64),
    /// `B(0) <= 2`: nothing to lose.
    NoInitialViolation,
    /// `B(t) > 2` for all t, approaching its limit from above.
    Asymptotic,
    /// No crossing before the horizon although the limit lies below 2.
    ExceedsHorizon,
}

impl VsdOutcome {
    pub fn time(&self) -> Option<f64> {
        match self {
            VsdOutcome::Found(t) => Some(*t),
            _ => None,
        }
    }

    pub fn flag(&self) -> &'static str {
        match self {
            VsdOutcome::Found(_) => "found",
            VsdOutcome::NoInitialViolation => "no-initial-violation",
            VsdOutcome::Asymptotic => "asymptotic",
            VsdOutcome::ExceedsHorizon => "exceeds-horizon",
        }
    }
}

fn ab_squared(a: C64) -> f64 {
    a.norm_sqr() * (1.0 - a.norm_sqr()).max(0.0)
}

/// Root of `B_ad = 2` in closed form:
/// `Ωt = (Ω/Σ)² sqrt(4|ab|²r²/(1 - r²) - 1)`.
///
/// Pure states (`r = 1`) only approach the bound; without low-frequency
/// noise (`Σ = 0`) B stays at its initial value; both are `Asymptotic`.
pub fn vsd_time_adiabatic_closed_form(r: f64, a: C64, sigma_over_omega: f64) -> VsdOutcome {
    if r >= 1.0 {
        return VsdOutcome::Asymptotic;
    }
    let radicand = 4.0 * ab_squared(a) * r * r / (1.0 - r * r) - 1.0;
    if radicand <= 0.0 {
        return VsdOutcome::NoInitialViolation;
    }
    if sigma_over_omega == 0.0 {
        return VsdOutcome::Asymptotic;
    }
    VsdOutcome::Found(radicand.sqrt() / sigma_over_omega.powi(2))
}

/// Same expression with `(1 - r)²` in place of `(1 - r²)`.
///
/// This variant circulates as the adiabatic VSD time but does not solve
/// `B_ad = 2`; it is reported next to the true root for comparison only.
pub fn vsd_time_adiabatic_alt_form(r: f64, a: C64, sigma_over_omega: f64) -> Option<f64> {
    if r >= 1.0 || sigma_over_omega == 0.0 {
        return None;
    }
    let radicand = 4.0 * ab_squared(a) * r * r / ((1.0 - r) * (1.0 - r)) - 1.0;
    (radicand > 0.0).then(|| radicand.sqrt() / sigma_over_omega.powi(2))
}

/// First time `B(Ωt)` reaches 2.
///
/// Scans `scan_resolution` points on `[0, t_max]` for the first sign change
/// of `B - 2`, then bisects that cell down to floating-point resolution.
pub fn vsd_time(cfg: &SweepConfig) -> Result<VsdOutcome> {
    cfg.check()?;
    let x0 = ewl_state(&cfg.ewl)?;
    let excess = |wt: f64| -> Result<f64> {
        let m = TwoQubitMap::identical(wt / cfg.noise.omega, &cfg.noise, cfg.mode)?;
        Ok(bell_max_x(&apply_x_unchecked(&m, &x0)).b - CLASSICAL_BOUND)
    };
    if excess(0.0)? <= 0.0 {
        return Ok(VsdOutcome::NoInitialViolation);
    }

    let mut prev = 0.0;
    for wt in uniform_grid(cfg.t_max, cfg.scan_resolution).skip(1) {
        if excess(wt)? <= 0.0 {
            let (mut lo, mut hi) = (prev, wt);
            for _ in 0..MAX_BISECTIONS {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if excess(mid)? > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok(VsdOutcome::Found(0.5 * (lo + hi)));
        }
        prev = wt;
    }

    let limit = bell_max_x(&cfg.limit_state()?).b;
    Ok(if limit >= CLASSICAL_BOUND - 1e-12 {
        VsdOutcome::Asymptotic
    } else {
        VsdOutcome::ExceedsHorizon
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TracePoint {
    pub c: f64,
    pub b: f64,
    pub omega_t: f64,
}

/// Parametric (C, B) curve plus the annotated marker points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BvcTrace {
    pub points: Vec<TracePoint>,
    pub markers: Vec<TracePoint>,
}

pub fn b_vs_c_trace(cfg: &SweepConfig) -> Result<BvcTrace> {
    let series = time_sweep(cfg)?;
    let points = series
        .records
        .iter()
        .map(|r| TracePoint {
            c: r.c,
            b: r.b,
            omega_t: r.omega_t,
        })
        .collect();
    let markers = TRACE_MARKERS
        .iter()
        .map(|&wt| {
            let x = cfg.state_at(wt)?;
            Ok(TracePoint {
                c: concurrence_x(&x),
                b: bell_max_x(&x).b,
                omega_t: wt,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BvcTrace { points, markers })
}

/// Concurrence at the moment the CHSH violation ends.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CThreshold {
    pub c: f64,
    /// Crossing time; `None` when the value is the `t -> ∞` limit.
    pub omega_t: Option<f64>,
    pub asymptotic: bool,
}

pub fn c_threshold(cfg: &SweepConfig) -> Result<CThreshold> {
    match vsd_time(cfg)? {
        VsdOutcome::Found(wt) => Ok(CThreshold {
            c: concurrence_x(&cfg.state_at(wt)?),
            omega_t: Some(wt),
            asymptotic: false,
        }),
        VsdOutcome::Asymptotic => Ok(CThreshold {
            c: concurrence_x(&cfg.limit_state()?),
            omega_t: None,
            asymptotic: true,
        }),
        other => Err(Error::NoViolationRegion(format!(
            "B never crosses 2 ({})",
            other.flag()
        ))),
    }
}
