//! Run parameters from a flat `key=value` file plus command-line flags.
//!
//! Keys mirror the flag names without the leading dashes (`sigma-ratio`,
//! `t-max`, ...). Flags override file values. `sigma` and `sigma-ratio` are
//! mutually exclusive within one source; a flag for either replaces both
//! file keys.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::analysis::{SweepConfig, DEFAULT_SCAN_RESOLUTION, DEFAULT_T_MAX};
use crate::error::{Error, Result};
use crate::noise::{NoiseMode, NoiseParams};
use crate::qstate::{EwlParams, Family};

pub const KNOWN_KEYS: [&str; 14] = [
    "family",
    "r",
    "a2",
    "phase",
    "omega",
    "sigma",
    "sigma-ratio",
    "sf",
    "temperature",
    "mode",
    "t-max",
    "n-steps",
    "scan-resolution",
    "format",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::usage(format!("format: unknown value '{other}'"))),
        }
    }
}

/// Unparsed key/value settings from one source.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawSettings(BTreeMap<String, String>);

impl RawSettings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<()> {
        if !KNOWN_KEYS.contains(&key) {
            return Err(Error::usage(format!("unknown setting '{key}'")));
        }
        self.0.insert(key.to_string(), value.into());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    /// Parses `key=value` lines; `#` starts a comment, blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut s = Self::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::usage(format!("config line {}: expected key=value", n + 1))
            })?;
            let k = k.trim().trim_start_matches("--");
            s.set(k, v.trim())?;
        }
        s.check_conflicts()?;
        Ok(s)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    fn check_conflicts(&self) -> Result<()> {
        if self.get("sigma").is_some() && self.get("sigma-ratio").is_some() {
            return Err(Error::usage("sigma and sigma-ratio are mutually exclusive"));
        }
        Ok(())
    }

    /// Applies `overrides` on top of `self`.
    pub fn merged_with(&self, overrides: &RawSettings) -> Result<RawSettings> {
        overrides.check_conflicts()?;
        let mut out = self.clone();
        if overrides.get("sigma").is_some() || overrides.get("sigma-ratio").is_some() {
            out.0.remove("sigma");
            out.0.remove("sigma-ratio");
        }
        for (k, v) in &overrides.0 {
            out.0.insert(k.clone(), v.clone());
        }
        Ok(out)
    }

    fn parse_f64(&self, key: &str, default: f64) -> Result<f64> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::usage(format!("{key}: '{v}' is not a finite number"))),
        }
    }

    fn parse_usize(&self, key: &str, default: usize) -> Result<usize> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse::<usize>()
                .map_err(|_| Error::usage(format!("{key}: '{v}' is not a nonnegative integer"))),
        }
    }

    /// Resolves every setting, applying defaults for the reference
    /// Josephson-qubit noise figures.
    pub fn resolve(&self) -> Result<RunParams> {
        let family: Family = self.get("family").unwrap_or("phi").parse()?;
        let mode: NoiseMode = self.get("mode").unwrap_or("both").parse()?;
        let format: OutputFormat = self.get("format").unwrap_or("csv").parse()?;
        let omega = self.parse_f64("omega", 1e11)?;
        let sigma = match (self.get("sigma"), self.get("sigma-ratio")) {
            (Some(_), Some(_)) => {
                return Err(Error::usage("sigma and sigma-ratio are mutually exclusive"))
            }
            (Some(_), None) => self.parse_f64("sigma", 0.0)?,
            (None, _) => self.parse_f64("sigma-ratio", 0.02)? * omega,
        };
        let p = RunParams {
            family,
            r: self.parse_f64("r", 0.91)?,
            a2: self.parse_f64("a2", 0.5)?,
            phase: self.parse_f64("phase", 0.0)?,
            omega,
            sigma,
            sf: self.parse_f64("sf", 2e6)?,
            temperature: self.parse_f64("temperature", 0.04)?,
            mode,
            t_max: self.parse_f64("t-max", DEFAULT_T_MAX)?,
            n_steps: self.parse_usize("n-steps", 1001)?,
            scan_resolution: self.parse_usize("scan-resolution", DEFAULT_SCAN_RESOLUTION)?,
            format,
        };
        p.sweep_config()?;
        Ok(p)
    }
}

/// Fully resolved parameters of a `sweep` or `vsd` run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RunParams {
    pub family: Family,
    pub r: f64,
    pub a2: f64,
    pub phase: f64,
    pub omega: f64,
    pub sigma: f64,
    pub sf: f64,
    pub temperature: f64,
    pub mode: NoiseMode,
    pub t_max: f64,
    pub n_steps: usize,
    pub scan_resolution: usize,
    pub format: OutputFormat,
}

impl RunParams {
    pub fn sweep_config(&self) -> Result<SweepConfig> {
        let ewl = EwlParams::from_a2(self.family, self.r, self.a2)?.with_phase(self.phase);
        let noise = NoiseParams::new(self.omega, self.sigma, self.sf, self.temperature)?;
        let cfg = SweepConfig {
            ewl,
            noise,
            mode: self.mode,
            t_max: self.t_max,
            n_steps: self.n_steps,
            scan_resolution: self.scan_resolution,
        };
        cfg.check()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags(pairs: &[(&str, &str)]) -> RawSettings {
        let mut s = RawSettings::new();
        for (k, v) in pairs {
            s.set(k, *v).unwrap();
        }
        s
    }

    #[test]
    fn defaults_are_reference_point() {
        let p = RawSettings::new().resolve().unwrap();
        assert_eq!(p.family, Family::Phi);
        assert_eq!(p.mode, NoiseMode::Both);
        assert_eq!(
            (p.r, p.a2, p.omega, p.sf, p.temperature),
            (0.91, 0.5, 1e11, 2e6, 0.04)
        );
        assert!((p.sigma - 2e9).abs() < 1e-3);
    }

    #[test]
    fn file_parsing_and_override() {
        let file = RawSettings::parse("# comment\nr = 0.8\nsigma=1e9\n\nmode=quantum\n").unwrap();
        let merged = file
            .merged_with(&flags(&[("sigma-ratio", "0.01"), ("r", "0.95")]))
            .unwrap();
        let p = merged.resolve().unwrap();
        assert_eq!(p.r, 0.95);
        assert_eq!(p.mode, NoiseMode::Quantum);
        assert!((p.sigma - 1e9).abs() < 1e-3);
    }

    #[test]
    fn conflicting_sigma_flags() {
        let f = flags(&[("sigma", "1e9"), ("sigma-ratio", "0.02")]);
        assert!(matches!(f.resolve(), Err(Error::Usage(_))));
        assert!(matches!(
            RawSettings::new().merged_with(&f),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            RawSettings::parse("sigma=1\nsigma-ratio=0.1"),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn out_of_range_names_field() {
        let err = flags(&[("n-steps", "1")]).resolve().unwrap_err();
        assert!(
            matches!(&err, Error::Usage(m) if m.contains("n_steps")),
            "{err}"
        );
        let err = flags(&[("r", "1.5")]).resolve().unwrap_err();
        assert!(
            matches!(&err, Error::Usage(m) if m.starts_with("r:")),
            "{err}"
        );
        let err = flags(&[("temperature", "abc")]).resolve().unwrap_err();
        assert!(
            matches!(&err, Error::Usage(m) if m.starts_with("temperature")),
            "{err}"
        );
        assert!(RawSettings::parse("bogus=1").is_err());
    }
}
