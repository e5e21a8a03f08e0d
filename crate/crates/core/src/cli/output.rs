//! CSV and JSON writers with run manifests.
//!
//! CSV: header row, LF line endings, floats with 12 significant digits in
//! `{:.11e}` form, empty field for a missing value. A CSV file at `path` is
//! accompanied by `path.manifest.json`; JSON output embeds its manifest as
//! `{"manifest": .., "records": [..]}`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// One CSV cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Field {
    Num(f64),
    Text(String),
    Null,
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Num(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_string())
    }
}

impl From<Option<f64>> for Field {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Field::Null, Field::Num)
    }
}

/// 12 significant digits.
pub fn format_number(v: f64) -> String {
    format!("{v:.11e}")
}

impl Field {
    fn render(&self) -> String {
        match self {
            Field::Num(v) => format_number(*v),
            Field::Text(s) => s.clone(),
            Field::Null => String::new(),
        }
    }

    /// Inverse of rendering: numbers come back as `Num`, empty as `Null`.
    fn parse(s: &str) -> Field {
        if s.is_empty() {
            Field::Null
        } else if let Ok(v) = s.parse::<f64>() {
            Field::Num(v)
        } else {
            Field::Text(s.to_string())
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Field>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        CsvTable {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Field>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Field::render))?;
        }
        w.into_inner()
            .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().from_reader(bytes);
        let header = r.headers()?.iter().map(str::to_string).collect();
        let rows = r
            .records()
            .map(|rec| Ok(rec?.iter().map(Field::parse).collect()))
            .collect::<Result<Vec<_>>>()?;
        Ok(CsvTable { header, rows })
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RngInfo {
    pub algorithm: String,
    pub seed: u64,
}

/// Provenance written next to (or inside) every output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub parameters: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<RngInfo>,
    pub format: String,
    /// `sha256:<hex>` of the CSV bytes, or of the compact JSON records.
    pub output_checksum: String,
}

impl RunManifest {
    pub fn new(command: &str, parameters: impl Serialize) -> Result<Self> {
        Ok(RunManifest {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            parameters: serde_json::to_value(parameters)?,
            rng: None,
            format: String::new(),
            output_checksum: String::new(),
        })
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Writes `table` to `out` and its manifest alongside.
pub fn write_csv(out: &Path, table: &CsvTable, mut manifest: RunManifest) -> Result<RunManifest> {
    let bytes = table.to_bytes()?;
    manifest.format = "csv".to_string();
    manifest.output_checksum = sha256_hex(&bytes);
    fs::write(out, &bytes)?;
    let mut m = serde_json::to_vec_pretty(&manifest)?;
    m.push(b'\n');
    fs::write(manifest_path(out), m)?;
    Ok(manifest)
}

/// Writes `{"manifest": .., "records": ..}` to `out`.
pub fn write_json(
    out: &Path,
    records: &impl Serialize,
    mut manifest: RunManifest,
) -> Result<RunManifest> {
    let records = serde_json::to_value(records)?;
    manifest.format = "json".to_string();
    manifest.output_checksum = sha256_hex(serde_json::to_string(&records)?.as_bytes());
    let doc = serde_json::json!({ "manifest": manifest, "records": records });
    let mut bytes = serde_json::to_vec_pretty(&doc)?;
    bytes.push(b'\n');
    fs::write(out, bytes)?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn number_format_has_twelve_digits() {
        assert_eq!(format_number(2.5456), "2.54560000000e0");
        assert_eq!(format_number(-1.0 / 3.0), "-3.33333333333e-1");
        assert_eq!(format_number(0.0), "0.00000000000e0");
    }

    #[test]
    fn table_layout() {
        let mut t = CsvTable::new(&["mode", "x", "y"]);
        t.push(vec!["both".into(), 1.5.into(), Field::Null]);
        let s = String::from_utf8(t.to_bytes().unwrap()).unwrap();
        assert_eq!(s, "mode,x,y\nboth,1.50000000000e0,\n");
    }

    proptest! {
        #[test]
        fn csv_reemits_identically(vals in proptest::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 1..40)) {
            let mut t = CsvTable::new(&["k", "v", "w"]);
            for (i, v) in vals.iter().enumerate() {
                let w = if i % 3 == 0 { Field::Null } else { Field::Num(v * 0.5) };
                t.push(vec!["row".into(), (*v).into(), w]);
            }
            let bytes = t.to_bytes().unwrap();
            let again = CsvTable::from_bytes(&bytes).unwrap().to_bytes().unwrap();
            prop_assert_eq!(bytes, again);
        }
    }
}
