//! Output writers.
//!
//! CSV files open with `#`-prefixed header lines carrying the artifact
//! version, a timestamp, and the effective run configuration as compact JSON;
//! reruns with the same configuration are byte-identical apart from the
//! timestamp line. JSON output wraps the same rows field-for-field in an
//! envelope holding the same metadata.

use std::io::Write;

use serde::Serialize;

use scs_core::{GainMetrics, OptimizationResult};

use crate::config::RunConfig;

/// All numeric table output uses 12 significant digits so downstream residual
/// checks stay meaningful.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.11e}")
}

pub trait CsvRow {
    fn headers() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

impl CsvRow for OptimizationResult {
    fn headers() -> &'static [&'static str] {
        &[
            "beta",
            "k1",
            "k2",
            "b_opt",
            "s_opt_db",
            "fid_max",
            "probability",
            "evaluations",
            "converged",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            fmt_float(self.beta),
            self.k1.to_string(),
            self.k2.to_string(),
            fmt_float(self.b_opt),
            fmt_float(self.s_opt_db),
            fmt_float(self.fid_max),
            fmt_float(self.probability),
            self.evaluations.to_string(),
            self.converged.to_string(),
        ]
    }
}

impl CsvRow for GainMetrics {
    fn headers() -> &'static [&'static str] {
        &[
            "beta",
            "k1",
            "k2",
            "fid11",
            "fid00",
            "g_db",
            "p11",
            "p00",
            "j_db",
            "baseline_s_db",
            "feasible",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            fmt_float(self.beta),
            self.k1.to_string(),
            self.k2.to_string(),
            fmt_float(self.fid11),
            fmt_float(self.fid00),
            fmt_float(self.g_db),
            fmt_float(self.p11),
            fmt_float(self.p00),
            fmt_float(self.j_db),
            fmt_float(self.baseline_s_db),
            self.feasible.to_string(),
        ]
    }
}

/// One outcome row of the `distribution` command.
#[derive(Debug, Clone, Serialize)]
pub struct DistributionRow {
    pub k1: usize,
    pub k2: usize,
    pub probability: f64,
    pub parity: String,
    pub feasible: bool,
}

impl CsvRow for DistributionRow {
    fn headers() -> &'static [&'static str] {
        &["k1", "k2", "probability", "parity", "feasible"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.k1.to_string(),
            self.k2.to_string(),
            fmt_float(self.probability),
            self.parity.clone(),
            self.feasible.to_string(),
        ]
    }
}

fn unix_now() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

pub fn write_csv<R: CsvRow>(
    out: &mut dyn Write,
    command: &str,
    config: &RunConfig,
    extra_header: &[(String, String)],
    rows: &[R],
) -> std::io::Result<()> {
    writeln!(out, "# version = {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(out, "# command = {command}")?;
    writeln!(out, "# generated_unix = {}", unix_now())?;
    let config_json = serde_json::to_string(config).expect("config serializes");
    writeln!(out, "# config = {config_json}")?;
    for (key, value) in extra_header {
        writeln!(out, "# {key} = {value}")?;
    }
    writeln!(out, "{}", R::headers().join(","))?;
    for row in rows {
        writeln!(out, "{}", row.cells().join(","))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct Envelope<'a, R: Serialize> {
    version: &'static str,
    command: &'a str,
    generated_unix: u64,
    config: &'a RunConfig,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
    rows: &'a [R],
}

pub fn write_json<R: Serialize>(
    out: &mut dyn Write,
    command: &str,
    config: &RunConfig,
    notes: &[(String, String)],
    rows: &[R],
) -> std::io::Result<()> {
    let envelope = Envelope {
        version: env!("CARGO_PKG_VERSION"),
        command,
        generated_unix: unix_now(),
        config,
        notes: notes.iter().map(|(k, v)| format!("{k} = {v}")).collect(),
        rows,
    };
    let text = serde_json::to_string_pretty(&envelope).expect("rows serialize");
    writeln!(out, "{text}")
}
