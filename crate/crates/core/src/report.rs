//! CSV and JSON emission.
//!
//! Every file starts with the run configuration, seed included. CSV files
//! carry it as a leading `#` comment line and JSON files as a `config`
//! field. Floats are written with 17 significant digits.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lowerbound::LowerBoundCurve;
use crate::optimizer::TracePoint;
use crate::ratio::{beta_grid, ratio_asymptotic, ratio_derivative};
use crate::simulator::{AnchorPolicy, SweepSample};
use crate::strategy::StrategyParams;

/// Subcommand of the command-line tool.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Optimize,
    RatioCurve,
    LowerBound,
    Simulate,
    Sweep,
    TerrainSim,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Optimize => "optimize",
            Command::RatioCurve => "ratio-curve",
            Command::LowerBound => "lower-bound",
            Command::Simulate => "simulate",
            Command::Sweep => "sweep",
            Command::TerrainSim => "terrain-sim",
            Command::Verify => "verify",
        }
    }
}

/// Everything that determines the output of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    /// Numeric arguments by flag name.
    pub params: BTreeMap<String, f64>,
    pub out: Option<String>,
}

impl RunConfig {
    pub fn new(command: Command, seed: u64) -> Self {
        RunConfig { command, seed, params: BTreeMap::new(), out: None }
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    /// `# command=... seed=... key=value ...`
    pub fn header(&self) -> String {
        let mut s = format!("# command={} seed={}", self.command.name(), self.seed);
        for (k, v) in &self.params {
            s.push_str(&format!(" {k}={}", fmt(*v)));
        }
        s
    }
}

/// Environment variable selecting the arithmetic.
pub const PRECISION_VAR: &str = "RAYSEARCH_PRECISION";

/// Floating-point format used for a run. Only double precision is built in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    Double,
}

/// Interprets a [`PRECISION_VAR`] value, with a warning when the request
/// cannot be honored.
pub fn resolve_precision(value: Option<&str>) -> (Precision, Option<String>) {
    match value.map(str::trim) {
        None | Some("") | Some("double") => (Precision::Double, None),
        Some("extended") => {
            (Precision::Double, Some("extended precision is not available in this build; using double".into()))
        }
        Some(other) => (Precision::Double, Some(format!("unknown precision {other:?}; using double"))),
    }
}

/// Full-precision float formatting.
pub fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_table<W: Write>(mut w: W, config: &RunConfig, columns: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    writeln!(w, "{}", config.header())?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(columns)?;
    for row in rows {
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

/// `beta, C_asymptotic, C_prime` on `samples` angles in `[alpha, pi/2]`.
pub fn write_ratio_curve<W: Write>(w: W, config: &RunConfig, params: &StrategyParams, samples: usize) -> Result<()> {
    if samples < 2 {
        return Err(crate::Error::InvalidArgument("a ratio curve needs at least two samples".into()));
    }
    let rows = beta_grid(params.alpha, samples)
        .into_iter()
        .map(|b| Ok(vec![fmt(b), fmt(ratio_asymptotic(params, b)?), fmt(ratio_derivative(params, b)?)]))
        .collect::<Result<Vec<_>>>()?;
    csv_table(w, config, &["beta", "C_asymptotic", "C_prime"], rows)
}

/// Outer-search trace `r, alpha, c`.
pub fn write_trace<W: Write>(w: W, config: &RunConfig, trace: &[TracePoint]) -> Result<()> {
    let rows = trace.iter().map(|t| vec![fmt(t.r), fmt(t.alpha), fmt(t.c)]);
    csv_table(w, config, &["r", "alpha", "c"], rows)
}

/// Lower-bound curve `d_y, R`.
pub fn write_lower_bound<W: Write>(w: W, config: &RunConfig, curve: &LowerBoundCurve) -> Result<()> {
    let rows = curve.samples.iter().map(|&(d, v)| vec![fmt(d), fmt(v)]);
    csv_table(w, config, &["d_y", "R"], rows)
}

/// Every ratio of a sweep.
pub fn write_sweep_samples<W: Write>(w: W, config: &RunConfig, samples: &[SweepSample]) -> Result<()> {
    let rows = samples.iter().map(|s| {
        let policy = match s.policy {
            AnchorPolicy::TangentAtTurn => "tangent".to_string(),
            AnchorPolicy::Offset(f) => format!("offset:{}", fmt(f)),
        };
        vec![s.turn.to_string(), fmt(s.beta), policy, s.mirrored.to_string(), fmt(s.ratio)]
    });
    csv_table(w, config, &["turn", "beta", "anchor", "mirrored", "ratio"], rows)
}

/// `{"config": ..., "result": ...}`, pretty-printed.
pub fn write_json<W: Write, T: Serialize>(mut w: W, config: &RunConfig, result: &T) -> Result<()> {
    #[derive(Serialize)]
    struct Doc<'a, T> {
        config: &'a RunConfig,
        result: &'a T,
    }
    serde_json::to_writer_pretty(&mut w, &Doc { config, result })?;
    writeln!(w)?;
    Ok(())
}
