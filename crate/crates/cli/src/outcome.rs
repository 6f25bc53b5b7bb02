//! Result of one scenario run and its on-disk form.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use cptq::{CMatrix, Ket};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::Kind;
use crate::error::{CliError, CliResult};

pub const ATOM_COLUMNS: [&str; 10] = [
    "t", "p_gminus", "p_g0", "p_gplus", "p_eminus", "p_e0", "p_eplus", "p_sink", "fid_target", "theta_inst",
];
pub const PAIR_COLUMNS: [&str; 8] = ["t", "p00", "p01", "p10", "p11", "re_c01_10", "im_c01_10", "phase_accum"];

/// Numeric table written as CSV with a header row.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub file_name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(file_name: &str, header: &[&str]) -> Self {
        Self {
            file_name: file_name.to_string(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|x| x.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Final numerical state, kept for step-halving comparisons.
#[derive(Clone, Debug, PartialEq)]
pub enum FinalState {
    Density(CMatrix),
    Ket(Ket),
    Unitary(CMatrix),
    Values(Vec<f64>),
}

impl FinalState {
    /// Largest entrywise difference, `None` when the shapes disagree.
    pub fn distance(&self, other: &FinalState) -> Option<f64> {
        match (self, other) {
            (FinalState::Density(a), FinalState::Density(b)) | (FinalState::Unitary(a), FinalState::Unitary(b)) => {
                (a.dim() == b.dim()).then(|| (a - b).max_abs())
            }
            (FinalState::Ket(a), FinalState::Ket(b)) => {
                (a.len() == b.len()).then(|| a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max))
            }
            (FinalState::Values(a), FinalState::Values(b)) => {
                (a.len() == b.len()).then(|| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
            }
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct HygieneSummary {
    pub max_trace_drift: f64,
    pub min_eigenvalue: f64,
}

impl HygieneSummary {
    pub fn of_ket(psi: &Ket) -> Self {
        Self {
            max_trace_drift: (psi.norm_sqr() - 1.0).abs(),
            min_eigenvalue: 0.0,
        }
    }

    /// Worst column of a propagator acting on basis-state projectors.
    pub fn of_unitary(u: &CMatrix) -> Self {
        let drift = (0..u.dim()).map(|k| (u.column(k).norm_sqr() - 1.0).abs()).fold(0.0, f64::max);
        Self {
            max_trace_drift: drift,
            min_eigenvalue: 0.0,
        }
    }

    pub fn merge(self, other: Self) -> Self {
        Self {
            max_trace_drift: self.max_trace_drift.max(other.max_trace_drift),
            min_eigenvalue: self.min_eigenvalue.min(other.min_eigenvalue),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub kind: Kind,
    pub inputs: Value,
    pub results: Map<String, Value>,
    pub diagnostics: Map<String, Value>,
    pub warnings: Vec<String>,
    pub tables: Vec<Table>,
    pub final_state: FinalState,
    pub hygiene: HygieneSummary,
    /// Set when the run finished but missed a numerical target such as
    /// steady-state convergence.
    pub failure: Option<String>,
    pub reproducible: bool,
}

impl Outcome {
    pub fn result(&self, key: &str) -> Option<&Value> {
        self.results.get(key)
    }

    pub fn result_f64(&self, key: &str) -> Option<f64> {
        self.results.get(key).and_then(Value::as_f64)
    }

    pub fn table(&self, file_name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.file_name == file_name)
    }

    pub fn summary(&self) -> Value {
        let mut meta = Map::new();
        meta.insert("tool".into(), json!(format!("cptq {}", env!("CARGO_PKG_VERSION"))));
        meta.insert("units".into(), json!(units_note(self.kind)));
        if !self.reproducible {
            let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
            meta.insert("generated_unix".into(), json!(now));
        }
        let mut diagnostics = self.diagnostics.clone();
        diagnostics.insert("hygiene".into(), serde_json::to_value(self.hygiene).unwrap());
        if let Some(f) = &self.failure {
            diagnostics.insert("failure".into(), json!(f));
        }
        json!({
            "kind": self.kind.name(),
            "inputs": self.inputs,
            "results": self.results,
            "diagnostics": diagnostics,
            "warnings": self.warnings,
            "meta": meta,
        })
    }

    /// Writes `summary.json` and every table into `dir`.
    pub fn write(&self, dir: &Path) -> CliResult<Vec<PathBuf>> {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        let mut written = Vec::new();
        let summary = dir.join("summary.json");
        let mut text = serde_json::to_string_pretty(&self.summary()).expect("summary serializes");
        text.push('\n');
        fs::write(&summary, text).map_err(|e| CliError::Io(format!("{}: {e}", summary.display())))?;
        written.push(summary);
        for t in &self.tables {
            let path = dir.join(&t.file_name);
            t.write(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            written.push(path);
        }
        Ok(written)
    }
}

fn units_note(kind: Kind) -> &'static str {
    match kind {
        Kind::Units => "SI inputs; frequencies in rad/s",
        Kind::Pump | Kind::Bloch => "hbar = 1; times in 1/gamma when gamma = 1",
        _ => "hbar = 1; model frequency units, times in their inverse",
    }
}
