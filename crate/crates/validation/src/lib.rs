//! Acceptance battery: every claim runs the shipped scenarios through the
//! same code path as the `cptq` binary and records measured values.

pub mod claims;
pub mod record;

use std::path::{Path, PathBuf};
use std::time::Instant;

use cptq::atom::AtomModel;
use cptq_cli::{run_scenario_with, Context, Outcome, Scenario};
use rayon::prelude::*;

pub use record::{Check, ClaimRecord, Comparator, Report, Status};

/// Ids of every claim, in report order.
pub const CLAIM_IDS: [&str; 11] = ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "A10", "A11"];

/// Seed for the random draws made by the battery itself.
pub const DEFAULT_SEED: u64 = 20_240_611;

#[derive(Clone, Debug)]
pub struct Battery {
    pub scenarios_dir: PathBuf,
    pub ctx: Context,
    pub seed: u64,
}

impl Battery {
    pub fn new(scenarios_dir: impl Into<PathBuf>) -> Self {
        Self {
            scenarios_dir: scenarios_dir.into(),
            ctx: Context::default(),
            seed: DEFAULT_SEED,
        }
    }

    /// The repository's `scenarios/` directory.
    pub fn shipped() -> Self {
        Self::new(shipped_scenarios_dir())
    }

    pub fn with_model(mut self, model: AtomModel) -> Self {
        self.ctx.model = model;
        self
    }

    pub fn load(&self, name: &str, overrides: &[String]) -> Result<Scenario, String> {
        Scenario::load(&self.scenarios_dir.join(name), overrides).map_err(|e| format!("{name}: {e}"))
    }

    pub fn run(&self, name: &str, overrides: &[String]) -> Result<Outcome, String> {
        let scenario = self.load(name, overrides)?;
        run_scenario_with(&scenario, &self.ctx).map_err(|e| format!("{name}: {e}"))
    }
}

pub fn shipped_scenarios_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

/// Runs every claim, in parallel where they are independent.
pub fn run_all(battery: &Battery) -> Report {
    let start = Instant::now();
    let mut claims: Vec<ClaimRecord> = claims::INDEPENDENT.par_iter().map(|(_, f)| f(battery)).collect();
    let a2 = claims.iter().find(|c| c.id == "A2").cloned().expect("A2 is independent");
    claims.push(claims::a11_with(battery, &a2));
    Report {
        claims,
        wall_seconds: start.elapsed().as_secs_f64(),
    }
}

/// Runs one claim by id.
pub fn run_claim(battery: &Battery, id: &str) -> Option<ClaimRecord> {
    if id == "A11" {
        return Some(claims::a11(battery));
    }
    claims::INDEPENDENT.iter().find(|(k, _)| *k == id).map(|(_, f)| f(battery))
}
