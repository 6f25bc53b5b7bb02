//! Claim records and the battery report.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Comparator {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
    /// Recorded for the report only; always passes.
    #[serde(rename = "report")]
    Report,
}

impl Comparator {
    pub fn symbol(self) -> &'static str {
        match self {
            Comparator::Le => "<=",
            Comparator::Ge => ">=",
            Comparator::Gt => ">",
            Comparator::Report => "report",
        }
    }

    fn holds(self, measured: f64, threshold: f64) -> bool {
        match self {
            Comparator::Le => measured <= threshold,
            Comparator::Ge => measured >= threshold,
            Comparator::Gt => measured > threshold,
            Comparator::Report => true,
        }
    }
}

/// One metric of a claim.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub metric: String,
    pub comparator: Comparator,
    pub threshold: f64,
    pub measured: f64,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Where a claim sits in the source text, by section name and topic.
#[derive(Clone, Debug, Serialize)]
pub struct Anchor {
    pub section: &'static str,
    pub topic: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimRecord {
    pub id: &'static str,
    pub anchor: Anchor,
    /// Shipped scenario files run for this claim, or `library` entries for
    /// checks made directly against the physics crate.
    pub scenarios: Vec<String>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    /// Set when a run errored before its checks could be made.
    pub error: Option<String>,
    pub status: Status,
}

impl ClaimRecord {
    pub fn new(id: &'static str, section: &'static str, topic: &'static str) -> Self {
        Self {
            id,
            anchor: Anchor { section, topic },
            scenarios: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            error: None,
            status: Status::Fail,
        }
    }

    pub fn scenario(&mut self, name: impl Into<String>) {
        let name = name.into();
        if !self.scenarios.contains(&name) {
            self.scenarios.push(name);
        }
    }

    pub fn check(&mut self, metric: impl Into<String>, comparator: Comparator, threshold: f64, measured: f64) -> bool {
        let pass = comparator.holds(measured, threshold);
        self.checks.push(Check {
            metric: metric.into(),
            comparator,
            threshold,
            measured,
            pass,
        });
        pass
    }

    pub fn le(&mut self, metric: impl Into<String>, measured: f64, threshold: f64) -> bool {
        self.check(metric, Comparator::Le, threshold, measured)
    }

    pub fn ge(&mut self, metric: impl Into<String>, measured: f64, threshold: f64) -> bool {
        self.check(metric, Comparator::Ge, threshold, measured)
    }

    pub fn gt(&mut self, metric: impl Into<String>, measured: f64, threshold: f64) -> bool {
        self.check(metric, Comparator::Gt, threshold, measured)
    }

    pub fn report(&mut self, metric: impl Into<String>, measured: f64) {
        self.check(metric, Comparator::Report, f64::NAN, measured);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Fixes the status: pass iff no error and every check holds.
    pub fn finish(mut self) -> Self {
        let ok = self.error.is_none() && !self.checks.is_empty() && self.checks.iter().all(|c| c.pass);
        self.status = if ok { Status::Pass } else { Status::Fail };
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failing_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// One line: id, status, and the failing metrics or the number checked.
    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!("{} {status}", self.id);
        if let Some(e) = &self.error {
            let _ = write!(s, "  error: {e}");
        }
        let failing: Vec<String> = self.failing_checks().map(format_check).collect();
        if failing.is_empty() {
            let _ = write!(s, "  ({} checks)", self.checks.len());
        } else {
            let _ = write!(s, "  {}", failing.join("; "));
        }
        s
    }
}

fn format_check(c: &Check) -> String {
    match c.comparator {
        Comparator::Report => format!("{} = {:.6e}", c.metric, c.measured),
        cmp => format!("{} = {:.6e} (need {} {:.3e})", c.metric, c.measured, cmp.symbol(), c.threshold),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub claims: Vec<ClaimRecord>,
    pub wall_seconds: f64,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.claims.iter().all(ClaimRecord::passed)
    }

    pub fn failing_ids(&self) -> Vec<&'static str> {
        self.claims.iter().filter(|c| !c.passed()).map(|c| c.id).collect()
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimRecord> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Plain-text table with every check.
    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<4} {:<5} {:<52} {:>14} {:>6} {:>11}", "id", "ok", "metric", "measured", "cmp", "threshold");
        for c in &self.claims {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{:<4} {:<5} [{}: {}]", c.id, status, c.anchor.section, c.anchor.topic);
            if let Some(e) = &c.error {
                let _ = writeln!(s, "{:<4} {:<5} error: {e}", "", "");
            }
            for k in &c.checks {
                let mark = if k.pass { "" } else { "FAIL" };
                let threshold = if k.comparator == Comparator::Report { "-".to_string() } else { format!("{:.3e}", k.threshold) };
                let _ = writeln!(
                    s,
                    "{:<4} {:<5} {:<52} {:>14.6e} {:>6} {:>11}",
                    "",
                    mark,
                    k.metric,
                    k.measured,
                    k.comparator.symbol(),
                    threshold
                );
            }
            for n in &c.notes {
                let _ = writeln!(s, "{:<4} {:<5} note: {n}", "", "");
            }
        }
        let failing = self.failing_ids();
        if failing.is_empty() {
            let _ = writeln!(s, "\nall {} claims pass ({:.1} s)", self.claims.len(), self.wall_seconds);
        } else {
            let _ = writeln!(s, "\nfailing claims: {} ({:.1} s)", failing.join(", "), self.wall_seconds);
        }
        s
    }
}
