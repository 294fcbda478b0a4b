use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use spinmcg::fp_core::SnfResult;
use spinmcg::paper_presentations::checks::{all_passed, CheckOutcome, CheckStatus};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Debug)]
pub struct CheckRow {
    pub label: String,
    pub status: String,
    pub detail: String,
}

/// Machine-readable result of one command.
#[derive(Serialize, Debug)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub genus: Option<usize>,
    pub checks: Vec<CheckRow>,
    pub invariant_factors: Option<Vec<String>>,
    pub free_rank: Option<usize>,
    pub closure_size: Option<u64>,
    pub elapsed_ms: Option<f64>,
    /// Command-specific payload.
    pub results: BTreeMap<String, Value>,
    #[serde(skip)]
    outcomes: Vec<CheckOutcome>,
    #[serde(skip)]
    started: Option<Instant>,
}

impl RunReport {
    pub fn new(command: &str, timings: bool) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            parameters: BTreeMap::new(),
            genus: None,
            checks: Vec::new(),
            invariant_factors: None,
            free_rank: None,
            closure_size: None,
            elapsed_ms: None,
            results: BTreeMap::new(),
            outcomes: Vec::new(),
            started: timings.then(Instant::now),
        }
    }

    pub fn param(&mut self, key: &str, v: impl Serialize) {
        self.parameters.insert(key.to_string(), serde_json::to_value(v).unwrap_or(Value::Null));
    }

    pub fn result(&mut self, key: &str, v: impl Serialize) {
        self.results.insert(key.to_string(), serde_json::to_value(v).unwrap_or(Value::Null));
    }

    pub fn push(&mut self, o: CheckOutcome) {
        self.checks.push(CheckRow { label: o.label.clone(), status: o.status.to_string(), detail: o.detail.clone() });
        self.outcomes.push(o);
    }

    pub fn extend(&mut self, os: impl IntoIterator<Item = CheckOutcome>) {
        for o in os {
            self.push(o);
        }
    }

    pub fn set_group(&mut self, g: &SnfResult) {
        self.invariant_factors = Some(g.invariant_factors.iter().map(|d| d.to_string()).collect());
        self.free_rank = Some(g.free_rank);
    }

    pub fn passed(&self) -> bool {
        all_passed(&self.outcomes)
    }

    pub fn finish(&mut self) {
        if let Some(t) = self.started {
            self.elapsed_ms = Some(t.elapsed().as_secs_f64() * 1e3);
        }
    }

    /// Human-readable summary; failing checks are always listed, passing ones only with `verbose`.
    pub fn text(&self, verbose: bool) -> String {
        let mut out = String::new();
        let count = |s: CheckStatus| self.outcomes.iter().filter(|o| o.status == s).count();
        if let (Some(f), Some(r)) = (&self.invariant_factors, self.free_rank) {
            let g = SnfResult {
                invariant_factors: f.iter().filter_map(|d| d.parse().ok()).collect(),
                free_rank: r,
            };
            out.push_str(&format!("abelianization: {g}\nfree rank: {r}\ninvariant factors: [{}]\n", f.join(", ")));
        }
        if let Some(n) = self.closure_size {
            out.push_str(&format!("closure size: {n}\n"));
        }
        for (k, v) in &self.results {
            match v {
                Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
                other => out.push_str(&format!("{k}: {other}\n")),
            }
        }
        for o in &self.outcomes {
            if verbose || o.status == CheckStatus::Fail {
                let detail = if o.detail.is_empty() { String::new() } else { format!(" ({})", o.detail) };
                out.push_str(&format!("{:<8} {}{detail}\n", o.status, o.label));
            }
        }
        if !self.outcomes.is_empty() {
            out.push_str(&format!(
                "checks: {} pass, {} fail, {} skipped, {} flagged\n",
                count(CheckStatus::Pass),
                count(CheckStatus::Fail),
                count(CheckStatus::Skipped),
                count(CheckStatus::Flagged)
            ));
        }
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("elapsed: {ms:.1} ms\n"));
        }
        out
    }
}
