//! JSON report types. `result` holds the seed-determined payload; wall-clock
//! measurements live under `timings` so payloads compare byte for byte.

use std::io::Write;
use std::path::Path;

use halfscan::{Halfplane, IndexStats, ScanResult};
use serde::Serialize;

use crate::io::side_str;
use crate::CliError;

#[derive(Serialize, Debug, Clone)]
pub struct HalfplaneOut {
    pub a: f64,
    pub b: f64,
    pub side: &'static str,
}

impl From<&Halfplane> for HalfplaneOut {
    fn from(h: &Halfplane) -> Self {
        Self { a: h.line.a, b: h.line.b, side: side_str(h.side) }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct ScanOut {
    pub best_h: HalfplaneOut,
    pub value: f64,
    pub mu_r: f64,
    pub mu_b: f64,
    pub rounds: usize,
    pub candidates_evaluated: usize,
}

impl From<&ScanResult> for ScanOut {
    fn from(r: &ScanResult) -> Self {
        Self {
            best_h: (&r.best_h).into(),
            value: r.value,
            mu_r: r.mu_r,
            mu_b: r.mu_b,
            rounds: r.rounds,
            candidates_evaluated: r.candidates_evaluated,
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct StatsOut {
    pub root_sample: usize,
    pub levels: usize,
    pub exact: bool,
    pub nodes: usize,
    pub nodes_per_level: Vec<usize>,
    pub leaves: usize,
    pub max_leaf_sample: usize,
    pub max_children: usize,
    pub level_size_violations: usize,
}

impl StatsOut {
    pub fn new(s: &IndexStats, violations: usize) -> Self {
        Self {
            root_sample: s.root_sample,
            levels: s.levels,
            exact: s.exact,
            nodes: s.nodes,
            nodes_per_level: s.nodes_per_level.clone(),
            leaves: s.leaves,
            max_leaf_sample: s.max_leaf_sample,
            max_children: s.max_children,
            level_size_violations: violations,
        }
    }
}

#[derive(Serialize, Debug, Clone, Default)]
pub struct Percentiles {
    pub p50: u64,
    pub p90: u64,
    pub p99: u64,
    pub max: u64,
    pub mean: f64,
}

impl Percentiles {
    pub fn of(mut ns: Vec<u64>) -> Self {
        if ns.is_empty() {
            return Self::default();
        }
        ns.sort_unstable();
        let at = |q: f64| ns[((ns.len() - 1) as f64 * q).round() as usize];
        Self {
            p50: at(0.5),
            p90: at(0.9),
            p99: at(0.99),
            max: *ns.last().unwrap(),
            mean: ns.iter().sum::<u64>() as f64 / ns.len() as f64,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct Versions {
    pub halfscan: &'static str,
    pub index_format: u32,
}

impl Default for Versions {
    fn default() -> Self {
        Self { halfscan: env!("CARGO_PKG_VERSION"), index_format: halfscan::counter::FORMAT_VERSION }
    }
}

#[derive(Serialize, Debug)]
pub struct Report<C: Serialize, R: Serialize, T: Serialize> {
    pub command: &'static str,
    pub config: C,
    pub result: R,
    pub timings: T,
    pub versions: Versions,
}

pub fn emit<S: Serialize>(value: &S, out: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    match out {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}").map_err(|e| CliError::Io(e.to_string()))
        }
    }
}
