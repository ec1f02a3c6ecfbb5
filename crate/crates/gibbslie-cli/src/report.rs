//! JSON report envelope: every subcommand emits one report with an
//! explicit tolerances block so published numbers are reproducible.
//! Reports are byte-stable for fixed inputs and seed except for the
//! trailing wall_time_ms field.

use serde::Serialize;
use std::time::Instant;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize)]
pub struct Tolerances {
    pub eps_spec: f64,
    pub eps_spec_floor: f64,
    pub eps_metric: f64,
    pub delta_pd: f64,
    pub cluster_rel: f64,
    pub eps_trace: f64,
    pub eps_reflection: f64,
    pub eps_invariance: f64,
    pub eps_gram: f64,
}

impl Tolerances {
    pub fn from_config(cfg: &gibbslie_core::spectral::SpectralConfig, eps_trace: f64) -> Self {
        Tolerances {
            eps_spec: cfg.eps_spec,
            eps_spec_floor: cfg.eps_spec_floor,
            eps_metric: cfg.eps_metric,
            delta_pd: cfg.delta_pd,
            cluster_rel: cfg.cluster_rel,
            eps_trace,
            eps_reflection: 1e-9,
            eps_invariance: 1e-10,
            eps_gram: 1e-10,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub command: String,
    pub schema_version: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub inputs: serde_json::Value,
    pub results: T,
    pub wall_time_ms: u128,
}

pub struct ReportBuilder {
    command: String,
    seed: u64,
    tolerances: Tolerances,
    inputs: serde_json::Value,
    start: Instant,
}

impl ReportBuilder {
    pub fn new(command: &str, seed: u64, tolerances: Tolerances, inputs: serde_json::Value) -> Self {
        ReportBuilder {
            command: command.to_string(),
            seed,
            tolerances,
            inputs,
            start: Instant::now(),
        }
    }

    pub fn finish<T: Serialize>(self, results: T) -> Report<T> {
        Report {
            command: self.command,
            schema_version: SCHEMA_VERSION,
            version: env!("CARGO_PKG_VERSION"),
            seed: self.seed,
            tolerances: self.tolerances,
            inputs: self.inputs,
            results,
            wall_time_ms: self.start.elapsed().as_millis(),
        }
    }
}
