//! Run statistics in machine-readable form, for the CLI's `--stats` output
//! and the variant-comparison harness.

use crate::engine::{SolveResult, Stats, Variant};
use serde::Serialize;

/// One solver run, flattened for JSON or a CSV row.
#[derive(Clone, Serialize)]
pub struct StatsReport {
    pub instance: String,
    pub variant: String,
    pub verdict: String,
    pub time_ms: u64,
    pub samples_per_level: Vec<u64>,
    pub cells_created: u64,
    pub cells_closed: u64,
    /// Fraction of derived cells stored closed; 0.0 when none were derived.
    pub closed_ratio: f64,
    pub max_depth: u32,
    pub max_closed_depth: u32,
    /// max_closed_depth relative to max_depth; 0.0 for a depth-0 run.
    pub rel_max_closed_depth: f64,
    pub characterization_calls: u64,
}

impl StatsReport {
    pub fn new(instance: &str, variant: Variant, result: &SolveResult, time_ms: u64) -> Self {
        Self::from_stats(instance, variant, result.is_sat(), &result.stats, time_ms)
    }

    pub fn from_stats(
        instance: &str,
        variant: Variant,
        sat: bool,
        stats: &Stats,
        time_ms: u64,
    ) -> Self {
        let closed_ratio = if stats.cells_created == 0 {
            0.0
        } else {
            stats.cells_closed as f64 / stats.cells_created as f64
        };
        let rel_max_closed_depth = if stats.max_depth == 0 {
            0.0
        } else {
            stats.max_closed_depth as f64 / stats.max_depth as f64
        };
        StatsReport {
            instance: instance.to_string(),
            variant: variant.name().to_string(),
            verdict: if sat { "sat" } else { "unsat" }.to_string(),
            time_ms,
            samples_per_level: stats.samples_per_level.clone(),
            cells_created: stats.cells_created,
            cells_closed: stats.cells_closed,
            closed_ratio,
            max_depth: stats.max_depth,
            max_closed_depth: stats.max_closed_depth,
            rel_max_closed_depth,
            characterization_calls: stats.characterization_calls,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("stats serialize")
    }

    /// Field names, in the same order as `csv_fields`.
    pub fn csv_header() -> Vec<&'static str> {
        vec![
            "instance",
            "variant",
            "verdict",
            "time_ms",
            "samples_per_level",
            "cells_created",
            "cells_closed",
            "closed_ratio",
            "max_depth",
            "max_closed_depth",
            "rel_max_closed_depth",
            "characterization_calls",
        ]
    }

    /// Values as strings; samples are semicolon-joined into one field.
    pub fn csv_fields(&self) -> Vec<String> {
        let samples = self
            .samples_per_level
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(";");
        vec![
            self.instance.clone(),
            self.variant.clone(),
            self.verdict.clone(),
            self.time_ms.to_string(),
            samples,
            self.cells_created.to_string(),
            self.cells_closed.to_string(),
            format!("{:.4}", self.closed_ratio),
            self.max_depth.to_string(),
            self.max_closed_depth.to_string(),
            format!("{:.4}", self.rel_max_closed_depth),
            self.characterization_calls.to_string(),
        ]
    }
}

/// Renders reports as CSV, header first.
pub fn to_csv(reports: &[StatsReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(StatsReport::csv_header()).expect("csv header");
    for r in reports {
        w.write_record(r.csv_fields()).expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv utf8")
}
