//! CSV reports for replay results, orderings, and comparisons.

use std::collections::BTreeSet;
use std::io::{Read, Write};

use serde::Deserialize;

use crate::error::{Error, Result};

use super::replay::ApfdResult;
use super::stats::{compare, StatComparison};

pub const RESULTS_HEADER: [&str; 8] = [
    "build_id",
    "technique",
    "interval",
    "seed",
    "n",
    "m",
    "apfd",
    "elapsed_ms",
];

pub const ORDERS_HEADER: [&str; 6] = ["build_id", "technique", "interval", "seed", "rank", "test"];

pub const COMPARISON_HEADER: [&str; 6] = [
    "group",
    "mean_x",
    "mean_y",
    "a_measure",
    "p_value",
    "significant",
];

fn seed_cell(seed: Option<u64>) -> String {
    seed.map(|s| s.to_string()).unwrap_or_default()
}

fn flush<W: Write>(mut w: csv::Writer<W>) -> Result<()> {
    w.flush().map_err(|e| Error::io("writing CSV", e))
}

pub fn write_results_csv(out: impl Write, results: &[ApfdResult]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULTS_HEADER)?;
    for r in results {
        w.write_record([
            r.build_id.to_string(),
            r.technique.to_string(),
            r.interval.to_string(),
            seed_cell(r.seed),
            r.n.to_string(),
            r.m.to_string(),
            r.apfd.to_string(),
            format!("{:.3}", r.elapsed.as_secs_f64() * 1e3),
        ])?;
    }
    flush(w)
}

/// One row per (build, rank).
pub fn write_orders_csv(out: impl Write, results: &[ApfdResult]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(ORDERS_HEADER)?;
    for r in results {
        for (i, t) in r.order.iter().enumerate() {
            w.write_record([
                r.build_id.to_string(),
                r.technique.to_string(),
                r.interval.to_string(),
                seed_cell(r.seed),
                (i + 1).to_string(),
                t.to_string(),
            ])?;
        }
    }
    flush(w)
}

/// A row read back from a results CSV.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ResultRow {
    pub build_id: u64,
    pub technique: String,
    pub interval: u32,
    pub seed: Option<u64>,
    pub n: usize,
    pub m: usize,
    pub apfd: f64,
    pub elapsed_ms: f64,
}

pub fn read_results_csv(input: impl Read) -> Result<Vec<ResultRow>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}

/// Label of a sample, e.g. `HBR-V1` or `RND`.
fn label(rows: &[ResultRow]) -> String {
    let labels: BTreeSet<String> = rows
        .iter()
        .map(|r| {
            if r.technique == "RND" {
                r.technique.clone()
            } else {
                format!("{}-V{}", r.technique, r.interval)
            }
        })
        .collect();
    labels.into_iter().collect::<Vec<_>>().join("+")
}

/// Compares two result sets over the same builds, pooling every row of each.
pub fn compare_results(x: &[ResultRow], y: &[ResultRow]) -> Result<(String, StatComparison)> {
    let bx: BTreeSet<u64> = x.iter().map(|r| r.build_id).collect();
    let by: BTreeSet<u64> = y.iter().map(|r| r.build_id).collect();
    if bx != by {
        let only_x: Vec<u64> = bx.difference(&by).copied().collect();
        let only_y: Vec<u64> = by.difference(&bx).copied().collect();
        return Err(Error::MismatchedBuilds(format!(
            "only in x: {only_x:?}; only in y: {only_y:?}"
        )));
    }
    let ax: Vec<f64> = x.iter().map(|r| r.apfd).collect();
    let ay: Vec<f64> = y.iter().map(|r| r.apfd).collect();
    let c = compare(&ax, &ay)?;
    Ok((format!("{} vs {}", label(x), label(y)), c))
}

pub fn write_comparison_csv(out: impl Write, rows: &[(String, StatComparison)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COMPARISON_HEADER)?;
    for (group, c) in rows {
        w.write_record([
            group.clone(),
            format!("{:.4}", c.mean_x),
            format!("{:.4}", c.mean_y),
            format!("{:.4}", c.a_measure),
            format!("{:.6}", c.p_value),
            c.significant.to_string(),
        ])?;
    }
    flush(w)
}
