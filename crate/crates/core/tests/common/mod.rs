//! Shared helpers for the integration tests: fixture access and naive
//! reference implementations of the greedy orderings.
#![allow(dead_code)]

use std::path::PathBuf;

use ciprio_core::diversity::{lz4, manhattan, ncd, Lz4};
use ciprio_core::eval::load_build_artifacts;
use ciprio_core::hbtp::{ClusterRanking, WeightScheme};
use ciprio_core::model::{Artifacts, DiversityMethod, ProjectHistory, TestId};
use ciprio_core::prioritize::rank_build;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn project_dir() -> PathBuf {
    fixtures().join("synthetic-project")
}

pub fn history_path() -> PathBuf {
    project_dir().join("synthetic-project.jsonl")
}

pub fn snapshots() -> PathBuf {
    project_dir().join("snapshots")
}

pub fn history() -> ProjectHistory {
    ProjectHistory::load(history_path()).expect("fixture history loads")
}

pub fn artifacts(history: &ProjectHistory, build_id: u64) -> Artifacts {
    load_build_artifacts(&snapshots(), history.get(build_id).unwrap()).unwrap()
}

pub fn ranking(history: &ProjectHistory, build_id: u64, interval: u32) -> ClusterRanking {
    rank_build(history, history.get(build_id).unwrap(), interval, &WeightScheme::default()).unwrap()
}

/// Distance evaluated with the lexicographically smaller test first.
pub fn naive_distance(method: DiversityMethod, a: &Artifacts, x: &TestId, y: &TestId) -> f64 {
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    let (p, q) = (&a[lo].content, &a[hi].content);
    match method {
        DiversityMethod::Manhattan => manhattan(p, q) as f64,
        DiversityMethod::Ncd => ncd(p, q, &Lz4).unwrap(),
        DiversityMethod::NcdMultiset => unreachable!("not a pairwise metric"),
    }
}

/// Index of the first maximum over candidates sorted by id.
fn first_max(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, s) in scores.iter().enumerate() {
        if *s > scores[best] {
            best = i;
        }
    }
    best
}

fn sorted(pool: &[TestId]) -> Vec<TestId> {
    let mut v = pool.to_vec();
    v.sort();
    v.dedup();
    v
}

/// Max-min ordering recomputed from scratch at every step.
pub fn naive_pairwise(
    pool: &[TestId],
    method: DiversityMethod,
    a: &Artifacts,
    already: &[TestId],
) -> Vec<TestId> {
    let mut cands = sorted(pool);
    let mut emitted: Vec<TestId> = already.to_vec();
    let mut out = Vec::new();
    while !cands.is_empty() {
        let scores: Vec<f64> = cands
            .iter()
            .map(|t| {
                if emitted.is_empty() {
                    cands.iter().filter(|o| *o != t).map(|o| naive_distance(method, a, t, o)).sum()
                } else {
                    emitted
                        .iter()
                        .filter(|e| *e != t)
                        .map(|e| naive_distance(method, a, t, e))
                        .fold(f64::INFINITY, f64::min)
                }
            })
            .collect();
        let pick = cands.remove(first_max(&scores));
        emitted.push(pick.clone());
        out.push(pick);
    }
    out
}

fn joined(a: &Artifacts, ids: &[TestId]) -> Vec<u8> {
    let mut bytes = Vec::new();
    for (i, t) in ids.iter().enumerate() {
        if i > 0 {
            bytes.push(0);
        }
        bytes.extend_from_slice(&a[t].content);
    }
    bytes
}

/// Multiset ordering recompressing the whole prioritized set for every candidate.
pub fn naive_multiset(pool: &[TestId], a: &Artifacts, already: &[TestId]) -> Vec<TestId> {
    let mut cands = sorted(pool);
    let mut emitted: Vec<TestId> = already.to_vec();
    let mut out = Vec::new();
    while !cands.is_empty() {
        let scores: Vec<f64> = cands
            .iter()
            .map(|t| {
                let bytes = if emitted.is_empty() {
                    a[t].content.clone()
                } else {
                    let mut b = joined(a, &emitted);
                    b.push(0);
                    b.extend_from_slice(&a[t].content);
                    b
                };
                lz4::compressed_len(&bytes) as f64
            })
            .collect();
        let pick = cands.remove(first_max(&scores));
        emitted.push(pick.clone());
        out.push(pick);
    }
    out
}

/// History-based diversity from the naive greedy references.
pub fn naive_hbd(ranking: &ClusterRanking, method: DiversityMethod, a: &Artifacts) -> Vec<TestId> {
    let mut emitted = Vec::new();
    for c in &ranking.clusters {
        let part = match method {
            DiversityMethod::NcdMultiset => naive_multiset(&c.members, a, &emitted),
            m => naive_pairwise(&c.members, m, a, &emitted),
        };
        emitted.extend(part);
    }
    emitted
}
