use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::diversity::{Compressor, DiversityContext, DistanceCache};
use crate::error::{Error, Result};
use crate::hbtp::WeightScheme;
use crate::ingest::{changed_tests, content_hashes, load_snapshot};
use crate::model::{Artifacts, BuildRecord, ContentHash, ProjectHistory, Technique, TestId};
use crate::prioritize::prioritize_build;

use super::apfd::apfd;

/// One technique applied to one faulty build.
#[derive(Debug, Clone, PartialEq)]
pub struct ApfdResult {
    pub build_id: u64,
    pub technique: Technique,
    pub interval: u32,
    /// Present for randomized techniques.
    pub seed: Option<u64>,
    pub n: usize,
    pub m: usize,
    pub apfd: f64,
    /// First-detection ranks of the failing tests, in test id order.
    pub ranks: Vec<usize>,
    pub order: Vec<TestId>,
    /// Prioritization time only.
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReplayReport {
    pub results: Vec<ApfdResult>,
}

impl ReplayReport {
    /// Mean prioritization time per build; absent when nothing was replayed.
    pub fn amet(&self) -> Option<Duration> {
        let n = u32::try_from(self.results.len()).ok().filter(|&n| n > 0)?;
        Some(self.results.iter().map(|r| r.elapsed).sum::<Duration>() / n)
    }

    pub fn mean_apfd(&self) -> Option<f64> {
        if self.results.is_empty() {
            return None;
        }
        Some(self.results.iter().map(|r| r.apfd).sum::<f64>() / self.results.len() as f64)
    }
}

pub struct ReplayConfig<'a> {
    pub technique: Technique,
    pub interval: u32,
    pub seed: u64,
    pub weights: WeightScheme,
    /// Root of `<build_id>/<test path>` snapshots; needed for diversity techniques.
    pub snapshots: Option<&'a Path>,
    pub compressor: &'a dyn Compressor,
    pub cache: &'a DistanceCache,
}

fn score(
    build: &BuildRecord,
    cfg: &ReplayConfig<'_>,
    history: &ProjectHistory,
    diversity: Option<&DiversityContext<'_>>,
) -> Result<ApfdResult> {
    let start = Instant::now();
    let suite = prioritize_build(
        history,
        build.build_id,
        cfg.technique,
        cfg.interval,
        cfg.seed,
        &cfg.weights,
        diversity,
    )?;
    let elapsed = start.elapsed();
    let s = apfd(&suite, &build.failing())?;
    Ok(ApfdResult {
        build_id: build.build_id,
        technique: cfg.technique,
        interval: cfg.interval,
        seed: cfg.technique.is_randomized().then_some(cfg.seed),
        n: s.n,
        m: s.m,
        apfd: s.apfd,
        ranks: s.ranks,
        order: suite.order,
        elapsed,
    })
}

/// Prioritizes every faulty build in history order and scores it.
///
/// Builds are independent for the history-only techniques and run in
/// parallel on the current rayon pool. Diversity techniques run build by
/// build, dropping cache entries of tests whose content changed since the
/// previous replayed build.
pub fn replay(history: &ProjectHistory, cfg: &ReplayConfig<'_>) -> Result<ReplayReport> {
    let faulty: Vec<&BuildRecord> = history.faulty_builds().collect();
    if !cfg.technique.needs_artifacts() {
        let results = faulty
            .par_iter()
            .map(|b| score(b, cfg, history, None))
            .collect::<Result<Vec<_>>>()?;
        return Ok(ReplayReport { results });
    }

    let root = cfg
        .snapshots
        .ok_or_else(|| Error::SnapshotsRequired(cfg.technique.to_string()))?;
    let mut previous: BTreeMap<TestId, ContentHash> = BTreeMap::new();
    let mut results = Vec::with_capacity(faulty.len());
    for build in faulty {
        let artifacts = load_build_artifacts(root, build)?;
        let hashes = content_hashes(&artifacts);
        cfg.cache.invalidate(&changed_tests(&previous, &hashes));
        previous = hashes;
        let ctx = DiversityContext::new(&artifacts, cfg.compressor, cfg.cache);
        results.push(score(build, cfg, history, Some(&ctx))?);
    }
    Ok(ReplayReport { results })
}

/// Snapshot contents of every test executed in `build`.
pub fn load_build_artifacts(root: &Path, build: &BuildRecord) -> Result<Artifacts> {
    let load = load_snapshot(root, build.build_id, build.tests())?;
    if !load.missing.is_empty() {
        return Err(Error::MissingSnapshots {
            build: build.build_id,
            missing: load.missing,
        });
    }
    Ok(load.artifacts)
}
