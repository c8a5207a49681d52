//! Single-build prioritization: window, priorities, clusters, ordering.

use crate::diversity::{order_hbd, DiversityContext};
use crate::error::{Error, Result};
use crate::hbtp::{cluster_by_priority, derive_seed, order_hbr, order_original, order_rnd, ClusterRanking, WeightScheme};
use crate::model::{BuildRecord, PrioritizedSuite, ProjectHistory, Technique};

/// Priority clusters of `build`'s tests from the `interval` builds before it.
pub fn rank_build(
    history: &ProjectHistory,
    build: &BuildRecord,
    interval: u32,
    weights: &WeightScheme,
) -> Result<ClusterRanking> {
    let window = history.window(build.build_id, interval)?;
    let priorities = weights.priorities(&window, build)?;
    cluster_by_priority(build, &priorities)
}

/// Orders one build's tests with `technique`.
///
/// Randomized techniques shuffle with a seed derived from `seed` and the
/// build id, so the same user seed gives RND and HBR the same stream. The
/// diversity context is required only for history-based diversity.
pub fn prioritize_build(
    history: &ProjectHistory,
    build_id: u64,
    technique: Technique,
    interval: u32,
    seed: u64,
    weights: &WeightScheme,
    diversity: Option<&DiversityContext<'_>>,
) -> Result<PrioritizedSuite> {
    let build = history.get(build_id).ok_or(Error::UnknownBuild(build_id))?;
    let shuffle_seed = derive_seed(seed, build_id, 0);
    let mut suite = match technique {
        Technique::Random => {
            let mut s = order_rnd(build, shuffle_seed);
            s.seed = Some(seed);
            return Ok(s);
        }
        Technique::HistoryRandom => {
            let mut s = order_hbr(&rank_build(history, build, interval, weights)?, shuffle_seed);
            s.seed = Some(seed);
            s
        }
        Technique::Original => order_original(&rank_build(history, build, interval, weights)?),
        Technique::HistoryDiversity(method) => {
            let ctx = diversity.ok_or_else(|| {
                Error::SnapshotsRequired(format!("{technique} on build {build_id}"))
            })?;
            order_hbd(&rank_build(history, build, interval, weights)?, method, ctx)?
        }
    };
    suite.interval = Some(interval);
    Ok(suite)
}
