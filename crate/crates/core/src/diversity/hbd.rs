use crate::error::Result;
use crate::hbtp::ClusterRanking;
use crate::model::{DiversityMethod, PrioritizedSuite, Technique, TestId};

use super::greedy::{greedy_multiset, greedy_pairwise};
use super::metric::{DiversityContext, Metric};

/// History-based diversity: clusters keep their rank order, and each
/// cluster's members are ordered greedily against every test emitted before
/// them, including those of earlier clusters.
pub fn order_hbd(
    ranking: &ClusterRanking,
    method: DiversityMethod,
    ctx: &DiversityContext<'_>,
) -> Result<PrioritizedSuite> {
    let mut emitted: Vec<TestId> = Vec::with_capacity(ranking.len());
    for cluster in &ranking.clusters {
        let picked = match method {
            DiversityMethod::Manhattan => {
                greedy_pairwise(&cluster.members, Metric::Manhattan, ctx, &emitted)?
            }
            DiversityMethod::Ncd => greedy_pairwise(&cluster.members, Metric::Ncd, ctx, &emitted)?,
            DiversityMethod::NcdMultiset => greedy_multiset(&cluster.members, ctx, &emitted)?,
        };
        emitted.extend(picked);
    }
    Ok(PrioritizedSuite {
        order: emitted,
        technique: Technique::HistoryDiversity(method),
        interval: None,
        seed: None,
    })
}
