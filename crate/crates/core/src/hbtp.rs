//! History-based prioritization: failure weights, priority clusters, and the
//! random / history-random / original-order arrangements.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::{BuildRecord, HistoryWindow, PrioritizedSuite, Technique, TestId, Verdict};

/// Priorities are grouped after rounding to this many decimal places.
const PRIORITY_DECIMALS: i32 = 6;

/// Weight of a failure observed `n` output-bearing builds ago.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightScheme {
    table: [f64; 8],
    tail: f64,
}

impl Default for WeightScheme {
    fn default() -> Self {
        WeightScheme {
            table: [0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2],
            tail: 0.1,
        }
    }
}

impl WeightScheme {
    /// `table[i]` weighs distance `i + 1`; `tail` weighs every distance past 8.
    pub fn new(table: [f64; 8], tail: f64) -> Result<Self> {
        let all: Vec<f64> = table.iter().copied().chain([tail]).collect();
        if all.iter().any(|w| !(*w > 0.0 && *w <= 1.0)) {
            return Err(Error::InvalidWeights(
                "weights must lie in (0, 1]".into(),
            ));
        }
        if all.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidWeights(
                "weights must not increase with distance".into(),
            ));
        }
        Ok(WeightScheme { table, tail })
    }

    pub fn failure_weight(&self, n: u32) -> Result<f64> {
        match n {
            0 => Err(Error::InvalidDistance(n)),
            1..=8 => Ok(self.table[n as usize - 1]),
            _ => Ok(self.tail),
        }
    }

    /// Sum of failure weights over a verdict series, accumulated in series order.
    pub fn cumulative_priority(&self, series: &[(u32, Verdict)]) -> Result<f64> {
        let mut sum = 0.0;
        for &(n, verdict) in series {
            let w = self.failure_weight(n)?;
            if verdict.is_failed() {
                sum += w;
            }
        }
        Ok(sum)
    }

    /// Priority of every test executed in `build`, from the given window.
    pub fn priorities(
        &self,
        window: &HistoryWindow,
        build: &BuildRecord,
    ) -> Result<BTreeMap<TestId, f64>> {
        build
            .tests()
            .map(|t| Ok((t.clone(), self.cumulative_priority(window.series_for(t))?)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    /// Rounded priority shared by all members.
    pub priority: f64,
    /// Members in execution order.
    pub members: Vec<TestId>,
}

/// Tests grouped by equal priority, highest priority first.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterRanking {
    pub clusters: Vec<Cluster>,
}

impl ClusterRanking {
    pub fn len(&self) -> usize {
        self.clusters.iter().map(|c| c.members.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }
}

fn priority_key(p: f64) -> i64 {
    (p * 10f64.powi(PRIORITY_DECIMALS)).round() as i64
}

pub fn cluster_by_priority(
    build: &BuildRecord,
    priorities: &BTreeMap<TestId, f64>,
) -> Result<ClusterRanking> {
    let mut groups: BTreeMap<Reverse<i64>, Vec<TestId>> = BTreeMap::new();
    for test in build.tests() {
        let p = *priorities
            .get(test)
            .ok_or_else(|| Error::MissingPriority(test.clone()))?;
        if !p.is_finite() || p < 0.0 {
            return Err(Error::InvalidPriority {
                test: test.clone(),
                value: p,
            });
        }
        groups
            .entry(Reverse(priority_key(p)))
            .or_default()
            .push(test.clone());
    }
    let scale = 10f64.powi(PRIORITY_DECIMALS);
    Ok(ClusterRanking {
        clusters: groups
            .into_iter()
            .map(|(Reverse(key), members)| Cluster {
                priority: key as f64 / scale,
                members,
            })
            .collect(),
    })
}

/// Mixes the user seed with the build and run index so every build gets an
/// independent, reproducible shuffle.
pub fn derive_seed(user_seed: u64, build_id: u64, run_index: u32) -> u64 {
    let mut h = Sha256::new();
    h.update(b"ciprio/shuffle/v1");
    h.update(user_seed.to_le_bytes());
    h.update(build_id.to_le_bytes());
    h.update(run_index.to_le_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"))
}

/// Clusters in rank order, each shuffled by one seeded stream.
pub fn order_hbr(ranking: &ClusterRanking, seed: u64) -> PrioritizedSuite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order = Vec::with_capacity(ranking.len());
    for cluster in &ranking.clusters {
        let mut members = cluster.members.clone();
        members.shuffle(&mut rng);
        order.extend(members);
    }
    PrioritizedSuite {
        order,
        technique: Technique::HistoryRandom,
        interval: None,
        seed: Some(seed),
    }
}

/// Uniform seeded shuffle of the whole suite.
pub fn order_rnd(build: &BuildRecord, seed: u64) -> PrioritizedSuite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order = build.test_order();
    order.shuffle(&mut rng);
    PrioritizedSuite {
        order,
        technique: Technique::Random,
        interval: None,
        seed: Some(seed),
    }
}

/// Clusters in rank order, members in execution order.
pub fn order_original(ranking: &ClusterRanking) -> PrioritizedSuite {
    PrioritizedSuite {
        order: ranking
            .clusters
            .iter()
            .flat_map(|c| c.members.iter().cloned())
            .collect(),
        technique: Technique::Original,
        interval: None,
        seed: None,
    }
}
