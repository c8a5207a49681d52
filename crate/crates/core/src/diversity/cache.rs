use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ContentHash, TestId};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct PairKey {
    a: TestId,
    b: TestId,
    metric: String,
}

impl PairKey {
    fn new(x: &TestId, y: &TestId, metric: &str) -> (Self, bool) {
        let swapped = y < x;
        let (a, b) = if swapped { (y, x) } else { (x, y) };
        (
            PairKey {
                a: a.clone(),
                b: b.clone(),
                metric: metric.to_owned(),
            },
            swapped,
        )
    }
}

#[derive(Debug, Clone, Copy)]
struct PairEntry {
    hash_a: ContentHash,
    hash_b: ContentHash,
    distance: f64,
}

/// One persisted pair distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CachedPair {
    pub test_a: TestId,
    pub test_b: TestId,
    pub hash_a: ContentHash,
    pub hash_b: ContentHash,
    pub metric: String,
    pub distance: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
}

/// Pair distances and compressed item lengths, keyed by content hash so an
/// entry is only served while both tests still have the content it was
/// computed from. Safe for concurrent readers and writers.
#[derive(Debug)]
pub struct DistanceCache {
    enabled: bool,
    pairs: RwLock<HashMap<PairKey, PairEntry>>,
    lengths: RwLock<HashMap<(&'static str, ContentHash), usize>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl Default for DistanceCache {
    fn default() -> Self {
        Self::new()
    }
}

impl DistanceCache {
    pub fn new() -> Self {
        DistanceCache {
            enabled: true,
            pairs: RwLock::default(),
            lengths: RwLock::default(),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    /// A cache that never stores anything.
    pub fn disabled() -> Self {
        DistanceCache {
            enabled: false,
            ..Self::new()
        }
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
        }
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.read().unwrap().len()
    }

    pub fn get(
        &self,
        x: &TestId,
        y: &TestId,
        metric: &str,
        hash_x: ContentHash,
        hash_y: ContentHash,
    ) -> Option<f64> {
        if !self.enabled {
            return None;
        }
        let (key, swapped) = PairKey::new(x, y, metric);
        let (ha, hb) = if swapped { (hash_y, hash_x) } else { (hash_x, hash_y) };
        let found = self
            .pairs
            .read()
            .unwrap()
            .get(&key)
            .filter(|e| e.hash_a == ha && e.hash_b == hb)
            .map(|e| e.distance);
        let counter = if found.is_some() { &self.hits } else { &self.misses };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    pub fn put(
        &self,
        x: &TestId,
        y: &TestId,
        metric: &str,
        hash_x: ContentHash,
        hash_y: ContentHash,
        distance: f64,
    ) {
        if !self.enabled {
            return;
        }
        let (key, swapped) = PairKey::new(x, y, metric);
        let (hash_a, hash_b) = if swapped { (hash_y, hash_x) } else { (hash_x, hash_y) };
        self.pairs.write().unwrap().insert(
            key,
            PairEntry {
                hash_a,
                hash_b,
                distance,
            },
        );
    }

    pub fn item_len(&self, compressor: &'static str, hash: ContentHash) -> Option<usize> {
        if !self.enabled {
            return None;
        }
        self.lengths.read().unwrap().get(&(compressor, hash)).copied()
    }

    pub fn put_item_len(&self, compressor: &'static str, hash: ContentHash, len: usize) {
        if self.enabled {
            self.lengths.write().unwrap().insert((compressor, hash), len);
        }
    }

    /// Drops every pair touching a changed test, and the item lengths of the
    /// content those pairs were computed from.
    pub fn invalidate(&self, changed: &BTreeSet<TestId>) {
        if changed.is_empty() {
            return;
        }
        let mut stale_hashes = BTreeSet::new();
        self.pairs.write().unwrap().retain(|k, e| {
            let hit_a = changed.contains(&k.a);
            let hit_b = changed.contains(&k.b);
            if hit_a {
                stale_hashes.insert(e.hash_a);
            }
            if hit_b {
                stale_hashes.insert(e.hash_b);
            }
            !(hit_a || hit_b)
        });
        self.lengths
            .write()
            .unwrap()
            .retain(|(_, h), _| !stale_hashes.contains(h));
    }

    pub fn entries(&self) -> Vec<CachedPair> {
        let mut out: Vec<CachedPair> = self
            .pairs
            .read()
            .unwrap()
            .iter()
            .map(|(k, e)| CachedPair {
                test_a: k.a.clone(),
                test_b: k.b.clone(),
                hash_a: e.hash_a,
                hash_b: e.hash_b,
                metric: k.metric.clone(),
                distance: e.distance,
            })
            .collect();
        out.sort_by(|x, y| {
            (&x.metric, &x.test_a, &x.test_b).cmp(&(&y.metric, &y.test_a, &y.test_b))
        });
        out
    }

    /// Writes the pair table as a JSON array.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let json = serde_json::to_vec(&self.entries())?;
        fs::write(path, json).map_err(|e| Error::io(format!("writing {}", path.display()), e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes =
            fs::read(path).map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
        let entries: Vec<CachedPair> = serde_json::from_slice(&bytes)?;
        let cache = DistanceCache::new();
        for e in entries {
            cache.put(&e.test_a, &e.test_b, &e.metric, e.hash_a, e.hash_b, e.distance);
        }
        Ok(cache)
    }
}
