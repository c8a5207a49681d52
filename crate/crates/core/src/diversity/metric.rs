use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{Artifacts, TestArtifact, TestId};

use super::cache::DistanceCache;
use super::compressor::Compressor;

/// Positional L1 distance over byte values; the shorter input is zero-padded.
pub fn manhattan(a: &[u8], b: &[u8]) -> u64 {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let common: u64 = short
        .iter()
        .zip(long)
        .map(|(x, y)| u64::from(x.abs_diff(*y)))
        .sum();
    let rest: u64 = long[short.len()..].iter().map(|&x| u64::from(x)).sum();
    common + rest
}

/// `(C(xy) - min(C(x), C(y))) / max(C(x), C(y))` from precomputed lengths.
pub fn ncd_from_lengths(joint: usize, x: usize, y: usize) -> Result<f64> {
    let hi = x.max(y);
    if hi == 0 {
        return Err(Error::ZeroCompressedLength);
    }
    Ok((joint as f64 - x.min(y) as f64) / hi as f64)
}

/// Normalized compression distance with `xy` the plain concatenation.
pub fn ncd(a: &[u8], b: &[u8], compressor: &dyn Compressor) -> Result<f64> {
    let joint = compressor.compressed_len(&[a, b].concat());
    ncd_from_lengths(joint, compressor.compressed_len(a), compressor.compressed_len(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Manhattan,
    Ncd,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Manhattan => "manhattan",
            Metric::Ncd => "ncd",
        })
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "manhattan" | "mnh" => Ok(Metric::Manhattan),
            "ncd" => Ok(Metric::Ncd),
            _ => Err(Error::UnknownTag {
                kind: "metric",
                value: s.to_owned(),
            }),
        }
    }
}

/// Everything a distance computation needs: test contents, the compressor,
/// and the distance cache.
#[derive(Clone, Copy)]
pub struct DiversityContext<'a> {
    pub artifacts: &'a Artifacts,
    pub compressor: &'a dyn Compressor,
    pub cache: &'a DistanceCache,
}

impl<'a> DiversityContext<'a> {
    pub fn new(
        artifacts: &'a Artifacts,
        compressor: &'a dyn Compressor,
        cache: &'a DistanceCache,
    ) -> Self {
        DiversityContext {
            artifacts,
            compressor,
            cache,
        }
    }

    pub fn artifact(&self, test: &TestId) -> Result<&'a TestArtifact> {
        self.artifacts
            .get(test)
            .ok_or_else(|| Error::MissingArtifact(test.clone()))
    }

    pub fn require_all<'t>(&self, tests: impl IntoIterator<Item = &'t TestId>) -> Result<()> {
        tests.into_iter().try_for_each(|t| self.artifact(t).map(|_| ()))
    }

    fn metric_tag(&self, metric: Metric) -> String {
        match metric {
            Metric::Manhattan => "manhattan".to_owned(),
            Metric::Ncd => format!("ncd:{}", self.compressor.name()),
        }
    }

    /// Compressed length of one artifact's content.
    pub fn item_len(&self, artifact: &TestArtifact) -> usize {
        let name = self.compressor.name();
        if let Some(n) = self.cache.item_len(name, artifact.content_hash) {
            return n;
        }
        let n = self.compressor.compressed_len(&artifact.content);
        self.cache.put_item_len(name, artifact.content_hash, n);
        n
    }

    /// Distance between two tests. The pair is always evaluated with the
    /// smaller id first, which makes NCD symmetric by construction.
    pub fn distance(&self, metric: Metric, x: &TestId, y: &TestId) -> Result<f64> {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        let a = self.artifact(lo)?;
        let b = self.artifact(hi)?;
        let tag = self.metric_tag(metric);
        if let Some(d) = self.cache.get(lo, hi, &tag, a.content_hash, b.content_hash) {
            return Ok(d);
        }
        let d = match metric {
            Metric::Manhattan => manhattan(&a.content, &b.content) as f64,
            Metric::Ncd => {
                let joint = self.compressor.compressed_len(&[&a.content[..], &b.content[..]].concat());
                ncd_from_lengths(joint, self.item_len(a), self.item_len(b))?
            }
        };
        self.cache
            .put(lo, hi, &tag, a.content_hash, b.content_hash, d);
        Ok(d)
    }
}

/// Minimum distance from `test` to the members of `prioritized` other than itself.
pub fn all_distances(
    test: &TestId,
    prioritized: &[TestId],
    metric: Metric,
    ctx: &DiversityContext<'_>,
) -> Result<f64> {
    let mut best: Option<f64> = None;
    for other in prioritized.iter().filter(|p| *p != test) {
        let d = ctx.distance(metric, test, other)?;
        best = Some(best.map_or(d, |b: f64| b.min(d)));
    }
    best.ok_or(Error::EmptyPrioritized)
}
