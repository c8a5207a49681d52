//! Greedy diversity orderings: pairwise max-min and NCD multiset.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::Result;
use crate::model::TestId;

use super::compressor::{CompressionStream, Compressor};
use super::metric::{DiversityContext, Metric};

/// Separates members of the prioritized set when they are concatenated.
pub const SEPARATOR: u8 = 0x00;

/// Deterministic argmax: highest score, then smallest index (candidates are
/// kept sorted by id, so the smallest index is the smallest id).
fn argmax<S: Copy + Send + Sync>(scores: &[S], cmp: impl Fn(&S, &S) -> Ordering + Sync) -> usize {
    (0..scores.len())
        .into_par_iter()
        .reduce_with(|i, j| match cmp(&scores[i], &scores[j]) {
            Ordering::Greater => i,
            Ordering::Less => j,
            Ordering::Equal => i.min(j),
        })
        .expect("non-empty candidate set")
}

fn sorted_unique(pool: &[TestId]) -> Vec<TestId> {
    pool.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Max-min ordering: repeatedly emit the pool test whose minimum
/// distance to everything emitted so far (starting with `already`) is largest.
///
/// With nothing emitted yet, the first pick maximizes the total distance to
/// the rest of the pool. Returns only pool tests.
pub fn greedy_pairwise(
    pool: &[TestId],
    metric: Metric,
    ctx: &DiversityContext<'_>,
    already: &[TestId],
) -> Result<Vec<TestId>> {
    let mut candidates = sorted_unique(pool);
    ctx.require_all(candidates.iter().chain(already))?;
    let mut order = Vec::with_capacity(candidates.len());
    if candidates.len() <= 1 {
        return Ok(candidates);
    }

    // Current minimum distance of every candidate to the emitted set.
    let mut nearest: Vec<f64> = if already.is_empty() {
        let totals = candidates
            .par_iter()
            .map(|t| {
                candidates
                    .iter()
                    .filter(|o| *o != t)
                    .try_fold(0.0, |acc, o| Ok::<_, crate::Error>(acc + ctx.distance(metric, t, o)?))
            })
            .collect::<Result<Vec<f64>>>()?;
        let seed = argmax(&totals, |a, b| a.total_cmp(b));
        let first = candidates.remove(seed);
        let nearest = candidates
            .par_iter()
            .map(|t| ctx.distance(metric, t, &first))
            .collect::<Result<Vec<f64>>>()?;
        order.push(first);
        nearest
    } else {
        candidates
            .par_iter()
            .map(|t| {
                already
                    .iter()
                    .filter(|a| *a != t)
                    .try_fold(f64::INFINITY, |acc, a| Ok::<_, crate::Error>(acc.min(ctx.distance(metric, t, a)?)))
            })
            .collect::<Result<Vec<f64>>>()?
    };

    while !candidates.is_empty() {
        let pick = argmax(&nearest, |a, b| a.total_cmp(b));
        let chosen = candidates.remove(pick);
        nearest.remove(pick);
        let updated = candidates
            .par_iter()
            .zip(nearest.par_iter())
            .map(|(t, &d)| Ok(d.min(ctx.distance(metric, t, &chosen)?)))
            .collect::<Result<Vec<f64>>>()?;
        nearest = updated;
        order.push(chosen);
    }
    Ok(order)
}

/// `C(prioritized ‖ SEPARATOR ‖ candidate)`, the multiset score of a candidate.
pub fn multiset_score(prioritized: &[u8], candidate: &[u8], compressor: &dyn Compressor) -> usize {
    let mut joined = Vec::with_capacity(prioritized.len() + 1 + candidate.len());
    joined.extend_from_slice(prioritized);
    joined.push(SEPARATOR);
    joined.extend_from_slice(candidate);
    compressor.compressed_len(&joined)
}

/// Concatenation of contents joined by [`SEPARATOR`].
pub fn join_contents<'a>(contents: impl IntoIterator<Item = &'a [u8]>) -> Vec<u8> {
    let mut out = Vec::new();
    for (i, c) in contents.into_iter().enumerate() {
        if i > 0 {
            out.push(SEPARATOR);
        }
        out.extend_from_slice(c);
    }
    out
}

/// NCD-multiset ordering: each step appends the pool test that maximizes the
/// compressed size of the prioritized set extended by that test.
///
/// The prioritized set starts as `already`. When it is empty, the first pick
/// is the test whose own content compresses to the most bytes.
pub fn greedy_multiset(
    pool: &[TestId],
    ctx: &DiversityContext<'_>,
    already: &[TestId],
) -> Result<Vec<TestId>> {
    let mut candidates = sorted_unique(pool);
    ctx.require_all(candidates.iter().chain(already))?;
    if candidates.len() <= 1 {
        return Ok(candidates);
    }
    let mut order = Vec::with_capacity(candidates.len());

    // Holds `PS ‖ SEPARATOR` once PS is non-empty.
    let mut stream: Box<dyn CompressionStream + '_> = ctx.compressor.stream();
    for (i, t) in already.iter().enumerate() {
        if i > 0 {
            stream.append(&[SEPARATOR]);
        }
        stream.append(&ctx.artifact(t)?.content);
    }
    if !already.is_empty() {
        stream.append(&[SEPARATOR]);
    } else {
        let own = candidates
            .par_iter()
            .map(|t| ctx.artifact(t).map(|a| ctx.item_len(a)))
            .collect::<Result<Vec<usize>>>()?;
        let first = candidates.remove(argmax(&own, Ord::cmp));
        stream.append(&ctx.artifact(&first)?.content);
        stream.append(&[SEPARATOR]);
        order.push(first);
    }

    while !candidates.is_empty() {
        let scores = candidates
            .par_iter()
            .map(|t| ctx.artifact(t).map(|a| stream.compressed_len_with(&a.content)))
            .collect::<Result<Vec<usize>>>()?;
        let chosen = candidates.remove(argmax(&scores, Ord::cmp));
        if !candidates.is_empty() {
            stream.append(&ctx.artifact(&chosen)?.content);
            stream.append(&[SEPARATOR]);
        }
        order.push(chosen);
    }
    Ok(order)
}
