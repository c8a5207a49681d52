use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::model::{PrioritizedSuite, TestId};

/// APFD from suite size and the 1-based first-detection rank of every fault.
///
/// Evaluated as one integer ratio, `100 (2nm - 2ΣTF + m) / 2nm`, so the value
/// does not depend on summation order.
pub fn apfd_value(n: usize, ranks: &[usize]) -> f64 {
    let m = ranks.len() as u128;
    let n = n as u128;
    let sum: u128 = ranks.iter().map(|&r| r as u128).sum();
    let num = 2 * n * m + m - 2 * sum;
    100.0 * num as f64 / (2 * n * m) as f64
}

/// One build's APFD under one ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct ApfdScore {
    pub n: usize,
    pub m: usize,
    /// First-detection ranks in the order the failing tests were given.
    pub ranks: Vec<usize>,
    pub apfd: f64,
}

pub fn apfd(suite: &PrioritizedSuite, failing: &BTreeSet<TestId>) -> Result<ApfdScore> {
    if failing.is_empty() {
        return Err(Error::NoFailingTests);
    }
    let rank: HashMap<&TestId, usize> = suite
        .order
        .iter()
        .enumerate()
        .map(|(i, t)| (t, i + 1))
        .collect();
    let ranks = failing
        .iter()
        .map(|t| rank.get(t).copied().ok_or_else(|| Error::FailingTestNotInOrder(t.clone())))
        .collect::<Result<Vec<_>>>()?;
    let n = suite.order.len();
    Ok(ApfdScore {
        n,
        m: ranks.len(),
        apfd: apfd_value(n, &ranks),
        ranks,
    })
}
