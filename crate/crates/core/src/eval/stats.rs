use serde::Serialize;

use crate::error::{Error, Result};

/// Largest `|x| * |y|` for which the exact null distribution is used.
pub const EXACT_LIMIT: usize = 400;

/// `#{x_i > y_j} + 0.5 #{x_i = y_j}`.
fn dominance(x: &[f64], y: &[f64]) -> f64 {
    let mut ys = y.to_vec();
    ys.sort_by(f64::total_cmp);
    let mut total = 0.0;
    for &v in x {
        let below = ys.partition_point(|&w| w < v);
        let not_above = ys.partition_point(|&w| w <= v);
        total += below as f64 + 0.5 * (not_above - below) as f64;
    }
    total
}

fn check(x: &[f64], y: &[f64]) -> Result<()> {
    if x.is_empty() {
        return Err(Error::EmptySample("x"));
    }
    if y.is_empty() {
        return Err(Error::EmptySample("y"));
    }
    Ok(())
}

/// Probability, with half credit for ties, that a value from `x` exceeds one from `y`.
pub fn vargha_delaney_a(x: &[f64], y: &[f64]) -> Result<f64> {
    check(x, y)?;
    Ok(dominance(x, y) / (x.len() * y.len()) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MannWhitney {
    /// U of `x`: pairs where `x` wins, ties counted half.
    pub u: f64,
    /// Two-sided p-value.
    pub p_value: f64,
    pub exact: bool,
}

/// Two-sided Mann–Whitney U test.
///
/// Uses the exact null distribution when `|x| |y| <= EXACT_LIMIT` and the
/// pooled sample has no ties; otherwise the normal approximation with tie
/// and continuity corrections.
pub fn mann_whitney_u(x: &[f64], y: &[f64]) -> Result<MannWhitney> {
    check(x, y)?;
    let (n, m) = (x.len(), y.len());
    let u = dominance(x, y);
    let mut pooled: Vec<f64> = x.iter().chain(y).copied().collect();
    pooled.sort_by(f64::total_cmp);
    let tie_sizes = tie_runs(&pooled);
    if n * m <= EXACT_LIMIT && tie_sizes.is_empty() {
        return Ok(MannWhitney {
            u,
            p_value: exact_p(n, m, u as usize),
            exact: true,
        });
    }
    Ok(MannWhitney {
        u,
        p_value: normal_p(n, m, u, &tie_sizes),
        exact: false,
    })
}

/// Lengths of every run of equal values longer than one.
fn tie_runs(sorted: &[f64]) -> Vec<usize> {
    let mut runs = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        if j - i > 1 {
            runs.push(j - i);
        }
        i = j;
    }
    runs
}

/// Null distribution of U as counts of rank arrangements, indexed by U.
fn u_counts(n: usize, m: usize) -> Vec<u64> {
    // f[j][u] holds counts for sizes (i, j) while i advances.
    let len = n * m + 1;
    let mut f: Vec<Vec<u64>> = (0..=m)
        .map(|_| {
            let mut v = vec![0u64; len];
            v[0] = 1;
            v
        })
        .collect();
    for i in 1..=n {
        // f(i, 0, u) = [u == 0], already the case.
        for j in 1..=m {
            let mut next = vec![0u64; len];
            for u in 0..=i * j {
                // Largest pooled value comes from x (adds j wins) or from y.
                let from_x = if u >= j { f[j][u - j] } else { 0 };
                let from_y = if u <= i * (j - 1) { f[j - 1][u] } else { 0 };
                next[u] = from_x + from_y;
            }
            f[j] = next;
        }
    }
    f.swap_remove(m)
}

fn exact_p(n: usize, m: usize, u: usize) -> f64 {
    let counts = u_counts(n, m);
    let total: u64 = counts.iter().sum();
    let le: u64 = counts[..=u].iter().sum();
    let ge: u64 = counts[u..].iter().sum();
    (2.0 * le.min(ge) as f64 / total as f64).min(1.0)
}

fn normal_p(n: usize, m: usize, u: f64, tie_sizes: &[usize]) -> f64 {
    let (nf, mf) = (n as f64, m as f64);
    let total = nf + mf;
    let tie_term: f64 = tie_sizes
        .iter()
        .map(|&t| {
            let t = t as f64;
            t * t * t - t
        })
        .sum();
    let var = nf * mf / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
    if var <= 0.0 {
        return 1.0;
    }
    let mean = nf * mf / 2.0;
    let z = ((u - mean).abs() - 0.5) / var.sqrt();
    // Two-sided: 2 (1 - Phi(z)) = erfc(z / sqrt 2).
    libm::erfc(z / std::f64::consts::SQRT_2).min(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StatComparison {
    pub mean_x: f64,
    pub mean_y: f64,
    pub a_measure: f64,
    pub u_statistic: f64,
    pub p_value: f64,
    pub significant: bool,
}

pub const SIGNIFICANCE: f64 = 0.05;

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

pub fn compare(x: &[f64], y: &[f64]) -> Result<StatComparison> {
    let test = mann_whitney_u(x, y)?;
    Ok(StatComparison {
        mean_x: mean(x),
        mean_y: mean(y),
        a_measure: vargha_delaney_a(x, y)?,
        u_statistic: test.u,
        p_value: test.p_value,
        significant: test.p_value < SIGNIFICANCE,
    })
}
