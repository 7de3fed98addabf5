//! The pattern of maximal area with a given bounding row and weight, built
//! one row at a time from the bottom.
//!
//! One step takes `lam` (length n) and a weight `mu` it majorizes, forms the
//! non-decreasing auxiliary sequence `lt_k = sum(lam) - lam_k`, locates the
//! target `T = mu_1 + ... + mu_{n-1}` between two consecutive `lt` values at
//! a pivot `k0`, and returns `lam` with entry `k0` or `k0+1` removed and the
//! pivot entry adjusted so the row sums to `T`.

use crate::error::{ensure, Error, Result};
use crate::pattern::GtPattern;
use crate::seqcore::{is_non_increasing, majorizes, norm_sq, sum};

fn check_step_input(lam: &[i64], mu: &[i64]) -> Result<()> {
    ensure(!lam.is_empty() && lam.len() == mu.len(), "max_area_step.length", || {
        format!("need equal non-zero lengths, got {} and {}", lam.len(), mu.len())
    })?;
    ensure(is_non_increasing(lam), "NonIncSeq.non_increasing", || {
        format!("{lam:?} is not non-increasing")
    })?;
    ensure(majorizes(lam, mu)?, "max_area_step.majorization", || {
        format!("{lam:?} does not majorize {mu:?}")
    })
}

/// Every 1-based pivot `k0` in `1..n` with `lt_{k0} <= T <= lt_{k0+1}`.
/// More than one exists only when some `lam_k` repeat at the target.
pub fn admissible_pivots(lam: &[i64], mu: &[i64]) -> Result<Vec<usize>> {
    check_step_input(lam, mu)?;
    let n = lam.len();
    let s = sum(lam);
    let t = sum(&mu[..n - 1]);
    Ok((1..n)
        .filter(|&k| s - lam[k - 1] as i128 <= t && t <= s - lam[k] as i128)
        .collect())
}

fn step_at(lam: &[i64], mu: &[i64], k0: usize) -> Vec<i64> {
    let n = lam.len();
    let t = sum(&mu[..n - 1]);
    let head = sum(&lam[..k0 - 1]);
    let tail = sum(&lam[(k0 + 1).min(n)..]);
    let mut row = Vec::with_capacity(n - 1);
    row.extend_from_slice(&lam[..k0 - 1]);
    row.push((t - head - tail) as i64);
    row.extend_from_slice(&lam[k0 + 1..]);
    row
}

/// The row above `lam` in the maximal-area pattern, using the pivot `k0`
/// (1-based). Fails unless `k0` is admissible.
pub fn max_area_step_with_pivot(lam: &[i64], mu: &[i64], k0: usize) -> Result<Vec<i64>> {
    let pivots = admissible_pivots(lam, mu)?;
    ensure(pivots.contains(&k0), "max_area_step.pivot", || {
        format!("pivot {k0} is not admissible; admissible pivots are {pivots:?}")
    })?;
    Ok(step_at(lam, mu, k0))
}

/// The unique row of length n-1 interlacing `lam`, summing to
/// `mu_1 + ... + mu_{n-1}`, whose trapezoidal and triangular areas against
/// `lam` agree. The smallest admissible pivot is used; the result does not
/// depend on that choice.
pub fn max_area_step(lam: &[i64], mu: &[i64]) -> Result<Vec<i64>> {
    let pivots = admissible_pivots(lam, mu)?;
    match pivots.first() {
        None => Ok(Vec::new()),
        Some(&k0) => Ok(step_at(lam, mu, k0)),
    }
}

/// The unique integral pattern of bounding row `lam` and weight `mu` with
/// area `(|lam|^2 - |mu|^2) / 2`, which is strictly more than any other.
pub fn max_area_pattern(lam: &[i64], mu: &[i64]) -> Result<GtPattern> {
    check_step_input(lam, mu)?;
    let n = lam.len();
    let mut rows = vec![lam.to_vec()];
    for m in (1..n).rev() {
        let below = rows.last().expect("non-empty");
        let row = max_area_step(below, &mu[..m + 1]).map_err(|e| Error::Internal(format!("step to length {m}: {e}")))?;
        rows.push(row);
    }
    rows.reverse();
    GtPattern::new(rows).map_err(|e| match e {
        Error::Overflow(_) => e,
        other => Error::Internal(format!("max-area rows fail validation: {other}")),
    })
}

/// `(|lam|^2 - |mu|^2) / 2`, the area of the maximal pattern.
pub fn norm_gap_half(lam: &[i64], mu: &[i64]) -> Result<i64> {
    let gap = norm_sq(lam)? - norm_sq(mu)?;
    ensure(gap >= 0 && gap % 2 == 0, "norm_gap.parity", || {
        format!("norm gap {gap} is negative or odd")
    })?;
    Ok(gap / 2)
}
