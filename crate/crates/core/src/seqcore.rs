//! Integer-sequence predicates: interlacing, weak interlacing, majorization
//! and squared norms.
//!
//! Sums are accumulated in `i128`, so the predicates are exact for any input
//! that fits in memory. Only [`norm_sq`] can overflow its `i64` result.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};

/// A finite non-increasing sequence of integers. `(7,5,3)`, `(2,0)`, `()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct NonIncSeq(Vec<i64>);

impl NonIncSeq {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if let Some(i) = first_increase(&entries) {
            return Err(Error::contract(
                "NonIncSeq.non_increasing",
                format!(
                    "entry {} ({}) is smaller than entry {} ({})",
                    i + 1,
                    entries[i],
                    i + 2,
                    entries[i + 1]
                ),
            ));
        }
        Ok(NonIncSeq(entries))
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }
}

impl Deref for NonIncSeq {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl TryFrom<Vec<i64>> for NonIncSeq {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        NonIncSeq::new(v)
    }
}

impl From<NonIncSeq> for Vec<i64> {
    fn from(s: NonIncSeq) -> Vec<i64> {
        s.0
    }
}

/// Index of the first `i` with `x[i] < x[i+1]`.
pub(crate) fn first_increase(x: &[i64]) -> Option<usize> {
    x.windows(2).position(|w| w[0] < w[1])
}

pub fn is_non_increasing(x: &[i64]) -> bool {
    first_increase(x).is_none()
}

pub(crate) fn sum(x: &[i64]) -> i128 {
    x.iter().map(|&v| v as i128).sum()
}

/// `hi_i >= lo_i >= hi_{i+1}` for every `i`; `lo` is one shorter than `hi`.
pub fn interlaces(lo: &[i64], hi: &[i64]) -> Result<bool> {
    ensure(!hi.is_empty() && lo.len() + 1 == hi.len(), "interlaces.length", || {
        format!("expected lengths n-1 and n, got {} and {}", lo.len(), hi.len())
    })?;
    Ok(lo
        .iter()
        .enumerate()
        .all(|(i, &l)| hi[i] >= l && l >= hi[i + 1]))
}

/// Weak interlacing of the non-increasing `hi` (length n) with the arbitrary
/// tuple `lo` (length n-1).
///
/// For each j the j largest entries of `lo` must sum to at most the first j
/// entries of `hi`, and the j smallest to at least the last j entries of `hi`.
/// Those two extremes bound every j-subset sum, so this is equivalent to the
/// subset-quantified form.
pub fn weakly_interlaces(hi: &[i64], lo: &[i64]) -> Result<bool> {
    ensure(!hi.is_empty() && lo.len() + 1 == hi.len(), "weakly_interlaces.length", || {
        format!("expected lengths n and n-1, got {} and {}", hi.len(), lo.len())
    })?;
    ensure(is_non_increasing(hi), "NonIncSeq.non_increasing", || {
        format!("{hi:?} is not non-increasing")
    })?;
    let mut sorted = lo.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let n = hi.len();
    let m = sorted.len();
    let (mut hi_head, mut hi_tail, mut lo_big, mut lo_small) = (0i128, 0i128, 0i128, 0i128);
    for j in 0..m {
        hi_head += hi[j] as i128;
        hi_tail += hi[n - 1 - j] as i128;
        lo_big += sorted[j] as i128;
        lo_small += sorted[m - 1 - j] as i128;
        if hi_head < lo_big || lo_small < hi_tail {
            return Ok(false);
        }
    }
    Ok(true)
}

fn sorted_desc(x: &[i64]) -> Vec<i64> {
    let mut v = x.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Sorted-descending prefix sums of `x` dominate those of `y`.
pub fn weakly_majorizes(x: &[i64], y: &[i64]) -> Result<bool> {
    ensure(x.len() == y.len(), "majorizes.length", || {
        format!("lengths differ: {} vs {}", x.len(), y.len())
    })?;
    let (xs, ys) = (sorted_desc(x), sorted_desc(y));
    let (mut px, mut py) = (0i128, 0i128);
    for (a, b) in xs.iter().zip(&ys) {
        px += *a as i128;
        py += *b as i128;
        if px < py {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Weak majorization plus equal totals.
pub fn majorizes(x: &[i64], y: &[i64]) -> Result<bool> {
    Ok(weakly_majorizes(x, y)? && sum(x) == sum(y))
}

/// Sum of squares, exact; overflow is reported, never wrapped.
pub fn norm_sq(x: &[i64]) -> Result<i64> {
    x.iter().try_fold(0i64, |acc, &v| {
        v.checked_mul(v)
            .and_then(|sq| acc.checked_add(sq))
            .ok_or(Error::Overflow("norm_sq"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Subset-quantified definition, kept as the oracle.
    fn weakly_interlaces_by_subsets(hi: &[i64], lo: &[i64]) -> bool {
        let n = hi.len();
        let m = lo.len();
        for mask in 1u32..(1 << m) {
            let j = mask.count_ones() as usize;
            let s: i64 = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| lo[i]).sum();
            let head: i64 = hi[..j].iter().sum();
            let tail: i64 = hi[n - j..].iter().sum();
            if !(head >= s && s >= tail) {
                return false;
            }
        }
        true
    }

    fn all_tuples(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (lo..=hi).map(move |v| {
                        let mut t = t.clone();
                        t.push(v);
                        t
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn interlacing_examples() {
        assert!(interlaces(&[7, 4], &[7, 5, 3]).unwrap());
        assert!(interlaces(&[], &[5]).unwrap());
        assert!(!interlaces(&[3], &[2, 1]).unwrap());
        assert_eq!(
            interlaces(&[1, 1], &[3]).unwrap_err().constraint(),
            "interlaces.length"
        );
    }

    #[test]
    fn weak_interlacing_examples() {
        assert!(weakly_interlaces(&[7, 5, 3], &[7, 4]).unwrap());
        assert!(weakly_interlaces(&[4, 2, 0], &[3, 3]).unwrap());
        assert!(weakly_interlaces_by_subsets(&[4, 2, 0], &[3, 3]));
        assert!(!weakly_interlaces(&[2, 1], &[4]).unwrap());
        assert!(weakly_interlaces(&[2, 5], &[1]).is_err());
    }

    #[test]
    fn majorization_examples() {
        assert!(majorizes(&[3, 1], &[2, 2]).unwrap());
        assert!(majorizes(&[4, -1, 2], &[4, -1, 2]).unwrap());
        assert!(!majorizes(&[2, 2], &[3, 1]).unwrap());
        assert!(weakly_majorizes(&[3, 2], &[2, 2]).unwrap());
        assert!(!majorizes(&[3, 2], &[2, 2]).unwrap());
        assert!(majorizes(&[], &[]).unwrap());
        assert!(majorizes(&[1], &[1, 0]).is_err());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm_sq(&[7, 5, 3]).unwrap(), 83);
        assert_eq!(norm_sq(&[]).unwrap(), 0);
        assert_eq!(norm_sq(&[5, 6, 4]).unwrap(), 77);
        assert_eq!(norm_sq(&[i64::MAX]), Err(Error::Overflow("norm_sq")));
        assert_eq!(norm_sq(&[3_037_000_499, 3_037_000_499]), Err(Error::Overflow("norm_sq")));
    }

    #[test]
    fn sorted_reduction_matches_subset_definition() {
        for n in 1..=6usize {
            let his: Vec<Vec<i64>> = all_tuples(n, -4, 4)
                .into_iter()
                .filter(|t| is_non_increasing(t))
                .collect();
            // Full lower grid is 9^(n-1); thin it out for n = 6.
            let step = if n == 6 { 7 } else { 1 };
            let los = all_tuples(n - 1, -4, 4);
            for hi in &his {
                for lo in los.iter().step_by(step) {
                    assert_eq!(
                        weakly_interlaces(hi, lo).unwrap(),
                        weakly_interlaces_by_subsets(hi, lo),
                        "hi={hi:?} lo={lo:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn majorization_gives_complementary_subset_bound() {
        for n in 1..=5usize {
            let tuples = all_tuples(n, -2, 2);
            for x in &tuples {
                let xs = sorted_desc(x);
                for y in &tuples {
                    if !majorizes(x, y).unwrap() {
                        continue;
                    }
                    if is_non_increasing(x) {
                        assert!(weakly_interlaces(x, &y[..n - 1]).unwrap());
                    }
                    for mask in 1u32..(1 << n) {
                        let k = mask.count_ones() as usize;
                        let s: i64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| y[i]).sum();
                        let tail: i64 = xs[n - k..].iter().sum();
                        assert!(s >= tail, "x={x:?} y={y:?} mask={mask:b}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn interlacing_implies_weak_interlacing(
            hi in proptest::collection::vec(-20i64..20, 1..7),
            picks in proptest::collection::vec(0.0f64..1.0, 6),
        ) {
            let mut hi = hi;
            hi.sort_unstable_by(|a, b| b.cmp(a));
            let lo: Vec<i64> = (0..hi.len() - 1)
                .map(|i| hi[i + 1] + ((hi[i] - hi[i + 1]) as f64 * picks[i]).floor() as i64)
                .collect();
            prop_assert!(interlaces(&lo, &hi).unwrap());
            prop_assert!(weakly_interlaces(&hi, &lo).unwrap());
        }

        #[test]
        fn majorization_implies_weak_interlacing_of_prefix(
            lam in proptest::collection::vec(-6i64..6, 1..6),
            mu in proptest::collection::vec(-6i64..6, 1..6),
        ) {
            let n = lam.len().min(mu.len());
            let mut lam = lam[..n].to_vec();
            lam.sort_unstable_by(|a, b| b.cmp(a));
            let mu = &mu[..n];
            if majorizes(&lam, mu).unwrap() {
                prop_assert!(weakly_interlaces(&lam, &mu[..n - 1]).unwrap());
            }
        }
    }
}
