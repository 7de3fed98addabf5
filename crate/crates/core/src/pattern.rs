//! Gelfand-Tsetlin patterns: validated construction, weight, the triangular
//! and trapezoidal area functionals, and exhaustive enumeration.
//!
//! Rows are numbered from 1 at the top; row `j` has `j` entries and the last
//! row is the bounding sequence.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{ensure, Error, Result};
use crate::seqcore::{interlaces, is_non_increasing};

#[derive(Debug, Clone)]
struct Functionals {
    weight: Vec<i64>,
    area: u64,
    traparea: u64,
}

/// An integral GT pattern. Immutable; functionals are computed on first use.
#[derive(Debug, Clone)]
pub struct GtPattern {
    rows: Vec<Vec<i64>>,
    cache: OnceLock<Functionals>,
}

/// Checks row lengths and interlacing, top pair first. The detail of the
/// error names the first offending entry.
pub fn validate(rows: &[Vec<i64>]) -> Result<()> {
    ensure(!rows.is_empty(), "GTPattern.non_empty", || "a pattern has at least one row".into())?;
    for (j, row) in rows.iter().enumerate() {
        ensure(row.len() == j + 1, "GTPattern.row_length", || {
            format!("row {} has length {}, expected {}", j + 1, row.len(), j + 1)
        })?;
    }
    for j in 1..rows.len() {
        let (lo, hi) = (&rows[j - 1], &rows[j]);
        for i in 0..lo.len() {
            ensure(lo[i] <= hi[i], "GTPattern.interlacing", || {
                format!("row {} entry {} exceeds row {} entry {}", j, i + 1, j + 1, i + 1)
            })?;
            ensure(lo[i] >= hi[i + 1], "GTPattern.interlacing", || {
                format!("row {} entry {} is below row {} entry {}", j, i + 1, j + 1, i + 2)
            })?;
        }
    }
    Ok(())
}

/// Entries whose squares, summed over a row and doubled, stay within `i64`.
/// Every functional of the pattern is then representable.
pub(crate) fn check_magnitude(rows: &[Vec<i64>]) -> Result<()> {
    let n = rows.len() as i128;
    let m = rows
        .iter()
        .flatten()
        .map(|&v| (v as i128).abs())
        .max()
        .unwrap_or(0);
    if 2 * n * m * m * (n + 1) > i64::MAX as i128 {
        return Err(Error::Overflow("GTPattern functionals"));
    }
    Ok(())
}

impl GtPattern {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        validate(&rows)?;
        check_magnitude(&rows)?;
        Ok(Self::from_valid(rows))
    }

    pub(crate) fn from_valid(rows: Vec<Vec<i64>>) -> Self {
        debug_assert!(validate(&rows).is_ok());
        GtPattern {
            rows,
            cache: OnceLock::new(),
        }
    }

    /// The pattern whose rows are the prefixes of `lam`: the unique pattern
    /// of weight `lam`.
    pub fn prefix(lam: &[i64]) -> Result<Self> {
        ensure(is_non_increasing(lam), "NonIncSeq.non_increasing", || {
            format!("{lam:?} is not non-increasing")
        })?;
        GtPattern::new((1..=lam.len()).map(|j| lam[..j].to_vec()).collect())
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<i64>> {
        self.rows
    }

    /// Number of rows.
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Row `j`, 1-based.
    pub fn row(&self, j: usize) -> &[i64] {
        &self.rows[j - 1]
    }

    pub fn bounding(&self) -> &[i64] {
        self.rows.last().expect("patterns are non-empty")
    }

    fn functionals(&self) -> &Functionals {
        self.cache.get_or_init(|| {
            let mut weight = Vec::with_capacity(self.rows.len());
            let mut prev = 0i128;
            for row in &self.rows {
                let s: i128 = row.iter().map(|&v| v as i128).sum();
                weight.push((s - prev) as i64);
                prev = s;
            }
            let (mut area, mut traparea) = (0u64, 0u64);
            for w in self.rows.windows(2) {
                area += pair_area(&w[1], &w[0]);
                traparea += pair_traparea(&w[1], &w[0]);
            }
            Functionals { weight, area, traparea }
        })
    }

    /// Entry j is the sum of row j minus the sum of row j-1.
    pub fn weight(&self) -> &[i64] {
        &self.functionals().weight
    }

    pub fn area(&self) -> u64 {
        self.functionals().area
    }

    /// Sum of pair trapezoidal areas over consecutive rows. (The formula in
    /// the literature repeats a row index; the consecutive-pair sum is the
    /// one that telescopes to half the norm gap.)
    pub fn traparea(&self) -> u64 {
        self.functionals().traparea
    }
}

impl PartialEq for GtPattern {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

impl Eq for GtPattern {}

impl Hash for GtPattern {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
    }
}

impl PartialOrd for GtPattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GtPattern {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rows.cmp(&other.rows)
    }
}

impl fmt::Display for GtPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "({})", rows.join(");("))
    }
}

#[derive(Serialize, Deserialize)]
struct PatternDoc {
    rows: Vec<Vec<i64>>,
}

impl Serialize for GtPattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PatternDoc { rows: self.rows.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GtPattern {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = PatternDoc::deserialize(d)?;
        GtPattern::new(doc.rows).map_err(serde::de::Error::custom)
    }
}

// Both assume `lo` interlaces `hi`, so every factor is non-negative.
fn pair_area(hi: &[i64], lo: &[i64]) -> u64 {
    lo.iter()
        .enumerate()
        .map(|(i, &m)| ((hi[i] as i128 - m as i128) * (m as i128 - hi[i + 1] as i128)) as u64)
        .sum()
}

fn pair_traparea(hi: &[i64], lo: &[i64]) -> u64 {
    // sum_{i<=j} (hi_i - lo_i)(lo_j - hi_{j+1}) via a running left sum
    let mut left = 0i128;
    let mut total = 0i128;
    for (j, &m) in lo.iter().enumerate() {
        left += hi[j] as i128 - m as i128;
        total += left * (m as i128 - hi[j + 1] as i128);
    }
    total as u64
}

fn check_pair(hi: &[i64], lo: &[i64]) -> Result<()> {
    ensure(is_non_increasing(hi), "NonIncSeq.non_increasing", || format!("{hi:?}"))?;
    ensure(interlaces(lo, hi)?, "interlaces", || format!("{lo:?} does not interlace {hi:?}"))
}

/// Triangular area of an interlacing pair: `sum (hi_i - lo_i)(lo_i - hi_{i+1})`.
pub fn area_pair(hi: &[i64], lo: &[i64]) -> Result<u64> {
    check_pair(hi, lo)?;
    check_magnitude(&[hi.to_vec()])?;
    Ok(pair_area(hi, lo))
}

/// Trapezoidal area of an interlacing pair:
/// `sum_{i<=j} (hi_i - lo_i)(lo_j - hi_{j+1})`.
pub fn traparea_pair(hi: &[i64], lo: &[i64]) -> Result<u64> {
    check_pair(hi, lo)?;
    check_magnitude(&[hi.to_vec()])?;
    Ok(pair_traparea(hi, lo))
}

/// Every integral row `lo` interlacing `hi`, in descending lexicographic
/// order, optionally restricted to a given sum.
pub(crate) fn rows_below(hi: &[i64], target: Option<i128>) -> Vec<Vec<i64>> {
    let m = hi.len().saturating_sub(1);
    // suffix bounds for pruning on the row sum
    let mut max_rest = vec![0i128; m + 1];
    let mut min_rest = vec![0i128; m + 1];
    for i in (0..m).rev() {
        max_rest[i] = max_rest[i + 1] + hi[i] as i128;
        min_rest[i] = min_rest[i + 1] + hi[i + 1] as i128;
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn go(
        hi: &[i64],
        target: Option<i128>,
        max_rest: &[i128],
        min_rest: &[i128],
        cur: &mut Vec<i64>,
        sum: i128,
        out: &mut Vec<Vec<i64>>,
    ) {
        let i = cur.len();
        if i + 1 == hi.len() {
            if target.is_none_or(|t| t == sum) {
                out.push(cur.clone());
            }
            return;
        }
        for v in (hi[i + 1]..=hi[i]).rev() {
            let s = sum + v as i128;
            if let Some(t) = target {
                if s + max_rest[i + 1] < t {
                    break;
                }
                if s + min_rest[i + 1] > t {
                    continue;
                }
            }
            cur.push(v);
            go(hi, target, max_rest, min_rest, cur, s, out);
            cur.pop();
        }
    }
    go(hi, target, &max_rest, &min_rest, &mut cur, 0, &mut out);
    out
}

/// Lazy enumeration of all integral patterns with a given bounding row.
///
/// Order: row n-1 in descending lexicographic order varies slowest, then row
/// n-2 below it, and so on up to the top row, which varies fastest.
#[derive(Debug, Clone)]
pub struct Patterns {
    // prefix sums of the weight, indexed by row length
    targets: Option<Vec<i128>>,
    max_excess: Option<u64>,
    // stack[d] = rows of length n-d chosen so far, bottom first
    stack: Vec<Vec<i64>>,
    excess: Vec<u64>,
    candidates: Vec<(Vec<Vec<i64>>, usize)>,
    done: bool,
}

impl Patterns {
    fn new(bounding: &[i64], weight: Option<&[i64]>, max_excess: Option<u64>) -> Result<Self> {
        ensure(!bounding.is_empty(), "GTPattern.non_empty", || "empty bounding sequence".into())?;
        ensure(is_non_increasing(bounding), "NonIncSeq.non_increasing", || {
            format!("{bounding:?} is not non-increasing")
        })?;
        check_magnitude(&[bounding.to_vec()])?;
        let n = bounding.len();
        let mut targets = None;
        let mut done = false;
        if let Some(w) = weight {
            ensure(w.len() == n, "Weight.length", || {
                format!("weight has length {}, bounding has length {}", w.len(), n)
            })?;
            let mut pre = vec![0i128; n + 1];
            for j in 0..n {
                pre[j + 1] = pre[j] + w[j] as i128;
            }
            done = pre[n] != bounding.iter().map(|&v| v as i128).sum::<i128>();
            targets = Some(pre);
        }
        let mut it = Patterns {
            targets,
            max_excess,
            stack: vec![bounding.to_vec()],
            excess: vec![0],
            candidates: Vec::new(),
            done,
        };
        if !it.done && n > 1 {
            it.push_level();
        }
        Ok(it)
    }

    fn push_level(&mut self) {
        let hi = self.stack.last().expect("stack holds the bounding row");
        let target = self.targets.as_ref().map(|t| t[hi.len() - 1]);
        self.candidates.push((rows_below(hi, target), 0));
    }

    fn emit(&self) -> GtPattern {
        GtPattern::from_valid(self.stack.iter().rev().cloned().collect())
    }
}

impl Iterator for Patterns {
    type Item = GtPattern;

    fn next(&mut self) -> Option<GtPattern> {
        if self.done {
            return None;
        }
        if self.candidates.is_empty() {
            // single-row bounding: exactly one pattern
            self.done = true;
            return Some(self.emit());
        }
        loop {
            let depth = self.candidates.len();
            // the stack holds `depth` rows plus possibly the one under trial
            if self.stack.len() > depth {
                self.stack.pop();
                self.excess.pop();
            }
            let (list, idx) = self.candidates.last_mut().expect("non-empty");
            if *idx >= list.len() {
                self.candidates.pop();
                if self.candidates.is_empty() {
                    self.done = true;
                    return None;
                }
                continue;
            }
            let row = list[*idx].clone();
            *idx += 1;
            let hi = self.stack.last().expect("bounding row");
            let ex = self.excess.last().copied().unwrap_or(0) + pair_traparea(hi, &row) - pair_area(hi, &row);
            if self.max_excess.is_some_and(|m| ex > m) {
                continue;
            }
            let len = row.len();
            self.stack.push(row);
            self.excess.push(ex);
            if len == 1 {
                return Some(self.emit());
            }
            self.push_level();
        }
    }
}

/// All integral patterns with bounding row `bounding`, optionally only those
/// of the given weight.
pub fn enumerate_patterns(bounding: &[i64], weight: Option<&[i64]>) -> Result<Patterns> {
    Patterns::new(bounding, weight, None)
}

/// As [`enumerate_patterns`], keeping only patterns with
/// `traparea - area <= max_excess`; pruned row by row.
pub fn enumerate_patterns_with_excess(
    bounding: &[i64],
    weight: Option<&[i64]>,
    max_excess: u64,
) -> Result<Patterns> {
    Patterns::new(bounding, weight, Some(max_excess))
}
