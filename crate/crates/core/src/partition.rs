//! Integer partitions, rectangles, complements, colored partitions and the
//! generalized-Durfee breakup of a partition with its inverse.
//!
//! Partitions are stored without trailing zeros. Positions are 1-based in the
//! accessor [`Partition::part`], which returns 0 past the last part, matching
//! the convention that a partition is an eventually-zero sequence.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};

/// A weakly decreasing list of positive integers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros. Fails on an increase.
    pub fn new(mut parts: Vec<u64>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if let Some(i) = parts.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::contract(
                "Partition.non_increasing",
                format!("part {} ({}) is smaller than part {} ({})", i + 1, parts[i], i + 2, parts[i + 1]),
            ));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// Caller guarantees the parts are non-increasing; zeros are stripped.
    pub(crate) fn from_sorted(mut parts: Vec<u64>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// The k-th part, 1-based; zero beyond the last part.
    pub fn part(&self, k: usize) -> u64 {
        if k == 0 {
            return u64::MAX;
        }
        self.parts.get(k - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> u64 {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn fits_in(&self, rect: Rectangle) -> bool {
        self.len() as u64 <= rect.rows && self.largest() <= rect.cols
    }

    /// Complement inside `rect`: part j becomes `b - p_{a+1-j}`.
    pub fn complement(&self, rect: Rectangle) -> Result<Partition> {
        ensure(self.fits_in(rect), "Partition.fits_in", || {
            format!("{self} does not fit into {rect}")
        })?;
        let a = rect.rows as usize;
        let parts = (1..=a).map(|j| rect.cols - self.part(a + 1 - j)).collect();
        Ok(Partition::from_sorted(parts))
    }
}

impl TryFrom<Vec<u64>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u64> {
    fn from(p: Partition) -> Vec<u64> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// `rows` bounds the number of parts, `cols` the largest part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rectangle {
    pub rows: u64,
    pub cols: u64,
}

impl Rectangle {
    pub fn new(rows: u64, cols: u64) -> Self {
        Rectangle { rows, cols }
    }

    pub fn cells(self) -> u64 {
        self.rows * self.cols
    }
}

impl fmt::Display for Rectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.rows, self.cols)
    }
}

/// A side of a box constraint that may be absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bound {
    Finite(u64),
    Unbounded,
}

impl Bound {
    pub fn admits(self, v: u64) -> bool {
        match self {
            Bound::Finite(b) => v <= b,
            Bound::Unbounded => true,
        }
    }

    fn cap(self) -> u64 {
        match self {
            Bound::Finite(b) => b,
            Bound::Unbounded => u64::MAX,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(b) => write!(f, "{b}"),
            Bound::Unbounded => write!(f, "inf"),
        }
    }
}

/// A rectangle whose sides may be unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxBound {
    pub max_parts: Bound,
    pub max_part: Bound,
}

impl BoxBound {
    pub fn admits(&self, p: &Partition) -> bool {
        self.max_parts.admits(p.len() as u64) && self.max_part.admits(p.largest())
    }
}

impl From<Rectangle> for BoxBound {
    fn from(r: Rectangle) -> Self {
        BoxBound {
            max_parts: Bound::Finite(r.rows),
            max_part: Bound::Finite(r.cols),
        }
    }
}

impl fmt::Display for BoxBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.max_parts, self.max_part)
    }
}

/// An ordered tuple of partitions; component j holds the parts of color j+1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColoredPartition(pub Vec<Partition>);

impl ColoredPartition {
    pub fn colors(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(Partition::size).sum()
    }
}

/// Output of the single-integer breakup.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SingleBreak {
    pub a: u64,
    pub b: u64,
    /// At most `a` parts.
    pub inner: Partition,
    /// Largest part at most `b`.
    pub outer: Partition,
}

/// Largest `m >= 0` with `p_m >= m - c`, where `p_0` is infinite.
fn breakpoint(c: i64, p: &Partition) -> u64 {
    let mut m = c.max(0) as u64;
    while p.part(m as usize + 1) as i128 >= (m as i128 + 1) - c as i128 {
        m += 1;
    }
    m
}

/// Breaks `p` along the line of slope one shifted by `c`. For `c = 0` this
/// is the Durfee square: `a = b` is its side.
pub fn break_single(c: i64, p: &Partition) -> SingleBreak {
    let a = breakpoint(c, p);
    let b = (a as i128 - c as i128) as u64;
    // past the last part of p every entry is 0 and b is 0 too
    let inner = (1..=(a as usize).min(p.len())).map(|k| p.part(k) - b).collect();
    let outer = p.parts.iter().skip(a as usize).copied().collect();
    SingleBreak {
        a,
        b,
        inner: Partition::from_sorted(inner),
        outer: Partition::from_sorted(outer),
    }
}

/// Inverse of [`break_single`]: returns `(c, p)`.
pub fn break_single_inv(br: &SingleBreak) -> Result<(i64, Partition)> {
    ensure(br.inner.len() as u64 <= br.a, "SingleBreak.inner_parts", || {
        format!("{} has more than a = {} parts", br.inner, br.a)
    })?;
    ensure(br.outer.largest() <= br.b, "SingleBreak.outer_part", || {
        format!("{} has a part larger than b = {}", br.outer, br.b)
    })?;
    let c = i64::try_from(br.a as i128 - br.b as i128).map_err(|_| Error::Overflow("break_single_inv"))?;
    let rows = if br.b == 0 { br.inner.len() } else { br.a as usize };
    let mut parts: Vec<u64> = (1..=rows).map(|k| br.inner.part(k) + br.b).collect();
    parts.extend_from_slice(br.outer.parts());
    Ok((c, Partition::from_sorted(parts)))
}

/// Output of the breakup along a non-decreasing sequence `c_1 <= ... <= c_{t-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BreakResult {
    /// Non-decreasing, length t-1.
    pub a: Vec<u64>,
    /// Non-increasing, length t-1.
    pub b: Vec<u64>,
    /// t pieces; piece j fits `(a_j - a_{j-1}, b_{j-1} - b_j)` with
    /// `a_0 = 0`, `b_0 = inf`, `a_t = inf`, `b_t = 0`.
    pub pieces: Vec<Partition>,
}

impl BreakResult {
    /// The box that piece `j` (0-based) must fit into.
    pub fn piece_bound(&self, j: usize) -> BoxBound {
        bracket_bound(&self.a, &self.b, j)
    }

    pub fn check(&self) -> Result<()> {
        let t = self.pieces.len();
        ensure(t >= 1 && self.a.len() + 1 == t && self.b.len() + 1 == t, "BreakResult.lengths", || {
            format!(
                "need t pieces with t-1 entries in a and b; got {} pieces, {} and {}",
                t,
                self.a.len(),
                self.b.len()
            )
        })?;
        ensure(self.a.windows(2).all(|w| w[0] <= w[1]), "BreakResult.a_non_decreasing", || {
            format!("{:?}", self.a)
        })?;
        ensure(self.b.windows(2).all(|w| w[0] >= w[1]), "BreakResult.b_non_increasing", || {
            format!("{:?}", self.b)
        })?;
        for (j, piece) in self.pieces.iter().enumerate() {
            let bound = self.piece_bound(j);
            ensure(bound.admits(piece), "BreakResult.piece_fits", || {
                format!("piece {} = {} does not fit {}", j + 1, piece, bound)
            })?;
        }
        Ok(())
    }
}

pub(crate) fn bracket_bound(a: &[u64], b: &[u64], j: usize) -> BoxBound {
    let t = a.len() + 1;
    let a_prev = if j == 0 { 0 } else { a[j - 1] };
    let max_parts = if j + 1 == t { Bound::Unbounded } else { Bound::Finite(a[j] - a_prev) };
    let b_next = if j + 1 == t { 0 } else { b[j] };
    let max_part = if j == 0 { Bound::Unbounded } else { Bound::Finite(b[j - 1] - b_next) };
    BoxBound { max_parts, max_part }
}

/// Breakup along a non-decreasing sequence; one entry gives [`break_single`]
/// and an empty sequence returns `p` as the only piece.
pub fn break_multi(c: &[i64], p: &Partition) -> Result<BreakResult> {
    ensure(c.windows(2).all(|w| w[0] <= w[1]), "break_multi.c_non_decreasing", || {
        format!("{c:?} is not non-decreasing")
    })?;
    let a: Vec<u64> = c.iter().map(|&cj| breakpoint(cj, p)).collect();
    let b: Vec<u64> = a
        .iter()
        .zip(c)
        .map(|(&aj, &cj)| (aj as i128 - cj as i128) as u64)
        .collect();
    let t = c.len() + 1;
    let mut pieces = Vec::with_capacity(t);
    for j in 0..t {
        let start = if j == 0 { 0 } else { a[j - 1] as usize };
        let (end, shift) = if j + 1 == t { (p.len(), 0) } else { ((a[j] as usize).min(p.len()), b[j]) };
        let parts = (start + 1..=end).map(|k| p.part(k) - shift).collect();
        pieces.push(Partition::from_sorted(parts));
    }
    Ok(BreakResult { a, b, pieces })
}

/// Inverse of [`break_multi`]: returns `(c, p)`.
pub fn break_multi_inv(r: &BreakResult) -> Result<(Vec<i64>, Partition)> {
    r.check()?;
    let c = r
        .a
        .iter()
        .zip(&r.b)
        .map(|(&a, &b)| i64::try_from(a as i128 - b as i128).map_err(|_| Error::Overflow("break_multi_inv")))
        .collect::<Result<Vec<_>>>()?;
    Ok((c, reassemble(&r.a, &r.b, &r.pieces)))
}

/// Stacks the pieces back: rows `a_{j-1}+1 ..= a_j` get piece j plus `b_j`.
pub(crate) fn reassemble(a: &[u64], b: &[u64], pieces: &[Partition]) -> Partition {
    let t = pieces.len();
    let mut parts = Vec::new();
    for (j, piece) in pieces.iter().enumerate() {
        if j + 1 == t {
            parts.extend_from_slice(piece.parts());
        } else {
            let mut rows = (a[j] - if j == 0 { 0 } else { a[j - 1] }) as usize;
            if b[j] == 0 {
                rows = rows.min(piece.len());
            }
            parts.extend((1..=rows).map(|k| piece.part(k) + b[j]));
        }
    }
    Partition::from_sorted(parts)
}

/// Partitions inside a (possibly unbounded) box with size in `[min, max]`,
/// produced lazily in descending lexicographic order of the zero-padded part
/// lists. The box must be bounded in at least one direction or `max` finite.
#[derive(Debug, Clone)]
pub struct BoxPartitions {
    max_parts: u64,
    min_size: u64,
    max_size: u64,
    parts: Vec<u64>,
    sum: u64,
    // next candidate value for the part after position `parts.len()`
    next: Vec<u64>,
    done: bool,
}

impl BoxPartitions {
    pub fn new(bound: BoxBound, min_size: u64, max_size: u64) -> Self {
        let max_parts = bound.max_parts.cap();
        let max_part = bound.max_part.cap();
        let capacity = max_parts.saturating_mul(max_part);
        let max_size = max_size.min(capacity);
        let done = min_size > max_size;
        BoxPartitions {
            max_parts: max_parts.min(max_size),
            min_size,
            max_size,
            parts: Vec::new(),
            sum: 0,
            next: vec![max_part.min(max_size)],
            done,
        }
    }
}

impl Iterator for BoxPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        loop {
            let depth = self.parts.len();
            let mut chosen = None;
            if (depth as u64) < self.max_parts {
                let slots = self.max_parts - depth as u64;
                let v = self.next[depth].min(self.max_size - self.sum);
                // smaller values cannot reach min_size either, so one test decides
                if v >= 1 && self.sum.saturating_add(v.saturating_mul(slots)) >= self.min_size {
                    chosen = Some(v);
                    self.next[depth] = v - 1;
                } else {
                    self.next[depth] = 0;
                }
            }
            match chosen {
                Some(v) => {
                    self.parts.push(v);
                    self.sum += v;
                    let cap = v.min(self.max_size - self.sum);
                    if self.next.len() <= depth + 1 {
                        self.next.push(cap);
                    } else {
                        self.next[depth + 1] = cap;
                    }
                }
                None => {
                    let out = (self.sum >= self.min_size).then(|| Partition::from_sorted(self.parts.clone()));
                    match self.parts.pop() {
                        Some(v) => self.sum -= v,
                        None => self.done = true,
                    }
                    if out.is_some() {
                        return out;
                    }
                    if self.done {
                        return None;
                    }
                }
            }
        }
    }
}

/// Every partition fitting `rect`, in descending lexicographic order of the
/// part lists padded to `rect.rows` entries: `(b,..,b)` first, `()` last.
pub fn enumerate_in_box(rect: Rectangle) -> BoxPartitions {
    BoxPartitions::new(rect.into(), 0, u64::MAX)
}

/// Partitions of `n` fitting the given bound, descending lexicographic order.
pub fn partitions_of_in(n: u64, bound: BoxBound) -> BoxPartitions {
    BoxPartitions::new(bound, n, n)
}

/// All partitions of `n`, descending lexicographic order.
pub fn partitions_of(n: u64) -> BoxPartitions {
    partitions_of_in(
        n,
        BoxBound {
            max_parts: Bound::Unbounded,
            max_part: Bound::Unbounded,
        },
    )
}

/// All r-tuples of partitions of total size `d`.
///
/// Order: size vectors `(n_1,..,n_r)` in descending lexicographic order, and
/// within one size vector an odometer over [`partitions_of`] lists with the
/// last color varying fastest.
pub fn enumerate_colored(r: usize, d: u64) -> ColoredPartitions {
    ColoredPartitions::new(r, d)
}

#[derive(Debug, Clone)]
pub struct ColoredPartitions {
    sizes: Vec<u64>,
    lists: Vec<Vec<Partition>>,
    idx: Vec<usize>,
    done: bool,
}

impl ColoredPartitions {
    fn new(r: usize, d: u64) -> Self {
        let mut sizes = vec![0; r];
        if r == 0 {
            return ColoredPartitions {
                sizes,
                lists: vec![],
                idx: vec![],
                done: d != 0,
            };
        }
        sizes[0] = d;
        let mut it = ColoredPartitions {
            sizes,
            lists: vec![],
            idx: vec![0; r],
            done: false,
        };
        it.load();
        it
    }

    fn load(&mut self) {
        self.lists = self.sizes.iter().map(|&n| partitions_of(n).collect()).collect();
        self.idx.iter_mut().for_each(|i| *i = 0);
    }

    fn advance_sizes(&mut self) -> bool {
        let r = self.sizes.len();
        if r < 2 {
            return false;
        }
        let Some(i) = (0..r - 1).rev().find(|&i| self.sizes[i] > 0) else {
            return false;
        };
        let rest: u64 = self.sizes[i + 1..].iter().sum();
        self.sizes[i] -= 1;
        self.sizes[i + 1] = rest + 1;
        self.sizes[i + 2..].iter_mut().for_each(|s| *s = 0);
        self.load();
        true
    }
}

impl Iterator for ColoredPartitions {
    type Item = ColoredPartition;

    fn next(&mut self) -> Option<ColoredPartition> {
        if self.done {
            return None;
        }
        let item = ColoredPartition(self.idx.iter().zip(&self.lists).map(|(&i, l)| l[i].clone()).collect());
        // odometer step, last color fastest
        let mut pos = self.idx.len();
        loop {
            if pos == 0 {
                if !self.advance_sizes() {
                    self.done = true;
                }
                break;
            }
            pos -= 1;
            self.idx[pos] += 1;
            if self.idx[pos] < self.lists[pos].len() {
                break;
            }
            self.idx[pos] = 0;
        }
        Some(item)
    }
}
