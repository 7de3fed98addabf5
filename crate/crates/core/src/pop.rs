//! Partition-overlaid patterns (POPs): a GT pattern with one partition per
//! entry above the bounding row, each fitting the rectangle spanned by that
//! entry and its two neighbours in the row below.
//!
//! Overlay indexing is `overlay[j-1][i-1]` for `1 <= i <= j <= r`, where the
//! pattern has `r+1` rows. The rectangle of `(j,i)` is
//! `(lam^{j+1}_i - lam^j_i, lam^j_i - lam^{j+1}_{i+1})`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{ensure, Error, Result};
use crate::maxarea::norm_gap_half;
use crate::partition::{BoxPartitions, Partition, Rectangle};
use crate::pattern::{check_magnitude, enumerate_patterns, enumerate_patterns_with_excess, GtPattern, Patterns};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pop {
    pattern: GtPattern,
    overlay: Vec<Vec<Partition>>,
}

/// Rectangle of position `(j,i)`, both 1-based, in a pattern given by rows.
pub(crate) fn rectangle_in(rows: &[Vec<i64>], j: usize, i: usize) -> Rectangle {
    let (row, below) = (&rows[j - 1], &rows[j]);
    Rectangle::new((below[i - 1] - row[i - 1]) as u64, (row[i - 1] - below[i]) as u64)
}

pub(crate) fn check_overlay_shape(r: usize, overlay: &[Vec<Partition>]) -> Result<()> {
    ensure(overlay.len() == r, "POP.overlay_shape", || {
        format!("overlay has {} rows, expected {}", overlay.len(), r)
    })?;
    for (j, row) in overlay.iter().enumerate() {
        ensure(row.len() == j + 1, "POP.overlay_shape", || {
            format!("overlay row {} has {} partitions, expected {}", j + 1, row.len(), j + 1)
        })?;
    }
    Ok(())
}

pub(crate) fn fit_diagnostic(j: usize, i: usize, p: &Partition, rect: Rectangle) -> String {
    let why = if p.len() as u64 > rect.rows {
        format!("{} parts exceed {}", p.len(), rect.rows)
    } else {
        format!("part {} exceeds {}", p.largest(), rect.cols)
    };
    format!("overlay ({j},{i}) = {p} does not fit rectangle {rect}: {why}")
}

impl Pop {
    pub fn new(pattern: GtPattern, overlay: Vec<Vec<Partition>>) -> Result<Self> {
        let r = pattern.n() - 1;
        check_overlay_shape(r, &overlay)?;
        for j in 1..=r {
            for i in 1..=j {
                let rect = rectangle_in(pattern.rows(), j, i);
                let p = &overlay[j - 1][i - 1];
                ensure(p.fits_in(rect), "POP.overlay_fits", || fit_diagnostic(j, i, p, rect))?;
            }
        }
        Ok(Pop { pattern, overlay })
    }

    pub fn from_rows(rows: Vec<Vec<i64>>, overlay: Vec<Vec<Partition>>) -> Result<Self> {
        Pop::new(GtPattern::new(rows)?, overlay)
    }

    pub(crate) fn from_valid(pattern: GtPattern, overlay: Vec<Vec<Partition>>) -> Self {
        Pop { pattern, overlay }
    }

    /// The pattern with every overlay partition empty.
    pub fn empty_overlay(pattern: GtPattern) -> Self {
        let overlay = (1..pattern.n()).map(|j| vec![Partition::empty(); j]).collect();
        Pop { pattern, overlay }
    }

    /// The pattern with every rectangle filled.
    pub fn full_overlay(pattern: GtPattern) -> Self {
        let overlay = (1..pattern.n())
            .map(|j| {
                (1..=j)
                    .map(|i| {
                        let rect = rectangle_in(pattern.rows(), j, i);
                        Partition::from_sorted(vec![rect.cols; rect.rows as usize])
                    })
                    .collect()
            })
            .collect();
        Pop { pattern, overlay }
    }

    /// Prefix rows, empty overlay: the only POP of weight `lam`.
    pub fn generator(lam: &[i64]) -> Result<Self> {
        Ok(Pop::empty_overlay(GtPattern::prefix(lam)?))
    }

    pub fn pattern(&self) -> &GtPattern {
        &self.pattern
    }

    pub fn overlay(&self) -> &[Vec<Partition>] {
        &self.overlay
    }

    /// Number of rows above the bounding row.
    pub fn r(&self) -> usize {
        self.pattern.n() - 1
    }

    /// Partition at `(j,i)`, 1-based.
    pub fn part_at(&self, j: usize, i: usize) -> &Partition {
        &self.overlay[j - 1][i - 1]
    }

    pub fn rectangle(&self, j: usize, i: usize) -> Rectangle {
        rectangle_in(self.pattern.rows(), j, i)
    }

    pub fn bounding(&self) -> &[i64] {
        self.pattern.bounding()
    }

    pub fn weight(&self) -> &[i64] {
        self.pattern.weight()
    }

    pub fn boxes(&self) -> u64 {
        self.overlay.iter().flatten().map(Partition::size).sum()
    }

    /// `traparea(pattern) - boxes`.
    pub fn depth(&self) -> u64 {
        self.pattern.traparea() - self.boxes()
    }

    /// `traparea - area` of the pattern; equals the proper trapezoidal area.
    pub fn proptrap(&self) -> u64 {
        self.pattern.traparea() - self.pattern.area()
    }

    pub fn into_parts(self) -> (GtPattern, Vec<Vec<Partition>>) {
        (self.pattern, self.overlay)
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct PopDoc {
    pub pattern: Vec<Vec<i64>>,
    pub overlay: Vec<Vec<Partition>>,
}

impl Serialize for Pop {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PopDoc {
            pattern: self.pattern.rows().to_vec(),
            overlay: self.overlay.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Pop {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = PopDoc::deserialize(d)?;
        Pop::from_rows(doc.pattern, doc.overlay).map_err(serde::de::Error::custom)
    }
}

/// Optional restrictions for [`enumerate_pops`]. All given ones must hold.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PopFilter {
    pub weight: Option<Vec<i64>>,
    pub boxes: Option<u64>,
    pub depth: Option<u64>,
    /// `proptrap + boxes`, the index of the colored-partition bijection.
    pub proptrap_plus_boxes: Option<u64>,
}

impl PopFilter {
    /// The box count forced on POPs over `p`, or `Err(())` if the filters
    /// cannot all hold for that pattern.
    fn target(&self, p: &GtPattern) -> std::result::Result<Option<u64>, ()> {
        let mut t: Option<u64> = None;
        let mut meet = |v: Option<u64>| -> std::result::Result<(), ()> {
            if let Some(v) = v {
                match t {
                    Some(old) if old != v => return Err(()),
                    _ => t = Some(v),
                }
            }
            Ok(())
        };
        meet(self.boxes)?;
        if let Some(d) = self.depth {
            meet(Some(p.traparea().checked_sub(d).ok_or(())?))?;
        }
        if let Some(d) = self.proptrap_plus_boxes {
            meet(Some(d.checked_sub(p.traparea() - p.area()).ok_or(())?))?;
        }
        match t {
            Some(v) if v > p.area() => Err(()),
            _ => Ok(t),
        }
    }
}

/// Cartesian product of lists with an optional fixed total size. Yields
/// index vectors, first list slowest, in the order of the lists.
#[derive(Debug, Clone)]
struct SizedProduct {
    sizes: Vec<Vec<u64>>,
    target: Option<u64>,
    cap_after: Vec<u64>,
    idx: Vec<usize>,
    sums: Vec<u64>,
    started: bool,
    done: bool,
}

impl SizedProduct {
    fn new(sizes: Vec<Vec<u64>>, target: Option<u64>) -> Self {
        let m = sizes.len();
        let mut cap_after = vec![0u64; m];
        for l in (0..m.saturating_sub(1)).rev() {
            cap_after[l] = cap_after[l + 1] + sizes[l + 1].iter().copied().max().unwrap_or(0);
        }
        SizedProduct {
            sizes,
            target,
            cap_after,
            idx: vec![0; m],
            sums: vec![0; m + 1],
            started: false,
            done: false,
        }
    }

    fn search(&mut self, mut level: usize, mut resume: bool) -> bool {
        let m = self.sizes.len();
        loop {
            if level == m {
                return true;
            }
            let start = if resume { self.idx[level] + 1 } else { 0 };
            let before = self.sums[level];
            let found = (start..self.sizes[level].len()).find(|&c| {
                let s = before + self.sizes[level][c];
                self.target.is_none_or(|t| s <= t && s + self.cap_after[level] >= t)
            });
            match found {
                Some(c) => {
                    self.idx[level] = c;
                    self.sums[level + 1] = before + self.sizes[level][c];
                    level += 1;
                    resume = false;
                }
                None => {
                    if level == 0 {
                        return false;
                    }
                    level -= 1;
                    resume = true;
                }
            }
        }
    }
}

impl Iterator for SizedProduct {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let m = self.sizes.len();
        let ok = if m == 0 {
            self.done = true;
            self.target.is_none_or(|t| t == 0)
        } else if !self.started {
            self.started = true;
            self.search(0, false)
        } else {
            self.search(m - 1, true)
        };
        if !ok {
            self.done = true;
            return None;
        }
        Some(self.idx.clone())
    }
}

struct Overlays {
    pattern: GtPattern,
    lists: Vec<Vec<Partition>>,
    product: SizedProduct,
}

impl Overlays {
    fn new(pattern: GtPattern, target: Option<u64>) -> Self {
        let r = pattern.n() - 1;
        let mut lists = Vec::new();
        for j in 1..=r {
            for i in 1..=j {
                let rect = rectangle_in(pattern.rows(), j, i);
                let max = target.unwrap_or(u64::MAX);
                lists.push(BoxPartitions::new(rect.into(), 0, max).collect::<Vec<_>>());
            }
        }
        let sizes = lists.iter().map(|l| l.iter().map(Partition::size).collect()).collect();
        Overlays {
            pattern,
            lists,
            product: SizedProduct::new(sizes, target),
        }
    }

    fn next_pop(&mut self) -> Option<Pop> {
        let idx = self.product.next()?;
        let r = self.pattern.n() - 1;
        let mut flat = idx.iter().zip(&self.lists).map(|(&k, l)| l[k].clone());
        let overlay = (1..=r).map(|j| flat.by_ref().take(j).collect()).collect();
        Some(Pop::from_valid(self.pattern.clone(), overlay))
    }
}

/// Lazy POP enumeration. Patterns come in the order of
/// [`crate::pattern::enumerate_patterns`]; for each, overlays are the product
/// of the per-rectangle lists of [`crate::partition::enumerate_in_box`],
/// position `(1,1)` slowest, then `(2,1)`, `(2,2)`, and so on.
pub struct Pops {
    patterns: Patterns,
    filter: PopFilter,
    current: Option<Overlays>,
}

impl Iterator for Pops {
    type Item = Pop;

    fn next(&mut self) -> Option<Pop> {
        loop {
            if let Some(cur) = self.current.as_mut() {
                if let Some(p) = cur.next_pop() {
                    return Some(p);
                }
            }
            let pattern = self.patterns.next()?;
            self.current = match self.filter.target(&pattern) {
                Ok(target) => Some(Overlays::new(pattern, target)),
                Err(()) => None,
            };
        }
    }
}

pub fn enumerate_pops(bounding: &[i64], filter: PopFilter) -> Result<Pops> {
    let weight = filter.weight.as_deref();
    let patterns = match filter.proptrap_plus_boxes {
        Some(d) => enumerate_patterns_with_excess(bounding, weight, d)?,
        None => enumerate_patterns(bounding, weight)?,
    };
    Ok(Pops {
        patterns,
        filter,
        current: None,
    })
}

/// One weight of a graded character with the multiplicity at each grade.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharTerm {
    pub weight: Vec<i64>,
    pub coeffs: Vec<u64>,
}

/// Weights in descending lexicographic order, each with its grade
/// multiplicities; trailing zero coefficients are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedCharacter {
    pub terms: Vec<CharTerm>,
}

impl GradedCharacter {
    pub fn total(&self) -> u128 {
        self.terms.iter().flat_map(|t| &t.coeffs).map(|&c| c as u128).sum()
    }

    pub fn coeffs(&self, weight: &[i64]) -> Option<&[u64]> {
        self.terms.iter().find(|t| t.weight == weight).map(|t| t.coeffs.as_slice())
    }
}

fn poly_add_shifted(acc: &mut Vec<u64>, p: &[u64], shift: usize) -> Result<()> {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (k, &c) in p.iter().enumerate() {
        acc[k + shift] = acc[k + shift].checked_add(c).ok_or(Error::Overflow("graded character"))?;
    }
    Ok(())
}

fn poly_mul(x: &[u64], y: &[u64]) -> Result<Vec<u64>> {
    let mut out = vec![0u64; x.len() + y.len() - 1];
    for (i, &a) in x.iter().enumerate() {
        for (j, &b) in y.iter().enumerate() {
            let prod = a.checked_mul(b).ok_or(Error::Overflow("graded character"))?;
            out[i + j] = out[i + j].checked_add(prod).ok_or(Error::Overflow("graded character"))?;
        }
    }
    Ok(out)
}

/// Size generating function of partitions fitting `(a,b)`, by
/// `G(a,b) = G(a-1,b) + t^a G(a,b-1)`.
fn box_polynomial(a: u64, b: u64, memo: &mut HashMap<(u64, u64), Vec<u64>>) -> Result<Vec<u64>> {
    if a == 0 || b == 0 {
        return Ok(vec![1]);
    }
    if let Some(p) = memo.get(&(a, b)) {
        return Ok(p.clone());
    }
    let mut out = box_polynomial(a - 1, b, memo)?;
    let shifted = box_polynomial(a, b - 1, memo)?;
    poly_add_shifted(&mut out, &shifted, a as usize)?;
    memo.insert((a, b), out.clone());
    Ok(out)
}

/// Graded character of the local Weyl module with highest weight given by
/// `bounding`: the weight-and-grade count of all POPs with that bounding row.
/// Each pattern contributes the product of its rectangles' box polynomials.
pub fn graded_character(bounding: &[i64]) -> Result<GradedCharacter> {
    let mut memo = HashMap::new();
    let mut by_weight: HashMap<Vec<i64>, Vec<u64>> = HashMap::new();
    for p in enumerate_patterns(bounding, None)? {
        let rows = p.rows();
        let mut poly = vec![1u64];
        for j in 1..rows.len() {
            for i in 1..=j {
                let rect = rectangle_in(rows, j, i);
                poly = poly_mul(&poly, &box_polynomial(rect.rows, rect.cols, &mut memo)?)?;
            }
        }
        poly_add_shifted(by_weight.entry(p.weight().to_vec()).or_default(), &poly, 0)?;
    }
    let mut terms: Vec<CharTerm> = by_weight
        .into_iter()
        .map(|(weight, mut coeffs)| {
            while coeffs.len() > 1 && coeffs.last() == Some(&0) {
                coeffs.pop();
            }
            CharTerm { weight, coeffs }
        })
        .collect();
    terms.sort_by(|x, y| y.weight.cmp(&x.weight));
    Ok(GradedCharacter { terms })
}

/// Largest grade at a weight, how many POPs attain it, and the predicted
/// value `(|bounding|^2 - |w|^2)/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopGrade {
    pub max_boxes: u64,
    pub count: u64,
    pub predicted: i64,
    /// `max_boxes == predicted` and `count == 1`.
    pub consistent: bool,
}

/// The top grade is attained only by full overlays, since a partition with
/// as many boxes as its rectangle is the rectangle itself. So it is the
/// largest pattern area at this weight, counted once per pattern attaining it.
pub fn top_grade_profile(bounding: &[i64], w: &[i64]) -> Result<TopGrade> {
    let mut best: Option<(u64, u64)> = None;
    for p in enumerate_patterns(bounding, Some(w))? {
        let a = p.area();
        best = match best {
            Some((m, c)) if a < m => Some((m, c)),
            Some((m, c)) if a == m => Some((m, c + 1)),
            _ => Some((a, 1)),
        };
    }
    let (max_boxes, count) = best.ok_or_else(|| Error::WeightAbsent(w.to_vec()))?;
    let predicted = norm_gap_half(bounding, w)?;
    Ok(TopGrade {
        max_boxes,
        count,
        predicted,
        consistent: count == 1 && predicted >= 0 && max_boxes == predicted as u64,
    })
}

/// `(ell, s)` for one position: `s` weakly increasing of length `ell`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClEntry {
    pub ell: u64,
    pub s: Vec<u64>,
}

/// A Chari-Loktev index, `entries[j-1][i-1]` for `1 <= i <= j <= r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClIndex {
    pub entries: Vec<Vec<ClEntry>>,
}

impl ClIndex {
    pub fn r(&self) -> usize {
        self.entries.len()
    }

    /// `ell_{ij}`, 1-based.
    pub fn ell(&self, i: usize, j: usize) -> u64 {
        self.entries[j - 1][i - 1].ell
    }

    /// Right-hand side of the bound on the largest entry of `s_{ij}`:
    /// `m_i + sum_{s>j} ell_{i+1,s} - sum_{s>=j} ell_{i,s}`, `m_i = lam_i - lam_{i+1}`.
    pub fn bound(&self, lam: &[i64], i: usize, j: usize) -> i128 {
        let r = self.r();
        let m_i = lam[i - 1] as i128 - lam[i] as i128;
        let plus: i128 = (j + 1..=r).map(|s| self.ell(i + 1, s) as i128).sum();
        let minus: i128 = (j..=r).map(|s| self.ell(i, s) as i128).sum();
        m_i + plus - minus
    }
}

pub fn to_cl_index(p: &Pop) -> ClIndex {
    let rows = p.pattern().rows();
    let entries = (1..=p.r())
        .map(|j| {
            (1..=j)
                .map(|i| {
                    let ell = (rows[j][i - 1] - rows[j - 1][i - 1]) as u64;
                    let part = p.part_at(j, i);
                    let mut s = vec![0u64; ell as usize - part.len()];
                    s.extend(part.parts().iter().rev());
                    ClEntry { ell, s }
                })
                .collect()
        })
        .collect();
    ClIndex { entries }
}

pub fn from_cl_index(bounding: &[i64], c: &ClIndex) -> Result<Pop> {
    ensure(!bounding.is_empty(), "CLIndex.shape", || "empty bounding sequence".into())?;
    let r = bounding.len() - 1;
    ensure(c.entries.len() == r && c.entries.iter().enumerate().all(|(j, row)| row.len() == j + 1), "CLIndex.shape", || {
        format!("expected a triangle with {r} rows")
    })?;
    check_magnitude(&[bounding.to_vec()])?;
    for j in 1..=r {
        for i in 1..=j {
            let e = &c.entries[j - 1][i - 1];
            ensure(e.s.len() as u64 == e.ell, "CLIndex.s_length", || {
                format!("s at (i,j) = ({i},{j}) has length {}, ell is {}", e.s.len(), e.ell)
            })?;
            ensure(e.s.windows(2).all(|w| w[0] <= w[1]), "CLIndex.s_increasing", || {
                format!("s at (i,j) = ({i},{j}) is not weakly increasing: {:?}", e.s)
            })?;
            if let Some(&top) = e.s.last() {
                let bound = c.bound(bounding, i, j);
                ensure(top as i128 <= bound, "CLIndex.clineq", || {
                    format!("at (i,j) = ({i},{j}) the largest entry {top} exceeds the bound {bound}")
                })?;
            }
        }
    }
    let mut rows = vec![bounding.to_vec()];
    for j in (1..=r).rev() {
        let below = rows.last().expect("non-empty");
        let row = (1..=j)
            .map(|i| {
                let v = below[i - 1] as i128 - c.entries[j - 1][i - 1].ell as i128;
                i64::try_from(v).map_err(|_| Error::Overflow("from_cl_index"))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    rows.reverse();
    let overlay = c
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| Partition::from_sorted(e.s.iter().rev().copied().collect()))
                .collect()
        })
        .collect();
    // the bound makes this a POP; a failure here is reported as a contract
    // violation of the index since the input is what is malformed
    Pop::from_rows(rows, overlay).map_err(|e| match e {
        Error::Overflow(_) => e,
        other => Error::contract("CLIndex.clineq", other.to_string()),
    })
}

/// Text form of the CL monomial: factors `(x-[i,j]⊗1)^(n)` and
/// `(x-[i,j]⊗t^k)^(n)`, where `n` counts the parts equal to `k` and, for
/// `k = 0`, the unused rows of the rectangle. Zero powers are omitted.
/// Factors run over `j` ascending, then `i`, then `k`; the empty product is `1`.
pub fn render_cl_monomial(p: &Pop) -> String {
    let mut out = String::new();
    for j in 1..=p.r() {
        for i in 1..=j {
            let rect = p.rectangle(j, i);
            let part = p.part_at(j, i);
            let mut mult = vec![0u64; rect.cols as usize + 1];
            mult[0] = rect.rows - part.len() as u64;
            for &q in part.parts() {
                mult[q as usize] += 1;
            }
            for (k, &n) in mult.iter().enumerate() {
                if n == 0 {
                    continue;
                }
                if !out.is_empty() {
                    out.push(' ');
                }
                if k == 0 {
                    let _ = write!(out, "(x-[{i},{j}]⊗1)^({n})");
                } else {
                    let _ = write!(out, "(x-[{i},{j}]⊗t^{k})^({n})");
                }
            }
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}
