//! Near patterns, approximately overlaid near patterns (AONPs), the
//! row-by-row bijection `xi`, shifts, and the map from colored partitions to
//! POPs together with complementation, inclusion maps and the stable range.
//!
//! A near pattern relaxes a GT pattern: row `j` has `j` entries of which only
//! the middle ones (`2..j-1`) must be non-increasing, and consecutive rows
//! only nearly interlace. The first and last entries of a row are tied to the
//! row below on one side only.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{ensure, Error, Result};
use crate::partition::{
    bracket_bound, break_multi, reassemble, Bound, BoxBound, ColoredPartition, Partition,
};
use crate::pattern::{check_magnitude, GtPattern};
use crate::pop::{check_overlay_shape, enumerate_pops, Pop, PopFilter, Pops};
use crate::seqcore::{is_non_increasing, majorizes, sum};

fn middle_non_increasing(x: &[i64]) -> bool {
    x.len() < 3 || is_non_increasing(&x[1..x.len() - 1])
}

fn to_i64(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

fn check_context(eta: &[i64]) -> Result<()> {
    ensure(eta.len() >= 2, "NearSeqPair.length", || {
        format!("context sequence needs length at least 2, got {}", eta.len())
    })?;
    ensure(middle_non_increasing(eta), "NearSeqPair.middle_non_increasing", || {
        format!("middle entries of {eta:?} are not non-increasing")
    })
}

fn check_pair_shape(eta: &[i64], eta2: &[i64]) -> Result<()> {
    check_context(eta)?;
    ensure(eta2.len() + 1 == eta.len(), "NearSeqPair.length", || {
        format!("lengths {} and {} are not s+1 and s", eta.len(), eta2.len())
    })?;
    ensure(middle_non_increasing(eta2), "NearSeqPair.middle_non_increasing", || {
        format!("middle entries of {eta2:?} are not non-increasing")
    })
}

/// `eta2` (length s) nearly interlaces `eta` (length s+1): nothing for
/// s = 1; otherwise `eta_1 >= eta2_1`, `eta2_s >= eta_{s+1}` and
/// `eta_i >= eta2_i >= eta_{i+1}` for `2 <= i <= s-1`.
pub fn nearly_interlaces(eta: &[i64], eta2: &[i64]) -> Result<bool> {
    check_pair_shape(eta, eta2)?;
    let s = eta2.len();
    if s == 1 {
        return Ok(true);
    }
    let ends = eta[0] >= eta2[0] && eta2[s - 1] >= eta[s];
    let middle = (1..s - 1).all(|i| eta[i] >= eta2[i] && eta2[i] >= eta[i + 1]);
    Ok(ends && middle)
}

/// Box for piece `j` (0-based) of an approximate overlay on a nearly
/// interlacing pair with `s >= 2`.
fn approx_bound(eta: &[i64], eta2: &[i64], j: usize) -> BoxBound {
    let s = eta2.len();
    let max_parts = if j + 1 == s { Bound::Unbounded } else { Bound::Finite((eta[j] - eta2[j]) as u64) };
    let max_part = if j == 0 { Bound::Unbounded } else { Bound::Finite((eta2[j] - eta[j + 1]) as u64) };
    BoxBound { max_parts, max_part }
}

/// `pieces` approximately overlay the nearly interlacing pair: the first is
/// bounded only in its number of parts, the last only in its largest part,
/// and the others fit full rectangles. Nothing is required when s = 1.
pub fn approximately_overlays(eta: &[i64], eta2: &[i64], pieces: &[Partition]) -> Result<bool> {
    ensure(nearly_interlaces(eta, eta2)?, "NearSeqPair.nearly_interlacing", || {
        format!("{eta2:?} does not nearly interlace {eta:?}")
    })?;
    ensure(pieces.len() == eta2.len(), "AONP.overlay_shape", || {
        format!("{} pieces for s = {}", pieces.len(), eta2.len())
    })?;
    if eta2.len() == 1 {
        return Ok(true);
    }
    Ok(pieces.iter().enumerate().all(|(j, p)| approx_bound(eta, eta2, j).admits(p)))
}

fn proptrap_unchecked(eta: &[i64], eta2: &[i64]) -> u64 {
    // sum_{i<j} (eta_i - eta2_i)(eta2_j - eta_{j+1}), accumulated from the right
    let s = eta2.len();
    let mut right = 0i128;
    let mut total = 0i128;
    for i in (0..s).rev() {
        total += (eta[i] as i128 - eta2[i] as i128) * right;
        right += eta2[i] as i128 - eta[i + 1] as i128;
    }
    total as u64
}

/// Proper trapezoidal area of a nearly interlacing pair; zero when s = 1.
pub fn proptrap_pair(eta: &[i64], eta2: &[i64]) -> Result<u64> {
    ensure(nearly_interlaces(eta, eta2)?, "NearSeqPair.nearly_interlacing", || {
        format!("{eta2:?} does not nearly interlace {eta:?}")
    })?;
    check_magnitude(&[eta.to_vec()])?;
    check_magnitude(&[eta2.to_vec()])?;
    Ok(proptrap_unchecked(eta, eta2))
}

/// Output of [`xi`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiOutput {
    pub eta2: Vec<i64>,
    pub pieces: Vec<Partition>,
}

/// Turns `(mu, p)` into a row `eta2` nearly interlacing `eta` and an
/// approximate overlay, by breaking `p` along `c_j = mu - eta_{j+1}`.
pub fn xi(eta: &[i64], mu: i64, p: &Partition) -> Result<XiOutput> {
    check_context(eta)?;
    let s = eta.len() - 1;
    if s == 1 {
        let v = to_i64(eta[0] as i128 + eta[1] as i128 - mu as i128, "xi")?;
        return Ok(XiOutput { eta2: vec![v], pieces: vec![p.clone()] });
    }
    let c = (1..s)
        .map(|j| to_i64(mu as i128 - eta[j] as i128, "xi"))
        .collect::<Result<Vec<_>>>()?;
    let br = break_multi(&c, p)?;
    let mut eta2 = Vec::with_capacity(s);
    let mut a_prev = 0u64;
    for (&e, &a) in eta.iter().zip(&br.a) {
        eta2.push(to_i64(e as i128 - (a - a_prev) as i128, "xi")?);
        a_prev = a;
    }
    eta2.push(to_i64(eta[s] as i128 + br.b[s - 2] as i128, "xi")?);
    Ok(XiOutput { eta2, pieces: br.pieces })
}

/// Two-sided inverse of [`xi`] for fixed `eta`; returns `(mu, p)`.
pub fn xi_inv(eta: &[i64], eta2: &[i64], pieces: &[Partition]) -> Result<(i64, Partition)> {
    ensure(approximately_overlays(eta, eta2, pieces)?, "AONP.approximate_overlay", || {
        let bad = (0..pieces.len())
            .find(|&j| !approx_bound(eta, eta2, j).admits(&pieces[j]))
            .unwrap_or(0);
        format!("piece {} = {} exceeds {}", bad + 1, pieces[bad], approx_bound(eta, eta2, bad))
    })?;
    let mu = to_i64(sum(eta) - sum(eta2), "xi_inv")?;
    let s = eta2.len();
    if s == 1 {
        return Ok((mu, pieces[0].clone()));
    }
    let mut a = Vec::with_capacity(s - 1);
    let mut acc = 0i128;
    for j in 0..s - 1 {
        acc += eta[j] as i128 - eta2[j] as i128;
        a.push(acc as u64);
    }
    let mut b = vec![0u64; s - 1];
    let mut acc = 0i128;
    for j in (0..s - 1).rev() {
        acc += eta2[j + 1] as i128 - eta[j + 2] as i128;
        b[j] = acc as u64;
    }
    debug_assert!((0..s).all(|j| bracket_bound(&a, &b, j) == approx_bound(eta, eta2, j)));
    Ok((mu, reassemble(&a, &b, pieces)))
}

/// Rows of a near pattern; top row first.
pub fn validate_near(rows: &[Vec<i64>]) -> Result<()> {
    ensure(!rows.is_empty(), "NearPattern.non_empty", || "a near pattern has at least one row".into())?;
    for (j, row) in rows.iter().enumerate() {
        ensure(row.len() == j + 1, "NearPattern.row_length", || {
            format!("row {} has length {}, expected {}", j + 1, row.len(), j + 1)
        })?;
        ensure(middle_non_increasing(row), "NearPattern.middle_non_increasing", || {
            format!("middle entries of row {} are not non-increasing", j + 1)
        })?;
    }
    for j in 1..rows.len() {
        ensure(nearly_interlaces(&rows[j], &rows[j - 1])?, "NearPattern.nearly_interlacing", || {
            format!("row {} does not nearly interlace row {}", j, j + 1)
        })?;
    }
    check_magnitude(rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct NearPattern {
    rows: Vec<Vec<i64>>,
}

impl NearPattern {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        validate_near(&rows)?;
        Ok(NearPattern { rows })
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn bounding(&self) -> &[i64] {
        self.rows.last().expect("non-empty")
    }

    pub fn weight(&self) -> Vec<i64> {
        let mut prev = 0i128;
        self.rows
            .iter()
            .map(|row| {
                let s = sum(row);
                let w = (s - prev) as i64;
                prev = s;
                w
            })
            .collect()
    }

    /// Sum of the pair values over consecutive rows.
    pub fn proptrap(&self) -> u64 {
        self.rows.windows(2).map(|w| proptrap_unchecked(&w[1], &w[0])).sum()
    }

    /// Rowwise [`shift_seq`].
    pub fn shift(&self, k: i64) -> Result<NearPattern> {
        let rows = self.rows.iter().map(|r| shift_seq(k, r)).collect::<Result<Vec<_>>>()?;
        check_magnitude(&rows)?;
        Ok(NearPattern { rows })
    }

    /// The pattern itself when the rows genuinely interlace.
    pub fn to_pattern(&self) -> Result<GtPattern> {
        GtPattern::new(self.rows.clone())
    }
}

impl From<&GtPattern> for NearPattern {
    fn from(p: &GtPattern) -> Self {
        NearPattern { rows: p.rows().to_vec() }
    }
}

/// A near pattern with an approximate overlay, `overlay[j-1][i-1]` as for
/// POPs. Pieces on the pair (row j+1, row j) are `overlay[j-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Aonp {
    np: NearPattern,
    overlay: Vec<Vec<Partition>>,
}

impl Aonp {
    pub fn new(np: NearPattern, overlay: Vec<Vec<Partition>>) -> Result<Self> {
        check_overlay_shape(np.n() - 1, &overlay)?;
        for j in 1..np.n() {
            let (eta, eta2) = (&np.rows[j], &np.rows[j - 1]);
            ensure(approximately_overlays(eta, eta2, &overlay[j - 1])?, "AONP.approximate_overlay", || {
                format!("overlay row {j} does not approximately overlay rows {} and {j}", j + 1)
            })?;
        }
        Ok(Aonp { np, overlay })
    }

    pub fn near_pattern(&self) -> &NearPattern {
        &self.np
    }

    pub fn overlay(&self) -> &[Vec<Partition>] {
        &self.overlay
    }

    pub fn weight(&self) -> Vec<i64> {
        self.np.weight()
    }

    pub fn boxes(&self) -> u64 {
        self.overlay.iter().flatten().map(Partition::size).sum()
    }

    pub fn proptrap(&self) -> u64 {
        self.np.proptrap()
    }

    /// Shifted rows, same overlay. Valid for every integer `k` since the
    /// relaxed constraints only involve the middle and one-sided ends.
    pub fn shift(&self, k: i64) -> Result<Aonp> {
        let np = self.np.shift(k)?;
        Aonp::new(np, self.overlay.clone()).map_err(|e| Error::Internal(format!("shift broke an AONP: {e}")))
    }

    /// Checked refinement to a POP.
    pub fn to_pop(&self) -> Result<Pop> {
        Pop::new(self.np.to_pattern()?, self.overlay.clone())
    }
}

impl From<&Pop> for Aonp {
    fn from(p: &Pop) -> Self {
        Aonp {
            np: NearPattern::from(p.pattern()),
            overlay: p.overlay().to_vec(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct AonpDoc {
    pattern: Vec<Vec<i64>>,
    overlay: Vec<Vec<Partition>>,
    near: bool,
}

impl Serialize for Aonp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AonpDoc {
            pattern: self.np.rows.clone(),
            overlay: self.overlay.clone(),
            near: true,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Aonp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = AonpDoc::deserialize(d)?;
        NearPattern::new(doc.pattern)
            .and_then(|np| Aonp::new(np, doc.overlay))
            .map_err(serde::de::Error::custom)
    }
}

/// Iterated [`xi`] from the bounding row down. `mus` holds `mu_2..mu_{r+1}`
/// and row j is built from `mus[j-1]` (that is `mu_{j+1}`) and `ps[j-1]`.
pub fn xi_np(bounding: &[i64], mus: &[i64], ps: &[Partition]) -> Result<Aonp> {
    ensure(!bounding.is_empty(), "NearPattern.non_empty", || "empty bounding row".into())?;
    let r = bounding.len() - 1;
    ensure(mus.len() == r && ps.len() == r, "xi_np.length", || {
        format!("need {r} weights and {r} partitions, got {} and {}", mus.len(), ps.len())
    })?;
    ensure(middle_non_increasing(bounding), "NearPattern.middle_non_increasing", || {
        format!("middle entries of {bounding:?} are not non-increasing")
    })?;
    let mut rows = vec![bounding.to_vec()];
    let mut overlay = Vec::with_capacity(r);
    for j in (1..=r).rev() {
        let out = xi(rows.last().expect("non-empty"), mus[j - 1], &ps[j - 1])?;
        rows.push(out.eta2);
        overlay.push(out.pieces);
    }
    rows.reverse();
    overlay.reverse();
    let np = NearPattern::new(rows).map_err(|e| match e {
        Error::Overflow(_) => e,
        other => Error::Internal(format!("xi produced an invalid near pattern: {other}")),
    })?;
    Aonp::new(np, overlay).map_err(|e| Error::Internal(format!("xi produced an invalid overlay: {e}")))
}

/// Inverse of [`xi_np`]: returns `(mu_2..mu_{r+1}, ps)`.
pub fn xi_np_inv(a: &Aonp) -> Result<(Vec<i64>, Vec<Partition>)> {
    let rows = a.np.rows();
    let r = rows.len() - 1;
    let mut mus = Vec::with_capacity(r);
    let mut ps = Vec::with_capacity(r);
    for j in 1..=r {
        let (mu, p) = xi_inv(&rows[j], &rows[j - 1], &a.overlay[j - 1])?;
        mus.push(mu);
        ps.push(p);
    }
    Ok((mus, ps))
}

/// Shift by `k`: first entry `+2k`, middle entries `+k`, last `+0`; a single
/// entry gets `+k`. Equivalently `x + k(2,1,..,1,0)` for length at least 2.
pub fn shift_seq(k: i64, x: &[i64]) -> Result<Vec<i64>> {
    let n = x.len();
    x.iter()
        .enumerate()
        .map(|(i, &v)| {
            let step = match (n, i) {
                (1, _) => k as i128,
                (_, 0) => 2 * k as i128,
                (_, i) if i + 1 == n => 0,
                _ => k as i128,
            };
            to_i64(v as i128 + step, "shift")
        })
        .collect()
}

/// Shift of a POP by `k >= 0`; every rectangle only grows, so the overlay
/// still fits.
pub fn shift_pop(k: u64, p: &Pop) -> Result<Pop> {
    let k = i64::try_from(k).map_err(|_| Error::Overflow("shift"))?;
    let rows = p.pattern().rows().iter().map(|r| shift_seq(k, r)).collect::<Result<Vec<_>>>()?;
    Pop::from_rows(rows, p.overlay().to_vec()).map_err(|e| match e {
        Error::Overflow(_) => e,
        other => Error::Internal(format!("non-negative shift left POPs: {other}")),
    })
}

/// The AONP of the colored partition `cp`, for bounding `lam` and the full
/// weight `mu = (mu_1, .., mu_{r+1})`; `mu_1` is implied and not used beyond
/// the majorization check.
pub fn phi(lam: &[i64], mu: &[i64], cp: &ColoredPartition) -> Result<Aonp> {
    ensure(!lam.is_empty() && lam.len() == mu.len(), "phi.length", || {
        format!("bounding and weight lengths {} and {} differ or vanish", lam.len(), mu.len())
    })?;
    ensure(is_non_increasing(lam), "NonIncSeq.non_increasing", || format!("{lam:?} is not non-increasing"))?;
    ensure(majorizes(lam, mu)?, "phi.majorization", || format!("{lam:?} does not majorize {mu:?}"))?;
    ensure(cp.colors() + 1 == lam.len(), "ColoredPartition.colors", || {
        format!("need {} colors, got {}", lam.len() - 1, cp.colors())
    })?;
    xi_np(lam, &mu[1..], &cp.0)
}

/// `S^k . phi`: a POP with bounding `shift(k, lam)`, weight `mu + k` and
/// `proptrap + boxes = |cp|`. Requires `k >= |cp|`.
pub fn cp_to_pop(lam: &[i64], mu: &[i64], k: u64, cp: &ColoredPartition) -> Result<Pop> {
    let d = cp.size();
    if k < d {
        return Err(Error::OutsideStableShift { k, d });
    }
    let a = phi(lam, mu, cp)?;
    let k = i64::try_from(k).map_err(|_| Error::Overflow("shift"))?;
    a.shift(k)?
        .to_pop()
        .map_err(|e| Error::Internal(format!("stable shift of an AONP is not a POP: {e}")))
}

/// Inverse of [`cp_to_pop`] on its image.
pub fn pop_to_cp(lam: &[i64], mu: &[i64], k: u64, p: &Pop) -> Result<ColoredPartition> {
    let ki = i64::try_from(k).map_err(|_| Error::Overflow("shift"))?;
    let expected = shift_seq(ki, lam)?;
    ensure(p.bounding() == expected, "pop_to_cp.bounding", || {
        format!("bounding {:?} is not the shift of {lam:?} by {k}", p.bounding())
    })?;
    let a = Aonp::from(p).shift(-ki)?;
    let (mus, ps) = xi_np_inv(&a)?;
    ensure(mus.len() + 1 == mu.len() && mus == mu[1..], "pop_to_cp.weight", || {
        format!("weight of the unshifted POP ends in {mus:?}, expected {:?}", &mu[1..])
    })?;
    Ok(ColoredPartition(ps))
}

/// The index set `P_{lam,mu,k}(d)`: POPs with bounding `shift(k, lam)`,
/// weight `mu + k` and `proptrap + boxes = d`.
pub fn stable_index_set(lam: &[i64], mu: &[i64], k: u64, d: u64) -> Result<Pops> {
    let ki = i64::try_from(k).map_err(|_| Error::Overflow("shift"))?;
    let bounding = shift_seq(ki, lam)?;
    let weight = mu.iter().map(|&m| to_i64(m as i128 + ki as i128, "shift")).collect::<Result<Vec<_>>>()?;
    enumerate_pops(
        &bounding,
        PopFilter {
            weight: Some(weight),
            proptrap_plus_boxes: Some(d),
            ..Default::default()
        },
    )
}

/// Each overlay partition replaced by its complement in its rectangle.
pub fn complement_pop(p: &Pop) -> Pop {
    let overlay = (1..=p.r())
        .map(|j| {
            (1..=j)
                .map(|i| p.part_at(j, i).complement(p.rectangle(j, i)).expect("POP overlays fit"))
                .collect()
        })
        .collect();
    Pop::from_valid(p.pattern().clone(), overlay)
}

/// Complement, shift by `j`, complement: an inclusion of depth-d index sets
/// that shifts the weight by `j` in every coordinate.
pub fn embed(p: &Pop, j: u64) -> Result<Pop> {
    let out = complement_pop(&shift_pop(j, &complement_pop(p))?);
    if out.depth() != p.depth() {
        return Err(Error::Internal(format!("embed changed depth {} to {}", p.depth(), out.depth())));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableRangeReport {
    pub ell: u64,
    pub depth: u64,
    /// `k >= ell + depth`.
    pub stable: bool,
}

/// Range condition for a POP with bounding `shift(k, lam)` and weight `m`:
/// `ell` is the least value in `0..=k` with `m - (k-ell) ≼ shift(ell, lam)`.
pub fn stable_range(lam: &[i64], k: u64, p: &Pop) -> Result<StableRangeReport> {
    let ki = i64::try_from(k).map_err(|_| Error::Overflow("shift"))?;
    ensure(p.bounding() == shift_seq(ki, lam)?, "stable_range.bounding", || {
        format!("bounding {:?} is not the shift of {lam:?} by {k}", p.bounding())
    })?;
    let m = p.weight();
    for ell in 0..=ki {
        let lowered = m.iter().map(|&v| to_i64(v as i128 - (ki - ell) as i128, "stable_range")).collect::<Result<Vec<_>>>()?;
        if majorizes(&shift_seq(ell, lam)?, &lowered)? {
            let depth = p.depth();
            return Ok(StableRangeReport {
                ell: ell as u64,
                depth,
                stable: k >= ell as u64 + depth,
            });
        }
    }
    Err(Error::contract("stable_range.majorization", format!("{m:?} is not majorized by {:?}", p.bounding())))
}
