//! Invariant suites behind `gtpop verify`. Each suite sweeps a bounded family
//! of inputs, compares library results with brute-force oracles and reports
//! one line per property with the first counterexample found.

use std::collections::{BTreeMap, BTreeSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::Result;
use crate::maxarea::{max_area_pattern, norm_gap_half};
use crate::partition::{
    break_multi, break_multi_inv, break_single, break_single_inv, enumerate_colored, partitions_of, Partition,
};
use crate::pattern::{area_pair, enumerate_patterns, traparea_pair, GtPattern};
use crate::pop::{enumerate_pops, from_cl_index, to_cl_index, PopFilter};
use crate::seqcore::{majorizes, norm_sq};
use crate::stability::{
    complement_pop, cp_to_pop, embed, phi, pop_to_cp, shift_seq, stable_index_set, xi, xi_inv, xi_np, xi_np_inv,
};

pub const SUITES: [&str; 6] = ["maxarea", "areas", "bijection", "counting", "stability", "clindex"];

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub max_entry: i64,
    pub max_len: usize,
    pub r: usize,
    pub d: u64,
    pub k: Option<u64>,
    pub bounding: Vec<i64>,
    pub seed: u64,
    pub cases: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_entry: 3,
            max_len: 3,
            r: 2,
            d: 3,
            k: None,
            bounding: vec![3, 1, 0],
            seed: 0,
            cases: 1000,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub property: String,
    pub passed: bool,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Default)]
struct Checks {
    by_name: BTreeMap<String, Check>,
}

impl Checks {
    fn case(&mut self, property: &str, ok: bool, ce: impl FnOnce() -> String) {
        let c = self.by_name.entry(property.to_string()).or_insert_with(|| Check {
            property: property.to_string(),
            passed: true,
            cases: 0,
            counterexample: None,
        });
        c.cases += 1;
        if !ok && c.passed {
            c.passed = false;
            c.counterexample = Some(ce());
        }
    }

    fn finish(self, suite: &str) -> Report {
        let checks: Vec<Check> = self.by_name.into_values().collect();
        Report {
            suite: suite.to_string(),
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

/// Non-increasing tuples of length `n` with entries in `lo..=hi`, descending.
pub fn non_increasing_tuples(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (lo..=hi).rev() {
        for mut rest in non_increasing_tuples(n - 1, lo, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every integer tuple majorized by the non-increasing `lam`, by brute force
/// over the box `[lam_n, lam_1]^n`.
pub fn majorized_tuples(lam: &[i64]) -> Vec<Vec<i64>> {
    let n = lam.len();
    let (lo, hi) = (lam[n - 1], lam[0]);
    let total: i64 = lam.iter().sum();
    let mut out = Vec::new();
    let mut cur = vec![lo; n];
    loop {
        if cur.iter().sum::<i64>() == total && majorizes(lam, &cur).unwrap_or(false) {
            out.push(cur.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < hi {
                cur[i] += 1;
                break;
            }
            cur[i] = lo;
        }
    }
}

/// Number of r-colored partitions of d from `n c_n = sum_k r sigma(k) c_{n-k}`.
pub fn colored_partition_count(r: u64, d: usize) -> u128 {
    let sigma = |n: usize| (1..=n).filter(|&k| n.is_multiple_of(k)).sum::<usize>() as u128;
    let mut c = vec![0u128; d + 1];
    c[0] = 1;
    for n in 1..=d {
        let s: u128 = (1..=n).map(|k| r as u128 * sigma(k) * c[n - k]).sum();
        c[n] = s / n as u128;
    }
    c[d]
}

pub fn run_suite(suite: &str, opts: &VerifyOptions) -> Result<Option<Report>> {
    let report = match suite {
        "maxarea" => maxarea_suite(opts)?,
        "areas" => areas_suite(opts)?,
        "bijection" => bijection_suite(opts)?,
        "counting" => counting_suite(opts)?,
        "stability" => stability_suite(opts)?,
        "clindex" => clindex_suite(opts)?,
        _ => return Ok(None),
    };
    Ok(Some(report))
}

fn bounding_grid(opts: &VerifyOptions) -> impl Iterator<Item = Vec<i64>> + '_ {
    (1..=opts.max_len).flat_map(move |n| non_increasing_tuples(n, 0, opts.max_entry))
}

fn maxarea_suite(opts: &VerifyOptions) -> Result<Report> {
    let mut ch = Checks::default();
    for lam in bounding_grid(opts) {
        let mut by_weight: BTreeMap<Vec<i64>, Vec<GtPattern>> = BTreeMap::new();
        for p in enumerate_patterns(&lam, None)? {
            by_weight.entry(p.weight().to_vec()).or_default().push(p);
        }
        let oracle: BTreeSet<Vec<i64>> = majorized_tuples(&lam).into_iter().collect();
        let realized: BTreeSet<Vec<i64>> = by_weight.keys().cloned().collect();
        ch.case("realized weights are the majorized tuples", oracle == realized, || format!("lam={lam:?}"));
        for mu in &oracle {
            let best = max_area_pattern(&lam, mu)?;
            let half = norm_gap_half(&lam, mu)?;
            let ce = || format!("lam={lam:?} mu={mu:?}");
            ch.case("bounding and weight are as requested", best.bounding() == lam && best.weight() == mu.as_slice(), ce);
            ch.case("area is half the norm gap", best.area() as i64 == half, ce);
            let others = by_weight.get(mu).map(Vec::as_slice).unwrap_or(&[]);
            ch.case("maximizer is enumerated", others.contains(&best), ce);
            for q in others.iter().filter(|q| **q != best) {
                ch.case("other patterns have strictly smaller area", q.area() < best.area(), || {
                    format!("lam={lam:?} mu={mu:?} other={q}")
                });
                let dominated = (1..=lam.len()).all(|j| majorizes(best.row(j), q.row(j)).unwrap_or(false));
                ch.case("rows majorize the rows of every other pattern", dominated, || {
                    format!("lam={lam:?} mu={mu:?} other={q}")
                });
            }
            let steps_ok = best
                .rows()
                .windows(2)
                .all(|w| area_pair(&w[1], &w[0]).ok() == traparea_pair(&w[1], &w[0]).ok());
            ch.case("each step has equal triangular and trapezoidal area", steps_ok, ce);
        }
    }
    Ok(ch.finish("maxarea"))
}

fn areas_suite(opts: &VerifyOptions) -> Result<Report> {
    let mut ch = Checks::default();
    for lam in bounding_grid(opts) {
        let nl = norm_sq(&lam)?;
        for p in enumerate_patterns(&lam, None)? {
            let ce = || format!("pattern {p}");
            ch.case("bounding majorizes weight", majorizes(&lam, p.weight())?, ce);
            ch.case(
                "twice traparea is the norm gap",
                2 * p.traparea() as i64 == nl - norm_sq(p.weight())?,
                ce,
            );
            ch.case("traparea is at least area", p.traparea() >= p.area(), ce);
            for w in p.rows().windows(2) {
                let (hi, lo) = (&w[1], &w[0]);
                let ds: i64 = hi.iter().sum::<i64>() - lo.iter().sum::<i64>();
                let rhs = norm_sq(hi)? - norm_sq(lo)? - ds * ds;
                ch.case("pair identity for trapezoidal area", 2 * traparea_pair(hi, lo)? as i64 == rhs, || {
                    format!("hi={hi:?} lo={lo:?}")
                });
            }
        }
    }
    Ok(ch.finish("areas"))
}

fn random_partition(rng: &mut StdRng, max_size: u64, max_part: u64) -> Partition {
    let mut parts: Vec<u64> = (0..rng.gen_range(0..=12)).map(|_| rng.gen_range(1..=max_part)).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    let mut total = 0;
    parts.retain(|&x| {
        total += x;
        total <= max_size
    });
    Partition::new(parts).expect("sorted")
}

fn random_context(rng: &mut StdRng, s: usize) -> Vec<i64> {
    let mut eta: Vec<i64> = (0..=s).map(|_| rng.gen_range(-10..=10)).collect();
    if s >= 2 {
        eta[1..s].sort_unstable_by(|a, b| b.cmp(a));
    }
    eta
}

fn bijection_suite(opts: &VerifyOptions) -> Result<Report> {
    let mut ch = Checks::default();
    let mut rng = StdRng::seed_from_u64(opts.seed);
    for _ in 0..opts.cases {
        let p = random_partition(&mut rng, 30, 10);
        let c1: i64 = rng.gen_range(-10..=10);
        let single = break_single(c1, &p);
        ch.case("break_single roundtrip", break_single_inv(&single)? == (c1, p.clone()), || format!("c={c1} p={p}"));
        let t = rng.gen_range(1..=5);
        let mut c: Vec<i64> = (0..t).map(|_| rng.gen_range(-10..=10)).collect();
        c.sort_unstable();
        let br = break_multi(&c, &p)?;
        ch.case("break_multi roundtrip", break_multi_inv(&br)? == (c.clone(), p.clone()), || format!("c={c:?} p={p}"));
        let s = rng.gen_range(1..=6);
        let eta = random_context(&mut rng, s);
        let mu = rng.gen_range(-10..=10);
        let out = xi(&eta, mu, &p)?;
        ch.case("xi roundtrip", xi_inv(&eta, &out.eta2, &out.pieces)? == (mu, p.clone()), || {
            format!("eta={eta:?} mu={mu} p={p}")
        });
        let r = rng.gen_range(1..=5);
        let bounding = random_context(&mut rng, r);
        let mus: Vec<i64> = (0..r).map(|_| rng.gen_range(-10..=10)).collect();
        let ps: Vec<Partition> = (0..r).map(|_| random_partition(&mut rng, 30 / r as u64, 10)).collect();
        let a = xi_np(&bounding, &mus, &ps)?;
        ch.case("xi_np roundtrip", xi_np_inv(&a)? == (mus.clone(), ps.clone()), || {
            format!("bounding={bounding:?} mus={mus:?}")
        });
    }
    for n in 0..=12 {
        for p in partitions_of(n) {
            for c in -13..=13 {
                let single = break_single(c, &p);
                ch.case("exhaustive break_single roundtrip", break_single_inv(&single)? == (c, p.clone()), || {
                    format!("c={c} p={p}")
                });
            }
            for c in [vec![0, 1], vec![-2, 0, 3], vec![1, 1, 1]] {
                let br = break_multi(&c, &p)?;
                ch.case("exhaustive break_multi roundtrip", break_multi_inv(&br)? == (c.clone(), p.clone()), || {
                    format!("c={c:?} p={p}")
                });
            }
            for eta in [vec![3, 2, 0], vec![0, 0, 0, 0], vec![1, 4, 2, 5]] {
                for mu in -3..=3 {
                    let out = xi(&eta, mu, &p)?;
                    ch.case("exhaustive xi roundtrip", xi_inv(&eta, &out.eta2, &out.pieces)? == (mu, p.clone()), || {
                        format!("eta={eta:?} mu={mu} p={p}")
                    });
                }
            }
        }
    }
    Ok(ch.finish("bijection"))
}

fn lam_mu_grid(r: usize, max_entry: i64) -> Vec<(Vec<i64>, Vec<i64>)> {
    let mut out = Vec::new();
    for mut lam in non_increasing_tuples(r, 0, max_entry) {
        lam.push(0);
        for mu in majorized_tuples(&lam) {
            out.push((lam.clone(), mu));
        }
    }
    out
}

fn counting_suite(opts: &VerifyOptions) -> Result<Report> {
    let mut ch = Checks::default();
    let r = opts.r.max(1);
    let d = opts.d;
    let k = opts.k.unwrap_or(d);
    ch.case("k is in the stable range", k >= d, || format!("k={k} d={d}"));
    if k < d {
        return Ok(ch.finish("counting"));
    }
    let expected = colored_partition_count(r as u64, d as usize);
    for (lam, mu) in lam_mu_grid(r, opts.max_entry.min(2)) {
        let enumerated: BTreeSet<_> = stable_index_set(&lam, &mu, k, d)?.collect();
        let ce = || format!("lam={lam:?} mu={mu:?} k={k} d={d}");
        ch.case("index set size is the colored partition count", enumerated.len() as u128 == expected, || {
            format!("lam={lam:?} mu={mu:?} k={k} d={d}: {} vs {expected}", enumerated.len())
        });
        let mut image = BTreeSet::new();
        for cp in enumerate_colored(r, d) {
            let p = cp_to_pop(&lam, &mu, k, &cp)?;
            ch.case("pop_to_cp inverts cp_to_pop", pop_to_cp(&lam, &mu, k, &p)? == cp, ce);
            image.insert(p);
        }
        ch.case("image equals the enumerated index set", image == enumerated, ce);
    }
    Ok(ch.finish("counting"))
}

fn stability_suite(opts: &VerifyOptions) -> Result<Report> {
    let mut ch = Checks::default();
    let r = opts.r.max(1);
    let d = opts.d;
    let k = opts.k.unwrap_or(d) as i64;
    for (lam, mu) in lam_mu_grid(r, opts.max_entry.min(2)) {
        let lam_k = shift_seq(k, &lam)?;
        let mu_k: Vec<i64> = mu.iter().map(|m| m + k).collect();
        for dd in 0..=d {
            for cp in enumerate_colored(r, dd) {
                let base = phi(&lam, &mu, &cp)?;
                let moved = phi(&lam_k, &mu_k, &cp)?;
                for j in 0..=3i64 {
                    let lhs = base.shift(j + k)?;
                    let rhs = moved.shift(j)?;
                    ch.case("shift compatibility of phi", lhs == rhs, || {
                        format!("lam={lam:?} mu={mu:?} cp={cp:?} k={k} j={j}")
                    });
                }
                ch.case("shift preserves proptrap", base.shift(k)?.proptrap() == base.proptrap(), || {
                    format!("lam={lam:?} mu={mu:?} cp={cp:?}")
                });
            }
        }
        for p in stable_index_set(&lam, &mu, k as u64, d)? {
            let c = complement_pop(&p);
            let ce = || serde_json::to_string(&p).unwrap_or_default();
            ch.case("complement is an involution", complement_pop(&c) == p, ce);
            ch.case("complement maps boxes b to area - b", c.boxes() == p.pattern().area() - p.boxes(), ce);
            for j in 0..=2u64 {
                let e = embed(&p, j)?;
                ch.case("embed preserves depth", e.depth() == p.depth(), ce);
                let shifted: Vec<i64> = p.weight().iter().map(|w| w + j as i64).collect();
                ch.case("embed shifts the weight", e.weight() == shifted.as_slice(), ce);
                ch.case("embed composes additively", embed(&e, 1)? == embed(&p, j + 1)?, ce);
            }
        }
    }
    Ok(ch.finish("stability"))
}

fn clindex_suite(opts: &VerifyOptions) -> Result<Report> {
    let mut ch = Checks::default();
    let lam = &opts.bounding;
    for p in enumerate_pops(lam, PopFilter::default())? {
        let c = to_cl_index(&p);
        let ce = || serde_json::to_string(&p).unwrap_or_default();
        let mut bound_ok = true;
        for j in 1..=c.r() {
            for i in 1..=j {
                let e = &c.entries[j - 1][i - 1];
                if let Some(&top) = e.s.last() {
                    bound_ok &= (top as i128) <= c.bound(lam, i, j);
                }
            }
        }
        ch.case("index satisfies the CL bound", bound_ok, ce);
        ch.case("from_cl_index inverts to_cl_index", from_cl_index(lam, &c)? == p, ce);
    }
    Ok(ch.finish("clindex"))
}
