//! Acceptance criteria, one line each. The oracles here are written from the
//! definitions and share no code with the library beyond the types.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use gtpop::maxarea::{max_area_pattern, norm_gap_half};
use gtpop::partition::{break_multi, break_multi_inv, break_single, break_single_inv};
use gtpop::pattern::{enumerate_patterns, traparea_pair};
use gtpop::pop::{enumerate_pops, from_cl_index, to_cl_index, PopFilter};
use gtpop::stability::{
    complement_pop, cp_to_pop, embed, phi, shift_seq, stable_index_set, xi, xi_inv, xi_np, xi_np_inv,
};
use gtpop::{ColoredPartition, GtPattern, Partition, Pop};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Rows = Vec<Vec<i64>>;

// ---- oracles -------------------------------------------------------------

fn non_increasing(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for x in lo..=hi {
        for mut rest in non_increasing(n - 1, lo, x) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// All rows `lo` with `hi_i >= lo_i >= hi_{i+1}`.
fn rows_between(hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for i in 0..hi.len() - 1 {
        let mut next = Vec::new();
        for prefix in &out {
            for v in hi[i + 1]..=hi[i] {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Every GT pattern with bottom row `lam`, rows listed top first.
fn patterns(lam: &[i64]) -> Vec<Rows> {
    if lam.len() == 1 {
        return vec![vec![lam.to_vec()]];
    }
    let mut out = Vec::new();
    for above in rows_between(lam) {
        for mut p in patterns(&above) {
            p.push(lam.to_vec());
            out.push(p);
        }
    }
    out
}

fn weight(rows: &Rows) -> Vec<i64> {
    let sums: Vec<i64> = rows.iter().map(|r| r.iter().sum()).collect();
    (0..sums.len()).map(|j| sums[j] - if j == 0 { 0 } else { sums[j - 1] }).collect()
}

fn tri_area(rows: &Rows) -> i64 {
    rows.windows(2)
        .map(|w| {
            let (lo, hi) = (&w[0], &w[1]);
            (0..lo.len()).map(|i| (hi[i] - lo[i]) * (lo[i] - hi[i + 1])).sum::<i64>()
        })
        .sum()
}

fn trap_pair(hi: &[i64], lo: &[i64]) -> i64 {
    let mut t = 0;
    for i in 0..lo.len() {
        for j in i..lo.len() {
            t += (hi[i] - lo[i]) * (lo[j] - hi[j + 1]);
        }
    }
    t
}

fn norm(x: &[i64]) -> i64 {
    x.iter().map(|v| v * v).sum()
}

fn dominates(a: &[i64], b: &[i64]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable_by(|x, y| y.cmp(x));
    b.sort_unstable_by(|x, y| y.cmp(x));
    let (mut sa, mut sb) = (0, 0);
    for i in 0..a.len() {
        sa += a[i];
        sb += b[i];
        if sa < sb {
            return false;
        }
    }
    sa == sb
}

fn majorized(lam: &[i64]) -> Vec<Vec<i64>> {
    let n = lam.len();
    let total: i64 = lam.iter().sum();
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (lam[n - 1]..=lam[0]).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out.retain(|m| m.iter().sum::<i64>() == total && dominates(lam, m));
    out
}

/// Partitions of `n` with parts at most `max`, parts listed largest first.
fn partitions(n: u64, max: u64) -> Vec<Vec<u64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All r-tuples of partitions of total size d.
fn colored(r: usize, d: u64) -> Vec<Vec<Vec<u64>>> {
    if r == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for p in partitions(first, first) {
            for mut rest in colored(r - 1, d - first) {
                rest.insert(0, p.clone());
                out.push(rest);
            }
        }
    }
    out
}

fn colored_count(r: usize, d: u64) -> usize {
    let p: Vec<usize> = (0..=d).map(|n| partitions(n, n).len()).collect();
    let mut c = vec![0usize; d as usize + 1];
    c[0] = 1;
    for _ in 0..r {
        let prev = c.clone();
        for n in 0..=d as usize {
            c[n] = (0..=n).map(|m| p[m] * prev[n - m]).sum();
        }
    }
    c[d as usize]
}

fn binomial_row_sum(m: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..m {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.iter().sum()
}

fn partition(parts: &[u64]) -> Partition {
    Partition::new(parts.to_vec()).expect("oracle partitions are sorted")
}

fn shsum(x: &[i64], k: i64) -> Vec<i64> {
    x.iter().map(|v| v + k).collect()
}

// ---- harness ---------------------------------------------------------------

struct Tally {
    cases: u64,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, failure: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }
}

struct Outcome {
    failed: bool,
}

impl Outcome {
    fn report(&mut self, id: &str, name: &str, t: Tally, elapsed: Duration, limit: Option<u64>) {
        let in_time = limit.is_none_or(|l| elapsed.as_secs_f64() < l as f64);
        let pass = t.failure.is_none() && in_time && t.cases > 0;
        self.failed |= !pass;
        let timing = match limit {
            Some(l) => format!("{:.2} s (limit {l} s)", elapsed.as_secs_f64()),
            None => format!("{:.2} s", elapsed.as_secs_f64()),
        };
        let tag = if pass { "PASS" } else { "FAIL" };
        let detail = t.failure.map(|f| format!("; first failure: {f}")).unwrap_or_default();
        println!("[{tag}] {id} {name}: {} cases, {timing}{detail}", t.cases);
    }
}

fn sweep_boundings() -> Vec<Vec<i64>> {
    (1..=4).flat_map(|n| non_increasing(n, 0, 5)).collect()
}

fn c1() -> Tally {
    let mut t = Tally::new();
    for lam in sweep_boundings() {
        let mut by_weight: BTreeMap<Vec<i64>, Vec<Rows>> = BTreeMap::new();
        for p in patterns(&lam) {
            by_weight.entry(weight(&p)).or_default().push(p);
        }
        for mu in majorized(&lam) {
            let half = (norm(&lam) - norm(&mu)) / 2;
            let pats = by_weight.get(&mu).cloned().unwrap_or_default();
            match max_area_pattern(&lam, &mu) {
                Ok(best) => {
                    let rows = best.rows().to_vec();
                    t.check(pats.contains(&rows), || format!("lam={lam:?} mu={mu:?}: result is not an enumerated pattern"));
                    t.check(tri_area(&rows) == half && best.area() as i64 == half, || {
                        format!("lam={lam:?} mu={mu:?}: area {} vs {half}", tri_area(&rows))
                    });
                    t.check(norm_gap_half(&lam, &mu).ok() == Some(half), || format!("lam={lam:?} mu={mu:?}: norm gap"));
                    for q in pats.iter().filter(|q| **q != rows) {
                        t.check(tri_area(q) < half, || format!("lam={lam:?} mu={mu:?}: {q:?} reaches the maximum"));
                    }
                }
                Err(e) => t.check(false, || format!("lam={lam:?} mu={mu:?}: {e}")),
            }
        }
    }
    t
}

fn c2() -> Tally {
    let mut t = Tally::new();
    for lam in sweep_boundings() {
        for rows in patterns(&lam) {
            for w in rows.windows(2) {
                let (lo, hi) = (&w[0], &w[1]);
                let ds: i64 = hi.iter().sum::<i64>() - lo.iter().sum::<i64>();
                let rhs = norm(hi) - norm(lo) - ds * ds;
                let lib = traparea_pair(hi, lo).map(|v| 2 * v as i64);
                t.check(lib == Ok(rhs) && 2 * trap_pair(hi, lo) == rhs, || format!("hi={hi:?} lo={lo:?}"));
            }
            let p = GtPattern::new(rows.clone()).expect("oracle pattern");
            t.check(2 * p.traparea() as i64 == norm(&lam) - norm(&weight(&rows)), || format!("{rows:?}"));
        }
    }
    t
}

fn c3() -> Tally {
    let mut t = Tally::new();
    for lam in sweep_boundings() {
        let ours: BTreeSet<Rows> = patterns(&lam).into_iter().collect();
        let lib: BTreeSet<Rows> = enumerate_patterns(&lam, None)
            .expect("valid bounding")
            .map(|p| p.rows().to_vec())
            .collect();
        t.check(ours == lib, || format!("lam={lam:?}: enumerations differ"));
        for rows in &ours {
            let p = GtPattern::new(rows.clone()).expect("oracle pattern");
            t.check(p.weight() == weight(rows).as_slice() && dominates(&lam, p.weight()), || format!("{rows:?}"));
        }
    }
    t
}

fn random_partition(rng: &mut StdRng) -> Vec<u64> {
    let size = rng.gen_range(0..=30u64);
    let mut left = size;
    let mut parts = Vec::new();
    while left > 0 {
        let x = rng.gen_range(1..=left.min(10));
        parts.push(x);
        left -= x;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

fn random_row(rng: &mut StdRng, s: usize) -> Vec<i64> {
    let mut eta: Vec<i64> = (0..=s).map(|_| rng.gen_range(-10..=10)).collect();
    if s >= 2 {
        eta[1..s].sort_unstable_by(|a, b| b.cmp(a));
    }
    eta
}

fn roundtrip_cases(t: &mut Tally, p: &[u64], c: &[i64], eta: &[i64], mu: i64) {
    let pp = partition(p);
    let sb = break_single(c[0], &pp);
    t.check(sb.inner.len() as u64 <= sb.a && sb.outer.largest() <= sb.b, || format!("break_single fit c={} p={p:?}", c[0]));
    t.check(break_single_inv(&sb).ok() == Some((c[0], pp.clone())), || format!("break_single c={} p={p:?}", c[0]));
    match break_multi(c, &pp) {
        Ok(br) => {
            t.check(br.check().is_ok(), || format!("break_multi fit c={c:?} p={p:?}"));
            t.check(break_multi_inv(&br).ok() == Some((c.to_vec(), pp.clone())), || format!("break_multi c={c:?} p={p:?}"));
        }
        Err(e) => t.check(false, || format!("break_multi c={c:?} p={p:?}: {e}")),
    }
    match xi(eta, mu, &pp) {
        Ok(out) => t.check(xi_inv(eta, &out.eta2, &out.pieces).ok() == Some((mu, pp.clone())), || {
            format!("xi eta={eta:?} mu={mu} p={p:?}")
        }),
        Err(e) => t.check(false, || format!("xi eta={eta:?} mu={mu} p={p:?}: {e}")),
    }
}

fn xi_np_case(t: &mut Tally, bounding: &[i64], mus: &[i64], ps: &[Vec<u64>]) {
    let ps: Vec<Partition> = ps.iter().map(|p| partition(p)).collect();
    match xi_np(bounding, mus, &ps) {
        Ok(a) => t.check(xi_np_inv(&a).ok() == Some((mus.to_vec(), ps.clone())), || {
            format!("xi_np bounding={bounding:?} mus={mus:?} ps={ps:?}")
        }),
        Err(e) => t.check(false, || format!("xi_np bounding={bounding:?} mus={mus:?}: {e}")),
    }
}

fn c4() -> Tally {
    let mut t = Tally::new();
    let mut rng = StdRng::seed_from_u64(20261014);
    for _ in 0..1000 {
        let p = random_partition(&mut rng);
        let tt = rng.gen_range(2..=6);
        let mut c: Vec<i64> = (0..tt - 1).map(|_| rng.gen_range(-10..=10)).collect();
        c.sort_unstable();
        let s = rng.gen_range(1..=6);
        let eta = random_row(&mut rng, s);
        roundtrip_cases(&mut t, &p, &c, &eta, rng.gen_range(-10..=10));
        let r = rng.gen_range(1..=5);
        let bounding = random_row(&mut rng, r);
        let mus: Vec<i64> = (0..r).map(|_| rng.gen_range(-10..=10)).collect();
        let mut ps = vec![Vec::new(); r];
        for x in random_partition(&mut rng) {
            ps[rng.gen_range(0..r)].push(x);
        }
        xi_np_case(&mut t, &bounding, &mus, &ps);
    }
    let mut cseqs: Vec<Vec<i64>> = (-4..=4).map(|a| vec![a]).collect();
    for a in -4..=4 {
        for b in a..=4 {
            cseqs.push(vec![a, b]);
        }
    }
    for a in -2..=2 {
        for b in a..=2 {
            for c in b..=2 {
                cseqs.push(vec![a, b, c]);
            }
        }
    }
    let etas: [&[i64]; 8] = [&[2, 0], &[0, 3], &[3, 1, 0], &[0, 0, 0], &[1, 2, 5], &[4, 2, 1, 0], &[0, 0, 0, 0], &[-1, 3, 1, 6]];
    for n in 0..=12 {
        for p in partitions(n, n) {
            let pp = partition(&p);
            for c in -13..=13 {
                let sb = break_single(c, &pp);
                t.check(break_single_inv(&sb).ok() == Some((c, pp.clone())), || format!("break_single c={c} p={p:?}"));
            }
            for c in &cseqs {
                roundtrip_cases(&mut t, &p, c, etas[c.len() % etas.len()], c[0]);
            }
            for eta in etas {
                for mu in -4..=4 {
                    roundtrip_cases(&mut t, &p, &[mu], eta, mu);
                }
            }
        }
    }
    for d in 0..=12 {
        for cp in colored(2, d) {
            for m1 in -1..=1 {
                for m2 in -1..=1 {
                    xi_np_case(&mut t, &[2, 1, 0], &[m1, m2], &cp);
                }
            }
        }
    }
    t
}

/// The (lam, mu) grid used for counting: lam of length r+1 ending in 0.
fn counting_grid() -> Vec<(usize, Vec<i64>, Vec<i64>)> {
    let mut out = Vec::new();
    for (r, max) in [(1usize, 4i64), (2, 3), (3, 2)] {
        for mut lam in non_increasing(r, 0, max) {
            lam.push(0);
            for mu in majorized(&lam) {
                out.push((r, lam.clone(), mu));
            }
        }
    }
    out
}

fn c5() -> Tally {
    let mut t = Tally::new();
    for (r, lam, mu) in counting_grid() {
        for d in 0..=5u64 {
            let cps = colored(r, d);
            let expected = colored_count(r, d);
            for k in d..=d + 3 {
                let found: BTreeSet<Pop> = stable_index_set(&lam, &mu, k, d).expect("valid input").collect();
                t.check(found.len() == expected, || {
                    format!("lam={lam:?} mu={mu:?} k={k} d={d}: {} POPs, {expected} colored partitions", found.len())
                });
                let image: Result<BTreeSet<Pop>, _> = cps
                    .iter()
                    .map(|cp| cp_to_pop(&lam, &mu, k, &ColoredPartition(cp.iter().map(|p| partition(p)).collect())))
                    .collect();
                t.check(image.as_ref().ok() == Some(&found), || format!("lam={lam:?} mu={mu:?} k={k} d={d}: image differs"));
            }
        }
    }
    t
}

fn c6() -> Tally {
    let mut t = Tally::new();
    for (r, lam, mu) in counting_grid() {
        for d in 0..=5u64 {
            for cp in colored(r, d) {
                let cp = ColoredPartition(cp.iter().map(|p| partition(p)).collect());
                let base = phi(&lam, &mu, &cp).expect("valid input");
                for k in d as i64..=d as i64 + 3 {
                    let lam_k = shift_seq(k, &lam).expect("small");
                    let moved = phi(&lam_k, &shsum(&mu, k), &cp).expect("valid input");
                    let ce = || format!("lam={lam:?} mu={mu:?} cp={cp:?} k={k}");
                    t.check(base.shift(k).ok() == Some(moved.clone()), ce);
                    for j in 0..=2i64 {
                        let lhs = base.shift(j + k).and_then(|a| a.to_pop());
                        let rhs = moved.shift(j).and_then(|a| a.to_pop());
                        match (lhs, rhs) {
                            (Ok(l), Ok(r)) => {
                                t.check(l == r, || format!("lam={lam:?} mu={mu:?} cp={cp:?} k={k} j={j}"));
                                t.check(complement_pop(&l) == complement_pop(&r), ce);
                            }
                            _ => t.check(false, || format!("lam={lam:?} mu={mu:?} cp={cp:?} k={k} j={j}: not a POP")),
                        }
                    }
                }
            }
        }
    }
    t
}

fn c7() -> Tally {
    let mut t = Tally::new();
    for m in 0..=12i64 {
        let n = enumerate_pops(&[m, 0], PopFilter::default()).expect("valid").count() as u64;
        let expected = binomial_row_sum(m as usize);
        t.check(n == expected && expected == 1 << m, || format!("m={m}: {n} POPs, expected {expected}"));
    }
    t
}

fn c8() -> Tally {
    let mut t = Tally::new();
    for lam in (1..=4).flat_map(|n| non_increasing(n, 0, 4)) {
        let weights: BTreeSet<Vec<i64>> = patterns(&lam).iter().map(weight).collect();
        for mu in weights {
            let filter = PopFilter {
                weight: Some(mu.clone()),
                ..PopFilter::default()
            };
            let boxes: Vec<u64> = enumerate_pops(&lam, filter).expect("valid").map(|p| p.boxes()).collect();
            let top = boxes.iter().copied().max().unwrap_or(0);
            let count = boxes.iter().filter(|&&b| b == top).count();
            let half = ((norm(&lam) - norm(&mu)) / 2) as u64;
            t.check(top == half && count == 1, || {
                format!("lam={lam:?} mu={mu:?}: max boxes {top} attained {count} times, expected {half} once")
            });
        }
    }
    t
}

fn criterion9_pops() -> Vec<(Vec<i64>, Pop)> {
    [vec![3, 1, 0], vec![2, 2, 0]]
        .into_iter()
        .flat_map(|lam| {
            enumerate_pops(&lam, PopFilter::default())
                .expect("valid")
                .map(move |p| (lam.clone(), p))
                .collect::<Vec<_>>()
        })
        .collect()
}

fn c9() -> Tally {
    let mut t = Tally::new();
    for (lam, p) in criterion9_pops() {
        let c = to_cl_index(&p);
        let rows = p.pattern().rows();
        let r = lam.len() - 1;
        let ell = |i: usize, s: usize| c.entries[s - 1][i - 1].ell as i64;
        for j in 1..=r {
            for i in 1..=j {
                let e = &c.entries[j - 1][i - 1];
                let rhs = lam[i - 1] - lam[i] + (j + 1..=r).map(|s| ell(i + 1, s)).sum::<i64>()
                    - (j..=r).map(|s| ell(i, s)).sum::<i64>();
                let top = e.s.last().map_or(0, |&v| v as i64);
                t.check(e.s.len() as u64 == e.ell && e.s.windows(2).all(|w| w[0] <= w[1]), || {
                    format!("{p:?}: entry ({i},{j}) malformed")
                });
                t.check(e.ell == 0 || top <= rhs, || format!("{p:?}: bound fails at ({i},{j})"));
                t.check(rhs == rows[j - 1][i - 1] - rows[j][i], || format!("{p:?}: bound identity at ({i},{j})"));
            }
        }
        t.check(from_cl_index(&lam, &c).ok() == Some(p.clone()), || format!("{lam:?}: roundtrip fails"));
    }
    t
}

fn c10() -> Tally {
    let mut t = Tally::new();
    for (_, p) in criterion9_pops() {
        let rows = p.pattern().rows().to_vec();
        let area = tri_area(&rows) as u64;
        let c = complement_pop(&p);
        t.check(complement_pop(&c) == p, || format!("{p:?}: not an involution"));
        t.check(c.boxes() == area - p.boxes(), || format!("{p:?}: boxes map"));
        let depth = |q: &Pop| {
            let rows = q.pattern().rows().to_vec();
            (norm(rows.last().unwrap()) - norm(&weight(&rows))) / 2 - q.boxes() as i64
        };
        for j in 0..=3u64 {
            match embed(&p, j) {
                Ok(e) => {
                    t.check(depth(&e) == depth(&p), || format!("{p:?}: embed {j} changes depth"));
                    let w = shsum(&weight(&rows), j as i64);
                    t.check(weight(&e.pattern().rows().to_vec()) == w, || format!("{p:?}: embed {j} weight"));
                    for j2 in 0..=2u64 {
                        let twice = embed(&e, j2).ok();
                        t.check(twice.is_some() && twice == embed(&p, j + j2).ok(), || {
                            format!("{p:?}: embed {j} then {j2}")
                        });
                    }
                }
                Err(e) => t.check(false, || format!("{p:?}: embed {j}: {e}")),
            }
        }
    }
    t
}

fn main() {
    type Criterion = (&'static str, &'static str, fn() -> Tally, Option<u64>);
    let criteria: [Criterion; 10] = [
        ("C1", "max-area pattern is the unique strict maximizer", c1, Some(60)),
        ("C2", "trapezoidal area identities", c2, None),
        ("C3", "bounding row majorizes the weight", c3, None),
        ("C4", "breakup and xi roundtrips", c4, None),
        ("C5", "stable index sets are counted by colored partitions", c5, Some(120)),
        ("C6", "shift commutation and compatibility", c6, None),
        ("C7", "sl2 POP count is 2^m", c7, Some(10)),
        ("C8", "top grade attained once at half the norm gap", c8, None),
        ("C9", "CL index roundtrip and bound", c9, None),
        ("C10", "complementation and embedding", c10, None),
    ];
    let mut outcome = Outcome { failed: false };
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let tally = run();
        outcome.report(id, name, tally, start.elapsed(), limit);
    }
    if outcome.failed {
        std::process::exit(1);
    }
}
