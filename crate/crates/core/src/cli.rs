//! The `gtpop` command line. Every invocation emits one JSON document.
//!
//! Exit codes: 0 on success, 1 when an input breaks a contract (the document
//! is `{"error": ..., "constraint": ...}`), 2 when the input cannot be parsed.
//! Sequences are comma-separated integers; nested inputs are inline JSON or
//! `@path` to read a file.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::maxarea::{max_area_pattern, norm_gap_half};
use crate::partition::{break_multi, break_multi_inv, BreakResult, ColoredPartition, Partition};
use crate::pattern::{enumerate_patterns, GtPattern};
use crate::pop::{
    enumerate_pops, from_cl_index, graded_character, render_cl_monomial, to_cl_index, top_grade_profile, ClIndex,
    Pop, PopFilter,
};
use crate::stability::{complement_pop, cp_to_pop, embed, phi, pop_to_cp, stable_range, xi, xi_inv};
use crate::verify::{run_suite, VerifyOptions, SUITES};

#[derive(Debug, Clone)]
struct Seq(Vec<i64>);

fn parse_seq(s: &str) -> Result<Seq, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Seq(Vec::new()));
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("bad integer {t:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(Seq)
}

#[derive(Parser)]
#[command(name = "gtpop", version, about = "Gelfand-Tsetlin patterns, POPs and their bijections")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// The maximal-area pattern for a bounding row and weight.
    Maxarea {
        #[command(flatten)]
        bw: BoundWeight,
    },
    Pattern {
        #[command(subcommand)]
        op: PatternCmd,
    },
    Pop {
        #[command(subcommand)]
        op: PopCmd,
    },
    /// Partition breakups and the colored-partition bijection.
    Bij {
        #[command(subcommand)]
        op: BijCmd,
    },
    Stab {
        #[command(subcommand)]
        op: StabCmd,
    },
    /// Run an invariant suite against brute-force oracles.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Bounding {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_seq)]
    bounding: Seq,
    /// Subtract the last bounding entry from the bounding row (and weight).
    #[arg(long)]
    normalize_dominant: bool,
}

#[derive(Args)]
struct BoundWeight {
    #[command(flatten)]
    b: Bounding,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_seq)]
    weight: Seq,
}

#[derive(Args)]
struct RowsArg {
    /// Rows as JSON, either `[[..],..]` or `{"rows": ...}`.
    #[arg(long, allow_hyphen_values = true)]
    rows: String,
}

#[derive(Args)]
struct PopArg {
    #[arg(long, allow_hyphen_values = true)]
    pop: String,
}

#[derive(Subcommand)]
enum PatternCmd {
    Weight(RowsArg),
    Area(RowsArg),
    Validate(RowsArg),
    Enumerate {
        #[command(flatten)]
        b: Bounding,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_seq)]
        weight: Option<Seq>,
    },
}

#[derive(Subcommand)]
enum PopCmd {
    Enumerate {
        #[command(flatten)]
        b: Bounding,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_seq)]
        weight: Option<Seq>,
        #[arg(long)]
        boxes: Option<u64>,
        #[arg(long)]
        depth: Option<u64>,
        #[arg(long)]
        proptrap_plus_boxes: Option<u64>,
    },
    /// Graded character: per weight, POP counts by number of boxes.
    Char {
        #[command(flatten)]
        b: Bounding,
    },
    TopGrade {
        #[command(flatten)]
        bw: BoundWeight,
    },
    ToCl(PopArg),
    FromCl {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_seq)]
        bounding: Seq,
        #[arg(long)]
        index: String,
    },
    Monomial(PopArg),
}

#[derive(Subcommand)]
enum BijCmd {
    Break {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_seq)]
        c: Seq,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_seq)]
        partition: Seq,
    },
    Unbreak {
        #[arg(long)]
        result: String,
    },
    Xi {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_seq)]
        eta: Seq,
        #[arg(long, allow_hyphen_values = true)]
        mu: i64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_seq)]
        partition: Seq,
    },
    XiInv {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_seq)]
        eta: Seq,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_seq)]
        eta2: Seq,
        #[arg(long)]
        pieces: String,
    },
    /// The near pattern of a colored partition; `--weight` is the full weight.
    Phi {
        #[command(flatten)]
        bw: BoundWeight,
        #[arg(long)]
        cp: String,
    },
    ToPop {
        #[command(flatten)]
        bw: BoundWeight,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        cp: String,
    },
    ToCp {
        #[command(flatten)]
        bw: BoundWeight,
        #[arg(long)]
        k: u64,
        #[arg(long, allow_hyphen_values = true)]
        pop: String,
    },
    Complement(PopArg),
    Embed {
        #[arg(long, allow_hyphen_values = true)]
        pop: String,
        #[arg(long)]
        j: u64,
    },
}

#[derive(Subcommand)]
enum StabCmd {
    /// Least stable shift and whether `k` reaches it.
    Range {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_seq)]
        bounding: Seq,
        #[arg(long)]
        k: u64,
        #[arg(long, allow_hyphen_values = true)]
        pop: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long)]
    max_entry: Option<i64>,
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_seq)]
    bounding: Option<Seq>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Randomized cases for the bijection suite.
    #[arg(long)]
    cases: Option<usize>,
}

enum Fail {
    Malformed(String),
    Contract(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Contract(e)
    }
}

type Out = Result<(i32, Value), Fail>;

fn ok(v: impl serde::Serialize) -> Out {
    Ok((0, serde_json::to_value(v).expect("serializable")))
}

/// Inline JSON, or the contents of the file after a leading `@`.
fn parse_doc<T: for<'de> Deserialize<'de>>(arg: &str) -> Result<T, Fail> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Fail::Malformed(format!("{path}: {e}")))?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| Fail::Malformed(format!("invalid JSON input: {e}")))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRows {
    Bare(Vec<Vec<i64>>),
    Doc { rows: Vec<Vec<i64>> },
}

#[derive(Deserialize)]
struct RawPop {
    pattern: Vec<Vec<i64>>,
    overlay: Vec<Vec<Vec<u64>>>,
}

#[derive(Deserialize)]
struct RawBreak {
    a: Vec<u64>,
    b: Vec<u64>,
    pieces: Vec<Vec<u64>>,
}

fn parts(raw: Vec<Vec<u64>>) -> Result<Vec<Partition>, Error> {
    raw.into_iter().map(Partition::new).collect()
}

fn pattern_of(arg: &str) -> Result<GtPattern, Fail> {
    let rows = match parse_doc::<RawRows>(arg)? {
        RawRows::Bare(r) | RawRows::Doc { rows: r } => r,
    };
    Ok(GtPattern::new(rows)?)
}

fn pop_of(arg: &str) -> Result<Pop, Fail> {
    let raw: RawPop = parse_doc(arg)?;
    let overlay = raw.overlay.into_iter().map(parts).collect::<Result<_, _>>()?;
    Ok(Pop::from_rows(raw.pattern, overlay)?)
}

fn cp_of(arg: &str) -> Result<ColoredPartition, Fail> {
    Ok(ColoredPartition(parts(parse_doc(arg)?)?))
}

fn normalized(b: &Bounding, weight: Option<&Seq>) -> (Vec<i64>, Option<Vec<i64>>) {
    let shift = match (b.normalize_dominant, b.bounding.0.last()) {
        (true, Some(&last)) => last,
        _ => 0,
    };
    let lam = b.bounding.0.iter().map(|x| x - shift).collect();
    let mu = weight.map(|w| w.0.iter().map(|x| x - shift).collect());
    (lam, mu)
}

fn pattern_json(p: &GtPattern) -> Value {
    json!({ "rows": p.rows() })
}

fn dispatch(cmd: Cmd) -> Out {
    match cmd {
        Cmd::Maxarea { bw } => {
            let (lam, mu) = normalized(&bw.b, Some(&bw.weight));
            let mu = mu.expect("weight given");
            let p = max_area_pattern(&lam, &mu)?;
            ok(json!({ "rows": p.rows(), "area": p.area(), "norm_gap_half": norm_gap_half(&lam, &mu)? }))
        }
        Cmd::Pattern { op } => match op {
            PatternCmd::Weight(a) => ok(json!({ "weight": pattern_of(&a.rows)?.weight() })),
            PatternCmd::Area(a) => {
                let p = pattern_of(&a.rows)?;
                ok(json!({ "area": p.area(), "traparea": p.traparea() }))
            }
            PatternCmd::Validate(a) => {
                let p = pattern_of(&a.rows)?;
                ok(json!({ "valid": true, "n": p.n() }))
            }
            PatternCmd::Enumerate { b, weight } => {
                let (lam, mu) = normalized(&b, weight.as_ref());
                let all: Vec<Value> = enumerate_patterns(&lam, mu.as_deref())?.map(|p| pattern_json(&p)).collect();
                ok(json!({ "count": all.len(), "patterns": all }))
            }
        },
        Cmd::Pop { op } => match op {
            PopCmd::Enumerate {
                b,
                weight,
                boxes,
                depth,
                proptrap_plus_boxes,
            } => {
                let (lam, mu) = normalized(&b, weight.as_ref());
                let filter = PopFilter {
                    weight: mu,
                    boxes,
                    depth,
                    proptrap_plus_boxes,
                };
                let all: Vec<Pop> = enumerate_pops(&lam, filter)?.collect();
                ok(json!({ "count": all.len(), "pops": all }))
            }
            PopCmd::Char { b } => ok(graded_character(&normalized(&b, None).0)?),
            PopCmd::TopGrade { bw } => {
                let (lam, mu) = normalized(&bw.b, Some(&bw.weight));
                ok(top_grade_profile(&lam, &mu.expect("weight given"))?)
            }
            PopCmd::ToCl(a) => ok(to_cl_index(&pop_of(&a.pop)?)),
            PopCmd::FromCl { bounding, index } => {
                let c: ClIndex = parse_doc(&index)?;
                ok(from_cl_index(&bounding.0, &c)?)
            }
            PopCmd::Monomial(a) => ok(json!({ "monomial": render_cl_monomial(&pop_of(&a.pop)?) })),
        },
        Cmd::Bij { op } => match op {
            BijCmd::Break { c, partition } => {
                let p = seq_partition(&partition)?;
                ok(break_multi(&c.0, &p)?)
            }
            BijCmd::Unbreak { result } => {
                let raw: RawBreak = parse_doc(&result)?;
                let br = BreakResult {
                    a: raw.a,
                    b: raw.b,
                    pieces: parts(raw.pieces)?,
                };
                let (c, p) = break_multi_inv(&br)?;
                ok(json!({ "c": c, "partition": p }))
            }
            BijCmd::Xi { eta, mu, partition } => ok(xi(&eta.0, mu, &seq_partition(&partition)?)?),
            BijCmd::XiInv { eta, eta2, pieces } => {
                let pieces = parts(parse_doc(&pieces)?)?;
                let (mu, p) = xi_inv(&eta.0, &eta2.0, &pieces)?;
                ok(json!({ "mu": mu, "partition": p }))
            }
            BijCmd::Phi { bw, cp } => {
                let (lam, mu) = normalized(&bw.b, Some(&bw.weight));
                ok(phi(&lam, &mu.expect("weight given"), &cp_of(&cp)?)?)
            }
            BijCmd::ToPop { bw, k, cp } => {
                let (lam, mu) = normalized(&bw.b, Some(&bw.weight));
                ok(cp_to_pop(&lam, &mu.expect("weight given"), k, &cp_of(&cp)?)?)
            }
            BijCmd::ToCp { bw, k, pop } => {
                let (lam, mu) = normalized(&bw.b, Some(&bw.weight));
                ok(pop_to_cp(&lam, &mu.expect("weight given"), k, &pop_of(&pop)?)?)
            }
            BijCmd::Complement(a) => ok(complement_pop(&pop_of(&a.pop)?)),
            BijCmd::Embed { pop, j } => ok(embed(&pop_of(&pop)?, j)?),
        },
        Cmd::Stab {
            op: StabCmd::Range { bounding, k, pop },
        } => ok(stable_range(&bounding.0, k, &pop_of(&pop)?)?),
        Cmd::Verify(v) => verify(v),
    }
}

fn seq_partition(s: &Seq) -> Result<Partition, Fail> {
    let raw = s
        .0
        .iter()
        .map(|&x| u64::try_from(x).map_err(|_| Fail::Malformed(format!("partition part {x} is negative"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Partition::new(raw)?)
}

fn verify(v: VerifyArgs) -> Out {
    if !SUITES.contains(&v.suite.as_str()) {
        return Err(Fail::Malformed(format!(
            "unknown suite {:?}; expected one of {}",
            v.suite,
            SUITES.join(", ")
        )));
    }
    let dflt = VerifyOptions::default();
    let opts = VerifyOptions {
        max_entry: v.max_entry.unwrap_or(dflt.max_entry),
        max_len: v.max_len.unwrap_or(dflt.max_len),
        r: v.r.unwrap_or(dflt.r),
        d: v.d.unwrap_or(dflt.d),
        k: v.k,
        bounding: v.bounding.map(|s| s.0).unwrap_or(dflt.bounding),
        seed: v.seed,
        cases: v.cases.unwrap_or(dflt.cases),
    };
    let report = run_suite(&v.suite, &opts)?.expect("suite name checked");
    let code = if report.passed { 0 } else { 1 };
    Ok((code, serde_json::to_value(report).expect("serializable")))
}

fn diagnostic(error: String, constraint: &str) -> String {
    json!({ "error": error, "constraint": constraint }).to_string()
}

/// Parses `argv` (program name first), runs the command and returns the exit
/// code with the document to print.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match dispatch(cli.cmd) {
        Ok((code, v)) => (code, v.to_string()),
        Err(Fail::Contract(e)) => (1, diagnostic(e.to_string(), e.constraint())),
        Err(Fail::Malformed(msg)) => (2, diagnostic(msg, "input.malformed")),
    }
}
