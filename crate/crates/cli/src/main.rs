//! Batch command-line surface over the q-series engine: coefficient dumps,
//! identity verification suites, corollary evaluation, and benchmarks.
//!
//! Exit codes: 0 on success, 1 when an identity check fails, 2 on usage or
//! domain errors.

mod output;
mod ranges;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use qmac_core::identities::{
    bounds_quin, bounds_sept, quin_corollary_coeff, sept_corollary_coeff, verify, SeptFormula,
    SignConvention, VerifyError,
};
use qmac_core::products::{recip_r14_f5, recip_r23_f5, theta6_reciprocal, pochhammer};
use qmac_core::report::{IdentityId, IdentityReport};
use qmac_core::{qdsl, Series};
use ranges::Range;
use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

const ORDER_ENV: &str = "QMAC_ORDER";

#[derive(Parser)]
#[command(
    name = "qmac",
    about = "Exact q-series computations: MacMahon partition families and closed-formula identity checks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a series expression and print exponent/coefficient pairs
    Coeffs {
        /// Expression, e.g. "inv(theta6)" or "shift(A(1),-1)"
        expr: String,
        /// Truncation order (defaults to $QMAC_ORDER, then 20)
        #[arg(short = 'N', long, allow_hyphen_values = true)]
        order: Option<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write output to a file instead of stdout
        #[arg(long)]
        out: Option<String>,
    },
    /// Verify an identity over a grid of parameter cells
    Verify {
        /// Identity id: OS1, OS2, THM-QUIN, LEM-QUIN, COR-QUIN, THM-SEPT-14,
        /// THM-SEPT-23, LEM-SEPT-14, LEM-SEPT-23, COR-SEPT-14, COR-SEPT-23,
        /// JTP1, JTP2, THM16, QUINTUPLE, SEPTUPLE, JTP-ODD, JTP-EVEN
        id: String,
        /// Range "a..b" (inclusive) or a single value
        #[arg(long, allow_hyphen_values = true)]
        n: Option<Range>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<Range>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<Range>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<Range>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<Range>,
        #[arg(long, allow_hyphen_values = true)]
        l: Option<Range>,
        #[arg(long, allow_hyphen_values = true)]
        j: Option<Range>,
        #[arg(short = 'N', long, allow_hyphen_values = true)]
        order: Option<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<String>,
        /// Worker threads for independent cells (output order is unaffected)
        #[arg(long, default_value = "1")]
        jobs: usize,
    },
    /// Evaluate a coefficient corollary against the direct reciprocal
    Corollary {
        /// Which closed formula: quin, sept14 or sept23
        variant: CorollaryVariant,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        /// Coefficient indices, default 0..n
        #[arg(long, allow_hyphen_values = true)]
        m: Option<Range>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<String>,
    },
    /// Timing runs for multiply/invert, plus the large-index reproduction
    Bench {
        /// Comma-separated truncation orders
        #[arg(long, default_value = "500,1000")]
        orders: String,
        /// Run the n = 100 corollary reproduction
        #[arg(long)]
        n100: bool,
        /// Largest coefficient index for --n100
        #[arg(long, default_value = "20")]
        m_max: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CorollaryVariant {
    Quin,
    Sept14,
    Sept23,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Coeffs { expr, order, format, out } => cmd_coeffs(&expr, order, format, out),
        Command::Verify { id, n, k, m, beta, gamma, l, j, order, format, out, jobs } => {
            cmd_verify(&id, VerifyRanges { n, k, m, beta, gamma, l, j }, order, format, out, jobs)
        }
        Command::Corollary { variant, n, m, format, out } => {
            cmd_corollary(variant, n, m, format, out)
        }
        Command::Bench { orders, n100, m_max } => cmd_bench(&orders, n100, m_max),
    };
    ExitCode::from(code)
}

fn env_order() -> Option<i64> {
    std::env::var(ORDER_ENV).ok().and_then(|v| v.parse().ok())
}

fn usage_error(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    2
}

// ---------------------------------------------------------------------------
// coeffs
// ---------------------------------------------------------------------------

fn cmd_coeffs(expr: &str, order: Option<i64>, format: Format, out: Option<String>) -> u8 {
    let order = order.or_else(env_order).unwrap_or(20);
    let ast = match qdsl::parse(expr) {
        Ok(ast) => ast,
        Err(e) => {
            eprintln!("error: {e}");
            point_at(expr, e.span.start, e.span.end);
            return 2;
        }
    };
    let series = match qdsl::eval(&ast, order) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            point_at(expr, e.span.start, e.span.end);
            return 2;
        }
    };
    let rows = series_rows(&series, order);
    let rendered = match format {
        Format::Text => output::coeffs_text(&rows),
        Format::Json => output::coeffs_json(expr, order, &rows),
        Format::Csv => output::coeffs_csv(&rows),
    };
    match output::write_to(out.as_deref(), &rendered) {
        Ok(()) => 0,
        Err(e) => usage_error(e),
    }
}

fn point_at(src: &str, start: usize, end: usize) {
    eprintln!("  {src}");
    let width = end.saturating_sub(start).max(1);
    eprintln!("  {}{}", " ".repeat(start.min(src.len())), "^".repeat(width));
}

fn series_rows(series: &Series, order: i64) -> Vec<(i64, BigInt)> {
    match series.valuation() {
        None => Vec::new(),
        Some(v) => (v..=order.min(series.order()))
            .map(|e| (e, series.coeff(e).expect("within order")))
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyRanges {
    n: Option<Range>,
    k: Option<Range>,
    m: Option<Range>,
    beta: Option<Range>,
    gamma: Option<Range>,
    l: Option<Range>,
    j: Option<Range>,
}

/// Parameter cells for one identity, in deterministic (sorted) order.
fn cells_for(id: IdentityId, r: &VerifyRanges) -> Result<Vec<BTreeMap<String, i64>>, String> {
    let one = |name: &str, range: &Option<Range>, lo: i64, hi: i64| -> Vec<(String, Vec<i64>)> {
        vec![(name.to_string(), range.clone().unwrap_or(Range { lo, hi }).values())]
    };
    let axes: Vec<(String, Vec<i64>)> = match id {
        IdentityId::Os1 | IdentityId::Os2 => one("k", &r.k, 0, 4),
        IdentityId::ThmQuin => one("n", &r.n, -2, 4),
        IdentityId::LemQuin => one("n", &r.n, 1, 8),
        IdentityId::CorQuin => {
            // m defaults to 0..n per cell
            let ns = r.n.clone().unwrap_or(Range { lo: 6, hi: 6 }).values();
            let mut cells = Vec::new();
            for n in ns {
                let ms = r.m.clone().unwrap_or(Range { lo: 0, hi: n }).values();
                for m in ms {
                    cells.push(BTreeMap::from([("n".to_string(), n), ("m".to_string(), m)]));
                }
            }
            return Ok(cells);
        }
        IdentityId::ThmSept14 | IdentityId::ThmSept23 => one("n", &r.n, 0, 2),
        IdentityId::LemSept14 | IdentityId::LemSept23 => one("n", &r.n, 2, 8),
        IdentityId::CorSept14 | IdentityId::CorSept23 => {
            let ns = r.n.clone().unwrap_or(Range { lo: 5, hi: 5 }).values();
            let mut cells = Vec::new();
            for n in ns {
                let ms = r.m.clone().unwrap_or(Range { lo: 0, hi: n }).values();
                for m in ms {
                    cells.push(BTreeMap::from([("n".to_string(), n), ("m".to_string(), m)]));
                }
            }
            return Ok(cells);
        }
        IdentityId::Jtp1 => {
            let mut axes = one("beta", &r.beta, 0, 2);
            axes.extend(one("k", &r.k, 0, 3));
            axes
        }
        IdentityId::Jtp2 => {
            let mut axes = one("gamma", &r.gamma, 0, 2);
            axes.extend(one("k", &r.k, 0, 3));
            axes
        }
        IdentityId::Thm16 => {
            let mut axes = one("l", &r.l, 1, 1);
            axes.extend(one("n", &r.n, 3, 3));
            axes.extend(one("j", &r.j, 0, 3));
            axes
        }
        IdentityId::QuintupleProduct
        | IdentityId::SeptupleProduct
        | IdentityId::JtpOddForm
        | IdentityId::JtpEvenForm => Vec::new(),
    };
    // cartesian product, outer axis slowest
    let mut cells: Vec<BTreeMap<String, i64>> = vec![BTreeMap::new()];
    for (name, values) in axes {
        if values.is_empty() {
            return Err(format!("empty range for --{name}"));
        }
        let mut next = Vec::with_capacity(cells.len() * values.len());
        for cell in &cells {
            for v in &values {
                let mut c = cell.clone();
                c.insert(name.clone(), *v);
                next.push(c);
            }
        }
        cells = next;
    }
    Ok(cells)
}

fn cmd_verify(
    id: &str,
    ranges: VerifyRanges,
    order: Option<i64>,
    format: Format,
    out: Option<String>,
    jobs: usize,
) -> u8 {
    let id: IdentityId = match id.parse() {
        Ok(id) => id,
        Err(e) => return usage_error(e),
    };
    let order = order.or_else(env_order);
    let cells = match cells_for(id, &ranges) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    let run = |cell: &BTreeMap<String, i64>| verify(id, cell, order);
    let results: Vec<Result<IdentityReport, VerifyError>> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build();
        match pool {
            Ok(pool) => pool.install(|| {
                use rayon::prelude::*;
                cells.par_iter().map(run).collect()
            }),
            Err(e) => return usage_error(e),
        }
    } else {
        cells.iter().map(run).collect()
    };
    let mut reports = Vec::with_capacity(results.len());
    for r in results {
        match r {
            Ok(rep) => reports.push(rep),
            Err(e) => return usage_error(e),
        }
    }
    reports.sort_by(|a, b| {
        let key = |r: &IdentityReport| r.params.values().copied().collect::<Vec<_>>();
        key(a).cmp(&key(b))
    });
    let all_passed = reports.iter().all(|r| r.passed());
    let rendered = match format {
        Format::Text => output::reports_text(&reports),
        Format::Json => output::reports_json(&reports),
        Format::Csv => output::reports_csv(&reports),
    };
    if let Err(e) = output::write_to(out.as_deref(), &rendered) {
        return usage_error(e);
    }
    if all_passed {
        0
    } else {
        1
    }
}

// ---------------------------------------------------------------------------
// corollary
// ---------------------------------------------------------------------------

fn cmd_corollary(
    variant: CorollaryVariant,
    n: Option<i64>,
    m: Option<Range>,
    format: Format,
    out: Option<String>,
) -> u8 {
    let n = n.unwrap_or(match variant {
        CorollaryVariant::Quin => 6,
        _ => 5,
    });
    let min_n = if variant == CorollaryVariant::Quin { 1 } else { 2 };
    if n < min_n {
        return usage_error(format!("corollary needs n >= {min_n}"));
    }
    let ms = m.unwrap_or(Range { lo: 0, hi: n }).values();
    if ms.iter().any(|&m| m < 0 || m > n) {
        return usage_error("corollary indices need 0 <= m <= n");
    }
    let m_hi = *ms.iter().max().unwrap_or(&0);
    let (label, closed, reciprocal): (&str, Box<dyn Fn(i64) -> BigInt>, Series) = match variant {
        CorollaryVariant::Quin => (
            "1/theta6",
            Box::new(move |m| quin_corollary_coeff(n, m, SignConvention::Adjudicated)),
            theta6_reciprocal(m_hi),
        ),
        CorollaryVariant::Sept14 => (
            "1/(R23*F5)",
            Box::new(move |m| sept_corollary_coeff(SeptFormula::B14, n, m)),
            recip_r23_f5(m_hi),
        ),
        CorollaryVariant::Sept23 => (
            "1/(R14*F5)",
            Box::new(move |m| sept_corollary_coeff(SeptFormula::B23, n, m)),
            recip_r14_f5(m_hi),
        ),
    };
    let bounds_note = match variant {
        CorollaryVariant::Quin => {
            let b = bounds_quin(n);
            format!("n={n}, index window k={}..{}", b.r1, b.r2)
        }
        _ => {
            let b = bounds_sept(n);
            format!("n={n}, index windows s1..s2={}..{}, s3..s4={}..{}", b.s1, b.s2, b.s3, b.s4)
        }
    };
    let rows: Vec<output::CorollaryRow> = ms
        .iter()
        .map(|&m| {
            let formula = closed(m);
            let direct = reciprocal.coeff(m).expect("within order");
            let matches = formula == direct;
            output::CorollaryRow { m, formula, direct, matches }
        })
        .collect();
    let all = rows.iter().all(|r| r.matches);
    let rendered = match format {
        Format::Text => output::corollary_text(&bounds_note, label, &rows),
        Format::Json => output::corollary_json(label, &rows),
        Format::Csv => output::corollary_csv(&rows),
    };
    if let Err(e) = output::write_to(out.as_deref(), &rendered) {
        return usage_error(e);
    }
    if all {
        0
    } else {
        1
    }
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

fn cmd_bench(orders: &str, n100: bool, m_max: i64) -> u8 {
    let parsed: Result<Vec<i64>, _> = orders.split(',').map(|s| s.trim().parse::<i64>()).collect();
    let orders = match parsed {
        Ok(v) if v.iter().all(|&n| n >= 1) => v,
        _ => return usage_error("--orders expects a comma-separated list of positive integers"),
    };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{:>8} {:>12} {:>12} {:>12}", "order", "product_ms", "invert_ms", "mul_ms");
    for n in &orders {
        let t0 = Instant::now();
        let f = pochhammer(1, 1, *n).pow(3);
        let t_build = t0.elapsed().as_millis();
        let t1 = Instant::now();
        let inv = f.invert().expect("unit");
        let t_inv = t1.elapsed().as_millis();
        let t2 = Instant::now();
        let sq = &inv * &inv;
        let t_mul = t2.elapsed().as_millis();
        std::hint::black_box(&sq);
        let _ = writeln!(out, "{n:>8} {t_build:>12} {t_inv:>12} {t_mul:>12}");
    }
    if n100 {
        let n = 100;
        if !(0..=n).contains(&m_max) {
            return usage_error("--m-max must lie in 0..=100");
        }
        let t0 = Instant::now();
        let b = bounds_quin(n);
        let k_lo = b.r1 + (b.r1 + n).rem_euclid(2);
        let k_hi = b.r2 - (b.r2 + n).rem_euclid(2);
        let _ = writeln!(
            out,
            "\nreproduction at n={n}: a(m) from the {} index pairs k={}..{} (step 2)",
            (k_hi - k_lo) / 2 + 1,
            k_lo,
            k_hi,
        );
        let target = theta6_reciprocal(m_max);
        let mut all = true;
        for m in 0..=m_max {
            let got = quin_corollary_coeff(n, m, SignConvention::Adjudicated);
            let expect = target.coeff(m).expect("within order");
            let okay = got == expect;
            all &= okay;
            let _ = writeln!(
                out,
                "a({m:>3}) = {got}  direct = {expect}  {}",
                if okay { "match" } else { "MISMATCH" }
            );
        }
        let _ = writeln!(out, "elapsed: {} ms", t0.elapsed().as_millis());
        if !all {
            return 1;
        }
    }
    0
}
