//! Command-line front end.
//!
//! Exit codes: 0 on success or a passing verification, 1 when a verification
//! fails, 2 on usage, parse, or data errors.

pub mod bench;
pub mod bfile;
pub mod oeis;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arith::{parse_rational, render, Rational};
use crate::bernoulli::{bernoulli, bernoulli_recurrence, bernoulli_split, BernoulliMethod};
use crate::combinatorics::stirling2;
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::poly::Polynomial;
use crate::polylog::polylog_neg_rf;
use crate::quadrature::{
    beta_quadrature_check, verify_integral, QuadratureReport, BETA_TOLERANCE, DEFAULT_NODES,
    DEFAULT_PANELS,
};

pub use bench::{bench_run, BenchRow};
pub use bfile::{parse_bfile, render_bfile, BFileEntry};
pub use oeis::{oeis_check, OeisReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Recurrence,
    #[value(alias = "stirling-sum")]
    Eq1,
    Split,
}

#[derive(Debug, Parser)]
#[command(
    name = "bernsplit",
    version,
    about = "Exact Bernoulli numbers via Stirling-number sums"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print B_N.
    Bernoulli {
        n: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Recurrence)]
        method: MethodArg,
        /// Row `m` of the split; defaults to floor(N/2).
        #[arg(long)]
        m: Option<u32>,
    },
    /// Print S(N, K).
    #[command(allow_negative_numbers = true)]
    Stirling { n: usize, k: i64 },
    /// Print a table of values.
    Table {
        #[command(subcommand)]
        kind: TableKind,
    },
    /// Evaluate the double Stirling sum for (M, N) and compare with B_{M+N}.
    Identity { m: u32, n: u32 },
    /// Print Li_{-N}(-t) as a rational function of t.
    Polylog {
        n: u32,
        /// Evaluate exactly at a rational t such as `2`, `7/3` or `0.25`.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Integrate Li_{-M}(-1/t) Li_{-N}(-t)/t over (0, inf) and compare.
    VerifyIntegral {
        m: u32,
        n: u32,
        #[arg(long, default_value_t = DEFAULT_PANELS)]
        panels: usize,
        #[arg(long, default_value_t = DEFAULT_NODES)]
        nodes: usize,
    },
    /// Integrate t^K/(1+t)^{K+L+2} over (0, inf) and compare with B(K+1, L+1).
    BetaCheck {
        k: u32,
        l: u32,
        #[arg(long, default_value_t = DEFAULT_PANELS)]
        panels: usize,
        #[arg(long, default_value_t = DEFAULT_NODES)]
        nodes: usize,
    },
    /// Compare numerator/denominator b-files with computed Bernoulli numbers.
    OeisCheck {
        #[arg(long)]
        numerators: PathBuf,
        #[arg(long)]
        denominators: PathBuf,
        #[arg(long)]
        max: u32,
    },
    /// Time the evaluation strategies for every N up to --max-sum.
    Bench {
        #[arg(long)]
        max_sum: u32,
        /// Run independent N cells on the thread pool.
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Debug, Subcommand)]
enum TableKind {
    /// B_0 through B_max.
    Bernoulli {
        #[arg(long)]
        max: u32,
    },
}

/// Runs the CLI against the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI with explicit output and diagnostic streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = writeln!(err, "{}", e.render());
                    let _ = writeln!(err, "{}", Cli::command().render_help());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Correctness(_) => EXIT_FAIL,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Data(format!("write failed: {e}"))
}

/// `{"num": "...", "den": "..."}`.
pub fn json_rational(value: &Rational) -> Value {
    json!({ "num": value.numer().to_string(), "den": value.denom().to_string() })
}

fn write_json(out: &mut dyn Write, doc: &Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, doc).map_err(io_err)?;
    writeln!(out).map_err(io_err)
}

/// Writes an RFC 4180 table with a header row and LF line endings.
pub fn write_csv(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(header).map_err(io_err)?;
    for row in rows {
        writer.write_record(row).map_err(io_err)?;
    }
    let bytes = writer.into_inner().map_err(io_err)?;
    out.write_all(&bytes).map_err(io_err)
}

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn exit_for(pass: bool) -> i32 {
    if pass {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let format = cli.format;
    match &cli.command {
        Command::Bernoulli { n, method, m } => cmd_bernoulli(out, format, *n, *method, *m),
        Command::Stirling { n, k } => {
            let value = stirling2(*n, *k);
            match format {
                OutputFormat::Plain => writeln!(out, "{value}").map_err(io_err)?,
                OutputFormat::Csv => write_csv(
                    out,
                    &["n", "k", "value"],
                    &[vec![n.to_string(), k.to_string(), value.to_string()]],
                )?,
                OutputFormat::Json => {
                    write_json(out, &json!({ "n": n, "k": k, "value": value.to_string() }))?
                }
            }
            Ok(EXIT_OK)
        }
        Command::Table {
            kind: TableKind::Bernoulli { max },
        } => cmd_table(out, format, *max),
        Command::Identity { m, n } => cmd_identity(out, format, *m, *n),
        Command::Polylog { n, at } => cmd_polylog(out, format, *n, at.as_deref()),
        Command::VerifyIntegral {
            m,
            n,
            panels,
            nodes,
        } => {
            let report = verify_integral(*m, *n, *panels, *nodes)?;
            let tolerance = crate::quadrature::integral_tolerance(*m, *n);
            write_report(out, format, "integral", &report, tolerance)
        }
        Command::BetaCheck {
            k,
            l,
            panels,
            nodes,
        } => {
            let report = beta_quadrature_check(*k, *l, *panels, *nodes)?;
            write_report(out, format, "beta", &report, BETA_TOLERANCE)
        }
        Command::OeisCheck {
            numerators,
            denominators,
            max,
        } => cmd_oeis(out, format, numerators, denominators, *max),
        Command::Bench { max_sum, parallel } => {
            let execution = if *parallel {
                Execution::Parallel
            } else {
                Execution::Sequential
            };
            let rows = bench_run(*max_sum, execution)?;
            write_bench(out, format, *max_sum, &rows)?;
            Ok(EXIT_OK)
        }
    }
}

fn cmd_bernoulli(
    out: &mut dyn Write,
    format: OutputFormat,
    n: u32,
    method: MethodArg,
    m: Option<u32>,
) -> Result<i32> {
    let method = match (method, m) {
        (MethodArg::Recurrence, None) => BernoulliMethod::Recurrence,
        (MethodArg::Eq1, None) => BernoulliMethod::StirlingSum,
        (MethodArg::Split, m) => {
            let m = m.unwrap_or(n / 2);
            if m > n {
                return Err(Error::Argument(format!("--m {m} exceeds N = {n}")));
            }
            BernoulliMethod::Split { m, n: n - m }
        }
        (_, Some(_)) => return Err(Error::Argument("--m only applies to --method split".into())),
    };
    let value = bernoulli(n, method)?;
    match format {
        OutputFormat::Plain => writeln!(out, "{}", render(&value)).map_err(io_err)?,
        OutputFormat::Csv => write_csv(
            out,
            &["n", "method", "numerator", "denominator"],
            &[vec![
                n.to_string(),
                method.to_string(),
                value.numer().to_string(),
                value.denom().to_string(),
            ]],
        )?,
        OutputFormat::Json => {
            let mut doc =
                json!({ "n": n, "method": method.to_string(), "value": json_rational(&value) });
            if let BernoulliMethod::Split { m, n } = method {
                doc["split"] = json!({ "m": m, "n": n });
            }
            write_json(out, &doc)?
        }
    }
    Ok(EXIT_OK)
}

fn cmd_table(out: &mut dyn Write, format: OutputFormat, max: u32) -> Result<i32> {
    let values: Vec<Rational> = (0..=max).map(bernoulli_recurrence).collect();
    match format {
        OutputFormat::Plain => {
            for (n, v) in values.iter().enumerate() {
                writeln!(out, "B_{n} = {}", render(v)).map_err(io_err)?;
            }
        }
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = values
                .iter()
                .enumerate()
                .map(|(n, v)| vec![n.to_string(), v.numer().to_string(), v.denom().to_string()])
                .collect();
            write_csv(out, &["n", "numerator", "denominator"], &rows)?
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = values
                .iter()
                .enumerate()
                .map(|(n, v)| json!({ "n": n, "value": json_rational(v) }))
                .collect();
            write_json(out, &json!({ "max": max, "bernoulli": rows }))?
        }
    }
    Ok(EXIT_OK)
}

fn cmd_identity(out: &mut dyn Write, format: OutputFormat, m: u32, n: u32) -> Result<i32> {
    let total = m
        .checked_add(n)
        .ok_or_else(|| Error::Argument("M + N overflows".into()))?;
    let split = bernoulli_split(m, n);
    let reference = bernoulli_recurrence(total);
    let matched = split == reference;
    let verdict = if matched { "MATCH" } else { "MISMATCH" };
    match format {
        OutputFormat::Plain => {
            writeln!(out, "B_{total} = {}", render(&split)).map_err(io_err)?;
            writeln!(out, "recurrence: {}", render(&reference)).map_err(io_err)?;
            writeln!(out, "{verdict}").map_err(io_err)?;
        }
        OutputFormat::Csv => write_csv(
            out,
            &["m", "n", "index", "split", "recurrence", "status"],
            &[vec![
                m.to_string(),
                n.to_string(),
                total.to_string(),
                render(&split),
                render(&reference),
                verdict.to_string(),
            ]],
        )?,
        OutputFormat::Json => write_json(
            out,
            &json!({
                "m": m,
                "n": n,
                "index": total,
                "split": json_rational(&split),
                "recurrence": json_rational(&reference),
                "status": verdict,
            }),
        )?,
    }
    Ok(exit_for(matched))
}

fn coeff_strings(p: &Polynomial) -> Vec<String> {
    p.coeffs().iter().map(render).collect()
}

fn cmd_polylog(out: &mut dyn Write, format: OutputFormat, n: u32, at: Option<&str>) -> Result<i32> {
    let f = polylog_neg_rf(n);
    let point = at.map(parse_rational).transpose()?;
    let value = point.as_ref().map(|t| f.eval_exact(t)).transpose()?;
    let shown = f.display("t").to_string();
    match format {
        OutputFormat::Plain => {
            writeln!(out, "Li_{{-{n}}}(-t) = {shown}").map_err(io_err)?;
            if let (Some(t), Some(v)) = (&point, &value) {
                writeln!(out, "at t = {}: {}", render(t), render(v)).map_err(io_err)?;
            }
        }
        OutputFormat::Csv => {
            let mut header = vec!["n", "function"];
            let mut row = vec![n.to_string(), shown];
            if let (Some(t), Some(v)) = (&point, &value) {
                header.extend(["t", "value"]);
                row.extend([render(t), render(v)]);
            }
            write_csv(out, &header, &[row])?
        }
        OutputFormat::Json => {
            let mut doc = json!({
                "n": n,
                "variable": "t",
                "function": shown,
                "numerator": coeff_strings(f.numerator()),
                "denominator": coeff_strings(f.denominator()),
            });
            if let (Some(t), Some(v)) = (&point, &value) {
                doc["at"] = json!({ "t": json_rational(t), "value": json_rational(v) });
            }
            write_json(out, &doc)?
        }
    }
    Ok(EXIT_OK)
}

fn write_report(
    out: &mut dyn Write,
    format: OutputFormat,
    kind: &str,
    report: &QuadratureReport,
    tolerance: f64,
) -> Result<i32> {
    let pass = report.passes(tolerance);
    let (a, b) = if kind == "beta" {
        ("k", "l")
    } else {
        ("m", "n")
    };
    match format {
        OutputFormat::Plain => {
            let lines = [
                format!("{kind} ({a}, {b}) = ({}, {})", report.m, report.n),
                format!("estimate  = {:.17e}", report.estimate),
                format!("expected  = {}", render(&report.expected)),
                format!("abs_error = {:.3e}", report.abs_error),
                format!(
                    "rel_error = {:.3e} (tolerance {tolerance:e})",
                    report.rel_error
                ),
                format!("panels = {}, nodes = {}", report.panels, report.nodes),
                status(pass).to_string(),
            ];
            for line in lines {
                writeln!(out, "{line}").map_err(io_err)?;
            }
        }
        OutputFormat::Csv => write_csv(
            out,
            &[
                a,
                b,
                "estimate",
                "expected",
                "abs_error",
                "rel_error",
                "panels",
                "nodes",
                "status",
            ],
            &[vec![
                report.m.to_string(),
                report.n.to_string(),
                format!("{:e}", report.estimate),
                render(&report.expected),
                format!("{:e}", report.abs_error),
                format!("{:e}", report.rel_error),
                report.panels.to_string(),
                report.nodes.to_string(),
                status(pass).to_string(),
            ]],
        )?,
        OutputFormat::Json => write_json(
            out,
            &json!({
                "check": kind,
                a: report.m,
                b: report.n,
                "estimate": report.estimate,
                "expected": json_rational(&report.expected),
                "abs_error": report.abs_error,
                "rel_error": report.rel_error,
                "tolerance": tolerance,
                "panels": report.panels,
                "nodes": report.nodes,
                "status": status(pass),
            }),
        )?,
    }
    Ok(exit_for(pass))
}

fn read_bfile(path: &Path) -> Result<Vec<BFileEntry>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))?;
    parse_bfile(&text)
}

fn cmd_oeis(
    out: &mut dyn Write,
    format: OutputFormat,
    numerators: &Path,
    denominators: &Path,
    max: u32,
) -> Result<i32> {
    let report = oeis_check(&read_bfile(numerators)?, &read_bfile(denominators)?, max)?;
    let pass = report.passed();
    match format {
        OutputFormat::Plain => {
            for row in &report.rows {
                writeln!(
                    out,
                    "n = {:>3}  {:<4}  file {}  recurrence {}",
                    row.n,
                    status(row.passed()),
                    render(&row.file_value),
                    render(&row.recurrence)
                )
                .map_err(io_err)?;
            }
            writeln!(
                out,
                "{} checked, {} failed",
                report.rows.len(),
                report.failures()
            )
            .map_err(io_err)?;
            writeln!(out, "{}", status(pass)).map_err(io_err)?;
        }
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        render(&r.file_value),
                        render(&r.recurrence),
                        render(&r.split),
                        status(r.passed()).to_string(),
                    ]
                })
                .collect();
            write_csv(out, &["n", "file", "recurrence", "split", "status"], &rows)?
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "file": json_rational(&r.file_value),
                        "recurrence": json_rational(&r.recurrence),
                        "split": json_rational(&r.split),
                        "status": status(r.passed()),
                    })
                })
                .collect();
            write_json(
                out,
                &json!({
                    "max": max,
                    "rows": rows,
                    "failures": report.failures(),
                    "status": status(pass),
                }),
            )?
        }
    }
    Ok(exit_for(pass))
}

pub const BENCH_HEADER: [&str; 5] = ["method", "N", "split_m", "wall_time_ns", "result_hash"];

fn write_bench(
    out: &mut dyn Write,
    format: OutputFormat,
    max_sum: u32,
    rows: &[BenchRow],
) -> Result<()> {
    let split = |r: &BenchRow| r.split_m.map(|m| m.to_string()).unwrap_or_default();
    match format {
        OutputFormat::Plain => {
            writeln!(
                out,
                "{:<13} {:>4} {:>7} {:>14}  result_hash",
                "method", "N", "split_m", "wall_time_ns"
            )
            .map_err(io_err)?;
            for r in rows {
                writeln!(
                    out,
                    "{:<13} {:>4} {:>7} {:>14}  {}",
                    r.method,
                    r.n,
                    split(r),
                    r.wall_time.as_nanos(),
                    r.result_hash
                )
                .map_err(io_err)?;
            }
        }
        OutputFormat::Csv => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.method.clone(),
                        r.n.to_string(),
                        split(r),
                        r.wall_time.as_nanos().to_string(),
                        r.result_hash.clone(),
                    ]
                })
                .collect();
            write_csv(out, &BENCH_HEADER, &table)?
        }
        OutputFormat::Json => {
            let table: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "method": r.method,
                        "N": r.n,
                        "split_m": r.split_m,
                        "wall_time_ns": r.wall_time.as_nanos() as u64,
                        "result_hash": r.result_hash,
                    })
                })
                .collect();
            write_json(out, &json!({ "max_sum": max_sum, "rows": table }))?
        }
    }
    Ok(())
}
