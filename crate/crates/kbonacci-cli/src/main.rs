//! Command-line front end: sequence generation, identity rendering, and the
//! verification suite. Exit codes signal outcomes for CI use: 0 pass,
//! 1 verification failure, 2 usage or domain error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use kbonacci::coefficients::build_table;
use kbonacci::emit::{self, Format, RenderRequest, RenderTarget};
use kbonacci::identity::{
    verify_constant, verify_numeric, verify_telescoped_sweep, ConstantReport, VerificationReport,
};
use kbonacci::sequences::{crosscheck, generate, parse_bfile, MatchReport, RecurrenceSpec};
use kbonacci::symbolic::{build_ledger, verify_concrete_with, verify_parametric, ProofReport};

const EXIT_PASS: u8 = 0;
const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "kbonacci",
    version,
    about = "Exact verification toolkit for sums-of-squares identities of k-bonacci numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Latex,
    Json,
}

impl From<FormatArg> for Format {
    fn from(value: FormatArg) -> Format {
        match value {
            FormatArg::Text => Format::Text,
            FormatArg::Latex => Format::Latex,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    /// Diagonal coefficients for orders 2..=k
    Diag,
    /// Off-diagonal coefficient triangle for one order
    Offdiag,
    /// Contribution grid of N-references
    LedgerSymbolic,
    /// Contribution grid of expanded polynomials with row sums
    LedgerEvaluated,
}

/// Inclusive "a..b" range with a >= 2, for order sweeps.
fn parse_order_range(text: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = split_range(text)?;
    if lo < 2 {
        return Err(format!("order range must start at 2 or above, got {lo}"));
    }
    Ok((lo, hi))
}

/// Inclusive "a..b" range of sequence indices.
fn parse_index_range(text: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = split_range(text)?;
    Ok((lo as usize, hi as usize))
}

fn split_range(text: &str) -> Result<(u32, u32), String> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| format!("expected inclusive range \"a..b\", got {text:?}"))?;
    let lo: u32 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start {a:?}"))?;
    let hi: u32 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad range end {b:?}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

#[derive(Subcommand)]
enum Command {
    /// Generate the first terms of an order-k sequence
    Seq {
        /// Recurrence order (>= 2)
        #[arg(long)]
        k: u32,
        /// Number of terms to generate
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Comma-separated initial terms (defaults to k-1 zeros then 1)
        #[arg(long)]
        initial: Option<String>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Print the coefficient table for one order
    Coeffs {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Print the closed identity for one order
    Identity {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Render coefficient tables and proof ledgers
    Tables {
        #[arg(long, value_enum)]
        target: TargetArg,
        /// Order (offdiag) or maximum order (diag); ignored by ledger targets
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Verify the cleared identity numerically over an exact (k, m) sweep
    VerifyNumeric {
        /// Inclusive order range "a..b"
        #[arg(long, value_parser = parse_order_range, default_value = "2..12")]
        k: (u32, u32),
        /// Largest m in the sweep
        #[arg(long = "m-max", default_value_t = 200)]
        m_max: usize,
        /// Check the telescoped form (m starts at 1) instead
        #[arg(long)]
        telescoped: bool,
        /// Also write the JSON report to this path
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Machine-check the proof ledger (parametric rows; --concrete adds the oracle)
    VerifySymbolic {
        /// Verify the seven row-sum polynomials (the default mode)
        #[arg(long)]
        parametric: bool,
        /// Also compare ledger row sums against brute-force expansion per order
        #[arg(long)]
        concrete: bool,
        /// Inclusive order range for --concrete
        #[arg(long, value_parser = parse_order_range, default_value = "2..10")]
        k: (u32, u32),
        /// Also write the JSON report to this path
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Verify the identity's additive constant, including random initial conditions
    VerifyConstant {
        /// Inclusive order range "a..b"
        #[arg(long, value_parser = parse_order_range, default_value = "2..8")]
        k: (u32, u32),
        /// Random initial-condition vectors per order (entries in [-9, 9])
        #[arg(long, default_value_t = 50)]
        random: usize,
        /// Inclusive probe range "a..b" for m
        #[arg(long, value_parser = parse_index_range, default_value = "1..30")]
        probes: (usize, usize),
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also write the JSON report to this path
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Compare a generated sequence against a local OEIS b-file
    OeisCheck {
        #[arg(long)]
        k: u32,
        /// Path to the b-file
        #[arg(long)]
        bfile: PathBuf,
        /// Number of leading terms to compare
        #[arg(long, default_value_t = 30)]
        terms: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap exits 2 on usage errors and 0 for --help/--version.
        Err(err) => err.exit(),
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Seq {
            k,
            n,
            initial,
            format,
        } => run_seq(k, n, initial, format),
        Command::Coeffs { k, format } => {
            let table = build_table(k)?;
            print!(
                "{}",
                ensure_newline(emit::render_coefficients(&table, format.into())?)
            );
            Ok(EXIT_PASS)
        }
        Command::Identity { k, format } => {
            println!("{}", emit::render_identity(k, format.into())?);
            Ok(EXIT_PASS)
        }
        Command::Tables { target, k, format } => run_tables(target, k, format),
        Command::VerifyNumeric {
            k,
            m_max,
            telescoped,
            out,
            format,
        } => run_verify_numeric(k, m_max, telescoped, out, format),
        Command::VerifySymbolic {
            parametric: _,
            concrete,
            k,
            out,
            format,
        } => run_verify_symbolic(concrete, k, out, format),
        Command::VerifyConstant {
            k,
            random,
            probes,
            seed,
            out,
            format,
        } => run_verify_constant(k, random, probes, seed, out, format),
        Command::OeisCheck { k, bfile, terms } => run_oeis_check(k, &bfile, terms),
    }
}

fn ensure_newline(mut text: String) -> String {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    text
}

fn run_seq(k: u32, n: usize, initial: Option<String>, format: FormatArg) -> Result<u8> {
    let spec = match initial {
        None => RecurrenceSpec::standard(k)?,
        Some(text) => {
            let terms = text
                .split(',')
                .map(|part| {
                    part.trim()
                        .parse()
                        .map_err(|_| anyhow!("bad initial term {part:?}"))
                })
                .collect::<Result<Vec<_>>>()?;
            RecurrenceSpec::with_initial(k, terms)?
        }
    };
    let seq = generate(&spec, n)?;
    match format {
        FormatArg::Json => println!("{}", emit::sequence_to_json(&seq)),
        // Text and LaTeX both print b-file style "index value" lines.
        _ => {
            for (idx, term) in seq.terms().iter().enumerate() {
                println!("{idx} {term}");
            }
        }
    }
    Ok(EXIT_PASS)
}

fn run_tables(target: TargetArg, k: Option<u32>, format: FormatArg) -> Result<u8> {
    let target = match target {
        TargetArg::Diag => RenderTarget::DiagTable {
            k_max: k.unwrap_or(6),
        },
        TargetArg::Offdiag => RenderTarget::OffdiagTable {
            k: k.ok_or_else(|| anyhow!("--target offdiag requires --k"))?,
        },
        TargetArg::LedgerSymbolic => RenderTarget::LedgerSymbolic,
        TargetArg::LedgerEvaluated => RenderTarget::LedgerEvaluated,
    };
    let rendered = emit::render_table(&RenderRequest {
        target,
        format: format.into(),
    })?;
    print!("{}", ensure_newline(rendered));
    Ok(EXIT_PASS)
}

fn write_report(out: Option<&PathBuf>, json: &str) -> Result<()> {
    if let Some(path) = out {
        fs::write(path, json).with_context(|| format!("writing report to {}", path.display()))?;
    }
    Ok(())
}

fn run_verify_numeric(
    k: (u32, u32),
    m_max: usize,
    telescoped: bool,
    out: Option<PathBuf>,
    format: FormatArg,
) -> Result<u8> {
    let report = if telescoped {
        verify_telescoped_sweep(k, m_max)
    } else {
        verify_numeric(k, m_max)
    };
    write_report(out.as_ref(), &report.to_json())?;
    if format == FormatArg::Json {
        println!("{}", report.to_json());
    } else {
        print_numeric_report(&report, telescoped);
    }
    Ok(if report.passed() {
        EXIT_PASS
    } else {
        EXIT_VERIFY_FAIL
    })
}

fn print_numeric_report(report: &VerificationReport, telescoped: bool) {
    let (k_lo, k_hi) = report.k_range;
    let m_lo = usize::from(telescoped);
    let mode = if telescoped { "telescoped" } else { "numeric" };
    println!(
        "{mode} identity sweep: k={k_lo}..{k_hi}, m={m_lo}..{}",
        report.m_max
    );
    for failure in &report.failures {
        println!(
            "FAIL k={} m={}: lhs={} rhs={}",
            failure.k, failure.m, failure.lhs, failure.rhs
        );
    }
    let checks = (k_hi - k_lo + 1) as usize * (report.m_max + 1 - m_lo);
    if report.passed() {
        println!("status: PASS ({checks} checks, exact)");
    } else {
        println!(
            "status: FAIL ({} of {checks} checks)",
            report.failures.len()
        );
    }
}

fn run_verify_symbolic(
    concrete: bool,
    k: (u32, u32),
    out: Option<PathBuf>,
    format: FormatArg,
) -> Result<u8> {
    let ledger = build_ledger();
    let parametric = verify_parametric(&ledger);
    let concrete_report = concrete.then(|| verify_concrete_with(&ledger, k));
    let report = ProofReport::new(parametric, concrete_report);
    write_report(out.as_ref(), &report.to_json())?;
    if format == FormatArg::Json {
        println!("{}", report.to_json());
    } else {
        println!("parametric row sums:");
        for row in &report.parametric.rows {
            println!(
                "  row {}: {}  [expected {}]  {}",
                row.set,
                row.sum,
                row.expected,
                if row.pass { "ok" } else { "MISMATCH" }
            );
        }
        println!(
            "parametric proof: {}",
            if report.parametric.passed() {
                "PASS"
            } else {
                "FAIL"
            }
        );
        if let Some(concrete) = &report.concrete {
            let (k_lo, k_hi) = concrete.k_range;
            println!("concrete expansion: k={k_lo}..{k_hi}");
            for check in &concrete.checks {
                if check.pass {
                    println!("  k={}: ok", check.k);
                } else {
                    for mismatch in &check.mismatches {
                        println!(
                            "  k={} cell ({}, {}): {}",
                            mismatch.k, mismatch.i, mismatch.j, mismatch.detail
                        );
                    }
                }
            }
            println!(
                "concrete check: {}",
                if concrete.passed() { "PASS" } else { "FAIL" }
            );
        }
        println!("overall: {}", if report.passed() { "PASS" } else { "FAIL" });
    }
    Ok(if report.passed() {
        EXIT_PASS
    } else {
        EXIT_VERIFY_FAIL
    })
}

fn run_verify_constant(
    k: (u32, u32),
    random: usize,
    probes: (usize, usize),
    seed: u64,
    out: Option<PathBuf>,
    format: FormatArg,
) -> Result<u8> {
    let report = verify_constant(k, random, probes.0..=probes.1, seed);
    write_report(out.as_ref(), &report.to_json())?;
    if format == FormatArg::Json {
        println!("{}", report.to_json());
    } else {
        print_constant_report(&report);
    }
    Ok(if report.passed() {
        EXIT_PASS
    } else {
        EXIT_VERIFY_FAIL
    })
}

fn print_constant_report(report: &ConstantReport) {
    let (k_lo, k_hi) = report.k_range;
    let (p_lo, p_hi) = report.probe_range;
    println!(
        "constant sweep: k={k_lo}..{k_hi}, {} random vectors per order, probes m={p_lo}..{p_hi}, seed {}",
        report.random_vectors, report.seed
    );
    for failure in &report.failures {
        println!(
            "FAIL k={} initial=[{}] ({}): {}",
            failure.k,
            failure.initial.join(", "),
            failure.kind,
            failure.detail
        );
    }
    println!("status: {}", if report.passed() { "PASS" } else { "FAIL" });
}

fn run_oeis_check(k: u32, bfile: &PathBuf, terms: usize) -> Result<u8> {
    let text =
        fs::read_to_string(bfile).with_context(|| format!("reading b-file {}", bfile.display()))?;
    let parsed = parse_bfile(&text)?;
    let spec = RecurrenceSpec::standard(k)?;
    let seq = generate(&spec, terms.max(1))?;
    match crosscheck(&seq, &parsed, terms)? {
        MatchReport::Agreement { terms_checked } => {
            println!(
                "k={k} vs {}: agreement on first {terms_checked} terms",
                bfile.display()
            );
            Ok(EXIT_PASS)
        }
        MatchReport::Mismatch {
            index,
            sequence_value,
            bfile_value,
        } => {
            println!(
                "k={k} vs {}: mismatch at index {index}: sequence={sequence_value} b-file={bfile_value}",
                bfile.display()
            );
            Ok(EXIT_VERIFY_FAIL)
        }
    }
}
