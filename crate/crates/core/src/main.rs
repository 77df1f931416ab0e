use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mocktheta::congruence::{scan_discover, scan_progressions, V0Cache, DEFAULT_MEM_CAP};
use mocktheta::opmatrix::{Matrices, MatrixName};
use mocktheta::qexpr::{evaluate, parse, EvalContext};
use mocktheta::suites::{run_suite, suite_names, SuiteOptions};
use mocktheta::{RingTag, SeriesError, VerifyError};

#[derive(Parser)]
#[command(name = "mocktheta", version, about = "Expand q-series expressions and verify congruences for v0(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Memory cap in bytes for coefficient tables.
    #[arg(long = "mem-cap", default_value_t = DEFAULT_MEM_CAP, global = true)]
    mem_cap: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of an expression, for example "phi(q)^2/phi(-q)".
    Expand {
        expr: String,
        /// Number of coefficients.
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        order: u64,
        /// Work modulo this integer instead of over the integers.
        #[arg(long = "mod", value_parser = clap::value_parser!(u64).range(2..))]
        modulus: Option<u64>,
    },
    /// Run a verification suite and print its report.
    Verify {
        /// Suite name: all, identities, huffing, matrices, valuations, dissections, genfun, or a theorem family.
        #[arg(long)]
        suite: String,
        /// Truncation order for suites that have one.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        order: Option<u64>,
    },
    /// Print the top-left block of a matrix (M, N, P, A, B, C or D).
    Matrix { name: String, rows: usize, cols: usize },
    /// Search for progressions a n + b with v0(a n + b) = 0 (mod m).
    #[command(group(clap::ArgGroup::new("scale").required(true).args(["a", "amax"])))]
    Scan {
        /// Scan residues b of this single scale a.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        a: Option<u64>,
        /// Scan every scale 1..=amax.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        amax: Option<u64>,
        #[arg(long = "mod", value_parser = clap::value_parser!(u64).range(2..))]
        modulus: u64,
        /// Number of terms n = 0..count-1 that must vanish.
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
}

enum Failure {
    Usage(String),
    Cap(String),
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Failure {
        match e {
            VerifyError::ResourceCap { .. } => Failure::Cap(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Failure {
        Failure::Usage(e.to_string())
    }
}

/// Output text and whether every check passed.
type Outcome = (String, bool);

fn expand(expr: &str, order: u64, modulus: Option<u64>, out: &Output) -> Result<Outcome, Failure> {
    let ast = parse(expr).map_err(|e| Failure::Usage(format!("parse error {e}")))?;
    let needed = order.saturating_mul(16);
    if needed > out.mem_cap {
        return Err(Failure::Cap(format!("expanding to order {order} needs about {needed} bytes, cap is {} bytes", out.mem_cap)));
    }
    let ring = match modulus {
        Some(m) => RingTag::modular(m)?,
        None => RingTag::Integer,
    };
    let ctx = EvalContext::new(ring, order as usize)?;
    let series = evaluate(&ast, &ctx)?;
    let coeffs: Vec<String> = series.elems().iter().map(ToString::to_string).collect();
    let text = match out.format {
        Format::Text => coeffs.join(" ") + "\n",
        Format::Json => serde_json::to_string(&coeffs).expect("strings serialize") + "\n",
    };
    Ok((text, true))
}

fn verify(suite: &str, order: Option<u64>, out: &Output) -> Result<Outcome, Failure> {
    if !suite_names().contains(&suite) {
        return Err(Failure::Usage(format!("unknown suite {suite:?}; known suites: {}", suite_names().join(", "))));
    }
    let options = SuiteOptions { order: order.map(|n| n as usize), mem_cap: out.mem_cap };
    let report = run_suite(suite, options)?;
    let text = match out.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    Ok((text, report.all_passed()))
}

fn matrix(name: &str, rows: usize, cols: usize, out: &Output) -> Result<Outcome, Failure> {
    let name: MatrixName = name.parse()?;
    let block = Matrices::new().block(name, rows, cols);
    let cells: Vec<Vec<String>> = block.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect();
    let text = match out.format {
        Format::Text => {
            let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
            let lines: Vec<String> = cells
                .iter()
                .map(|row| row.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join(" "))
                .collect();
            lines.join("\n") + "\n"
        }
        Format::Json => serde_json::to_string(&json!({ "matrix": name.to_string(), "rows": cells })).expect("json") + "\n",
    };
    Ok((text, true))
}

fn scan(a: Option<u64>, amax: Option<u64>, modulus: u64, count: u64, out: &Output) -> Result<Outcome, Failure> {
    let cache = V0Cache::new(out.mem_cap);
    let found = match (a, amax) {
        (Some(a), _) => scan_progressions([a], modulus, count, &cache)?,
        (None, Some(amax)) => scan_discover(amax, modulus, count, &cache)?,
        (None, None) => unreachable!("clap requires one of --a and --amax"),
    };
    let text = match out.format {
        Format::Text => {
            let mut s = String::new();
            for (a, b) in &found {
                s.push_str(&format!("v0({a}n+{b}) = 0 (mod {modulus}) for 0<=n<{count}  [unproven]\n"));
            }
            s.push_str(&format!("{} candidate(s)\n", found.len()));
            s
        }
        Format::Json => {
            let candidates: Vec<_> =
                found.iter().map(|(a, b)| json!({ "a": a, "b": b, "status": "unproven" })).collect();
            let doc = json!({ "modulus": modulus, "count": count, "candidates": candidates });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
    };
    Ok((text, true))
}

fn emit(text: &str, path: Option<&PathBuf>) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = &cli.output;
    let result = match &cli.command {
        Command::Expand { expr, order, modulus } => expand(expr, *order, *modulus, out),
        Command::Verify { suite, order } => verify(suite, *order, out),
        Command::Matrix { name, rows, cols } => matrix(name, *rows, *cols, out),
        Command::Scan { a, amax, modulus, count } => scan(*a, *amax, *modulus, *count, out),
    };
    match result {
        Ok((text, passed)) => {
            if let Err(e) = emit(&text, out.out.as_ref()) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
