//! Command-line workbench over the divisor-system library: factoring,
//! divisor enumeration, function evaluation, sieved summatory reports,
//! constants, perfect-number searches, champion scans and check suites.
//!
//! Exit codes: 0 success (including empty search results), 1 usage error,
//! 2 overflow or capacity, 3 verification failure.

use std::fs;
use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use exdiv_core::arithfun::{self, FunctionId};
use exdiv_core::constants::{self, ConstantId};
use exdiv_core::divisors::{self, DivisorKind};
use exdiv_core::error::Error;
use exdiv_core::extremal::{self, ExtremalTarget};
use exdiv_core::factorint::{factor, Factorization};
use exdiv_core::perfect::{self, PerfectKind, SearchFilter};
use exdiv_core::summatory;
use exdiv_core::verify;

#[derive(Parser)]
#[command(
    name = "exdiv",
    about = "Workbench for unitary and exponential divisor arithmetic",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical factorization of n in `p^a*q^b` form.
    Factor { n: String },
    /// Enumerate a divisor system of n.
    Divisors {
        /// all | unitary | exponential | exp-unitary | unitary-exp
        #[arg(long = "kind")]
        kind: String,
        n: String,
    },
    /// Evaluate a catalog function at n (integer or factorization text).
    Eval {
        #[arg(long = "fn")]
        function: String,
        n: String,
    },
    /// Exact summatory function with main-term residuals, as CSV.
    Sum {
        #[arg(long = "fn")]
        function: String,
        #[arg(long, default_value = "1e6")]
        limit: String,
        #[arg(long, default_value_t = 8)]
        checkpoints: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Exact rational summatory of a pointwise quotient, as CSV.
    QuotientSum {
        #[arg(long)]
        num: String,
        #[arg(long)]
        den: String,
        #[arg(long, default_value = "1e6")]
        limit: String,
        #[arg(long, default_value_t = 8)]
        checkpoints: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Euler-product constants with tail bounds.
    Constants {
        /// Constant ids (default: all of them).
        #[arg(long = "id")]
        ids: Vec<String>,
        #[arg(long, default_value = "1e5")]
        primes: String,
        #[arg(long, default_value_t = 256)]
        series: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Exhaustive perfect-number search, as CSV (empty result is exit 0).
    Search {
        /// unitary-perfect | e-perfect | e-unitary-perfect
        #[arg(long = "kind")]
        kind: String,
        #[arg(long)]
        limit: Option<String>,
        #[arg(long = "odd-only")]
        odd_only: bool,
        #[arg(long = "coprime-to")]
        coprime_to: Option<String>,
        #[arg(long = "require-non-e-squarefree")]
        require_non_e_squarefree: bool,
        #[arg(long = "powerful-only")]
        powerful_only: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Champion scans or constructed extremal sequences, as CSV.
    Champions {
        /// eq11 | eq12 | eq23
        #[arg(long)]
        target: String,
        #[arg(long, default_value = "1e6")]
        limit: String,
        /// Evaluate the constructed family at these k instead of scanning.
        #[arg(long, value_delimiter = ',')]
        constructed: Vec<u32>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run a named check suite; any failure exits 3.
    Verify {
        /// algebra | oracles | paper-values | residuals
        #[arg(long)]
        suite: String,
        #[arg(long)]
        limit: Option<String>,
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Args)]
struct CommonOpts {
    /// Worker budget for sieve and search; output is identical for any value.
    #[arg(long)]
    threads: Option<usize>,
    /// Write data here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

fn thread_budget(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("EXDIV_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(1)
    .max(1)
}

/// Exact integer parse with scientific shorthand: `360`, `1e8`, `2.5e6`.
fn parse_extended(s: &str) -> Result<u128, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("`{s}` is not an integer"));
    if let Some((mant, exp)) = s.split_once(['e', 'E']) {
        let exp: u32 = exp.parse().map_err(|_| bad())?;
        let (int_part, frac_part) = match mant.split_once('.') {
            Some((i, f)) => (i, f),
            None => (mant, ""),
        };
        if frac_part.len() as u32 > exp {
            return Err(Error::Parse(format!("`{s}` is not an exact integer")));
        }
        let digits = format!("{int_part}{frac_part}");
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let base: u128 = digits.parse().map_err(|_| Error::Overflow)?;
        let scale = checked_pow10(exp - frac_part.len() as u32)?;
        base.checked_mul(scale).ok_or(Error::Overflow)
    } else {
        s.parse().map_err(|_| bad())
    }
}

fn checked_pow10(e: u32) -> Result<u128, Error> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(10).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

fn parse_limit_u64(s: &str) -> Result<u64, Error> {
    u64::try_from(parse_extended(s)?).map_err(|_| Error::Overflow)
}

/// Integer or `p^a*q^b` factorization text.
fn parse_argument(s: &str) -> Result<Factorization, Error> {
    if s.contains('^') || s.contains('*') {
        Factorization::from_str(s)
    } else {
        factor(parse_extended(s)?)
    }
}

fn emit(common: &CommonOpts, data: &str) -> Result<(), Error> {
    match &common.out {
        Some(path) => {
            fs::write(path, data).map_err(|e| Error::Invalid(format!("cannot write {path}: {e}")))
        }
        None => {
            print!("{data}");
            std::io::stdout()
                .flush()
                .map_err(|e| Error::Invalid(e.to_string()))
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Factor { n } => {
            let f = factor(parse_extended(&n)?)?;
            println!("{f}");
            Ok(0)
        }
        Command::Divisors { kind, n } => {
            let kind = DivisorKind::from_str(&kind)?;
            let f = parse_argument(&n)?;
            let ds = divisors::enumerate(&f, kind)?;
            let line = ds
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",");
            println!("{line}");
            Ok(0)
        }
        Command::Eval { function, n } => {
            let id = FunctionId::from_str(&function)?;
            let f = parse_argument(&n)?;
            println!("{}", arithfun::eval(id, &f)?);
            Ok(0)
        }
        Command::Sum {
            function,
            limit,
            checkpoints,
            common,
        } => {
            let id = FunctionId::from_str(&function)?;
            let x = parse_limit_u64(&limit)?;
            let rep = summatory::summatory(id, x, checkpoints, thread_budget(common.threads))?;
            emit(&common, &rep.to_csv())?;
            Ok(0)
        }
        Command::QuotientSum {
            num,
            den,
            limit,
            checkpoints,
            common,
        } => {
            let num = FunctionId::from_str(&num)?;
            let den = FunctionId::from_str(&den)?;
            let x = parse_limit_u64(&limit)?;
            let rep = summatory::quotient_summatory(
                num,
                den,
                x,
                checkpoints,
                thread_budget(common.threads),
            )?;
            emit(&common, &rep.to_csv())?;
            Ok(0)
        }
        Command::Constants {
            ids,
            primes,
            series,
            common,
        } => {
            let p = parse_limit_u64(&primes)?;
            let chosen: Vec<ConstantId> = if ids.is_empty() {
                ConstantId::ALL.to_vec()
            } else {
                ids.iter()
                    .map(|s| ConstantId::from_str(s))
                    .collect::<Result<_, _>>()?
            };
            let mut out = String::new();
            for id in chosen {
                let est = constants::euler_product(id, p, series)?;
                out.push_str(&est.to_string());
                out.push('\n');
            }
            emit(&common, &out)?;
            Ok(0)
        }
        Command::Search {
            kind,
            limit,
            odd_only,
            coprime_to,
            require_non_e_squarefree,
            powerful_only,
            common,
        } => {
            let kind = PerfectKind::from_str(&kind)?;
            let x = match limit {
                Some(s) => parse_limit_u64(&s)?,
                // conservative defaults; the unitary kind scans densely
                None => match kind {
                    PerfectKind::Unitary => 1_000_000,
                    _ => 100_000_000,
                },
            };
            let filter = SearchFilter {
                odd_only,
                coprime_to: coprime_to.as_deref().map(parse_extended).transpose()?,
                require_non_e_squarefree,
                powerful_only,
            };
            let outcome = perfect::search(kind, x, filter, thread_budget(common.threads))?;
            for f in &outcome.indeterminate {
                eprintln!("indeterminate (sigma overflows 128 bits): {f}");
            }
            emit(&common, &outcome.to_csv())?;
            Ok(0)
        }
        Command::Champions {
            target,
            limit,
            constructed,
            common,
        } => {
            let target = ExtremalTarget::from_str(&target)?;
            let records = if constructed.is_empty() {
                let x = parse_limit_u64(&limit)?;
                extremal::champion_scan(target, x, thread_budget(common.threads))?
            } else {
                constructed
                    .iter()
                    .map(|&k| extremal::constructed_sequence_ratio(target, k))
                    .collect::<Result<Vec<_>, _>>()?
            };
            emit(&common, &extremal::records_to_csv(&records))?;
            Ok(0)
        }
        Command::Verify {
            suite,
            limit,
            threads,
        } => {
            let threads = thread_budget(threads);
            let limit = limit.as_deref().map(parse_limit_u64).transpose()?;
            let checks = match suite.as_str() {
                "algebra" => verify::suite_algebra(limit.unwrap_or(10_000))?,
                "oracles" => verify::suite_oracles(limit.unwrap_or(10_000))?,
                // squarefull e-perfect reproduction at a reduced default
                "paper-values" => verify::suite_paper_values(limit.unwrap_or(100_000_000))?,
                "residuals" => verify::suite_residuals(limit.unwrap_or(1_000_000), threads)?,
                other => {
                    return Err(Error::Parse(format!(
                        "unknown suite `{other}` (expected algebra, oracles, paper-values, residuals)"
                    )))
                }
            };
            let (text, all_passed) = verify::render(&checks);
            print!("{text}");
            Ok(if all_passed { 0 } else { 3 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are success, anything else is usage
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Overflow | Error::Capacity(_) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
