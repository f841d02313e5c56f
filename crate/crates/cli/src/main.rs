//! `epist`: exact computations with episturmian words.
//!
//! Exit codes: 0 success, 2 parse error, 3 contract violation, 4 oracle
//! mismatch. All CSV output is byte-deterministic: stable ordering, fixed
//! 10-significant-digit decimals, LF line endings, UTF-8, `#` comments.

use clap::{Parser, Subcommand, ValueEnum};
use episturmian::complexity::{inrc_brute, inrc_rauzy, inrc_regular};
use episturmian::engine::word_from_intercept;
use episturmian::exponents::{
    dio_brute_estimate, dio_estimate, dio_standard_closed, ice_estimate, irrationality_bounds,
};
use episturmian::{DigitString, DirectiveWord, Error, NumerationSystem, WordTower};
use num_bigint::BigUint;
use num_traits::{Num, ToPrimitive};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "epist", version, about = "Exact computations with episturmian words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a prefix of the episturmian word with the given directive word
    /// and intercept.
    Word {
        /// Directive word, e.g. `periodic:|012` or `regular:d=3;a=|2`.
        directive: String,
        /// Intercept, e.g. `zeros`, `digits:1101`, or `periodic:1|0`.
        intercept: String,
        /// Prefix length.
        #[arg(long, default_value_t = 50)]
        length: usize,
    },
    /// Ostrowski numeration conversions for a directive word.
    Numeration {
        directive: String,
        #[command(subcommand)]
        op: NumerationOp,
    },
    /// Initial nonrepetitive complexity table as CSV.
    Irep {
        directive: String,
        intercept: String,
        #[arg(long = "n-from", default_value_t = 1)]
        n_from: u64,
        #[arg(long = "n-to", default_value_t = 50)]
        n_to: u64,
        /// closed = case analysis, brute/rauzy = oracles, cross = all three
        /// with agreement checking (exit 4 on mismatch).
        #[arg(long, value_enum, default_value_t = Mode::Closed)]
        mode: Mode,
    },
    /// Reproduction data for the complexity figure as CSV.
    Figure {
        #[arg(long, default_value_t = 1)]
        fig: u32,
    },
    /// Exponent estimates and bounds.
    Exponent {
        directive: String,
        intercept: String,
        #[arg(long = "k-max", default_value_t = 40)]
        k_max: usize,
        #[arg(long, value_enum, default_value_t = Kind::Dio)]
        kind: Kind,
        /// Window-length budget for the brute-force kinds (`ice`, and `dio`
        /// on non-regular directive words).
        #[arg(long = "n-max", default_value_t = 1000)]
        n_max: usize,
        /// Root-bracketing tolerance.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Also print the per-k maxima trace as CSV.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Subcommand)]
enum NumerationOp {
    /// Greedy expansion of a nonnegative integer (least significant first).
    Rep { n: String },
    /// Value of a finite digit string.
    Val { digits: String },
    /// Check a digit string against the Ostrowski conditions.
    Check { digits: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Closed,
    Brute,
    Rauzy,
    Cross,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Dio,
    Ice,
    Bounds,
    Closed,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

/// Fixed-significant-digit decimal formatting (10 digits, plain notation).
fn format_sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let formatted = format!("{:.*e}", digits - 1, x);
    let (mantissa, exponent) = formatted.split_once('e').expect("scientific format");
    let exponent: i32 = exponent.parse().expect("numeric exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mantissa),
    };
    let digits_only: String = mantissa.chars().filter(|c| *c != '.').collect();
    let point = exponent + 1; // digits before the decimal point
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits_only)
    } else if (point as usize) >= digits_only.len() {
        format!("{}{}", digits_only, "0".repeat(point as usize - digits_only.len()))
    } else {
        format!("{}.{}", &digits_only[..point as usize], &digits_only[point as usize..])
    };
    format!("{sign}{body}")
}

fn parse_directive(text: &str) -> Result<DirectiveWord, Failure> {
    DirectiveWord::parse(text).map_err(|e| fail(2, e.to_string()))
}

fn parse_intercept(text: &str) -> Result<DigitString, Failure> {
    DigitString::parse(text).map_err(|e| fail(2, e.to_string()))
}

fn letters_to_string(symbols: &[u8]) -> String {
    symbols.iter().map(|s| s.to_string()).collect()
}

fn cmd_word(directive: &str, intercept: &str, length: usize) -> Result<String, Failure> {
    let tower = WordTower::from_directive(parse_directive(directive)?);
    let c = parse_intercept(intercept)?;
    let prefix = word_from_intercept(&tower, &c, length)?;
    Ok(format!("{}\n", letters_to_string(&prefix)))
}

fn cmd_numeration(directive: &str, op: &NumerationOp) -> Result<String, Failure> {
    let num = NumerationSystem::new(parse_directive(directive)?);
    let line = match op {
        NumerationOp::Rep { n } => {
            let n = BigUint::from_str_radix(n, 10)
                .map_err(|_| fail(2, format!("invalid integer {n:?}")))?;
            num.represent(&n).to_string()
        }
        NumerationOp::Val { digits } => {
            let c = DigitString::parse_finite(digits).map_err(|e| fail(2, e.to_string()))?;
            num.value(&c)?.to_string()
        }
        NumerationOp::Check { digits } => {
            let c = if digits.contains(':') {
                parse_intercept(digits)?
            } else {
                DigitString::parse_finite(digits).map_err(|e| fail(2, e.to_string()))?
            };
            if num.is_valid(&c) { "valid".into() } else { "invalid".into() }
        }
    };
    Ok(format!("{line}\n"))
}

/// Certified brute-force value, growing the materialized prefix on demand.
fn brute_value(tower: &WordTower, c: &DigitString, n: usize) -> Result<usize, Failure> {
    let recurring = tower.directive().recurring_letter_count();
    let mut budget = ((recurring + 1) * (n + 1) + 64).min(tower.cap());
    loop {
        let word = word_from_intercept(tower, c, budget)?;
        if let Some(v) = inrc_brute(&word, n)? {
            return Ok(v);
        }
        if budget >= tower.cap() {
            return Err(fail(3, format!("no repetition of order {n} within the cap")));
        }
        budget = (budget * 2).min(tower.cap());
    }
}

fn cmd_irep(
    directive: &str,
    intercept: &str,
    n_from: u64,
    n_to: u64,
    mode: Mode,
) -> Result<String, Failure> {
    if n_from < 1 || n_to < n_from {
        return Err(fail(2, "need 1 ≤ n-from ≤ n-to"));
    }
    let tower = WordTower::from_directive(parse_directive(directive)?);
    let c = parse_intercept(intercept)?;
    if !tower.numeration().is_valid(&c) {
        return Err(fail(3, format!("intercept {c} violates the Ostrowski conditions")));
    }
    let needs_closed = matches!(mode, Mode::Closed | Mode::Cross);
    if needs_closed && tower.regular_period().is_none() {
        return Err(fail(3, "closed and cross modes need a regular directive word"));
    }

    let mut lines = Vec::new();
    let mut mismatches = Vec::new();
    match mode {
        Mode::Closed | Mode::Cross => lines.push("n,irep,case".to_string()),
        _ => lines.push("n,irep".to_string()),
    }
    for n in n_from..=n_to {
        match mode {
            Mode::Closed => {
                let r = inrc_regular(&tower, &c, &BigUint::from(n))?;
                lines.push(format!("{n},{},{}", r.value, r.case));
            }
            Mode::Brute => {
                let v = brute_value(&tower, &c, n as usize)?;
                lines.push(format!("{n},{v}"));
            }
            Mode::Rauzy => {
                let v = inrc_rauzy(&tower, &c, n as usize)?;
                lines.push(format!("{n},{v}"));
            }
            Mode::Cross => {
                let closed = inrc_regular(&tower, &c, &BigUint::from(n))?;
                let brute = brute_value(&tower, &c, n as usize)?;
                let rauzy = inrc_rauzy(&tower, &c, n as usize)?;
                let closed_v = closed.value.to_usize();
                if closed_v != Some(brute) || closed_v != Some(rauzy) {
                    mismatches.push(n);
                }
                lines.push(format!("{n},{},{}", closed.value, closed.case));
            }
        }
    }
    let mut out = String::new();
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    if !mismatches.is_empty() {
        emit(&out)?;
        let list: Vec<String> = mismatches.iter().map(|n| n.to_string()).collect();
        return Err(fail(4, format!("oracle mismatch at n = {}", list.join(","))));
    }
    Ok(out)
}

fn cmd_figure(fig: u32) -> Result<String, Failure> {
    if fig != 1 {
        return Err(fail(2, format!("unknown figure {fig}")));
    }
    let tower = WordTower::from_directive(parse_directive("periodic:|001122")?);
    let intercepts = [
        DigitString::zeros(),
        DigitString::parse("periodic:|01").map_err(|e| fail(2, e.to_string()))?,
        DigitString::parse("periodic:|1").map_err(|e| fail(2, e.to_string()))?,
    ];
    let endpoints: Vec<String> = (1..=5)
        .map(|k| tower.numeration().central_len_run_end(k).to_string())
        .collect();
    let last: u64 = endpoints.last().unwrap().parse().expect("small endpoint");
    let mut out = String::new();
    out.push_str(&format!("# intervals: {}\n", endpoints.join(",")));
    out.push_str("n,irep_zeros,irep_01,irep_ones\n");
    for n in 1..=last {
        let row: Vec<String> = intercepts
            .iter()
            .map(|c| inrc_regular(&tower, c, &BigUint::from(n)).map(|r| r.value.to_string()))
            .collect::<Result<_, _>>()?;
        out.push_str(&format!("{n},{}\n", row.join(",")));
    }
    Ok(out)
}

fn cmd_exponent(
    directive: &str,
    intercept: &str,
    k_max: usize,
    kind: Kind,
    n_max: usize,
    tol: f64,
    trace: bool,
) -> Result<String, Failure> {
    let tower = WordTower::from_directive(parse_directive(directive)?);
    let c = parse_intercept(intercept)?;
    let mut out = String::new();
    match kind {
        Kind::Dio => {
            let est = if tower.regular_period().is_some() {
                dio_estimate(&tower, &c, 0, k_max)?
            } else {
                // Non-regular fallback: brute-force scan, uncertified.
                dio_brute_estimate(&tower, &c, n_max, None)?
            };
            if trace {
                out.push_str(&format!("# value: {}\n", format_sig(est.to_f64(), 10)));
                out.push_str("k,max_ratio\n");
                for (k, r) in &est.trace {
                    out.push_str(&format!(
                        "{k},{}\n",
                        format_sig(r.to_f64().unwrap_or(f64::INFINITY), 10)
                    ));
                }
            } else {
                out.push_str(&format!("{}\n", format_sig(est.to_f64(), 10)));
            }
            if !est.certified {
                eprintln!("note: brute-force lower-bound estimate (non-regular directive word)");
            }
        }
        Kind::Ice => {
            let est = ice_estimate(&tower, &c, n_max, None)?;
            out.push_str(&format!("{}\n", format_sig(est.to_f64(), 10)));
        }
        Kind::Bounds => {
            let (lower, upper, flag) = irrationality_bounds(&tower, &c, 0, k_max)?;
            out.push_str("lower,upper,liouville\n");
            out.push_str(&format!(
                "{},{},{}\n",
                format_sig(lower, 10),
                format_sig(upper, 10),
                flag.unbounded_quotients
            ));
        }
        Kind::Closed => {
            if !c.is_zero() {
                return Err(fail(3, "closed form applies to the epistandard word (intercept zeros)"));
            }
            let closed = dio_standard_closed(&tower, tol)?;
            out.push_str(&format!("{}\n", format_sig(closed.value.midpoint(), 10)));
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Word { directive, intercept, length } => cmd_word(directive, intercept, *length),
        Command::Numeration { directive, op } => cmd_numeration(directive, op),
        Command::Irep { directive, intercept, n_from, n_to, mode } => {
            cmd_irep(directive, intercept, *n_from, *n_to, *mode)
        }
        Command::Figure { fig } => cmd_figure(*fig),
        Command::Exponent { directive, intercept, k_max, kind, n_max, tol, trace } => {
            cmd_exponent(directive, intercept, *k_max, *kind, *n_max, *tol, *trace)
        }
    }
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(s: &str) -> Result<(), Failure> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(s.as_bytes()).and_then(|_| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(fail(3, format!("write error: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli).and_then(|out| emit(&out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
