//! `pell`: digits of π and π_p, identity verification, and mean-iteration traces.

mod commands;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pell_core::mpnum::{bits_for_digits, digits_for_bits};
use pell_core::{Error, PrecisionContext};

#[derive(Parser, Debug)]
#[command(name = "pell", version, about = "Arbitrary-precision p-elliptic integrals, π_p and AGM-type formulas")]
struct Cli {
    #[command(flatten)]
    cfg: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ConfigArgs {
    /// Working precision in bits
    #[arg(long, global = true, env = "PELL_BITS", default_value_t = 256)]
    bits: usize,
    /// Significant decimal digits; sets the precision to match
    #[arg(long, global = true)]
    digits: Option<usize>,
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    #[arg(long, global = true)]
    csv: bool,
    /// Exponent p > 1
    #[arg(long, global = true, allow_hyphen_values = true)]
    p: Option<String>,
    /// Modulus k in [0, 1]
    #[arg(long, global = true, allow_hyphen_values = true)]
    k: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    b: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Digits of π (or π_4) by one of the series or mean-iteration formulas
    Pi {
        #[arg(long, value_enum)]
        method: PiMethod,
        /// With `--method pi4`, print √2·π_4 = π instead of π_4
        #[arg(long)]
        times_sqrt2: bool,
    },
    /// Digits of π_p = 2π/(p·sin(π/p))
    Pip {
        /// Use the cubic or quartic mean iteration instead of the closed form
        #[arg(long, value_enum)]
        via: Option<Via>,
    },
    /// Check an identity on the given point or on its default grid
    Verify {
        #[arg(long, value_enum)]
        identity: verify::Identity,
    },
    /// Print every iterate of a mean iteration started at (a, b)
    Trace {
        #[arg(value_enum)]
        kind: TraceKind,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PiMethod {
    Machin,
    SalaminBrent,
    Pi4,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Via {
    Agm,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TraceKind {
    P2,
    P3,
    P4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Text,
    Json,
    Csv,
}

/// Resolved flags shared by every subcommand.
pub struct Config {
    pub ctx: PrecisionContext,
    /// digits printed for computed values
    pub digits: usize,
    pub output: Output,
    pub p: Option<String>,
    pub k: Option<String>,
    pub a: Option<String>,
    pub b: Option<String>,
}

/// Why a command stopped without producing its normal output.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::InvalidDomain(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            Error::NonConvergence(_) | Error::NonFinite(_) | Error::NumericalFailure(_) => Failure::Numerical(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Numerical(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Numerical(e.to_string())
    }
}

/// What a successful command prints, and whether every check in it passed.
pub struct Outcome {
    pub stdout: String,
    pub pass: bool,
}

/// Floor for `--digits`-derived precision; fewer bits are rejected.
const MIN_BITS: usize = 64;

fn resolve(args: ConfigArgs) -> Result<Config, Failure> {
    let bits = match args.digits {
        Some(0) => return Err(Failure::Usage("--digits must be at least 1".into())),
        Some(d) => bits_for_digits(d).max(MIN_BITS),
        None => args.bits,
    };
    let ctx = PrecisionContext::new(bits)?;
    let output = match (args.json, args.csv) {
        (true, _) => Output::Json,
        (_, true) => Output::Csv,
        _ => Output::Text,
    };
    Ok(Config {
        digits: args.digits.unwrap_or_else(|| digits_for_bits(bits)),
        ctx,
        output,
        p: args.p,
        k: args.k,
        a: args.a,
        b: args.b,
    })
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let cfg = resolve(cli.cfg)?;
    match cli.command {
        Command::Pi { method, times_sqrt2 } => commands::pi(method, times_sqrt2, &cfg),
        Command::Pip { via } => commands::pip(via.is_some(), &cfg),
        Command::Verify { identity } => verify::run(identity, &cfg),
        Command::Trace { kind, a, b } => commands::trace(kind, &a, &b, &cfg),
    }
}

/// 0 success, 1 a check failed, 2 usage, 3 numerical failure.
fn exit_code(result: &Result<Outcome, Failure>) -> u8 {
    match result {
        Ok(out) if out.pass => 0,
        Ok(_) => 1,
        Err(Failure::Usage(_)) => 2,
        Err(Failure::Numerical(_)) => 3,
    }
}

fn main() -> ExitCode {
    let result = run(Cli::parse());
    match &result {
        // a closed pipe is not worth a panic
        Ok(out) => drop(std::io::stdout().lock().write_all(out.stdout.as_bytes())),
        Err(Failure::Usage(msg) | Failure::Numerical(msg)) => eprintln!("pell: {msg}"),
    }
    ExitCode::from(exit_code(&result))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outcome(pass: bool) -> Result<Outcome, Failure> {
        Ok(Outcome { stdout: String::new(), pass })
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&outcome(true)), 0);
        assert_eq!(exit_code(&outcome(false)), 1);
        assert_eq!(exit_code(&Err(Error::Parse("x".into()).into())), 2);
        assert_eq!(exit_code(&Err(Error::Domain("k".into()).into())), 2);
        assert_eq!(exit_code(&Err(Error::NonConvergence("q".into()).into())), 3);
        assert_eq!(exit_code(&Err(Error::NumericalFailure("d".into()).into())), 3);
        assert_eq!(exit_code(&Err(Error::NonFinite("f".into()).into())), 3);
    }

    #[test]
    fn digits_set_precision() {
        let cli = Cli::try_parse_from(["pell", "pi", "--method", "machin", "--digits", "100"]).unwrap();
        let cfg = resolve(cli.cfg).unwrap();
        assert_eq!(cfg.digits, 100);
        assert!(digits_for_bits(cfg.ctx.bits()) >= 100);
        let cli = Cli::try_parse_from(["pell", "pi", "--method", "machin", "--digits", "3"]).unwrap();
        assert_eq!(resolve(cli.cfg).unwrap().ctx.bits(), MIN_BITS);
    }

    #[test]
    fn failing_check_exits_one() {
        let cli = Cli::try_parse_from(["pell", "verify", "--identity", "legendre"]).unwrap();
        let cfg = resolve(cli.cfg).unwrap();
        let one = pell_core::Real::one(64);
        let bad = pell_core::IdentityReport::new(
            pell_core::IdentityId::Legendre,
            vec![("k", one.clone())],
            one.clone(),
            one.mul_int(2),
            one.mul_pow2(-1),
        );
        let good = pell_core::IdentityReport::new(pell_core::IdentityId::Legendre, vec![], one.clone(), one.clone(), one);
        let r = verify::render(&[good.clone(), bad], &cfg);
        assert_eq!(exit_code(&r), 1);
        assert!(r.unwrap().stdout.lines().nth(1).unwrap().ends_with("FAIL"));
        assert_eq!(exit_code(&verify::render(&[good], &cfg)), 0);
    }
}
