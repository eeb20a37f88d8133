//! `mfci`: batch front end. Exit code 0 on pass, 2 when a verification
//! fails, 1 on bad input or a computation that cannot run.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use mfci::fixtures::{fixture, ProblemSpec};
use mfci::Error;

use commands::{module_from_str, run, Job, COMMANDS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Verify {
    Fast,
    Full,
}

#[derive(Parser, Debug)]
#[command(name = "mfci", version, about = "Matrix factorizations and stable supports over complete intersections")]
struct Cli {
    /// One of: resolve, koszul, homotopies, mf-build, mf-check, mf-op,
    /// standard-res, cohres, eisenbud, verify-chi, ext, stable-ext, support,
    /// ab-support, verify-identities, verify-supports.
    command: String,
    /// Problem file (JSON); ignored when --fixture is given.
    input: Option<String>,
    #[arg(long)]
    fixture: Option<String>,
    /// Replaces the module: k, R, R/(g1,...), or a fixture over the same ring.
    #[arg(long)]
    module: Option<String>,
    /// Second module, same syntax as --module.
    #[arg(long)]
    other: Option<String>,
    #[arg(long)]
    max_degree: Option<usize>,
    /// Inclusive range `lo:hi`.
    #[arg(long, allow_hyphen_values = true)]
    q_range: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// For mf-op: shift, twist, dual, tensor, hom.
    #[arg(long, default_value = "shift")]
    op: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, value_enum, default_value = "fast")]
    verify: Verify,
}

fn is_verification(e: &Error) -> bool {
    matches!(
        e,
        Error::VerificationFailure(_)
            | Error::MfEquationFailure(_)
            | Error::RouteMismatch(_)
            | Error::IdentificationFailure(_)
            | Error::NotNullhomotopic(_)
            | Error::DecompositionFailure(_)
    )
}

fn kind(e: &Error) -> String {
    let s = format!("{e:?}");
    s.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

fn parse_q_range(s: &str) -> Result<(i64, i64), Error> {
    let bad = || Error::input(format!("--q-range expects lo:hi, got '{s}'"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let (lo, hi) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn job(cli: &Cli) -> Result<Job, Error> {
    if !COMMANDS.contains(&cli.command.as_str()) {
        return Err(Error::input(format!("unknown command '{}'; expected one of {}", cli.command, COMMANDS.join(", "))));
    }
    let base = match (&cli.fixture, &cli.input) {
        (Some(name), _) => fixture(name)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::input(format!("{path}: {e}")))?;
            ProblemSpec::from_json(&text)?
        }
        (None, None) => return Err(Error::input("give --fixture NAME or a problem file")),
    };
    let spec = match &cli.module {
        Some(m) => module_from_str(&base, m)?,
        None => base.clone(),
    };
    let other = cli.other.as_deref().map(|m| module_from_str(&base, m)).transpose()?;
    let (q_lo, q_hi) = match &cli.q_range {
        Some(s) => parse_q_range(s)?,
        None => (spec.options.q_lo, spec.options.q_hi),
    };
    Ok(Job {
        n_max: cli.max_degree.unwrap_or(spec.options.n_max),
        seed: cli.seed.unwrap_or(spec.options.seed),
        q_lo,
        q_hi,
        q_explicit: cli.q_range.is_some(),
        full: cli.verify == Verify::Full,
        op: cli.op.clone(),
        spec,
        other,
    })
}

fn emit(format: Format, v: &serde_json::Value) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).expect("json values serialize")),
        Format::Text => print!("{}", report::text(v)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // Work is single-threaded; MFCI_THREADS is accepted and has no effect.
    let _ = std::env::var("MFCI_THREADS");
    let result = job(&cli).and_then(|j| run(&cli.command, &j));
    match result {
        Ok(r) => {
            emit(cli.format, &r.to_json());
            if r.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("mfci: {e}");
            emit(cli.format, &report::error_json(&cli.command, &kind(&e), &e.to_string()));
            ExitCode::from(if is_verification(&e) { 2 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_range_parsing() {
        assert_eq!(parse_q_range("-4:10").unwrap(), (-4, 10));
        assert!(parse_q_range("3:1").is_err());
        assert!(parse_q_range("x").is_err());
    }

    #[test]
    fn error_kinds() {
        assert_eq!(kind(&Error::UnknownFixture("a".into())), "UnknownFixture");
        assert_eq!(kind(&Error::NonRegularContext), "NonRegularContext");
        assert!(is_verification(&Error::RouteMismatch("x".into())));
        assert!(!is_verification(&Error::input("x")));
    }
}
