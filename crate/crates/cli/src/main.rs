mod commands;
mod config;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use quon_core::Error;

use config::{Check, Cli, Command, Format, QMode};
use output::Envelope;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_SINGULAR: u8 = 3;

fn usage(msg: impl std::fmt::Display) -> (u8, String) {
    (EXIT_USAGE, msg.to_string())
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Singular(_) | Error::Pole(_) => EXIT_SINGULAR,
        Error::Precondition(_) | Error::Parse(_) | Error::OutOfRange { .. } => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

/// Per-command argument checks beyond what clap enforces.
fn validate(cli: &Cli) -> Result<usize, (u8, String)> {
    let n = cli.common.n.ok_or_else(|| usage("--n is required"))?;
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let symbolic = cli.common.q == QMode::Symbolic;
    let max = config::max_n(&cli.command, symbolic, cli.common.long);
    if n > max {
        let mode = if symbolic { "symbolic q" } else { "rational q" };
        let hint = if symbolic && max == 4 && config::max_n(&cli.command, true, true) == 5 {
            " (pass --long to allow symbolic n = 5)"
        } else {
            ""
        };
        return Err(usage(format!(
            "--n {n} is above the bound {max} for this command with {mode}{hint}"
        )));
    }
    if let Command::Bench = cli.command {
        if n < 2 {
            return Err(usage("bench needs --n of at least 2"));
        }
    }
    if let Command::Verify { check } = cli.command {
        match (check, &cli.common.q) {
            (Check::Integrality, QMode::Rational(_)) => {
                return Err(usage(
                    "verify integrality is a statement about polynomials; use symbolic q",
                ));
            }
            (Check::Greenberg, QMode::Rational(v))
                if *v != num_rational::BigRational::from_integer(0.into()) =>
            {
                return Err(usage(
                    "verify greenberg runs at q = 0; pass --q 0 or omit --q",
                ));
            }
            _ => {}
        }
    }
    Ok(n)
}

fn run(cli: &Cli) -> Result<u8, (u8, String)> {
    let n = validate(cli)?;
    let q = &cli.common.q;
    let (name, outcome) = match &cli.command {
        Command::Matrix { inverse } => ("matrix".to_string(), commands::matrix(n, q, *inverse)),
        Command::Coeffs { method } => ("coeffs".to_string(), commands::coeffs(n, q, *method)),
        Command::Verify { check } => (
            format!("verify {}", check.name()),
            commands::verify(*check, n, q, cli.common.seed),
        ),
        Command::Bench => ("bench".to_string(), commands::bench(n, q)),
    };
    let outcome = outcome.map_err(|e| (exit_for(&e), e.to_string()))?;
    let q_text = match (&cli.command, q) {
        (
            Command::Verify {
                check: Check::Greenberg,
            },
            _,
        ) => "0".to_string(),
        _ => q.to_string(),
    };
    let body = match cli.common.format {
        Format::Json => {
            let env = Envelope {
                command: &name,
                n,
                q: q_text,
                seed: cli.common.seed,
                passed: outcome.passed,
                result: outcome.result,
            };
            let mut s = serde_json::to_string_pretty(&env.to_json()).expect("json");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = outcome.text;
            if let Command::Verify { .. } = cli.command {
                let status = if outcome.passed { "PASS" } else { "FAIL" };
                s.push_str(&format!(
                    "{name} n={n} q={q_text} seed={}: {status}\n",
                    cli.common.seed
                ));
            }
            s
        }
    };
    match &cli.common.out {
        Some(path) => output::write_atomic(path, &body)
            .map_err(|e| (EXIT_FAIL, format!("{}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| (EXIT_FAIL, e.to_string()))?,
    }
    Ok(if outcome.passed { 0 } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
