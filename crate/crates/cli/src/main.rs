//! `hayes`: experiments and verification suites over Hayes classes.
//!
//! Exit status: 0 when every asserted check passes, 1 on a failed check or
//! invalid input, 2 when a budget would be exceeded.

mod args;
mod checks;
mod enumerate;
mod report;
mod tables;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hayes_core::Error;
use serde_json::json;

use args::CommonArgs;

#[derive(Parser, Debug)]
#[command(name = "hayes", version, about = "Zero distributions of polynomials in Hayes classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact zero-count distribution for each class.
    ExactDist(enumerate::ExactDistArgs),
    /// Factorial moments of each class against the closed forms.
    MomentsCheck(enumerate::MomentsArgs),
    /// Character table, L-polynomials and Weil bounds.
    Weil(checks::WeilArgs),
    /// Certified inequality suites at one parameter point.
    BoundsCheck(checks::BoundsArgs),
    /// Reed-Solomon distance rows and the deep-hole census.
    Rs(enumerate::RsArgs),
    /// Exact probabilities next to the binomial, Poisson and class-aware
    /// approximations.
    Approx(enumerate::ApproxArgs),
    /// Regime predicates over a parameter grid.
    Regimes(tables::RegimesArgs),
    /// Evaluate one combinatorial kernel.
    Kernels(tables::KernelsArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::ExactDist(_) => "exact-dist",
            Command::MomentsCheck(_) => "moments-check",
            Command::Weil(_) => "weil",
            Command::BoundsCheck(_) => "bounds-check",
            Command::Rs(_) => "rs",
            Command::Approx(_) => "approx",
            Command::Regimes(_) => "regimes",
            Command::Kernels(_) => "kernels",
        }
    }

    fn common(&self) -> &CommonArgs {
        match self {
            Command::ExactDist(a) => &a.common,
            Command::MomentsCheck(a) => &a.common,
            Command::Weil(a) => &a.common,
            Command::BoundsCheck(a) => &a.common,
            Command::Rs(a) => &a.common,
            Command::Approx(a) => &a.common,
            Command::Regimes(a) => &a.common,
            Command::Kernels(a) => &a.common,
        }
    }

    fn config(&self) -> serde_json::Value {
        let v = match self {
            Command::ExactDist(a) => serde_json::to_value(a),
            Command::MomentsCheck(a) => serde_json::to_value(a),
            Command::Weil(a) => serde_json::to_value(a),
            Command::BoundsCheck(a) => serde_json::to_value(a),
            Command::Rs(a) => serde_json::to_value(a),
            Command::Approx(a) => serde_json::to_value(a),
            Command::Regimes(a) => serde_json::to_value(a),
            Command::Kernels(a) => serde_json::to_value(a),
        };
        v.expect("config serializes")
    }

    fn run(&self) -> hayes_core::Result<report::Outcome> {
        match self {
            Command::ExactDist(a) => enumerate::exact_dist(a),
            Command::MomentsCheck(a) => enumerate::moments_check(a),
            Command::Weil(a) => checks::weil(a),
            Command::BoundsCheck(a) => checks::bounds_check(a),
            Command::Rs(a) => enumerate::rs(a),
            Command::Approx(a) => enumerate::approx(a),
            Command::Regimes(a) => tables::regimes(a),
            Command::Kernels(a) => tables::kernels(a),
        }
    }
}

fn failure_record(command: &str, err: &Error) -> serde_json::Value {
    match err {
        Error::Budget { what, required, limit } => json!({
            "command": command,
            "error": "budget",
            "parameter": what,
            "required": required,
            "limit": limit,
            "message": err.to_string(),
        }),
        other => {
            let kind = match other {
                Error::Domain(_) => "domain",
                Error::Validation(_) => "validation",
                Error::Hypothesis(_) => "hypothesis",
                Error::Numeric(_) => "numeric",
                Error::Parse(_) => "parse",
                Error::Budget { .. } => unreachable!(),
            };
            json!({ "command": command, "error": kind, "message": other.to_string() })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            // usage errors are validation failures; 2 is reserved for budgets
            return if usage { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let cmd = &cli.command;
    let name = cmd.name();
    let outcome = match cmd.run() {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{}", failure_record(name, &e));
            return ExitCode::from(if matches!(e, Error::Budget { .. }) { 2 } else { 1 });
        }
    };
    let common = cmd.common();
    let bytes = outcome.render(name, &cmd.config(), common.format);
    if let Err(e) = report::emit(&bytes, common) {
        eprintln!("{}", json!({ "command": name, "error": "io", "message": e.to_string() }));
        return ExitCode::from(1);
    }
    let failed: Vec<_> = outcome.checks.iter().filter(|c| !c.passed).collect();
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        if common.format == args::Format::Csv || common.out.is_some() {
            eprintln!("{} of {} checks failed; first: {}", failed.len(), outcome.checks.len(), failed[0].name);
        }
        ExitCode::from(1)
    }
}
