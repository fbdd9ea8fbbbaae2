//! `essalg`: catalog listings, essential-algebra scans, shift verification
//! and the acceptance suites, with a content-addressed result cache.

mod cache;
mod commands;
mod output;
mod verify;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use essalg_core::catalog::Catalog;
use serde::Serialize;

use cache::{Cache, Mode};
use commands::{EssentialArgs, Outcome, ShiftArgs};
use output::{strings, Format, Report};
use verify::Suite;

#[derive(Parser)]
#[command(name = "essalg", version, about = "Essential algebras of Green biset functors")]
struct Cli {
    /// Directory of the result cache.
    #[arg(long, global = true, default_value = ".essalg-cache")]
    cache_dir: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Neither read nor write the cache.
    #[arg(long, global = true, conflicts_with = "check_cache")]
    no_cache: bool,
    /// Recompute every row and compare it with the cached copy.
    #[arg(long, global = true)]
    check_cache: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog groups with |Out| and class counts.
    Catalog {
        #[arg(long, default_value_t = 15, value_parser = clap::value_parser!(u16).range(1..=15))]
        max_order: u16,
    },
    /// Essential algebra dimensions, one row per group.
    Essential {
        /// `burnside`, `classfun:rational`, `classfun:ordinary` or `shift:<base>:<group>`.
        #[arg(long)]
        functor: String,
        /// Defaults to the functor's cap.
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=15))]
        max_order: Option<u16>,
        #[arg(long)]
        group: Option<String>,
        /// Largest order actually computed; larger groups are marked skipped.
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=15))]
        cap: Option<u16>,
    },
    /// Splitting of `A_G` along `κ_G`, plus support equality.
    Shift {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        shift_group: String,
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=15))]
        max_order: Option<u16>,
        /// Check the ν dimension count where |H| and |G| are coprime.
        #[arg(long)]
        nu: bool,
        /// Radical data of the quotient and of κ̂.
        #[arg(long)]
        seeds: bool,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

fn emit<T: Serialize>(outcome: Outcome<T>, format: Format) -> Result<bool> {
    let mut out = io::stdout().lock();
    outcome.report.write(format, &mut out)?;
    out.flush()?;
    Ok(outcome.ok)
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let mode = match (cli.no_cache, cli.check_cache) {
        (true, _) => Mode::Off,
        (_, true) => Mode::Check,
        _ => Mode::ReadWrite,
    };
    let cache = Cache::new(&cli.cache_dir, mode);
    let catalog = Catalog::builtin();
    match cli.command {
        Command::Catalog { max_order } => emit(commands::catalog(catalog, max_order.into())?, cli.format),
        Command::Essential {
            functor,
            max_order,
            group,
            cap,
        } => {
            let args = EssentialArgs {
                functor: &functor,
                max_order: max_order.map(usize::from),
                group: group.as_deref(),
                cap: cap.map(usize::from),
            };
            emit(commands::essential(catalog, &cache, args)?, cli.format)
        }
        Command::Shift {
            functor,
            shift_group,
            max_order,
            nu,
            seeds,
        } => {
            let args = ShiftArgs {
                functor: &functor,
                shift_group: &shift_group,
                max_order: max_order.map(usize::from),
                nu,
                seeds,
            };
            emit(commands::shift_cmd(catalog, &cache, args)?, cli.format)
        }
        Command::Verify { suite } => {
            let reports = verify::run(suite, catalog)?;
            let ok = reports.iter().all(|r| r.passed());
            let rows = reports
                .iter()
                .map(|r| {
                    vec![
                        r.subject.clone(),
                        if r.passed() { "pass" } else { "FAIL" }.to_string(),
                        r.checked.to_string(),
                        r.skipped.to_string(),
                        r.violations.first().cloned().unwrap_or_default(),
                    ]
                })
                .collect();
            let report = Report {
                header: strings(["suite", "result", "checked", "skipped", "firstViolation"]),
                rows,
                notes: vec![format!("{}", if ok { "all checks passed" } else { "some checks failed" })],
                value: reports,
            };
            emit(Outcome { report, ok }, cli.format)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
