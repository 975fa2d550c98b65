mod commands;
mod parse;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use normform::Config;

use commands::Outcome;

/// Exact experiments with the norm form x^2 - d y^2 over F_q[T].
#[derive(Parser, Debug)]
#[command(name = "normform", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    /// Characteristic of the base field.
    #[arg(long)]
    p: u64,
    /// Extension degree, so that q = p^m. Coefficients may then use the generator `a`.
    #[arg(long, default_value_t = 1)]
    m: usize,
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    /// Worker threads for point counting, search and census.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Seed for randomized polynomial factoring.
    #[arg(long)]
    seed: Option<u64>,
    /// Emit one JSON object per line instead of text tables.
    #[arg(long)]
    json: bool,
    /// Largest field size that gets logarithm tables when counting points.
    #[arg(long)]
    table_threshold: Option<u64>,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl RunArgs {
    fn config(&self) -> Config {
        let mut config = Config::default().with_workers(self.workers);
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        if let Some(t) = self.table_threshold {
            config.table_threshold = t;
        }
        config
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degree bound for the smallest irreducible x^2 - d y^2.
    Bound {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: String,
        /// Also evaluate the bound with the exact ideal class number.
        #[arg(long)]
        exact_r: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Lower bound on the class number for odd deg d.
    Corollary {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: Option<String>,
        #[arg(long, conflicts_with = "d")]
        deg: Option<u32>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Smallest irreducible of the form x^2 - d y^2.
    Search {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: String,
        /// Largest degree to try (defaults to the degree bound).
        #[arg(long)]
        cap: Option<usize>,
        /// Also list every irreducible value of this degree (odd deg d).
        #[arg(long)]
        all: Option<usize>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Divisor and ideal class numbers with the L-polynomial.
    Classnum {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Split-prime census against the Chebotarev error bound.
    Census {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: String,
        #[arg(long, default_value_t = 7)]
        nmax: u32,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Hasse-Weil interval for the class number.
    Hw {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: Option<String>,
        #[arg(long, conflicts_with = "d")]
        genus: Option<u32>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Recompute the worked example over F_5 and compare with pinned values.
    VerifyPaperExample {
        #[command(flatten)]
        run: RunArgs,
    },
}

fn dispatch(command: &Command) -> Result<(Outcome, &RunArgs)> {
    Ok(match command {
        Command::Bound {
            field,
            d,
            exact_r,
            run,
        } => {
            let f = commands::field(field.p, field.m)?;
            let ext = commands::extension(&f, d)?;
            (commands::bound(&ext, *exact_r, &run.config())?, run)
        }
        Command::Corollary { field, d, deg, run } => {
            let f = commands::field(field.p, field.m)?;
            let n = commands::deg_from(&f, d.as_deref(), *deg)?;
            (commands::corollary(f.size(), n)?, run)
        }
        Command::Search {
            field,
            d,
            cap,
            all,
            run,
        } => {
            let f = commands::field(field.p, field.m)?;
            let ext = commands::extension(&f, d)?;
            (commands::search(&ext, *cap, *all, &run.config())?, run)
        }
        Command::Classnum { field, d, run } => {
            let f = commands::field(field.p, field.m)?;
            let ext = commands::extension(&f, d)?;
            (commands::classnum(&ext, &run.config())?, run)
        }
        Command::Census {
            field,
            d,
            nmax,
            run,
        } => {
            let f = commands::field(field.p, field.m)?;
            let ext = commands::extension(&f, d)?;
            (commands::census(&ext, *nmax, &run.config())?, run)
        }
        Command::Hw {
            field,
            d,
            genus,
            run,
        } => {
            let f = commands::field(field.p, field.m)?;
            let ext = d
                .as_deref()
                .map(|t| commands::extension(&f, t))
                .transpose()?;
            let g = match (&ext, genus) {
                (Some(e), _) => e.genus_k,
                (None, Some(g)) => *g,
                (None, None) => bail!("pass --d or --genus"),
            };
            (
                commands::hasse_weil(f.size(), g, ext.as_ref(), &run.config())?,
                run,
            )
        }
        Command::VerifyPaperExample { run } => {
            (commands::verify_paper_example(&run.config())?, run)
        }
    })
}

fn emit(outcome: &Outcome, run: &RunArgs) -> Result<()> {
    let text = if run.json {
        outcome.report.json_lines()
    } else {
        outcome.report.text()
    };
    match &run.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// 1 for bad input or unsupported hypotheses, 2 for failed internal checks.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<normform::Error>() {
        Some(e) if !e.is_hypothesis_violation() => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(&cli.command) {
        Ok((outcome, run)) => {
            if let Err(e) = emit(&outcome, run) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            match outcome.failure {
                Some(msg) => {
                    eprintln!("check failed: {msg}");
                    ExitCode::from(2)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let check = anyhow::Error::from(normform::Error::CheckFailed("x".into()));
        let hyp = anyhow::Error::from(normform::Error::Hypothesis("x".into()));
        assert_eq!(exit_code(&check), 2);
        assert_eq!(exit_code(&hyp), 1);
        assert_eq!(exit_code(&anyhow::anyhow!("bad flag")), 1);
    }
}
