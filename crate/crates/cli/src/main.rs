use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use shufflecheck::{
    check, run_claims_with_table, table1_rows, CheckConfig, Mode, Permutation, Registry,
    DEFAULT_HARD_CAP,
};

mod output;

const HARD_CAP_VAR: &str = "SHUFFLECHECK_HARD_CAP";

#[derive(Parser, Debug)]
#[command(name = "shufflecheck", version, about = "Permutation statistics and bounded shuffle-compatibility checks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads for the checker (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Shuffle,
    Left,
    Descent,
}

impl ModeArg {
    fn mode(self) -> Mode {
        match self {
            ModeArg::Shuffle => Mode::Shuffle,
            ModeArg::Left => Mode::LeftShuffle,
            ModeArg::Descent => Mode::Descent,
        }
    }

    fn default_bound(self) -> usize {
        match self {
            ModeArg::Shuffle => 8,
            ModeArg::Left | ModeArg::Descent => 6,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a statistic on one permutation.
    Stat {
        statistic: String,
        /// Digits (2413) or comma-separated integers (12,9,40).
        permutation: String,
    },
    /// List the shuffles of two disjoint permutations, sorted.
    Shuffle {
        sigma: String,
        phi: String,
        /// Only shuffles that start with sigma's first entry.
        #[arg(long)]
        left: bool,
    },
    /// Exhaustively check a property up to a size bound.
    Check {
        statistic: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Shuffle)]
        mode: ModeArg,
        /// Total size bound (default: shuffle 8, left 6, descent 6).
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Print only the first witness of a violation, or "none".
    Witness {
        statistic: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Shuffle)]
        mode: ModeArg,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Re-run every check behind the psi counterexample.
    ReproducePaper {
        /// Negative control: swap two entries of the expected table.
        #[arg(long, hide = true)]
        corrupt_table1: bool,
    },
}

/// Failure classes mapped onto exit codes.
enum Failure {
    /// A check found a violation or mismatch.
    Violation,
    /// Bad arguments or input.
    Usage(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn hard_cap() -> anyhow::Result<usize> {
    match std::env::var(HARD_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{HARD_CAP_VAR} must be a nonnegative integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_HARD_CAP),
    }
}

fn parse_perm(s: &str) -> anyhow::Result<Permutation> {
    s.parse::<Permutation>().map_err(|e| anyhow!(e))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let cfg = CheckConfig {
        hard_cap: hard_cap()?,
        jobs: cli.jobs,
    };
    if cli.jobs == Some(0) {
        return Err(anyhow!("--jobs must be at least 1").into());
    }
    let registry = Registry::builtin();
    let structured = cli.format == Format::Structured;

    let (body, ok) = match &cli.command {
        Command::Stat {
            statistic,
            permutation,
        } => {
            let st = registry.get(statistic)?;
            let p = parse_perm(permutation)?;
            let value = st.eval(&p)?;
            let body = if structured {
                output::to_json(&json!({
                    "statistic": st.name(),
                    "permutation": p,
                    "value": value,
                }))
            } else {
                format!("{value}\n")
            };
            (body, true)
        }
        Command::Shuffle { sigma, phi, left } => {
            let (a, b) = (parse_perm(sigma)?, parse_perm(phi)?);
            let set = if *left {
                shufflecheck::left_shuffle(&a, &b)?
            } else {
                shufflecheck::shuffle(&a, &b)?
            };
            let body = if structured {
                output::to_json(&json!({
                    "sigma": a,
                    "phi": b,
                    "left": left,
                    "shuffles": set,
                }))
            } else {
                set.sorted().iter().map(|g| format!("{g}\n")).collect()
            };
            (body, true)
        }
        Command::Check {
            statistic,
            mode,
            bound,
        } => {
            let st = registry.get(statistic)?;
            let report = check(st, mode.mode(), bound.unwrap_or(mode.default_bound()), &cfg)?;
            let value = serde_json::to_value(&report)?;
            let body = if structured {
                output::to_json(&value)
            } else {
                output::flatten_text(&value)
            };
            (body, !report.is_violated())
        }
        Command::Witness {
            statistic,
            mode,
            bound,
        } => {
            let st = registry.get(statistic)?;
            let report = check(st, mode.mode(), bound.unwrap_or(mode.default_bound()), &cfg)?;
            let body = match (&report.witness, structured) {
                (Some(w), true) => output::to_json(&serde_json::to_value(w)?),
                (Some(w), false) => output::flatten_text(&serde_json::to_value(w)?),
                (None, true) => output::to_json(&serde_json::Value::Null),
                (None, false) => "none\n".to_string(),
            };
            (body, true)
        }
        Command::ReproducePaper { corrupt_table1 } => {
            let mut table = table1_rows();
            if *corrupt_table1 {
                let row = &mut table[0];
                std::mem::swap(&mut row.plus[0], &mut row.minus[0]);
            }
            let claims = run_claims_with_table(&cfg, &table)?;
            let all = claims.iter().all(|c| c.passed);
            let body = if structured {
                output::to_json(&json!({ "claims": claims, "all_passed": all }))
            } else {
                output::claims_text(&claims)
            };
            (body, all)
        }
    };

    emit(cli.output.as_ref(), &body)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn emit(path: Option<&PathBuf>, body: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            let mut f = File::create(p).with_context(|| format!("cannot create {}", p.display()))?;
            f.write_all(body.as_bytes())?;
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}
