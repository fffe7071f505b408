//! Command-line grammar and its validation into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sclab_core::claims::ClaimId;
use sclab_core::hyperkernel::IdentityName;

#[derive(Debug, Parser)]
#[command(name = "sclab", version, about = "Exact prime-by-prime checks of truncated hypergeometric supercongruences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for scans and fuzzing (default: available cores).
    #[arg(long, global = true, env = "SCLAB_WORKERS")]
    pub workers: Option<usize>,
    /// Report elapsed_ms as 0 so output is byte-stable.
    #[arg(long, global = true)]
    pub test_mode: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check one claim at one prime.
    #[command(allow_negative_numbers = true)]
    Verify {
        #[arg(long)]
        claim: ClaimId,
        #[arg(long)]
        p: u64,
        /// Family parameter; required for thm1, thm2, conj1 and conj3.
        #[arg(long)]
        r: Option<i64>,
        /// Check a lower power of p than the family asserts.
        #[arg(long)]
        exponent: Option<u32>,
    },
    /// Check a claim at every admissible prime in a range.
    #[command(allow_negative_numbers = true)]
    Scan {
        #[arg(long)]
        claim: ClaimId,
        #[arg(long, default_value_t = 2)]
        pmin: u64,
        #[arg(long)]
        pmax: u64,
        /// Comma-separated r values (default: the family's standard set).
        #[arg(long, value_delimiter = ',')]
        rset: Option<Vec<i64>>,
        #[arg(long)]
        exponent: Option<u32>,
    },
    /// Fuzz a terminating identity with seeded random parameters.
    Identity {
        /// whipple, km or d1.
        #[arg(long)]
        name: IdentityName,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the q-analogue in Q[q]/Φ_p(q)^4 by two methods.
    #[command(allow_negative_numbers = true)]
    Qverify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: i64,
        /// Add shift·k to the k-th q-exponent (a negative control).
        #[arg(long, default_value_t = 0)]
        shift: i64,
    },
    /// Replay a proof chain step by step.
    #[command(allow_negative_numbers = true)]
    Proofchain {
        /// thm1 or thm2.
        #[arg(long)]
        claim: ClaimId,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// What to run, after validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    Verify { claim: ClaimId, p: u64, r: i64, exponent: Option<u32> },
    Scan { claim: ClaimId, p_min: u64, p_max: u64, r_set: Vec<i64>, exponent: Option<u32> },
    Identity { name: IdentityName, trials: u64, seed: u64 },
    Qverify { p: u64, r: i64, shift: i64 },
    Proofchain { claim: ClaimId, p: u64, r: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub task: Task,
    pub format: Format,
    pub workers: usize,
    pub out: Option<PathBuf>,
    pub test_mode: bool,
}

fn check_exponent(claim: ClaimId, exponent: Option<u32>) -> Result<(), String> {
    match exponent {
        Some(0) => Err("--exponent must be positive".into()),
        Some(e) if e > claim.default_exponent() => Err(format!(
            "--exponent {e} exceeds the {claim} default {}; it may only be lowered",
            claim.default_exponent()
        )),
        _ => Ok(()),
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, String> {
        let task = match cli.command {
            Command::Verify { claim, p, r, exponent } => {
                check_exponent(claim, exponent)?;
                let r = match (claim.takes_r(), r) {
                    (true, Some(r)) => r,
                    (true, None) => return Err(format!("{claim} needs --r")),
                    (false, Some(_)) => return Err(format!("{claim} takes no --r")),
                    (false, None) => 0,
                };
                Task::Verify { claim, p, r, exponent }
            }
            Command::Scan { claim, pmin, pmax, rset, exponent } => {
                check_exponent(claim, exponent)?;
                if pmin > pmax {
                    return Err(format!("--pmin {pmin} exceeds --pmax {pmax}"));
                }
                if rset.is_some() && !claim.takes_r() {
                    return Err(format!("{claim} takes no --rset"));
                }
                let r_set = rset.unwrap_or_else(|| claim.default_r_set());
                Task::Scan { claim, p_min: pmin, p_max: pmax, r_set, exponent }
            }
            Command::Identity { name, trials, seed } => Task::Identity { name, trials, seed },
            Command::Qverify { p, r, shift } => Task::Qverify { p, r, shift },
            Command::Proofchain { claim, p, r } => {
                if !matches!(claim, ClaimId::Thm1 | ClaimId::Thm2) {
                    return Err(format!("no proof chain for {claim}; use thm1 or thm2"));
                }
                Task::Proofchain { claim, p, r }
            }
        };
        let workers = match cli.common.workers {
            Some(0) => return Err("--workers must be positive".into()),
            Some(n) => n,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        Ok(Self { task, format: cli.common.format, workers, out: cli.common.out, test_mode: cli.common.test_mode })
    }
}
