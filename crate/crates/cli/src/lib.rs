//! The `sclab` command line: argument handling, dispatch to the core
//! library, and report serialization.
//!
//! Exit codes: 0 when every check passes, 1 when any fails, 2 on a usage or
//! configuration error (including instances the claim does not cover).

pub mod args;
pub mod render;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use sclab_core::claims::{proof_chain_thm1, proof_chain_thm2, scan, verify, ClaimId, CongruenceReport};
use sclab_core::hyperkernel::fuzz_identity;
use sclab_core::qring::{verify_q_conjecture_shifted, QVerdict};

pub use args::{Cli, Format, RunConfig, Task};
use render::Table;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// The rendered report, notes for stderr, and the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub report: String,
    pub notes: Vec<String>,
    pub code: i32,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Self { report: String::new(), notes: vec![msg.into()], code: EXIT_USAGE }
    }

    fn from_table(table: &Table, format: Format, passed: bool, notes: Vec<String>) -> Self {
        let code = if passed { EXIT_PASS } else { EXIT_FAIL };
        Self { report: render::render(table, format), notes, code }
    }
}

fn failure_notes(reports: &[CongruenceReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| match r.r {
            Some(rv) => format!("{} p={} r={rv}: {}", r.claim, r.p, r.verdict()),
            None => format!("{} p={}: {}", r.claim, r.p, r.verdict()),
        })
        .collect()
}

/// Runs a validated configuration. Nothing is written; the caller decides
/// where the report goes.
pub fn run(config: &RunConfig) -> Outcome {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(config.workers).build() {
        Ok(pool) => pool,
        Err(e) => return Outcome::usage(format!("cannot start {} workers: {e}", config.workers)),
    };
    pool.install(|| dispatch(config))
}

fn dispatch(config: &RunConfig) -> Outcome {
    let format = config.format;
    match config.task {
        Task::Verify { claim, p, r, exponent } => match verify(claim, p, r, exponent) {
            Ok(rep) => {
                let reports = [rep];
                let table = render::congruence_table(&reports, config.test_mode);
                Outcome::from_table(&table, format, reports[0].pass, failure_notes(&reports))
            }
            Err(e) => Outcome::usage(e.to_string()),
        },
        Task::Scan { claim, p_min, p_max, ref r_set, exponent } => match scan(claim, p_min, p_max, r_set, exponent) {
            Ok(out) => {
                let table = render::congruence_table(&out.reports, config.test_mode);
                let mut notes = failure_notes(&out.reports);
                notes.push(format!(
                    "{} checked, {} inadmissible skipped, {} excluded",
                    out.reports.len(),
                    out.inadmissible,
                    out.deferred
                ));
                Outcome::from_table(&table, format, out.all_pass(), notes)
            }
            Err(e) => Outcome::usage(e.to_string()),
        },
        Task::Identity { name, trials, seed } => {
            let results = fuzz_identity(name, seed, trials);
            let failed = results.iter().filter(|t| !t.holds).count();
            let notes = if failed > 0 { vec![format!("{failed} of {trials} {name} trials failed")] } else { vec![] };
            Outcome::from_table(&render::identity_table(&results), format, failed == 0, notes)
        }
        Task::Qverify { p, r, shift } => match verify_q_conjecture_shifted(p, r, shift) {
            Ok(rep) => {
                let passed = rep.verdict == QVerdict::Holds;
                let notes = if passed { vec![] } else { vec![format!("p={p} r={r}: {}", rep.verdict.as_str())] };
                Outcome::from_table(&render::qverify_table(&rep), format, passed, notes)
            }
            Err(e) => Outcome::usage(e.to_string()),
        },
        Task::Proofchain { claim, p, r } => {
            let chain = if claim == ClaimId::Thm1 { proof_chain_thm1(p, r) } else { proof_chain_thm2(p, r) };
            match chain {
                Ok(chain) => match &chain.skipped {
                    Some(reason) => Outcome::usage(format!("{claim} chain at p={p} r={r} not replayed: {reason}")),
                    None => {
                        let notes = chain
                            .steps
                            .iter()
                            .filter(|s| !s.pass)
                            .map(|s| format!("step {} failed (witness {})", s.step, s.witness))
                            .collect();
                        Outcome::from_table(&render::chain_table(&chain), format, chain.passed(), notes)
                    }
                },
                Err(e) => Outcome::usage(e.to_string()),
            }
        }
    }
}

/// Parses `args`, runs, writes the report to stdout or `--out`, and returns
/// the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let config = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let outcome = run(&config);
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    let written = match &config.out {
        Some(path) => std::fs::write(path, &outcome.report),
        None => std::io::stdout().lock().write_all(outcome.report.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    outcome.code
}
