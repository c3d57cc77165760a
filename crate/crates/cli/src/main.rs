//! `qha-lab`: runs the verification suites, computes transforms and norms on
//! files, and exports fixtures.

mod compute;
mod config;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use qha_core::fixtures::{fixture, Fixture, FixtureKind};
use qha_core::io;
use qha_core::report::VerificationReport;
use qha_core::verify::{run_suite, KNOWN_SUITES};
use rayon::prelude::*;
use serde::Serialize;

use crate::compute::{ComputeArgs, Mode};
use crate::config::{ConfigFile, RunConfig};
use crate::output::{emit, Format};

const THREADS_ENV: &str = "QHA_LAB_THREADS";

#[derive(Parser, Debug)]
#[command(name = "qha-lab", version, about = "Finite quantum harmonic analysis: verification, transforms and fixtures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// JSON config {n, N, seed, tol, suites}; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Degrees of freedom.
    #[arg(long, global = true)]
    n: Option<u32>,
    /// Odd modulus N ≥ 3.
    #[arg(long = "N", value_name = "N", global = true)]
    modulus: Option<u32>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Replaces every check tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output file; stdout when absent. A `.csv` extension selects CSV.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

impl Common {
    fn flags(&self, suites: Vec<String>) -> ConfigFile {
        ConfigFile {
            n: self.n,
            modulus: self.modulus,
            seed: self.seed,
            tol: self.tol,
            suites: (!suites.is_empty()).then_some(suites),
        }
    }

    fn merged(&self, suites: Vec<String>) -> Result<ConfigFile> {
        let file = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        Ok(file.overridden_by(self.flags(suites)))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run verification suites and write a JSON report.
    Verify {
        /// Suite to run; repeatable. Defaults to all.
        #[arg(long = "suite")]
        suites: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Apply a transform, quantization, norm or ideal computation to files.
    Compute {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Input function or operator file (JSON or CSV); repeatable.
        #[arg(long = "in")]
        inputs: Vec<PathBuf>,
        /// JSON list of [x, xi, j] points, for ideal mode.
        #[arg(long)]
        zero_set: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Export a deterministic fixture.
    Fixture {
        #[arg(long)]
        kind: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Serialize)]
struct Report<'a> {
    config: &'a RunConfig,
    passed: bool,
    suites: &'a [VerificationReport],
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize =
            v.trim().parse().with_context(|| format!("{THREADS_ENV} must be a positive integer, got {v:?}"))?;
        if n == 0 {
            bail!("{THREADS_ENV} must be a positive integer, got 0");
        }
        builder = builder.num_threads(n);
    }
    Ok(builder.build()?)
}

fn verify(suites: Vec<String>, common: &Common) -> Result<bool> {
    let cfg = RunConfig::resolve(&common.merged(suites)?, &KNOWN_SUITES)?;
    let unknown: Vec<&str> = cfg.suites.iter().map(String::as_str).filter(|s| !KNOWN_SUITES.contains(s)).collect();
    if !unknown.is_empty() {
        bail!("unknown suite(s) {}; known suites: {}", unknown.join(", "), KNOWN_SUITES.join(", "));
    }
    let p = cfg.params();
    let results: Vec<_> =
        thread_pool()?.install(|| cfg.suites.par_iter().map(|s| run_suite::<f64>(s, p, cfg.seed, cfg.tol)).collect());
    let reports = results.into_iter().collect::<qha_core::Result<Vec<_>>>()?;
    let passed = reports.iter().all(VerificationReport::passed);
    for r in &reports {
        let fails = r.failures().count();
        let status = if fails == 0 { "PASS" } else { "FAIL" };
        eprintln!("{status} {:<16} {:>5} checks {fails:>3} failed {:>9.1} ms", r.suite, r.checks.len(), r.wall_time_ms);
        for c in r.failures() {
            eprintln!("    {} error {:.3e} tol {:.1e}", c.id, c.max_abs_error, c.tolerance);
        }
    }
    let text = serde_json::to_string_pretty(&Report { config: &cfg, passed, suites: &reports })?;
    emit(common.out.as_deref(), &text)?;
    Ok(passed)
}

fn export_fixture(kind: &str, common: &Common) -> Result<()> {
    let kind: FixtureKind = kind.parse().map_err(|_| {
        let known: Vec<&str> = FixtureKind::ALL.iter().map(|k| k.name()).collect();
        anyhow::anyhow!("unknown fixture kind {kind:?}; known kinds: {}", known.join(", "))
    })?;
    let cfg = common.merged(Vec::new())?;
    let p = cfg.params()?;
    let fmt = Format::of(common.out.as_deref());
    let text = match (fixture::<f64>(kind, cfg.seed(), p), fmt) {
        (Fixture::State(v), Format::Json) => io::state_to_json(&v),
        (Fixture::State(_), Format::Csv) => bail!("states have no CSV format; use a .json output"),
        (Fixture::Function(f), Format::Json) => io::function_to_json(&f),
        (Fixture::Function(f), Format::Csv) => io::function_to_csv(&f),
        (Fixture::Operator(a), Format::Json) => io::operator_to_json(&a),
        (Fixture::Operator(a), Format::Csv) => io::operator_to_csv(&a),
    };
    emit(common.out.as_deref(), &text)
}

fn compute(mode: Mode, inputs: &[PathBuf], zero_set: Option<&Path>, common: &Common) -> Result<()> {
    let cfg = common.merged(Vec::new())?;
    if let Some(t) = cfg.tol {
        anyhow::ensure!(t > 0.0 && t.is_finite(), "tolerance must be positive, got {t}");
    }
    compute::run(ComputeArgs {
        mode,
        inputs,
        zero_set,
        out: common.out.as_deref(),
        explicit: cfg.explicit_params()?,
        seed: cfg.seed(),
        tol: cfg.tol,
    })
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify { suites, common } => verify(suites, &common),
        Command::Compute { mode, inputs, zero_set, common } => {
            compute(mode, &inputs, zero_set.as_deref(), &common).map(|_| true)
        }
        Command::Fixture { kind, common } => export_fixture(&kind, &common).map(|_| true),
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

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_repeated_suites_and_uppercase_modulus() {
        let cli =
            Cli::try_parse_from(["qha-lab", "verify", "--suite", "ccr", "--suite", "fourier", "--N", "5"]).unwrap();
        match cli.command {
            Command::Verify { suites, common } => {
                assert_eq!(suites, vec!["ccr", "fourier"]);
                assert_eq!(common.modulus, Some(5));
            }
            _ => panic!("expected verify"),
        }
    }
}
