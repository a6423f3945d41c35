//! Command-line front end: argument parsing, exit codes and diagnostics.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::document::{Document, Job, Overrides};
use crate::error::{Error, Result};
use crate::pipeline::{remove_artifacts, run_job, write_artifacts, RunOptions, RunOutput};

pub const EXIT_OK: i32 = 0;
/// check-props only: the run succeeded but an applicable proposition failed.
pub const EXIT_PROPOSITION_FAILED: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Analyze,
    Synthesize,
    CheckProps,
}

#[derive(Debug, Parser)]
#[command(name = "rnshelix", version, about = "Darboux-frame helix analysis of curves in Minkowski 3-space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze a curve given on a surface (or as a free space curve).
    Analyze(RunArgs),
    /// Integrate an invariant profile and analyze the resulting curve.
    Synthesize(RunArgs),
    /// Run either kind of document and fail when a proposition check fails.
    CheckProps(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Input JSON document.
    pub input: PathBuf,
    /// Relative spread below which a series counts as constant.
    #[arg(long, default_value_t = crate::helix::DEFAULT_TOL)]
    pub tol: f64,
    /// Null-cone tolerance (overrides the document).
    #[arg(long)]
    pub eps: Option<f64>,
    /// Finite-difference step (overrides the document).
    #[arg(long)]
    pub h: Option<f64>,
    /// Sample count (overrides the document).
    #[arg(long)]
    pub samples: Option<usize>,
    /// Output directory for report.json and samples.csv.
    #[arg(long, default_value = "./out")]
    pub out: PathBuf,
}

/// Fully resolved command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mode: Mode,
    pub args: RunArgs,
}

impl Cli {
    pub fn into_config(self) -> RunConfig {
        match self.command {
            Command::Analyze(args) => RunConfig { mode: Mode::Analyze, args },
            Command::Synthesize(args) => RunConfig { mode: Mode::Synthesize, args },
            Command::CheckProps(args) => RunConfig { mode: Mode::CheckProps, args },
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_validation() {
        EXIT_VALIDATION
    } else {
        EXIT_NUMERICAL
    }
}

/// Load the document and check it suits the requested mode.
pub fn load(cfg: &RunConfig) -> Result<(Job, serde_json::Value)> {
    let a = &cfg.args;
    let text = fs::read_to_string(&a.input)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", a.input.display())))?;
    let doc = Document::from_json(&text)?;
    let input: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Validation(e.to_string()))?;
    let job = doc.validate(&Overrides { samples: a.samples, h: a.h, eps: a.eps })?;
    match (cfg.mode, &job) {
        (Mode::Analyze, Job::Synthesize { .. }) => {
            Err(Error::Validation("analyze expects a `curve` document; use synthesize for profiles".into()))
        }
        (Mode::Synthesize, Job::Analyze { .. }) => {
            Err(Error::Validation("synthesize expects a `profile` document; use analyze for curves".into()))
        }
        _ => Ok((job, input)),
    }
}

/// Execute a command, writing artifacts and diagnostics; returns the exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    let out = &cfg.args.out;
    let result = load(cfg).and_then(|(job, input)| {
        let opts = RunOptions { tol: cfg.args.tol, ..RunOptions::default() };
        let run = run_job(&job, input, &opts)?;
        write_artifacts(out, &run)?;
        Ok(run)
    });
    match result {
        Ok(run) => {
            summarize(&run);
            let failed = run.failed_propositions();
            if cfg.mode == Mode::CheckProps && !failed.is_empty() {
                for p in failed {
                    eprintln!("proposition {} FAILED: {}", p.name, p.detail);
                }
                EXIT_PROPOSITION_FAILED
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            remove_artifacts(out);
            eprintln!("error[{}]: {e}", e.kind());
            exit_code(&e)
        }
    }
}

fn summarize(run: &RunOutput) {
    let r = &run.report;
    let case = r.case.map_or("free curve".to_string(), |c| c.to_string());
    eprintln!("case: {case}");
    if let Some(f) = &r.special_flags {
        eprintln!("geodesic: {}, asymptotic: {}, line of curvature: {}", f.geodesic, f.asymptotic, f.line_of_curvature);
    }
    match (&r.rns_formula, r.rns_constant) {
        (Some(f), Some(c)) => eprintln!("relatively normal-slant helix: yes ({}, constant {c:.9})", f.as_str()),
        _ => eprintln!("relatively normal-slant helix: no"),
    }
    eprintln!("slant helix: {}", if r.slant_verdict { "yes" } else { "no" });
    for p in r.proposition_results.iter().filter(|p| p.applicable) {
        eprintln!("proposition {}: {}", p.name, if p.passed { "pass" } else { "FAIL" });
    }
    for n in &r.provenance.notes {
        eprintln!("note: {n}");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flags_and_defaults() {
        let cli = Cli::try_parse_from(["rnshelix", "analyze", "doc.json"]).unwrap().into_config();
        assert_eq!(cli.mode, Mode::Analyze);
        assert_eq!(cli.args.tol, 1e-3);
        assert_eq!(cli.args.out, PathBuf::from("./out"));
        assert!(cli.args.eps.is_none() && cli.args.h.is_none() && cli.args.samples.is_none());

        let cli = Cli::try_parse_from([
            "rnshelix", "check-props", "p.json", "--tol", "1e-4", "--eps", "1e-10", "--h", "2e-4", "--samples", "501", "--out", "o",
        ])
        .unwrap()
        .into_config();
        assert_eq!(cli.mode, Mode::CheckProps);
        assert_eq!((cli.args.tol, cli.args.eps, cli.args.h, cli.args.samples), (1e-4, Some(1e-10), Some(2e-4), Some(501)));
    }

    #[test]
    fn exit_codes_follow_error_family() {
        assert_eq!(exit_code(&Error::Syntax { offset: 0, message: String::new() }), EXIT_VALIDATION);
        assert_eq!(exit_code(&Error::DomainGuard(String::new())), EXIT_VALIDATION);
        assert_eq!(exit_code(&Error::VanishingCurvature(0.0)), EXIT_NUMERICAL);
        assert_eq!(exit_code(&Error::StepTooLarge { s: 0.0, drift: 1.0 }), EXIT_NUMERICAL);
    }
}
