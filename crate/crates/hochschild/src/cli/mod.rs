//! Command line front end: parse a problem file, run one computation, print
//! a table and optionally write a JSON report.

pub mod commands;
pub mod problem;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{run, Command, Outcome, Settings};
pub use problem::{Instance, Model, ProblemFile, PROBLEM_FORMAT};
pub use report::{Report, REPORT_FORMAT};

use crate::complex::DEFAULT_BUDGET;
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldSpec, PrimeField, Rationals};

#[derive(Parser, Debug)]
#[command(name = "hochschild", version, about = "Hochschild cohomology of algebras built from k-categories with zero compositions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Subcommand, Debug)]
pub enum Sub {
    /// Hochschild cohomology from the bar complex
    Hh(Common),
    /// Cohomology of the complex along trajectories, checked against the bar complex
    HhRelative(Common),
    /// Cohomology along paths, with the Ext cross-check where Tor vanishes
    AlongPath(Common),
    /// The long exact sequence of the non-cycle subcomplex
    Les(Common),
    /// Five-term sequences and cohomology of a null-square algebra
    Square(Common),
    /// Peirce quiver, efficient cycles and tensor nilpotence
    Peirce(Common),
    /// Dimension of the associative corner products of a square
    SolveAssoc(Common),
    /// Run every applicable invariant on the instance
    Verify(Common),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Problem file
    pub problem: PathBuf,
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// rationals or fp:P
    #[arg(long)]
    pub field: Option<String>,
    /// Value of the parameter q
    #[arg(long)]
    pub q: Option<String>,
    /// Write the JSON report here
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Largest number of matrix entries a computation may build, e.g. 1e8
    #[arg(long)]
    pub budget: Option<String>,
    /// Path for along-path, repeatable
    #[arg(long = "path")]
    pub paths: Vec<String>,
    /// Seed for the random checks of verify
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
}

impl Sub {
    pub fn split(&self) -> (Command, &Common) {
        match self {
            Sub::Hh(c) => (Command::Hh, c),
            Sub::HhRelative(c) => (Command::HhRelative, c),
            Sub::AlongPath(c) => (Command::AlongPath, c),
            Sub::Les(c) => (Command::Les, c),
            Sub::Square(c) => (Command::Square, c),
            Sub::Peirce(c) => (Command::Peirce, c),
            Sub::SolveAssoc(c) => (Command::SolveAssoc, c),
            Sub::Verify(c) => (Command::Verify, c),
        }
    }
}

pub fn parse_budget(s: &str) -> Result<u64> {
    let s = s.trim();
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 && v < u64::MAX as f64 => Ok(v as u64),
        _ => Err(Error::Input(format!("bad budget '{}'", s))),
    }
}

/// Runs a command on a parsed problem with command line overrides.
pub fn execute(cmd: Command, problem: &ProblemFile, opts: &Common) -> Result<(Report, Outcome)> {
    let run_spec = problem.run.clone().unwrap_or_default();
    let field = match &opts.field {
        Some(s) => FieldSpec::parse(s)?,
        None => problem.field_spec()?,
    };
    let budget = match &opts.budget {
        Some(b) => parse_budget(b)?,
        None => run_spec.budget.unwrap_or(DEFAULT_BUDGET),
    };
    let settings = Settings {
        max_degree: opts.max_degree.or(run_spec.max_degree).unwrap_or(4),
        budget,
        paths: if opts.paths.is_empty() { run_spec.paths.clone() } else { opts.paths.clone() },
        seed: opts.seed,
    };
    let q = opts.q.clone().or_else(|| problem.q.clone());
    let outcome = match &field {
        FieldSpec::Rationals => with_field(&Rationals, cmd, problem, q.as_deref(), &settings)?,
        FieldSpec::PrimeField(p) => with_field(&PrimeField::new(*p)?, cmd, problem, q.as_deref(), &settings)?,
    };
    let report = Report::new(&problem.name, cmd.name(), &field.render(), settings.max_degree, outcome.result.clone());
    Ok((report, outcome))
}

fn with_field<F: Field>(f: &F, cmd: Command, problem: &ProblemFile, q: Option<&str>, s: &Settings) -> Result<Outcome> {
    let scalars = problem::Scalars { field: f, q: None };
    let q = q.map(|v| scalars.parse(v)).transpose()?;
    let model = Model::build(problem, f, q)?;
    run(cmd, &model, s)
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with_args(args: impl IntoIterator<Item = std::ffi::OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let (cmd, opts) = cli.command.split();
    let result = ProblemFile::read(&opts.problem).and_then(|p| execute(cmd, &p, opts));
    match result {
        Ok((report, outcome)) => {
            println!("{}", outcome.text);
            if let Some(path) = &opts.report {
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    eprintln!("error: cannot write {}: {}", path.display(), e);
                    return 1;
                }
            }
            if outcome.passed {
                0
            } else {
                3
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            e.exit_code()
        }
    }
}
