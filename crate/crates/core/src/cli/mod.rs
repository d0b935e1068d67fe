//! Command-line front end.
//!
//! Every computing command prints one JSON document (`"schema": 1`) on
//! standard output, or an indented plain-text rendering of the same data with
//! `--pretty`. Exit codes: 0 success, 1 usage or parse error, 2 mathematical
//! precondition violated, 3 internal oracle disagreement.

mod curvefile;
mod render;
mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::generate::{generate, GenKind};
use crate::qpoly::parse_poly;

pub use curvefile::{parse_curve_file, write_curve_file, CurveEntry, CurveFileError};
pub use render::render_pretty;
pub use report::{
    curve_report, lattice_report, union_report, Check, CurveReport, LatticeReport, MuSource, Options, UnionReport,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Math(String),
    #[error("{0}")]
    Oracle(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Math(_) => 2,
            CliError::Oracle(_) => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "plane-curves", version, about = "Exact invariants of reduced plane curves")]
pub struct Cli {
    /// Seed for the random projections of the resultant path.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Number of random projections tried by the resultant path.
    #[arg(long, default_value_t = 5, global = true)]
    pub shear_trials: usize,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    /// Emit an indented plain-text rendering instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Use mu = tau when mu is not available combinatorially.
    #[arg(long, global = true)]
    pub assume_quasi_homogeneous: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Curve file to read.
    pub file: Option<PathBuf>,
    /// Curve name in the file (repeatable); defaults to every curve, or the first two for `union`.
    #[arg(long = "curve")]
    pub curves: Vec<String>,
    /// Raw homogeneous polynomial instead of a file (repeatable).
    #[arg(long, conflicts_with = "file")]
    pub poly: Vec<String>,
    /// Number of irreducible components of each raw polynomial, in order.
    #[arg(long)]
    pub e: Vec<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tau, mdr, Poincare and Betti polynomials, freeness and singular points.
    Invariants(Input),
    /// Addition identities for a pair of curves without common components.
    Union(Input),
    /// Intersection lattice, pi(A; t) and deletion-restriction for a line arrangement.
    Lattice(Input),
    /// Print a curve file of seeded random arrangements.
    Generate {
        #[arg(long)]
        kind: GenKind,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Number of lines per arrangement; seeded within the kind's range if absent.
        #[arg(long)]
        lines: Option<usize>,
    },
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    schema: u32,
    command: &'static str,
    seed: u64,
    shear_trials: usize,
    assume_quasi_homogeneous: bool,
    violations: Vec<String>,
    result: T,
}

fn load(input: &Input) -> Result<Vec<CurveEntry>, CliError> {
    if !input.poly.is_empty() {
        return input
            .poly
            .iter()
            .enumerate()
            .map(|(i, text)| {
                let f = parse_poly(text).map_err(|e| CliError::Usage(format!("--poly {text:?}: {e}")))?;
                Ok(CurveEntry::raw(
                    &format!("poly{}", i + 1),
                    f,
                    input.e.get(i).copied(),
                    false,
                ))
            })
            .collect();
    }
    let path = input
        .file
        .as_ref()
        .ok_or_else(|| CliError::Usage("give a curve file or --poly".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let all = parse_curve_file(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    if input.curves.is_empty() {
        return Ok(all);
    }
    input
        .curves
        .iter()
        .map(|name| {
            all.iter()
                .find(|c| &c.name == name)
                .cloned()
                .ok_or_else(|| CliError::Usage(format!("no curve named {name:?}")))
        })
        .collect()
}

fn emit<T: Serialize>(cli: &Cli, command: &'static str, violations: Vec<String>, result: T) -> (String, i32) {
    let env = Envelope {
        schema: SCHEMA_VERSION,
        command,
        seed: cli.seed,
        shear_trials: cli.shear_trials,
        assume_quasi_homogeneous: cli.assume_quasi_homogeneous,
        violations: violations.clone(),
        result,
    };
    let value = serde_json::to_value(&env).expect("reports serialize");
    let text = if cli.pretty {
        render_pretty(&value)
    } else {
        format!("{}\n", serde_json::to_string_pretty(&value).unwrap())
    };
    (text, if violations.is_empty() { 0 } else { 3 })
}

fn violations<'a>(checks: impl IntoIterator<Item = &'a Check>, prefix: &str) -> Vec<String> {
    checks
        .into_iter()
        .filter(|c| c.is_violation())
        .map(|c| format!("{prefix}{}: {} != {}", c.name, c.lhs, c.rhs))
        .collect()
}

/// Output document and exit code (3 when a report carries violations).
pub fn run(cli: &Cli) -> Result<(String, i32), CliError> {
    let opts = Options {
        seed: cli.seed,
        shear_trials: cli.shear_trials,
        assume_quasi_homogeneous: cli.assume_quasi_homogeneous,
    };
    match &cli.command {
        Command::Invariants(input) => {
            let entries = load(input)?;
            let mut reports = Vec::new();
            for e in &entries {
                reports.push(curve_report(e, &opts)?.0);
            }
            let v = reports
                .iter()
                .flat_map(|r| violations(&r.checks, &format!("{}: ", r.name)))
                .collect();
            Ok(emit(cli, "invariants", v, reports))
        }
        Command::Union(input) => {
            let entries = load(input)?;
            if entries.len() < 2 || (!input.curves.is_empty() || !input.poly.is_empty()) && entries.len() != 2 {
                return Err(CliError::Usage(format!(
                    "union needs exactly two curves, got {}",
                    entries.len()
                )));
            }
            let rep = union_report(&entries[0], &entries[1], &opts)?;
            let mut v = violations(&rep.checks, "");
            for part in [&rep.first, &rep.second, &rep.union] {
                v.extend(violations(&part.checks, &format!("{}: ", part.name)));
            }
            Ok(emit(cli, "union", v, rep))
        }
        Command::Lattice(input) => {
            let entries = load(input)?;
            let mut reports = Vec::new();
            for e in &entries {
                reports.push(lattice_report(e, &opts)?);
            }
            let v = reports
                .iter()
                .flat_map(|r| {
                    let mut v = violations(&r.checks, &format!("{}: ", r.curve.name));
                    v.extend(violations(&r.curve.checks, &format!("{}: ", r.curve.name)));
                    v
                })
                .collect();
            Ok(emit(cli, "lattice", v, reports))
        }
        Command::Generate { kind, count, lines } => {
            let g = generate(*kind, *count, cli.seed, *lines).map_err(|e| CliError::Math(e.to_string()))?;
            let lines_note = lines.map_or(String::new(), |n| format!(" --lines {n}"));
            let header = format!(
                "plane-curves generate --kind {kind} --count {count}{lines_note} --seed {}",
                cli.seed
            );
            Ok((write_curve_file(&header, &g), 0))
        }
    }
}

/// Parses the process arguments and runs; returns the exit code.
pub fn main_from_env() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok((text, code)) => {
            print!("{text}");
            if code == 3 {
                eprintln!("error: internal oracle disagreement (see \"violations\")");
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
