//! Command-line surface: `test`, `reproduce`, `search`, `verify-linearized`,
//! with text, JSON, CSV and DOT emitters.
//!
//! Exit codes: 0 proved (or reproduction/verification succeeded), 1 reducible
//! (or mismatch), 2 inconclusive, 3 usage error.

mod classify;
mod commands;

use std::ffi::OsString;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use classify::{
    classify, classify_cubic, critical_portrait_dot, oracle_classify, Classification,
    ClassifyOptions, Route, CSV_SCHEMA_VERSION, ORACLE_CSV_COLUMNS, ORACLE_DEGREE_LIMIT,
    ORBIT_CSV_COLUMNS, VERDICT_CSV_COLUMNS,
};
pub use commands::{
    reproduce_table1, reproduce_table2, search, SearchRow, Table1Row, Table2Row,
    LINEARIZED_CSV_COLUMNS, TABLE1_CSV_COLUMNS, TABLE2_CSV_COLUMNS, TABLE2_EXPECTED,
};

use crate::error::{Error, Result};
use crate::ffield::{build_field, Field, FieldElem};
use crate::polyring::{parse_poly, Poly, DEFAULT_SEED};

/// Exit code for malformed invocations.
pub const EXIT_USAGE: i32 = 3;
/// Version tag written into every JSON report.
pub const REPORT_SCHEMA: &str = "dynir-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "dynir", version, about = "Dynamical irreducibility of polynomials over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Characteristic of the field.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Extension degree: the field is F_{p^s}.
    #[arg(long, global = true, default_value_t = 1)]
    pub s: usize,
    /// Polynomial, e.g. "x^3+6x+2" or "[1,2]*x^2+1".
    #[arg(long, global = true)]
    pub poly: Option<String>,
    /// Target: decide the pair (f, beta), i.e. irreducibility of f^n - beta.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Highest level (cubic test) or iterate (oracle) examined.
    #[arg(long = "nmax", global = true, default_value_t = 10)]
    pub n_max: usize,
    /// Iterates up to this bound are cross-checked by factorization.
    #[arg(long = "oracle-max", global = true, default_value_t = 5)]
    pub oracle_max: usize,
    /// Worker threads for searches (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for randomized factoring and sampling; DYNIR_SEED overrides it.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Decide one polynomial (shape dispatch with oracle fallback).
    Test,
    /// Reproduce a paper table (1: unicritical over F_7, 2: cubics over F_3).
    Reproduce {
        #[arg(long)]
        table: u8,
    },
    /// Sweep a family: unicritical, depressed, chu or linearized.
    Search {
        #[arg(long)]
        family: String,
        /// Degree for the unicritical family a*x^d + c.
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// Check that every shifted linearized polynomial has a reducible
    /// second (p >= 3) or third (p = 2) iterate.
    VerifyLinearized,
}

/// Validated run parameters, echoed into every report.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub p: Option<u64>,
    pub s: usize,
    pub poly: Option<String>,
    pub beta: Option<String>,
    pub n_max: usize,
    pub oracle_max: usize,
    pub jobs: Option<usize>,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    fn from_args(a: &CommonArgs, env_seed: Option<String>) -> std::result::Result<RunConfig, String> {
        if a.n_max == 0 {
            return Err("--nmax must be at least 1".into());
        }
        if a.s == 0 {
            return Err("--s must be at least 1".into());
        }
        if a.jobs == Some(0) {
            return Err("--jobs must be at least 1".into());
        }
        let seed = match env_seed {
            Some(s) => s
                .trim()
                .parse::<u64>()
                .map_err(|_| format!("DYNIR_SEED is not an unsigned integer: {s:?}"))?,
            None => a.seed.unwrap_or(DEFAULT_SEED),
        };
        Ok(RunConfig {
            p: a.p,
            s: a.s,
            poly: a.poly.clone(),
            beta: a.beta.clone(),
            n_max: a.n_max,
            oracle_max: a.oracle_max.min(a.n_max),
            jobs: a.jobs,
            seed,
            format: a.format,
            out: a.out.clone(),
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "s": self.s,
            "poly": self.poly,
            "beta": self.beta,
            "nmax": self.n_max,
            "oracle_max": self.oracle_max,
            "seed": self.seed,
        })
    }

    pub fn field(&self) -> Result<Field> {
        let p = self.p.ok_or_else(|| Error::InvalidArgument("--p is required".into()))?;
        build_field(p, &[self.s])
    }

    pub fn polynomial(&self, field: &Field) -> Result<Poly> {
        let src = self
            .poly
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument("--poly is required".into()))?;
        parse_poly(field, src)
    }

    pub fn beta_elem(&self, field: &Field) -> Result<Option<FieldElem>> {
        let Some(src) = self.beta.as_deref() else {
            return Ok(None);
        };
        let b = parse_poly(field, src)?;
        if b.degree().unwrap_or(0) > 0 {
            return Err(Error::Parse("--beta must be a constant".into()));
        }
        Ok(Some(b.coeff(0)))
    }

    pub fn classify_options(&self) -> ClassifyOptions {
        ClassifyOptions {
            n_max: self.n_max,
            oracle_max: self.oracle_max,
            seed: self.seed,
        }
    }
}

/// A rendered-on-demand command result.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub result: Value,
    pub text: Vec<String>,
    /// Header row then data rows.
    pub csv: Vec<Vec<String>>,
    pub dot: Option<String>,
    pub exit_code: i32,
}

impl Report {
    pub fn json(&self) -> Value {
        json!({
            "schema": REPORT_SCHEMA,
            "command": self.command,
            "seed": self.config["seed"],
            "config": self.config,
            "result": self.result,
        })
    }

    pub fn render(&self, format: Format) -> std::result::Result<String, String> {
        match format {
            Format::Text => {
                let mut s = self.text.join("\n");
                s.push('\n');
                Ok(s)
            }
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json()).expect("serializable");
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for row in &self.csv {
                    w.write_record(row).map_err(|e| e.to_string())?;
                }
                String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
            }
            Format::Dot => self
                .dot
                .clone()
                .ok_or_else(|| format!("--format dot is not available for '{}'", self.command)),
        }
    }
}

/// Execute one already-validated command.
pub fn execute(command: &Command, cfg: &RunConfig) -> Result<Report> {
    match command {
        Command::Test => commands::cmd_test(cfg),
        Command::Reproduce { table } => commands::cmd_reproduce(*table, cfg),
        Command::Search { family, degree } => commands::cmd_search(family, *degree, cfg),
        Command::VerifyLinearized => commands::cmd_verify_linearized(cfg),
    }
}

/// Parse arguments, run, emit; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match RunConfig::from_args(&cli.common, std::env::var("DYNIR_SEED").ok()) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let report = match execute(&cli.command, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let body = match report.render(cfg.format) {
        Ok(b) => b,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, body.as_bytes()).map_err(|e| e.to_string()),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("error: cannot write report: {msg}");
        return EXIT_USAGE;
    }
    report.exit_code
}
