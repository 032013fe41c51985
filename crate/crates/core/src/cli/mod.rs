//! The `liecomb` command line: argument parsing, dispatch and report output.
//!
//! Every subcommand produces a [`Report`]; `--json` prints it, `--csv` prints
//! the tabular part where there is one, and the default is plain text.

mod commands;

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use crate::error::Error;

/// Version tag of the JSON report layout.
pub const REPORT_SCHEMA: &str = "liecomb.report/1";

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status for malformed arguments.
pub const EXIT_USAGE: i32 = 1;
/// Exit status for a domain error such as an oversized enumeration.
pub const EXIT_DOMAIN: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "liecomb", version, about = "Exact Weyl group, Hecke algebra, Fourier matrix and flag variety computations")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub(crate) struct Common {
    /// Print a versioned JSON report.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Print the tabular part of the result as CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Seed for sampled property checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Enumeration bound: flags for flag commands, group elements otherwise.
    #[arg(long = "max-size", global = true)]
    max_size: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub(crate) struct TypeArgs {
    /// Cartan type, either a family letter (with --rank) or a full name such as E6.
    #[arg(long = "type")]
    cartan: String,
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub(crate) struct GroupArgs {
    /// A built-in group: trivial, S<n>, A<n>, Z<n>, F2^<n> (optionally prefixed by builtin:).
    #[arg(long, conflicts_with = "perm_file", required_unless_present = "perm_file")]
    group: Option<String>,
    /// File with one generating permutation per line in cycle notation.
    #[arg(long = "perm-file")]
    perm_file: Option<std::path::PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Kazhdan-Lusztig polynomials.
    Kl {
        #[command(flatten)]
        ty: TypeArgs,
        /// Print every P_{y,w} with y <= w (the default without --y/--w).
        #[arg(long)]
        all: bool,
        /// Lower element as a word such as "s1 s2".
        #[arg(long, requires = "w")]
        y: Option<String>,
        #[arg(long, requires = "y")]
        w: Option<String>,
    },
    /// Left, right or two-sided cells.
    Cells {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, default_value = "two-sided")]
        kind: String,
    },
    /// Palindromicity of the KL-weighted Poincare polynomials of Bruhat intervals.
    Palindrome {
        #[command(flatten)]
        ty: TypeArgs,
        /// Check one element instead of all.
        #[arg(long)]
        w: Option<String>,
    },
    /// The set M(G) and the nonabelian Fourier matrix.
    Fourier {
        #[command(flatten)]
        group: GroupArgs,
        /// Include the full matrix.
        #[arg(long)]
        matrix: bool,
        /// Check that the matrix is unitary, involutive and hermitian.
        #[arg(long)]
        check: bool,
    },
    /// Counts of triples (a, b, c) with abc = 1 from given classes.
    Triples {
        #[command(flatten)]
        group: GroupArgs,
        /// Three class indices, comma separated.
        #[arg(long, conflicts_with = "orders")]
        classes: Option<String>,
        /// Three element orders; every matching class triple is counted.
        #[arg(long)]
        orders: Option<String>,
        /// Also count by brute force and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Point counts of the pieces X_w of the flag variety over GF(q^m).
    Dl {
        /// GL or Sp.
        #[arg(long = "group", default_value = "GL")]
        group_type: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
        /// Also compare the chain description of the Coxeter piece (GL only).
        #[arg(long = "coxeter-check")]
        coxeter_check: bool,
    },
    /// Points of x^q y - x y^q = 1 over GF(q^m) and the group action checks.
    Drinfeld {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
    },
    /// Dimension of the space of flag functions with vanishing completion sums.
    BrauerDim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        /// modular or rational.
        #[arg(long, default_value = "modular")]
        mode: String,
        /// Also check stability under 20 random group elements on 5 kernel vectors.
        #[arg(long)]
        stability: bool,
    },
    /// Brauer character value of a matrix over GF(q).
    BrauerChar {
        /// Field size, a prime power.
        #[arg(long)]
        q: u64,
        /// Square matrix as JSON rows of field element codes, e.g. "[[0,2],[1,0]]".
        #[arg(long)]
        matrix: String,
    },
    /// Unipotent cuspidal data and their diagnostics.
    Cuspidal {
        #[command(flatten)]
        ty: TypeArgs,
        /// Specialize to q = 1.
        #[arg(long)]
        q1: bool,
        /// Run the diagnostics, one line per check.
        #[arg(long)]
        check: bool,
    },
    /// Characteristic polynomials on the reflection representation.
    Charpoly {
        #[command(flatten)]
        ty: TypeArgs,
        /// One element; without it every conjugacy class is listed.
        #[arg(long)]
        w: Option<String>,
    },
    /// Relative position of two flags over GF(q).
    Relpos {
        #[arg(long)]
        q: u64,
        /// Basis matrix (JSON rows) whose first i rows span V_i.
        #[arg(long)]
        flag1: String,
        #[arg(long)]
        flag2: String,
        /// Require both flags to be compatible with the symplectic form.
        #[arg(long)]
        symplectic: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Kl { .. } => "kl",
            Command::Cells { .. } => "cells",
            Command::Palindrome { .. } => "palindrome",
            Command::Fourier { .. } => "fourier",
            Command::Triples { .. } => "triples",
            Command::Dl { .. } => "dl",
            Command::Drinfeld { .. } => "drinfeld",
            Command::BrauerDim { .. } => "brauer-dim",
            Command::BrauerChar { .. } => "brauer-char",
            Command::Cuspidal { .. } => "cuspidal",
            Command::Charpoly { .. } => "charpoly",
            Command::Relpos { .. } => "relpos",
        }
    }
}

/// The machine-readable result of one invocation.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub params: Value,
    pub result: Value,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Value>,
}

/// What a command handler produces.
pub(crate) struct Output {
    pub params: Value,
    pub result: Value,
    pub text: String,
    pub csv: Option<String>,
}

/// Failures of a command handler.
pub(crate) enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// its output to `out`. Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let name = cli.command.name();
    let result = commands::dispatch(&cli.command, &cli.common);
    let (code, report, rendered) = match result {
        Ok(output) => {
            let rendered = if cli.common.csv {
                match &output.csv {
                    Some(csv) => Ok(csv.clone()),
                    None => Err(format!("error: {name} has no tabular output for --csv\n")),
                }
            } else {
                Ok(output.text.clone())
            };
            let report = Report {
                schema: REPORT_SCHEMA,
                command: name.into(),
                params: output.params,
                result: output.result,
                status: "ok",
                error: None,
            };
            match rendered {
                Ok(text) => (EXIT_OK, report, text),
                Err(msg) => (EXIT_USAGE, report, msg),
            }
        }
        Err(failure) => {
            let (code, kind, message) = match failure {
                Failure::Usage(msg) => (EXIT_USAGE, "Usage", msg),
                Failure::Domain(e) => (EXIT_DOMAIN, e.kind(), e.to_string()),
            };
            let report = Report {
                schema: REPORT_SCHEMA,
                command: name.into(),
                params: Value::Null,
                result: Value::Null,
                status: "error",
                error: Some(serde_json::json!({ "kind": kind, "message": message })),
            };
            (code, report, format!("error [{kind}]: {message}\n"))
        }
    };
    let written = if cli.common.json {
        serde_json::to_string_pretty(&report).map(|s| s + "\n").map_err(std::io::Error::other).and_then(|s| out.write_all(s.as_bytes()))
    } else {
        out.write_all(rendered.as_bytes())
    };
    if written.is_err() {
        return EXIT_DOMAIN;
    }
    code
}
