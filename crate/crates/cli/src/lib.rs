//! Command-line front end: loads JSON documents, runs analyses, emits reports.

pub mod commands;
pub mod formats;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Result;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::commands::Options;
use crate::report::{write_atomic, Results};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_COUNTEREXAMPLE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cgate", version, about = "Logical-gate analysis for classical stabilizer codes")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Numerical tolerance for every comparison.
    #[arg(long, global = true, default_value_t = cgate_core::DEFAULT_TOL)]
    pub tol: f64,
    /// Largest qubit count for dense operators.
    #[arg(long, global = true, default_value_t = cgate_core::circuit::MAX_UNITARY_QUBITS)]
    pub max_qubits: usize,
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Standard form, distance, logical operators and X-rule of a code.
    AnalyzeCode {
        code: PathBuf,
        /// Seed for the sampled X-rule on large codes.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Logical action, spreading and bound verdict of one circuit.
    CheckCircuit {
        circuit: PathBuf,
        #[arg(long)]
        layout: PathBuf,
        /// Layout of the output codespace, if it differs.
        #[arg(long)]
        dst_layout: Option<PathBuf>,
        #[arg(long)]
        d_z: Option<usize>,
        /// Defaults to the destination distance.
        #[arg(long)]
        d_x: Option<usize>,
    },
    /// Exhaustive search for circuits violating the no-go bound.
    VerifyTheorem {
        spec: PathBuf,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write the first counterexample here as a circuit file.
        #[arg(long, value_name = "PATH")]
        dump_counterexample: Option<PathBuf>,
    },
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<i32> {
    let mut opts = Options {
        tol: cli.common.tol,
        max_qubits: cli.common.max_qubits,
        ..Options::default()
    };
    if !(opts.tol.is_finite() && opts.tol >= 0.0) {
        anyhow::bail!("--tol must be a finite non-negative number");
    }
    let mut dump = None;
    let doc = match &cli.command {
        Command::AnalyzeCode { code, seed } => {
            opts.seed = *seed;
            commands::analyze_code(code, &opts)?
        }
        Command::CheckCircuit {
            circuit,
            layout,
            dst_layout,
            d_z,
            d_x,
        } => {
            opts.d_z = *d_z;
            opts.d_x = *d_x;
            commands::check_circuit(circuit, layout, dst_layout.as_deref(), &opts)?
        }
        Command::VerifyTheorem {
            spec,
            jobs,
            dump_counterexample,
        } => {
            opts.jobs = *jobs;
            dump = dump_counterexample.clone();
            commands::verify_theorem(spec, &opts)?
        }
    };
    let json = doc.to_json()?;
    if let Some(path) = &cli.common.out {
        write_atomic(path, &json)?;
    }
    if let (Some(path), Results::Search(r)) = (&dump, &doc.results) {
        if let Some(c) = &r.counterexample {
            write_atomic(path, &serde_json::to_string_pretty(c)?)?;
        }
    }
    if cli.common.json {
        writeln!(stdout, "{json}")?;
    } else {
        write!(stdout, "{}", doc.to_text())?;
    }
    Ok(if commands::has_counterexample(&doc) {
        EXIT_COUNTEREXAMPLE
    } else {
        EXIT_OK
    })
}

/// Runs the tool on `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_ERROR
                }
            };
        }
    };
    match execute(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_ERROR
        }
    }
}
