//! Batch command-line surface over the `qent-core` toolkit.
//!
//! Subcommands: `classify`, `measure`, `witness`, `normal-form`, `graph`,
//! `stabilizer`, `metrology`, `splits`. Every run produces a [`Report`]
//! rendered as text or JSON (`--json`); exit codes are 0 on success, 1 on
//! input errors, 2 on numerical non-convergence.

pub mod formats;
pub mod report;

mod commands;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use report::{Report, RunDefaults};

#[derive(Parser, Debug)]
#[command(
    name = "qent",
    version,
    about = "Construct, classify, and quantify entangled states of small qubit registers",
    arg_required_else_help = true
)]
pub struct Cli {
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every stochastic optimizer in the run.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Verification tolerance used by the CLI's own checks.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Restart budget for the variational optimizers.
    #[arg(long, global = true, default_value_t = 50)]
    pub restarts: usize,
    #[command(subcommand)]
    pub command: Command,
}

/// Input selector shared by state-consuming subcommands.
#[derive(Args, Debug)]
pub struct StateInput {
    /// State file (JSON; see README for the schema).
    #[arg(value_name = "FILE")]
    pub file: Option<PathBuf>,
    /// Built-in state: ghz3, ghz4, w3, w4, bell, cluster4, mixed3.
    #[arg(long, conflicts_with = "file")]
    pub builtin: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// SLOCC class (pure three-qubit input) or separability report (mixed
    /// input, up to four qubits).
    Classify(StateInput),
    /// Entanglement measures of the input state.
    Measure {
        #[command(flatten)]
        input: StateInput,
        /// Comma-separated subset of: schmidt, global, geometric, tangle,
        /// entropy, concurrence, ree, localizable. Default: all applicable.
        #[arg(long, value_delimiter = ',')]
        measure: Vec<String>,
        /// Compute every applicable measure (the default when --measure is
        /// not given).
        #[arg(long)]
        all: bool,
        /// Pair of parties for localizable entanglement, e.g. --pair 2,3.
        #[arg(long, value_delimiter = ',', num_args = 2)]
        pair: Option<Vec<usize>>,
        /// Bloch-grid resolution for localizable entanglement.
        #[arg(long, default_value_t = 9)]
        grid: usize,
    },
    /// Evaluate an entanglement witness on the input state.
    Witness {
        #[command(flatten)]
        input: StateInput,
        /// Which witness: ghz or w.
        #[arg(long, default_value = "ghz")]
        which: String,
        /// Also emit the local Pauli decomposition of the witness.
        #[arg(long)]
        decompose: bool,
    },
    /// Generalized Schmidt normal form (three qubits) or Schmidt
    /// decomposition (two qubits).
    #[command(name = "normal-form")]
    NormalForm(StateInput),
    /// Build the graph state of a graph file and verify its stabilizers.
    Graph {
        /// Graph file (JSON: `{"n_vertices": N, "edges": [[a,b], ..]}`).
        #[arg(value_name = "FILE")]
        file: PathBuf,
        /// Write the resulting state to a state file.
        #[arg(long)]
        state_out: Option<PathBuf>,
    },
    /// Build the stabilizer state of an explicit generator list.
    Stabilizer {
        /// Comma-separated Pauli strings, e.g. "ZZI,IZZ,XXX" (optional
        /// leading "-" or "i" phase tokens).
        #[arg(long)]
        generators: String,
        /// Write the resulting state to a state file.
        #[arg(long)]
        state_out: Option<PathBuf>,
    },
    /// Frequency-estimation limits, Fisher information, probe optimization,
    /// and CSV sweeps.
    Metrology {
        #[command(subcommand)]
        command: MetrologyCommand,
    },
    /// Enumerate all splits (set partitions) of n parties.
    Splits {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum MetrologyCommand {
    /// Closed-form shot-noise and GHZ limits (no dephasing).
    Limits {
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Interrogation time (s).
        #[arg(long, default_value_t = 0.01)]
        t: f64,
        /// Total duration (s).
        #[arg(long = "total-time", default_value_t = 1.0)]
        total_time: f64,
    },
    /// Uncertainty of a named probe under dephasing, via quantum Fisher
    /// information.
    Qfi {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0.01)]
        t: f64,
        #[arg(long = "total-time", default_value_t = 1.0)]
        total_time: f64,
        /// Per-qubit dephasing rate (1/s).
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        /// Probe: plus (uncorrelated) or ghz.
        #[arg(long, default_value = "plus")]
        probe: String,
        /// Also optimize the interrogation time within (0, total-time].
        #[arg(long)]
        optimize_t: bool,
    },
    /// Optimize the four-qubit probe family against the uncorrelated
    /// baseline.
    Optimize {
        #[arg(long = "total-time", default_value_t = 50.0)]
        total_time: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        /// Coarse grid points per family angle.
        #[arg(long, default_value_t = 13)]
        grid: usize,
    },
    /// CSV sweep of delta_omega0 over interrogation times for the
    /// uncorrelated and GHZ probes (columns: t, delta_omega0, scheme).
    Sweep {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long = "total-time", default_value_t = 1.0)]
        total_time: f64,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        #[arg(long = "t-min", default_value_t = 1e-3)]
        t_min: f64,
        #[arg(long = "t-max", default_value_t = 1.0)]
        t_max: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
    },
}

/// Run outcome: process exit code, the report (when one was produced), and
/// the rendered output for stdout.
pub struct Outcome {
    pub exit_code: i32,
    pub report: Option<Report>,
    pub rendered: String,
}

impl Outcome {
    fn input_error(message: String) -> Self {
        Outcome { exit_code: 1, report: None, rendered: format!("error: {message}\n") }
    }
}

/// Parse arguments and execute. `argv` includes the program name.
pub fn execute<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            // clap renders its own usage text; --help/--version are not errors
            let rendered = err.render().to_string();
            let code = if err.use_stderr() { 1 } else { 0 };
            return Outcome { exit_code: code, report: None, rendered };
        }
    };
    let defaults = RunDefaults { seed: cli.seed, tol: cli.tol, restarts: cli.restarts };
    let result = commands::dispatch(&cli.command, defaults);
    match result {
        Ok(mut report) => {
            let exit_code = if report.has_nonconvergence_flag() { 2 } else { 0 };
            if exit_code == 2 {
                report.flag("exit code 2: numerical non-convergence");
            }
            let rendered =
                if cli.json { report.to_json() + "\n" } else { report.to_text() };
            Outcome { exit_code, report: Some(report), rendered }
        }
        Err(message) => Outcome::input_error(message),
    }
}
