use clap::{Args, Parser, Subcommand, ValueEnum};
use negsim::quasi::DEFAULT_BUDGET;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "negsim", version, about = "Simulate CNOT circuits with signed local operations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dense state-vector parity probabilities.
    Exact(CircuitArgs),
    /// Exhaustive signed enumeration of all 3^N operation sequences.
    Enumerate(EnumerateArgs),
    /// Signed Monte Carlo estimate with amplification 3^N.
    Sample(SampleArgs),
    /// Sequence table for the built-in three-qubit GHZ circuit.
    GhzTable(CommonArgs),
    /// Run the operator-identity and golden-value self checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Worker threads; results do not depend on it.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CircuitArgs {
    #[arg(long)]
    pub circuit: PathBuf,

    /// Parity observable such as `XXX=+1` (repeatable).
    #[arg(long = "obs", required = true)]
    pub observables: Vec<String>,

    /// Product input state, one of `0 1 + - r l` per qubit; default all `0`.
    #[arg(long)]
    pub input: Option<String>,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub circuit: CircuitArgs,

    /// Maximum number of weighted branches (3^N·2^N).
    #[arg(long, env = "NEGSIM_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub circuit: CircuitArgs,

    #[arg(long)]
    pub shots: u64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Tolerance for the channel and process-matrix identities.
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,

    #[command(flatten)]
    pub common: CommonArgs,
}
