use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

const FORMATS_HELP: &str = "\
File formats:
  State file:   {\"dims\": [3], \"amplitudes\": [[re, im], ...], \"label\": \"...\"}
  Density file: {\"dims\": [2, 2], \"matrix\": [[re, im], ...]}   (row-major)

Spin-1 amplitudes are ordered (|+1>, |0>, |-1>), so S_z = diag(1, 0, -1).
Qubit amplitudes are lexicographic with |0> = spin up first.

Exit codes: 0 ok, 1 failed reproduction check, 2 malformed input or flags,
3 dimension mismatch, 4 optimizer did not converge.";

#[derive(Parser, Debug)]
#[command(name = "dynsym", version, about = "Entanglement as extremal uncertainty of basic observables", after_help = FORMATS_HELP)]
pub struct Cli {
    /// Seed for every stochastic step (optimizer restarts).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Residual threshold for the complete-entanglement flag.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,

    /// Optimizer restarts (default 32 for variance, 64 for pentagrams).
    #[arg(long, global = true)]
    pub restarts: Option<usize>,

    /// Output format; JSON by default, CSV by default for `sweep`.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Expectations, variances, total variance and measure of a state.
    Analyze {
        file: PathBuf,
        /// su3, su2-spin1 or pauli-1..4. Defaults to su2-spin1 for a single
        /// spin 1 and pauli-n for n qubits.
        #[arg(long)]
        basis: Option<String>,
    },
    /// Search for a state of maximal total variance.
    MaximizeVariance {
        #[arg(long)]
        basis: String,
    },
    /// Pentagram test on a spin-1 state: regular, explicit, or optimized.
    Pentagram {
        file: PathBuf,
        /// Use the regular pentagram around --axis.
        #[arg(long, conflicts_with = "pentagram")]
        regular: bool,
        /// Axis as x,y,z.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.0, 0.0, 1.0])]
        axis: Vec<f64>,
        /// Five 3-vectors as JSON, e.g. '[[1,0,0],[0,1,0],...]', or @path.
        #[arg(long)]
        pentagram: Option<String>,
    },
    /// 3-tangle and pair concurrences of a three-qubit pure state.
    Tangle { file: PathBuf },
    /// Concurrence of a spin-1 or two-qubit state, pure or mixed.
    Concurrence { file: PathBuf },
    /// Write a named state as a state or density file.
    Generate {
        #[command(subcommand)]
        family: Family,
        #[arg(long, global = true)]
        label: Option<String>,
    },
    /// Tabulate analytic and computed values along a state family.
    Sweep(SweepArgs),
    /// Run the reference checks and print PASS/FAIL per row.
    Repro,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Family {
    /// Spin-1 coherent state with displacement alpha.
    Coherent {
        #[arg(long, allow_hyphen_values = true)]
        alpha_abs: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        alpha_arg: f64,
    },
    /// Spin-1 squeezed state with parameter xi.
    Squeezed {
        #[arg(long, allow_hyphen_values = true)]
        xi_abs: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        xi_arg: f64,
    },
    Ghz,
    W,
    Bi,
    /// x|000> + sqrt(1-x²)|111>.
    GhzType {
        #[arg(long)]
        x: f64,
    },
    /// (x/3) I + (1-x)|0><0|.
    WernerQutrit {
        #[arg(long)]
        x: f64,
    },
    /// (x/4) I + (1-x)|Phi+><Phi+|.
    #[command(name = "werner-2q")]
    WernerTwoQubit {
        #[arg(long)]
        x: f64,
    },
    /// Atom and emitted photon, (g1|00> + g2|11>)/N.
    AtomField {
        #[arg(long, allow_hyphen_values = true)]
        g1: f64,
        #[arg(long, allow_hyphen_values = true)]
        g2: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepFamily {
    WernerQutrit,
    #[value(name = "werner-2q")]
    WernerTwoQubit,
    Squeezed,
    GhzType,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(value_enum)]
    pub family: SweepFamily,
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
    /// Number of grid points.
    #[arg(long, default_value_t = 11)]
    pub points: usize,
}
