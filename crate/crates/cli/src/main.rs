//! `symlie`: dimensions, orbit bases, commutant checks and the gradient
//! variance experiment from the command line.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "symlie", version, about = "Symmetry-restricted subalgebras of su(2^N)")]
struct Cli {
    #[command(flatten)]
    caps: Caps,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Caps {
    /// Largest group order that may be enumerated element by element.
    #[arg(long, global = true, default_value_t = symlie_core::DEFAULT_ORDER_CAP)]
    pub cap_order: u64,
    /// Largest number of words scanned when listing orbits.
    #[arg(long, global = true, default_value_t = symlie_core::DEFAULT_SPACE_CAP)]
    pub cap_space: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of the invariant subalgebra for a group such as `C:4` or `S:3xE:2`.
    ///
    /// With `--sweep A..B`, SPEC is a template where `*` stands for the sweep
    /// value (`S:*`, `C:*xE:3`), a bare family letter, or one of the presets
    /// `figure1` (all families and the unrestricted algebra) and `figure2`
    /// (`F_{N-k} x E_k` for k = 3, 5, 8).
    Dim {
        spec: String,
        /// Alphabet size k in the orbit count (4 for Pauli strings).
        #[arg(long, default_value_t = 4)]
        alphabet: u64,
        #[arg(long, value_name = "A..B")]
        sweep: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Orbit basis: one row per G-necklace of non-identity Pauli words.
    Orbits {
        spec: String,
        /// Print only the number of basis elements.
        #[arg(long)]
        count_only: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Commutant dimension by singular values, compared with the orbit count.
    ///
    /// TARGET is a group spec or `energy` (the Hamming-weight Hamiltonian,
    /// which needs `--qubits`).
    Oracle {
        target: String,
        #[arg(long)]
        qubits: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Dimensions of every family for N = 1..MAX with asymptotic ratio columns.
    Scaling {
        #[arg(long, default_value_t = 14)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Gradient variance experiment on graph-state classification.
    Variance(commands::VarianceArgs),
}

fn configure_threads() -> Result<(), String> {
    if let Ok(v) = std::env::var("SYMLIE_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| format!("SYMLIE_THREADS must be a positive integer, got {v:?}"))?;
        if n == 0 {
            return Err("SYMLIE_THREADS must be a positive integer".into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<String, String> {
    configure_threads()?;
    let caps = cli.caps;
    match cli.command {
        Command::Dim { spec, alphabet, sweep, format } => commands::dim(&spec, alphabet, sweep.as_deref(), format),
        Command::Orbits { spec, count_only, format } => commands::orbits(&spec, count_only, format, caps),
        Command::Oracle { target, qubits, format } => commands::oracle(&target, qubits, format, caps),
        Command::Scaling { max, format } => commands::scaling(max, format),
        Command::Variance(args) => commands::variance(&args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
