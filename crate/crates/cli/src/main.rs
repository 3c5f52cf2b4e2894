use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lcilift::lattice::DEFAULT_OVERLATTICE_BOUND;
use lcilift_cli::{commands, Format};

/// Lattice invariants and lci smoothing liftings of simple elliptic and cusp
/// singularities.
///
/// Cycle entries are positive integers d_i meaning self-intersection -d_i,
/// so `--cycle 3,3` is the cusp [-3,-3].
#[derive(Parser)]
#[command(name = "lcilift", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the simple elliptic singularity of degree d.
    Elliptic {
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
    },
    /// Classify a cusp given by its cycle, e.g. `--cycle 3,3`.
    Cusp {
        #[arg(long, allow_hyphen_values = true)]
        cycle: String,
    },
    /// Print the dual cusp cycle.
    Dual {
        #[arg(long, allow_hyphen_values = true)]
        cycle: String,
    },
    /// Check a golden corpus file (the built-in corpus when no path is given).
    Corpus { path: Option<PathBuf> },
    /// List the overlattices of a quadratic lattice.
    Overlattices {
        /// Gram matrix, row-major, rows separated by `;`, e.g. "-2,1;1,-2".
        #[arg(long, allow_hyphen_values = true)]
        gram: String,
        /// Characteristic form K, e.g. "0,0".
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        /// Largest |det| for which overlattices are enumerated.
        #[arg(long, default_value_t = DEFAULT_OVERLATTICE_BOUND)]
        max_det: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Elliptic { degree } => commands::elliptic(*degree, cli.format),
        Command::Cusp { cycle } => commands::cusp(cycle, cli.format),
        Command::Dual { cycle } => commands::dual(cycle, cli.format),
        Command::Corpus { path } => commands::corpus(path.as_deref(), cli.format),
        Command::Overlattices { gram, k, max_det } => commands::overlattices(gram, k, *max_det, cli.format),
    };
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
