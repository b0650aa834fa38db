//! `ncgabor` — build and verify group atlases, run Gabor analyses and the
//! Heisenberg / SL(2,R) studies. Exit status: 0 pass, 1 check failure,
//! 2 usage or I/O error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "ncgabor", version, about = "Gabor transforms on non-abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the catalog groups with their dual dimensions.
    Catalog {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Atlas, Fourier and Gabor identity suites on seeded random signals.
    Verify(VerifyArgs),
    /// Gabor transform of a signal: field JSON plus spectrogram CSV.
    Gabor(GaborArgs),
    /// Invert a stored Gabor field with a synthesis window.
    Reconstruct(ReconstructArgs),
    /// Plancherel refinement ladder (and optional weak reconstruction).
    Heisenberg(HeisenbergArgs),
    /// SL(2,R) Plancherel densities and principal/complementary defect ladders.
    Sl2(Sl2Args),
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    /// Group name (`Z6`, `D4`, `H3`, `Q8`) or family (`Z`, `D`, `H`).
    #[arg(long)]
    pub group: String,
    /// Prime modulus for the `H` family.
    #[arg(long)]
    pub q: Option<usize>,
    /// Order parameter for the `Z` and `D` families.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random instances per suite.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Output directory (receives `verify.json`).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GaborArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long)]
    pub signal: PathBuf,
    #[arg(long)]
    pub window: PathBuf,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Output directory (`field.json`, `spectrogram.csv`, `gabor.json`).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct ReconstructArgs {
    /// Gabor field written by `gabor`.
    #[arg(long)]
    pub field: PathBuf,
    /// Analysis window ψ used to build the field.
    #[arg(long)]
    pub window: PathBuf,
    /// Synthesis window φ; defaults to ψ.
    #[arg(long)]
    pub window2: Option<PathBuf>,
    /// Original signal, for error statistics.
    #[arg(long)]
    pub signal: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Output directory (`reconstructed.json`, `reconstruct.json`).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct HeisenbergArgs {
    /// TOML grid config; flags below override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub grid_box: Option<f64>,
    #[arg(long)]
    pub grid_n: Option<usize>,
    #[arg(long)]
    pub grid_m: Option<usize>,
    #[arg(long)]
    pub grid_x: Option<f64>,
    #[arg(long)]
    pub lambda_max: Option<f64>,
    #[arg(long)]
    pub lambda_count: Option<usize>,
    #[arg(long)]
    pub lambda_floor: Option<f64>,
    #[arg(long, default_value_t = 3)]
    pub rungs: usize,
    /// Allowed Plancherel defect at the top rung.
    #[arg(long, default_value_t = 0.10)]
    pub tol: f64,
    /// Also run the weak reconstruction on the second rung (allowed |ratio − 1| ≤ 0.15).
    #[arg(long)]
    pub weak: bool,
    /// Output directory (`heisenberg.json`, `spectrum.csv`).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct Sl2Args {
    /// TOML study config; flags below override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Principal-series parameter.
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Largest `t` in the density table.
    #[arg(long, default_value_t = 5.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 21)]
    pub t_count: usize,
    /// Output directory (`density.csv`, `sl2.json`).
    #[arg(long)]
    pub out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Catalog { out } => commands::catalog(out.as_deref()),
        Command::Verify(a) => commands::verify(&a),
        Command::Gabor(a) => commands::gabor(&a),
        Command::Reconstruct(a) => commands::reconstruct(&a),
        Command::Heisenberg(a) => commands::heisenberg(&a),
        Command::Sl2(a) => commands::sl2(&a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", report::error_record(&e));
            ExitCode::from(2)
        }
    }
}
