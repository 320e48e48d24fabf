use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use symtaper::fermion::MappingKind;
use symtaper::pipeline::{self, RunConfig};
use symtaper::Error;

#[derive(Parser)]
#[command(
    name = "symtaper",
    about = "Reduce qubit counts of molecular Hamiltonians via Z2 and point-group symmetries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// FCIDUMP integral file
    #[arg(long)]
    fcidump: PathBuf,

    /// Point-group symmetry file (JSON, spatial-orbital signed permutations)
    #[arg(long)]
    symmetries: Option<PathBuf>,

    /// Fermion-to-qubit mapping: jw or parity
    #[arg(long, default_value = "jw")]
    mapping: String,

    /// Disable the automatic kernel-based Z2 symmetry search
    #[arg(long)]
    no_auto_z2: bool,

    /// Exhaustively scan all symmetry sectors instead of selecting one
    #[arg(long)]
    sector_scan: bool,

    /// Output path for the reduced Hamiltonian (Pauli-sum text format)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Seed for the iterative eigensolver start vector
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Max-abs tolerance for the tensor invariance check
    #[arg(long)]
    tol_invariance: Option<f64>,

    /// Coefficient drop tolerance for Pauli sums
    #[arg(long)]
    tol_drop: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Report Z2 kernel symmetries and point-group-derived Pauli-Z strings
    Symmetries(CommonArgs),
    /// Run the full tapering pipeline and write the reduced Hamiltonian
    Taper(CommonArgs),
    /// Recompute full vs tapered minimum eigenvalues and compare
    Verify(CommonArgs),
}

fn build_config(args: &CommonArgs) -> Result<RunConfig, Error> {
    let mut cfg = RunConfig::new(&args.fcidump);
    cfg.symmetries = args.symmetries.clone();
    cfg.mapping = args.mapping.parse::<MappingKind>()?;
    cfg.auto_z2 = !args.no_auto_z2;
    cfg.sector_scan = args.sector_scan;
    cfg.out = args.out.clone();
    cfg.seed = args.seed;
    if let Some(t) = args.tol_invariance {
        cfg.tol_invariance = t;
    }
    if let Some(t) = args.tol_drop {
        cfg.tol_drop = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run() -> Result<i32, Error> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Symmetries(args) => {
            let cfg = build_config(args)?;
            print!("{}", pipeline::run_symmetries(&cfg)?);
            Ok(0)
        }
        Command::Taper(args) => {
            let cfg = build_config(args)?;
            let (report, artifacts) = pipeline::run_taper(&cfg)?;
            print!("{report}");
            if let Some(out) = &cfg.out {
                std::fs::write(out, artifacts.reduced.to_text())?;
                println!("reduced hamiltonian written to {}", out.display());
            }
            Ok(0)
        }
        Command::Verify(args) => {
            let cfg = build_config(args)?;
            let outcome = pipeline::run_verify(&cfg)?;
            print!("{}", outcome.report);
            Ok(if outcome.passed { 0 } else { 5 })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
