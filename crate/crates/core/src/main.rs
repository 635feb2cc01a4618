use std::fs::File;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use edgefem::experiment::{append_csv, eigenvalue_path, preset, run_experiment, ExperimentConfig, Frequency, PreconditionerKind};
use edgefem::krylov::PreconditionSide;

/// Solve the waveguide problem with Schwarz-preconditioned GMRES and append
/// one CSV row per run.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Args {
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Polynomial index k (element degree k+1).
    #[arg(long, default_value_t = 2)]
    degree: usize,
    /// omega1 | omega2 | omega3 or a value in rad/s.
    #[arg(long, default_value = "omega2")]
    omega: Frequency,
    #[arg(long, default_value_t = 0.15)]
    sigma: f64,
    #[arg(long, default_value_t = 2)]
    nsub: usize,
    /// Total overlap in element layers.
    #[arg(long, default_value_t = 2)]
    overlap: usize,
    /// none | oras | oas
    #[arg(long, default_value = "oras")]
    precond: PreconditionerKind,
    /// Compute the spectrum of the preconditioned matrix.
    #[arg(long)]
    spectrum: bool,
    /// Also count unpreconditioned GMRES iterations.
    #[arg(long)]
    unpreconditioned: bool,
    /// Precondition from the left instead of the right.
    #[arg(long)]
    left: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value = "results.csv")]
    out: PathBuf,
    /// Run a sweep table1..table6 instead of a single configuration.
    #[arg(long)]
    preset: Option<String>,
}

fn run(args: Args) -> edgefem::Result<()> {
    let configs = match &args.preset {
        Some(name) => preset(name)?
            .into_iter()
            .map(|c| ExperimentConfig {
                seed: args.seed,
                tol: args.tol,
                unpreconditioned: args.unpreconditioned,
                ..c
            })
            .collect(),
        None => vec![ExperimentConfig {
            dim: args.dim,
            degree: args.degree,
            omega: args.omega,
            sigma: args.sigma,
            n_sub: args.nsub,
            overlap: args.overlap,
            precond: args.precond,
            spectrum: args.spectrum,
            unpreconditioned: args.unpreconditioned,
            seed: args.seed,
            tol: args.tol,
            side: if args.left { PreconditionSide::Left } else { PreconditionSide::Right },
            ..Default::default()
        }],
    };
    for config in &configs {
        let result = run_experiment(config)?;
        for w in &result.warnings {
            eprintln!("warning: {w}");
        }
        append_csv(&args.out, &result)?;
        if let Some(spec) = &result.spectrum {
            spec.write_csv(File::create(eigenvalue_path(&args.out, config))?)?;
        }
        println!("{}", result.csv_row());
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
