//! Lossy planar waveguide: direct and ORAS-preconditioned solves compared
//! with the analytic plane wave.

use edgefem::assembly::solve_direct;
use edgefem::experiment::{build_problem, slice_maxima, ExperimentConfig};
use edgefem::krylov::{gmres, GmresOptions};
use edgefem::schwarz::SchwarzVariant;

fn main() -> edgefem::Result<()> {
    let config = ExperimentConfig {
        degree: 2,
        ..Default::default()
    };
    let problem = build_problem(&config)?;
    println!(
        "h = {:.3e}, {} dofs ({} free), γ = {:.3}",
        problem.mesh_size,
        problem.dofmap.n_dofs(),
        problem.dofmap.n_free(),
        problem.params.gamma()
    );

    let direct = solve_direct(&problem.system)?;
    println!("direct solve: relative L2 error {:.3e}", problem.l2_error(&direct)?);

    let m = problem.schwarz(2, 2, SchwarzVariant::Restricted)?;
    let (x, report) = gmres(&problem.system.matrix, &problem.system.rhs, Some(&m), &GmresOptions::default())?;
    println!("ORAS GMRES: {} iterations, converged {}", report.iterations, report.converged);

    let full = problem.dofmap.expand(&x);
    let xs: Vec<f64> = (0..6).map(|i| 0.004 + 0.0085 * i as f64).collect();
    for s in slice_maxima(&problem.mesh, &problem.dofmap, &full, &xs, [1, 8])? {
        println!("  x = {:.4}: max |Re E| = {:.3}, envelope {:.3}", s.x, s.magnitude, s.envelope);
    }
    Ok(())
}
