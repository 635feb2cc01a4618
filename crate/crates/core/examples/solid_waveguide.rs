//! Rectangular waveguide driven by its fundamental transverse electric mode.
//!
//! Runs on a mesh twice as coarse as the frequency rule to stay quick.

use edgefem::experiment::{build_problem, emit_field_slices, slice_maxima, write_field_samples, ExperimentConfig, Frequency, PlaneSpec};
use edgefem::krylov::{gmres, GmresOptions};
use edgefem::physics::{OMEGA_BETA, SOLID_EXTENTS};
use edgefem::schwarz::SchwarzVariant;

fn main() -> edgefem::Result<()> {
    for sigma in [0.0, 0.15] {
        let config = ExperimentConfig {
            dim: 3,
            degree: 0,
            omega: Frequency::Explicit(OMEGA_BETA),
            sigma,
            mesh_scale: 2.0,
            ..Default::default()
        };
        let problem = build_problem(&config)?;
        let m = problem.schwarz(2, 2, SchwarzVariant::Restricted)?;
        let (x, report) = gmres(&problem.system.matrix, &problem.system.rhs, Some(&m), &GmresOptions::default())?;
        println!(
            "σ = {sigma}: {} free dofs, ORAS GMRES {} iterations",
            problem.dofmap.n_free(),
            report.iterations
        );
        if problem.reference_is_exact {
            let direct = edgefem::assembly::solve_direct(&problem.system)?;
            println!("  relative L2 error of the direct solution {:.3e}", problem.l2_error(&direct)?);
        }
        let full = problem.dofmap.expand(&x);
        let xs: Vec<f64> = (1..=5).map(|i| SOLID_EXTENTS[0] * i as f64 / 6.0).collect();
        for s in slice_maxima(&problem.mesh, &problem.dofmap, &full, &xs, [6, 12])? {
            println!("  x = {:.4}: envelope {:.4e}", s.x, s.envelope);
        }
        let plane = PlaneSpec {
            axis: 2,
            value: 0.5 * SOLID_EXTENTS[2],
            resolution: [200, 4],
        };
        let samples = emit_field_slices(&problem.mesh, &problem.dofmap, &full, &plane)?;
        let path = std::env::temp_dir().join(format!("solid_waveguide_sigma{sigma}.csv"));
        write_field_samples(&path, &samples)?;
        println!("  wrote {} samples to {}", samples.len(), path.display());
    }
    Ok(())
}
