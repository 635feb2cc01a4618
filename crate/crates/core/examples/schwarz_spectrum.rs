//! Spectrum of the Schwarz-preconditioned planar operator for several overlaps.

use std::fs::File;

use edgefem::experiment::{build_problem, ExperimentConfig};
use edgefem::krylov::preconditioned_spectrum;
use edgefem::schwarz::{build_partition_of_unity, SchwarzVariant};

fn main() -> edgefem::Result<()> {
    let problem = build_problem(&ExperimentConfig::default())?;
    for overlap in [1, 2, 4] {
        let dec = problem.decomposition(2, overlap)?;
        let pou = build_partition_of_unity(&problem.mesh, &problem.dofmap, &dec)?;
        println!("overlap {overlap}h: partition of unity exact = {}", pou.is_exact_identity(&dec, problem.dofmap.n_free()));
        for variant in [SchwarzVariant::Restricted, SchwarzVariant::Additive] {
            let m = problem.schwarz(2, overlap, variant)?;
            let spec = preconditioned_spectrum(&problem.system.matrix, &m)?;
            println!(
                "  {variant:?}: max |λ-1| = {:.3e}, {} outside, {} on the unit circle",
                spec.max_distance, spec.n_outside, spec.n_on_boundary
            );
            let path = std::env::temp_dir().join(format!("spectrum_{variant:?}_{overlap}.csv").to_lowercase());
            spec.write_csv(File::create(path)?)?;
        }
    }
    Ok(())
}
