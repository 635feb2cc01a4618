//! Interpolate a smooth field and watch the error fall with the degree.

use edgefem::dofmap::DofMap;
use edgefem::interpolation::{evaluate_at, interpolate, Field3};
use edgefem::mesh::generate_structured_mesh;
use num_complex::Complex64;

fn field(x: [f64; 3]) -> Field3 {
    let c = |v: f64| Complex64::new(v, 0.0);
    [c((2.0 * x[1]).sin()), c(x[0] * x[2] + 1.0), c((x[0] - x[1]).cos())]
}

fn main() -> edgefem::Result<()> {
    let mesh = generate_structured_mesh(3, [1.0, 1.0, 1.0], [2, 2, 2])?;
    let probes = [[0.13, 0.41, 0.77], [0.52, 0.18, 0.33], [0.91, 0.66, 0.08]];
    for r in 1..=3 {
        let dofmap = DofMap::new(&mesh, r)?;
        let coeffs = interpolate(&mesh, &dofmap, field)?;
        let mut err: f64 = 0.0;
        for p in probes {
            let eh = evaluate_at(&mesh, &dofmap, &coeffs, p)?.expect("probe inside the cube");
            let e = field(p);
            err = err.max((0..3).map(|k| (eh[k] - e[k]).norm()).fold(0.0, f64::max));
        }
        println!("r = {r}: {:>5} dofs, max pointwise error {err:.3e}", dofmap.n_dofs());
    }
    Ok(())
}
