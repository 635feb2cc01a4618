//! Cross-section maxima of solved waveguide fields.

use edgefem::assembly::solve_direct;
use edgefem::experiment::{build_problem, emit_field_slices, slice_maxima, ExperimentConfig, Frequency, PlaneSpec};
use edgefem::physics::{OMEGA_BETA, SOLID_EXTENTS};

fn solid_slices(sigma: f64) -> Vec<f64> {
    let config = ExperimentConfig {
        dim: 3,
        degree: 0,
        omega: Frequency::Explicit(OMEGA_BETA),
        sigma,
        mesh_scale: 2.0,
        ..Default::default()
    };
    let p = build_problem(&config).unwrap();
    let full = p.dofmap.expand(&solve_direct(&p.system).unwrap());
    let xs: Vec<f64> = (1..=5).map(|i| SOLID_EXTENTS[0] * i as f64 / 6.0).collect();
    slice_maxima(&p.mesh, &p.dofmap, &full, &xs, [6, 12]).unwrap().iter().map(|s| s.envelope).collect()
}

#[test]
fn lossy_field_decays_along_the_guide() {
    let m = solid_slices(0.15);
    assert!(m.windows(2).all(|w| w[1] < w[0]), "{m:?}");
}

#[test]
fn lossless_mode_keeps_its_amplitude() {
    let m = solid_slices(0.0);
    let hi = m.iter().cloned().fold(0.0, f64::max);
    let lo = m.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!((hi - lo) / hi < 0.05, "{m:?}");
}

#[test]
fn plane_outside_the_domain_is_rejected() {
    let p = build_problem(&ExperimentConfig { degree: 0, ..Default::default() }).unwrap();
    let coeffs = vec![num_complex::Complex64::new(1.0, 0.0); p.dofmap.n_dofs()];
    for plane in [
        PlaneSpec { axis: 0, value: 1.0, resolution: [4, 1] },
        PlaneSpec { axis: 2, value: 0.0, resolution: [4, 1] },
    ] {
        assert!(emit_field_slices(&p.mesh, &p.dofmap, &coeffs, &plane).is_err());
    }
    let inside = PlaneSpec { axis: 0, value: 0.01, resolution: [4, 1] };
    assert_eq!(emit_field_slices(&p.mesh, &p.dofmap, &coeffs, &inside).unwrap().len(), 4);
}
