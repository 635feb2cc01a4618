//! Algebraic properties of the assembled waveguide system.

use edgefem::assembly::{assemble, element_matrices};
use edgefem::dofmap::DofMap;
use edgefem::elements::LocalBasis;
use edgefem::interpolation::{Field3, InterpolationPlan};
use edgefem::mesh::{generate_structured_mesh, BoundaryLabel};
use edgefem::physics::{PhysicalParams, ReferenceSolution, OMEGA_2};
use num_complex::Complex64;
use proptest::prelude::*;

fn gradient_field(x: [f64; 3]) -> Field3 {
    // ∇(x² y + y z + 3 z²)
    let c = |v: f64| Complex64::new(v, 0.0);
    [c(2.0 * x[0] * x[1]), c(x[0] * x[0] + x[2]), c(x[1] + 6.0 * x[2])]
}

fn linear_gradient(_: [f64; 3]) -> Field3 {
    let c = |v: f64| Complex64::new(v, 0.0);
    [c(1.0), c(-2.0), c(0.5)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn system_is_complex_symmetric(sigma in 0.0f64..1.0, scale in 0.8f64..1.2, nx in 4usize..12) {
        let mesh = generate_structured_mesh(2, [0.02, 0.00254, 0.0], [nx, 2, 0]).unwrap();
        let p = PhysicalParams::waveguide(OMEGA_2 * scale, sigma).unwrap();
        let data = ReferenceSolution::plane_wave(&p).impedance_data();
        let dm = DofMap::new(&mesh, 2).unwrap();
        let sys = assemble(&mesh, &dm, &p, &data).unwrap();
        prop_assert!(sys.matrix.symmetry_defect() < 1e-12);
        prop_assert_eq!(sys.matrix.n_rows(), dm.n_free());
    }

    #[test]
    fn gradients_lie_in_the_curl_kernel(
        coords in prop::collection::vec(-1.0f64..1.0, 12),
        r in 1usize..=3,
    ) {
        let pts: Vec<[f64; 3]> = coords.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
        prop_assume!(edgefem::geom::simplex_measure(&pts) > 0.02);
        let basis = LocalBasis::new(&pts, &[3, 0, 2, 1], r).unwrap();
        let plan = InterpolationPlan::from_basis(&basis, &pts);
        let c = if r == 1 { plan.apply(linear_gradient) } else { plan.apply(gradient_field) };
        let em = element_matrices(&basis, basis.frame().measure());
        let n = em.n;
        let norm: f64 = c.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let kmax = em.stiffness.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        for i in 0..n {
            let row: Complex64 = (0..n).map(|j| c[j] * em.stiffness[i * n + j]).sum();
            prop_assert!(row.norm() < 1e-10 * kmax * norm.max(1.0));
        }
    }
}

#[test]
fn load_vanishes_away_from_the_ports() {
    let mesh = generate_structured_mesh(2, [0.02, 0.00254, 0.0], [10, 2, 0]).unwrap();
    let p = PhysicalParams::waveguide(OMEGA_2, 0.15).unwrap();
    let data = ReferenceSolution::plane_wave(&p).impedance_data();
    let dm = DofMap::new(&mesh, 2).unwrap();
    let sys = assemble(&mesh, &dm, &p, &data).unwrap();
    let mut port_dofs = std::collections::HashSet::new();
    for (k, f) in mesh.boundary().iter().enumerate() {
        if f.label != BoundaryLabel::Wall {
            let (s, _) = mesh.facet_owner(k);
            port_dofs.extend(dm.element_dofs(s).iter().copied());
        }
    }
    for (i, &g) in dm.free_dofs().iter().enumerate() {
        if !port_dofs.contains(&g) {
            assert_eq!(sys.rhs[i], Complex64::new(0.0, 0.0));
        }
    }
    assert!(sys.rhs.iter().any(|v| v.norm() > 0.0));
}

#[test]
fn wall_dofs_are_eliminated() {
    let mesh = generate_structured_mesh(3, [0.02, 0.005, 0.01], [4, 1, 2]).unwrap();
    let dm = DofMap::new(&mesh, 1).unwrap();
    for (k, f) in mesh.boundary().iter().enumerate() {
        if f.label == BoundaryLabel::Wall {
            let (s, lf) = mesh.facet_owner(k);
            let facet_nodes = edgefem::mesh::local_facet(3, lf);
            for (le, &(a, b)) in edgefem::mesh::local_edges(3).iter().enumerate() {
                if facet_nodes.contains(&a) && facet_nodes.contains(&b) {
                    let g = dm.element_dofs(s)[le];
                    assert!(dm.is_constrained(g));
                    assert!(dm.free_index(g).is_none());
                }
            }
        }
    }
}
