//! Dof counts of the frequency-rule meshes against the published tables.

use edgefem::dofmap::DofMap;
use edgefem::experiment::{waveguide_divisions, Frequency};
use edgefem::mesh::generate_structured_mesh;
use edgefem::physics::{OMEGA_BETA, PLANAR_EXTENTS, SOLID_EXTENTS};

fn count(dim: usize, omega: Frequency, r: usize) -> usize {
    let (_, div) = waveguide_divisions(dim, omega, 1.0).unwrap();
    let ext = if dim == 2 { [PLANAR_EXTENTS[0], PLANAR_EXTENTS[1], 0.0] } else { SOLID_EXTENTS };
    let mesh = generate_structured_mesh(dim, ext, div).unwrap();
    DofMap::new(&mesh, r).unwrap().n_dofs()
}

#[test]
fn planar_counts_per_degree() {
    let expected = [282, 884, 1806, 3048, 4610];
    for (k, &n) in expected.iter().enumerate() {
        assert_eq!(count(2, Frequency::Omega2, k + 1), n, "k = {k}");
    }
}

#[test]
fn planar_count_at_lowest_frequency() {
    assert_eq!(count(2, Frequency::Omega1, 3), 339);
}

#[test]
fn solid_counts_per_degree() {
    let expected = [62283, 324654, 930969];
    for (k, &n) in expected.iter().enumerate() {
        assert_eq!(count(3, Frequency::Explicit(OMEGA_BETA), k + 1), n, "k = {k}");
    }
}
