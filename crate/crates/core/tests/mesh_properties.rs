//! Structural invariants of generated meshes.

use std::collections::HashSet;

use edgefem::mesh::{generate_structured_mesh, BoundaryLabel, Mesh};
use proptest::prelude::*;

fn euler_characteristic(mesh: &Mesh) -> i64 {
    let v = mesh.num_nodes() as i64;
    let e = mesh.num_edges() as i64;
    let s = mesh.num_simplices() as i64;
    if mesh.dim() == 2 {
        v - e + s
    } else {
        v - e + mesh.num_faces() as i64 - s
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn planar_meshes_are_consistent(nx in 1usize..12, ny in 1usize..5, lx in 0.1f64..3.0, ly in 0.1f64..3.0) {
        let mesh = generate_structured_mesh(2, [lx, ly, 0.0], [nx, ny, 0]).unwrap();
        prop_assert_eq!(mesh.num_simplices(), 2 * nx * ny);
        prop_assert_eq!(euler_characteristic(&mesh), 1);
        prop_assert_eq!(mesh.boundary().len(), 2 * (nx + ny));
        let ports = mesh.boundary().iter().filter(|b| b.label != BoundaryLabel::Wall).count();
        prop_assert_eq!(ports, 2 * ny);
        check_common(&mesh)?;
    }

    #[test]
    fn solid_meshes_are_consistent(nx in 1usize..5, ny in 1usize..4, nz in 1usize..4) {
        let mesh = generate_structured_mesh(3, [1.0, 0.5, 0.8], [nx, ny, nz]).unwrap();
        prop_assert_eq!(mesh.num_simplices(), 6 * nx * ny * nz);
        prop_assert_eq!(euler_characteristic(&mesh), 1);
        prop_assert_eq!(mesh.boundary().len(), 4 * (nx * ny + ny * nz + nx * nz));
        check_common(&mesh)?;
    }
}

fn check_common(mesh: &Mesh) -> Result<(), TestCaseError> {
    let total: f64 = (0..mesh.num_simplices()).map(|s| mesh.simplex_measure(s)).sum();
    let mut ext = [0.0f64; 3];
    for p in mesh.nodes() {
        for k in 0..3 {
            ext[k] = ext[k].max(p[k]);
        }
    }
    let volume: f64 = ext[..mesh.dim()].iter().product();
    prop_assert!((total - volume).abs() < 1e-12 * volume);
    for e in mesh.edges() {
        prop_assert!(e[0] < e[1]);
    }
    for s in 0..mesh.num_simplices() {
        prop_assert!(mesh.simplex_measure(s) > 0.0);
        for k in 0..mesh.simplex_edges(s).len() {
            let sign = mesh.edge_orientation_sign(s, k).unwrap();
            prop_assert!(sign == 1 || sign == -1);
        }
    }
    let keys: HashSet<Vec<usize>> = mesh
        .boundary()
        .iter()
        .map(|b| {
            let mut k = b.nodes.clone();
            k.sort_unstable();
            k
        })
        .collect();
    prop_assert_eq!(keys.len(), mesh.boundary().len());

    let mut buf = Vec::new();
    mesh.write_text(&mut buf).unwrap();
    let back = Mesh::read_text(buf.as_slice()).unwrap();
    prop_assert_eq!(back.nodes(), mesh.nodes());
    prop_assert_eq!(back.simplices(), mesh.simplices());
    prop_assert_eq!(back.edges(), mesh.edges());
    prop_assert_eq!(back.boundary().len(), mesh.boundary().len());
    Ok(())
}

#[test]
fn mesh_file_round_trip_on_disk() {
    let mesh = generate_structured_mesh(3, [0.3, 0.2, 0.1], [3, 2, 1]).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("guide.mesh");
    mesh.write_text(std::fs::File::create(&path).unwrap()).unwrap();
    let back = Mesh::read_text(std::io::BufReader::new(std::fs::File::open(&path).unwrap())).unwrap();
    assert_eq!(back.faces(), mesh.faces());
    assert!(Mesh::read_text("3 1 0 0\n0.0 0.0\n".as_bytes()).is_err());
}
