use edgefem::elements::{assemble_vandermonde, build_generators, EntityKind};
use num_rational::BigRational;
use num_traits::{One, Zero};

#[path = "golden/vinv_tet_r2.rs"]
mod golden;

use golden::VINV_TET_R2;

#[test]
fn tetrahedron_degree_two_inverse_matches_reference_table() {
    let m = assemble_vandermonde(2, 3).unwrap();
    let ints = m.vinv_integers().expect("integral inverse");
    for i in 0..20 {
        assert_eq!(ints[i], VINV_TET_R2[i].to_vec(), "row {i}");
    }
}

#[test]
fn exact_inverse_is_exact() {
    for (r, d) in [(1, 2), (2, 2), (3, 2), (4, 2), (5, 2), (1, 3), (2, 3), (3, 3)] {
        let m = assemble_vandermonde(r, d).unwrap();
        let n = m.n();
        for i in 0..n {
            for j in 0..n {
                let mut s = BigRational::zero();
                for k in 0..n {
                    s += &m.v[i][k] * &m.vinv[k][j];
                }
                let e = if i == j { BigRational::one() } else { BigRational::zero() };
                assert_eq!(s, e, "r={r} d={d} ({i},{j})");
            }
        }
    }
}

#[test]
fn low_degree_inverses_are_integral() {
    for (r, d) in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (3, 3)] {
        let m = assemble_vandermonde(r, d).unwrap();
        assert!(m.vinv_integers().is_some(), "r={r} d={d}");
    }
}

#[test]
fn degree_two_tetrahedron_generator_layout() {
    let g = build_generators(2, 3).unwrap();
    assert_eq!(g.iter().filter(|g| g.kind == EntityKind::Edge).count(), 12);
    assert_eq!(g.iter().filter(|g| g.kind == EntityKind::Face).count(), 8);
    // first face generator: face opposite node 0, lambda of its largest node
    // times the edge between its two smaller nodes
    assert_eq!(g[12].edge, (1, 2));
    assert_eq!(g[12].multi_index.0, vec![0, 0, 0, 1]);
    assert_eq!(g[13].edge, (1, 3));
    assert_eq!(g[13].multi_index.0, vec![0, 0, 1, 0]);
}

#[test]
fn triangle_degree_two_has_six_edge_and_two_face_generators() {
    let g = build_generators(2, 2).unwrap();
    assert_eq!(g.len(), 8);
    assert_eq!(g.iter().filter(|g| g.kind == EntityKind::Face).count(), 2);
}
