//! Applying each dof by quadrature to each dual basis function gives the
//! identity on arbitrary simplices.

mod common;

use edgefem::elements::LocalBasis;
use edgefem::interpolation::InterpolationPlan;
use proptest::prelude::*;

fn duality_defect(pts: &[[f64; 3]], global: &[usize], r: usize) -> f64 {
    let basis = LocalBasis::new(pts, global, r).unwrap();
    let plan = InterpolationPlan::from_basis(&basis, pts);
    let n = basis.n_dofs();
    let values: Vec<Vec<[f64; 3]>> = plan.points.iter().map(|&x| basis.eval_point(x).unwrap().0).collect();
    let mut m = vec![vec![0.0; n]; n];
    for t in &plan.terms {
        for j in 0..n {
            m[t.dof][j] += t.alpha * values[t.point][j][t.component];
        }
    }
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((m[i][j] - target).abs());
        }
    }
    worst
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dofs_dualize_basis_on_triangles((pts, ids) in common::simplex(2), r in 1usize..=3) {
        prop_assert!(duality_defect(&pts, &ids, r) < 1e-11);
    }

    #[test]
    fn dofs_dualize_basis_on_tetrahedra((pts, ids) in common::simplex(3), r in 1usize..=3) {
        prop_assert!(duality_defect(&pts, &ids, r) < 1e-11);
    }
}

#[test]
fn highest_planar_degrees_are_dual() {
    let pts = [[0.1, -0.3, 0.0], [0.9, 0.2, 0.0], [-0.2, 0.7, 0.0]];
    for r in 4..=5 {
        assert!(duality_defect(&pts, &[7, 3, 5], r) < 1e-10, "r = {r}");
    }
}
