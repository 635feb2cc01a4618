//! Curls, interpolation exactness, idempotence and tangential continuity.

mod common;

use std::collections::HashMap;

use edgefem::dofmap::DofMap;
use edgefem::elements::LocalBasis;
use edgefem::geom::Vec3;
use edgefem::interpolation::{evaluate_in_simplex, interpolate, Field3, InterpolationPlan};
use edgefem::mesh::{generate_structured_mesh, local_facet, Mesh};
use num_complex::Complex64;
use proptest::prelude::*;

fn affine(x: Vec3) -> Field3 {
    let c = |v: f64| Complex64::new(v, 0.0);
    [
        c(1.0 + x[0] + 2.0 * x[1] + 3.0 * x[2]),
        c(-1.0 - x[0] - 2.0 * x[1] + 2.0 * x[2]),
        c(2.0 - 2.0 * x[0] + x[1] - 2.0 * x[2]),
    ]
}

fn central_curl(basis: &LocalBasis, x: Vec3, d: usize, h: f64) -> Vec<Vec3> {
    let n = basis.n_dofs();
    // partial[k][i] = ∂_k w_i
    let mut partial = vec![vec![[0.0; 3]; n]; 3];
    for k in 0..d {
        let (mut xp, mut xm) = (x, x);
        xp[k] += h;
        xm[k] -= h;
        let vp = basis.eval_point(xp).unwrap().0;
        let vm = basis.eval_point(xm).unwrap().0;
        for i in 0..n {
            for c in 0..3 {
                partial[k][i][c] = (vp[i][c] - vm[i][c]) / (2.0 * h);
            }
        }
    }
    (0..n)
        .map(|i| {
            [
                partial[1][i][2] - partial[2][i][1],
                partial[2][i][0] - partial[0][i][2],
                partial[0][i][1] - partial[1][i][0],
            ]
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn curl_matches_finite_differences(
        (pts, ids) in common::simplex(3),
        raw in prop::collection::vec(0.2f64..1.0, 4),
        r in 1usize..=3,
    ) {
        let basis = LocalBasis::new(&pts, &ids, r).unwrap();
        let x = common::interior_point(&pts, &raw);
        let (_, curls) = basis.eval_point(x).unwrap();
        let fd = central_curl(&basis, x, 3, 1e-5);
        let scale = curls.iter().flatten().fold(1.0f64, |a, b| a.max(b.abs()));
        for (c, f) in curls.iter().zip(&fd) {
            for k in 0..3 {
                prop_assert!((c[k] - f[k]).abs() < 1e-5 * scale);
            }
        }
    }

    #[test]
    fn planar_curl_matches_finite_differences(
        (pts, ids) in common::simplex(2),
        raw in prop::collection::vec(0.2f64..1.0, 3),
        r in 1usize..=4,
    ) {
        let basis = LocalBasis::new(&pts, &ids, r).unwrap();
        let x = common::interior_point(&pts, &raw);
        let (vals, curls) = basis.eval_point(x).unwrap();
        let fd = central_curl(&basis, x, 2, 1e-5);
        let scale = curls.iter().flatten().fold(1.0f64, |a, b| a.max(b.abs()));
        for i in 0..vals.len() {
            prop_assert_eq!(vals[i][2], 0.0);
            prop_assert_eq!(curls[i][0], 0.0);
            prop_assert_eq!(curls[i][1], 0.0);
            prop_assert!((curls[i][2] - fd[i][2]).abs() < 1e-5 * scale);
        }
    }

    #[test]
    fn interpolation_is_a_projection(
        (pts, ids) in common::simplex(3),
        coeffs in prop::collection::vec(-1.0f64..1.0, 45),
        r in 1usize..=3,
    ) {
        let basis = LocalBasis::new(&pts, &ids, r).unwrap();
        let plan = InterpolationPlan::from_basis(&basis, &pts);
        let n = basis.n_dofs();
        let c: Vec<Complex64> = coeffs[..n].iter().map(|&v| Complex64::new(v, -0.5 * v)).collect();
        let dofs: Vec<usize> = (0..n).collect();
        let field = |x: Vec3| evaluate_in_simplex(&basis, &dofs, &c, &basis.frame().lambda(x)).0;
        let again = plan.apply(field);
        for (a, b) in c.iter().zip(&again) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn affine_fields_are_reproduced(
        (pts, ids) in common::simplex(3),
        raw in prop::collection::vec(0.05f64..1.0, 4),
        r in 2usize..=3,
    ) {
        let basis = LocalBasis::new(&pts, &ids, r).unwrap();
        let plan = InterpolationPlan::from_basis(&basis, &pts);
        let c = plan.apply(affine);
        let dofs: Vec<usize> = (0..basis.n_dofs()).collect();
        let x = common::interior_point(&pts, &raw);
        let (eh, curl) = evaluate_in_simplex(&basis, &dofs, &c, &basis.frame().lambda(x));
        let e = affine(x);
        // curl of (f1, f2, f3) is (1 - 2, 3 + 2, -1 - 2)
        let exact_curl = [-1.0, 5.0, -3.0];
        for k in 0..3 {
            prop_assert!((eh[k] - e[k]).norm() < 1e-10);
            prop_assert!((curl[k].re - exact_curl[k]).abs() < 1e-9);
        }
    }
}

/// Shared facets of a mesh as `((s, f), (t, g))`.
fn interior_facets(mesh: &Mesh) -> Vec<((usize, usize), (usize, usize))> {
    let d = mesh.dim();
    let mut seen: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();
    let mut out = Vec::new();
    for s in 0..mesh.num_simplices() {
        for f in 0..=d {
            let mut key: Vec<usize> = local_facet(d, f).iter().map(|&l| mesh.simplex(s)[l]).collect();
            key.sort_unstable();
            if let Some(&other) = seen.get(&key) {
                out.push((other, (s, f)));
            } else {
                seen.insert(key, (s, f));
            }
        }
    }
    out
}

fn point_on_facet(mesh: &Mesh, s: usize, f: usize, w: &[f64]) -> Vec3 {
    let d = mesh.dim();
    let pts = mesh.simplex_points(s);
    let nodes = local_facet(d, f);
    let fp: Vec<Vec3> = nodes.iter().map(|&l| pts[l]).collect();
    common::interior_point(&fp, &w[..nodes.len()])
}

fn tangential_jump(mesh: &Mesh, dofmap: &DofMap, coeffs: &[Complex64]) -> f64 {
    let r = dofmap.degree();
    let mut worst: f64 = 0.0;
    for ((s, f), (t, _)) in interior_facets(mesh) {
        let bs = LocalBasis::new(&mesh.simplex_points(s), mesh.simplex(s), r).unwrap();
        let bt = LocalBasis::new(&mesh.simplex_points(t), mesh.simplex(t), r).unwrap();
        let g = bs.frame().gradients()[f];
        let gn = edgefem::geom::norm(g);
        let n = [g[0] / gn, g[1] / gn, g[2] / gn];
        for w in [[0.2, 0.3, 0.5], [0.6, 0.3, 0.1], [0.1, 0.1, 0.8]] {
            let x = point_on_facet(mesh, s, f, &w);
            let es = evaluate_in_simplex(&bs, dofmap.element_dofs(s), coeffs, &bs.frame().lambda(x)).0;
            let et = evaluate_in_simplex(&bt, dofmap.element_dofs(t), coeffs, &bt.frame().lambda(x)).0;
            let jump: Vec<Complex64> = (0..3).map(|k| es[k] - et[k]).collect();
            let dn = jump[0] * n[0] + jump[1] * n[1] + jump[2] * n[2];
            let tang: f64 = (0..3).map(|k| (jump[k] - dn * n[k]).norm_sqr()).sum::<f64>().sqrt();
            worst = worst.max(tang);
        }
    }
    worst
}

#[test]
fn tangential_traces_agree_across_shared_facets() {
    for (dim, div) in [(2, [3, 2, 0]), (3, [2, 2, 1])] {
        let ext = if dim == 2 { [1.0, 0.7, 0.0] } else { [1.0, 0.7, 0.4] };
        let mesh = generate_structured_mesh(dim, ext, div).unwrap();
        for r in 1..=3 {
            let dofmap = DofMap::new(&mesh, r).unwrap();
            let coeffs: Vec<Complex64> = (0..dofmap.n_dofs()).map(|i| Complex64::new(((i * 37) % 11) as f64 - 5.0, (i % 3) as f64)).collect();
            let jump = tangential_jump(&mesh, &dofmap, &coeffs);
            assert!(jump < 1e-10, "dim {dim} r {r}: jump {jump:e}");
        }
    }
}

#[test]
fn global_interpolation_reproduces_affine_field() {
    let mesh = generate_structured_mesh(3, [1.0, 0.8, 0.6], [2, 2, 2]).unwrap();
    for r in 2..=3 {
        let dofmap = DofMap::new(&mesh, r).unwrap();
        let c = interpolate(&mesh, &dofmap, affine).unwrap();
        for s in (0..mesh.num_simplices()).step_by(5) {
            let basis = LocalBasis::new(&mesh.simplex_points(s), mesh.simplex(s), r).unwrap();
            let lam = [0.1, 0.2, 0.3, 0.4];
            let x = edgefem::geom::barycentric_point(&mesh.simplex_points(s), &lam);
            let eh = evaluate_in_simplex(&basis, dofmap.element_dofs(s), &c, &lam).0;
            let e = affine(x);
            for k in 0..3 {
                assert!((eh[k] - e[k]).norm() < 1e-10);
            }
        }
    }
}
