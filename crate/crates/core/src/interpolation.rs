//! Interpolation onto the edge-element space by applying every dof to an
//! analytic field. The dof quadrature is factored into terms
//! `(dof, point, component, α)` so that `c_i = Σ α u_component(x_point)`.

use num_complex::Complex64;

use crate::dofmap::DofMap;
use crate::elements::{DofDescriptor, EntityKind, LocalBasis};
use crate::error::Result;
use crate::geom::{self, Vec3};
use crate::mesh::Mesh;
use crate::quadrature::{simplex_rule, QuadratureRule};

/// Complex vector field sample.
pub type Field3 = [Complex64; 3];

/// One factor of a dof evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationTerm {
    pub dof: usize,
    pub point: usize,
    pub component: usize,
    pub alpha: f64,
}

/// Quadrature rule used to apply a dof of the given kind for degree `r`.
pub fn dof_rule(kind: EntityKind, r: usize) -> QuadratureRule {
    match kind {
        EntityKind::Edge => simplex_rule(1, 2 * r - 1),
        EntityKind::Face => simplex_rule(2, 2 * r - 2),
        EntityKind::Volume => simplex_rule(3, 2 * r - 3),
    }
}

/// Factored dof evaluation for one simplex.
#[derive(Debug, Clone)]
pub struct InterpolationPlan {
    pub points: Vec<Vec3>,
    pub weights: Vec<f64>,
    pub terms: Vec<InterpolationTerm>,
    dim: usize,
    n_dofs: usize,
}

impl InterpolationPlan {
    /// `points`, `global` in local node order. Dofs are numbered in local
    /// storage order.
    pub fn build(points: &[Vec3], global: &[usize], r: usize) -> Result<Self> {
        let basis = LocalBasis::new(points, global, r)?;
        Ok(Self::from_basis(&basis, points))
    }

    pub fn from_basis(basis: &LocalBasis, vertices: &[Vec3]) -> Self {
        let r = basis.reference().r;
        let dim = basis.reference().d;
        let dofs = basis.local_dofs();
        let mut plan = InterpolationPlan {
            points: Vec::new(),
            weights: Vec::new(),
            terms: Vec::new(),
            dim,
            n_dofs: dofs.len(),
        };
        // point ranges per support, in order of first appearance
        let mut supports: Vec<(Vec<usize>, usize, usize)> = Vec::new();
        for (i, dof) in dofs.iter().enumerate() {
            let rule = dof_rule(dof.kind, r);
            let start = match supports.iter().find(|(s, _, _)| *s == dof.support) {
                Some(&(_, start, _)) => start,
                None => {
                    let start = plan.points.len();
                    let sv: Vec<Vec3> = dof.support.iter().map(|&l| vertices[l]).collect();
                    for (bary, &w) in rule.points.iter().zip(&rule.weights) {
                        plan.points.push(geom::barycentric_point(&sv, bary));
                        plan.weights.push(w);
                    }
                    supports.push((dof.support.clone(), start, rule.len()));
                    start
                }
            };
            let t = geom::sub(vertices[dof.tangent.1], vertices[dof.tangent.0]);
            for (p, (bary, &w)) in rule.points.iter().zip(&rule.weights).enumerate() {
                let q = weight_value(dof, bary);
                for j in 0..dim {
                    plan.terms.push(InterpolationTerm {
                        dof: i,
                        point: start + p,
                        component: j,
                        alpha: t[j] * w * q,
                    });
                }
            }
        }
        plan
    }

    /// Number of factored terms.
    pub fn n_ind(&self) -> usize {
        self.terms.len()
    }

    pub fn n_dofs(&self) -> usize {
        self.n_dofs
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Local dof coefficients of `field`.
    pub fn apply<F: Fn(Vec3) -> Field3>(&self, field: F) -> Vec<Complex64> {
        let values: Vec<Field3> = self.points.iter().map(|&x| field(x)).collect();
        let mut c = vec![Complex64::new(0.0, 0.0); self.n_dofs];
        for t in &self.terms {
            c[t.dof] += values[t.point][t.component] * t.alpha;
        }
        c
    }
}

fn weight_value(dof: &DofDescriptor, bary: &[f64]) -> f64 {
    dof.support
        .iter()
        .zip(bary)
        .map(|(&l, &b)| b.powi(dof.weight.0[l] as i32))
        .product()
}

/// Global dof vector of `field`; each shared entity is evaluated once, from
/// the first simplex that reaches it.
pub fn interpolate<F: Fn(Vec3) -> Field3>(mesh: &Mesh, dofmap: &DofMap, field: F) -> Result<Vec<Complex64>> {
    let r = dofmap.degree();
    let mut out = vec![Complex64::new(0.0, 0.0); dofmap.n_dofs()];
    let mut done = vec![false; dofmap.n_dofs()];
    for s in 0..mesh.num_simplices() {
        let dofs = dofmap.element_dofs(s);
        if dofs.iter().all(|&g| done[g]) {
            continue;
        }
        let plan = InterpolationPlan::build(&mesh.simplex_points(s), mesh.simplex(s), r)?;
        let c = plan.apply(&field);
        for (i, &g) in dofs.iter().enumerate() {
            if !done[g] {
                out[g] = c[i];
                done[g] = true;
            }
        }
    }
    Ok(out)
}

/// Value and curl of the discrete field with global coefficients `coeffs`
/// inside simplex `s`, at local barycentric coordinates `lam`.
pub fn evaluate_in_simplex(basis: &LocalBasis, dofs: &[usize], coeffs: &[Complex64], lam: &[f64]) -> (Field3, Field3) {
    let n = basis.n_dofs();
    let mut v = vec![[0.0; 3]; n];
    let mut c = vec![[0.0; 3]; n];
    basis.eval_local(lam, &mut v, &mut c);
    let zero = Complex64::new(0.0, 0.0);
    let mut val = [zero; 3];
    let mut curl = [zero; 3];
    for i in 0..n {
        let a = coeffs[dofs[i]];
        for k in 0..3 {
            val[k] += a * v[i][k];
            curl[k] += a * c[i][k];
        }
    }
    (val, curl)
}

/// Point evaluation of a discrete field; `None` if `x` lies outside the mesh.
pub fn evaluate_at(mesh: &Mesh, dofmap: &DofMap, coeffs: &[Complex64], x: Vec3) -> Result<Option<Field3>> {
    for s in 0..mesh.num_simplices() {
        let frame = mesh.frame(s)?;
        let lam = frame.lambda(x);
        if lam.iter().all(|&l| l >= -1e-12) {
            let basis = LocalBasis::new(&mesh.simplex_points(s), mesh.simplex(s), dofmap.degree())?;
            return Ok(Some(evaluate_in_simplex(&basis, dofmap.element_dofs(s), coeffs, &lam).0));
        }
    }
    Ok(None)
}

/// Lift a real field to complex samples.
pub fn real_field<F: Fn(Vec3) -> Vec3>(f: F) -> impl Fn(Vec3) -> Field3 {
    move |x| {
        let v = f(x);
        [Complex64::new(v[0], 0.0), Complex64::new(v[1], 0.0), Complex64::new(v[2], 0.0)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_tet() -> Vec<Vec3> {
        vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    }

    #[test]
    fn term_count_for_degree_two_tetrahedron() {
        let plan = InterpolationPlan::build(&unit_tet(), &[0, 1, 2, 3], 2).unwrap();
        assert_eq!(plan.n_ind(), 3 * 2 * 12 + 3 * 3 * 8);
    }

    #[test]
    fn edge_weight_integrates_to_one_half() {
        let plan = InterpolationPlan::build(&unit_tet(), &[0, 1, 2, 3], 2).unwrap();
        // dof 0: edge (0,1), weight λ_0; tangent (1,0,0)
        let s: f64 = plan.terms.iter().filter(|t| t.dof == 0 && t.component == 0).map(|t| t.alpha).sum();
        assert!((s - 0.5).abs() < 1e-14);
    }

    #[test]
    fn lowest_order_gives_circulation() {
        let pts = vec![[0.0, 0.0, 0.0], [2.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 3.0]];
        let plan = InterpolationPlan::build(&pts, &[0, 1, 2, 3], 1).unwrap();
        let c = plan.apply(real_field(|_| [1.0, 0.0, 0.0]));
        // edges (0,1),(0,2),(0,3),(1,2),(1,3),(2,3): x-extent of each
        let expect = [2.0, 0.0, 0.0, -2.0, -2.0, 0.0];
        for (a, e) in c.iter().zip(expect) {
            assert!((a.re - e).abs() < 1e-14 && a.im == 0.0);
        }
    }
}
