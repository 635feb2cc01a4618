//! Assembly of `A = K − γ²M + iηB` and of the port right-hand side.
//!
//! `K` is the curl-curl matrix, `M` the mass matrix and `B` the tangential
//! trace matrix `∫ (w_i×n)·(w_j×n)` on impedance facets. Dofs on the
//! metallic wall are removed from rows and columns.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dofmap::DofMap;
use crate::elements::LocalBasis;
use crate::error::{Error, Result};
use crate::geom::{self, Vec3};
use crate::interpolation::{evaluate_in_simplex, Field3};
use crate::mesh::{local_facet, BoundaryLabel, Mesh};
use crate::physics::{FieldFn, ImpedanceData, PhysicalParams};
use crate::quadrature::simplex_rule;
use crate::sparse::{CsrMatrix, SparseLu};

/// Dense curl-curl and mass matrices of one simplex, row-major.
#[derive(Debug, Clone)]
pub struct ElementMatrices {
    pub n: usize,
    pub stiffness: Vec<f64>,
    pub mass: Vec<f64>,
}

pub fn element_matrices(basis: &LocalBasis, measure: f64) -> ElementMatrices {
    let r = basis.reference().r;
    let d = basis.reference().d;
    let n = basis.n_dofs();
    let rule = simplex_rule(d, 2 * r);
    let mut stiffness = vec![0.0; n * n];
    let mut mass = vec![0.0; n * n];
    let mut v = vec![[0.0; 3]; n];
    let mut c = vec![[0.0; 3]; n];
    for (lam, &w) in rule.points.iter().zip(&rule.weights) {
        basis.eval_local(lam, &mut v, &mut c);
        let wm = w * measure;
        for i in 0..n {
            for j in i..n {
                let k = wm * geom::dot(c[i], c[j]);
                let m = wm * geom::dot(v[i], v[j]);
                stiffness[i * n + j] += k;
                mass[i * n + j] += m;
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            stiffness[i * n + j] = stiffness[j * n + i];
            mass[i * n + j] = mass[j * n + i];
        }
    }
    ElementMatrices { n, stiffness, mass }
}

/// Outward unit normal of local facet `f` (the facet opposite local node `f`).
pub fn facet_normal(basis: &LocalBasis, f: usize) -> Vec3 {
    let g = basis.frame().gradients()[f];
    geom::scale(g, -1.0 / geom::norm(g))
}

/// Quadrature on local facet `f`: barycentric coordinates in the simplex,
/// weights scaled by the facet measure.
fn facet_quadrature(points: &[Vec3], f: usize, degree: usize) -> Vec<(Vec<f64>, f64)> {
    let d = points.len() - 1;
    let nodes = local_facet(d, f);
    let fp: Vec<Vec3> = nodes.iter().map(|&l| points[l]).collect();
    let measure = geom::simplex_measure(&fp);
    let rule = simplex_rule(d - 1, degree);
    rule.points
        .iter()
        .zip(&rule.weights)
        .map(|(b, &w)| {
            let mut lam = vec![0.0; d + 1];
            for (&l, &bv) in nodes.iter().zip(b) {
                lam[l] = bv;
            }
            (lam, w * measure)
        })
        .collect()
}

/// `B_ij = ∫_F (w_i×n)·(w_j×n)` on local facet `f`, row-major.
pub fn facet_matrix(basis: &LocalBasis, points: &[Vec3], f: usize) -> Vec<f64> {
    let r = basis.reference().r;
    let n = basis.n_dofs();
    let normal = facet_normal(basis, f);
    let mut b = vec![0.0; n * n];
    let mut v = vec![[0.0; 3]; n];
    let mut c = vec![[0.0; 3]; n];
    for (lam, w) in facet_quadrature(points, f, 2 * r) {
        basis.eval_local(&lam, &mut v, &mut c);
        let t: Vec<Vec3> = v.iter().map(|&vi| geom::sub(vi, geom::scale(normal, geom::dot(vi, normal)))).collect();
        for i in 0..n {
            for j in 0..n {
                b[i * n + j] += w * geom::dot(t[i], t[j]);
            }
        }
    }
    b
}

/// `b_i = ∫_F g_t·w_i` on local facet `f`.
pub fn facet_load(basis: &LocalBasis, points: &[Vec3], f: usize, g: &FieldFn) -> Vec<Complex64> {
    let r = basis.reference().r;
    let n = basis.n_dofs();
    let normal = facet_normal(basis, f);
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let mut v = vec![[0.0; 3]; n];
    let mut c = vec![[0.0; 3]; n];
    for (lam, w) in facet_quadrature(points, f, 2 * r + 2) {
        basis.eval_local(&lam, &mut v, &mut c);
        let x = geom::barycentric_point(points, &lam);
        let gx = g(x);
        for i in 0..n {
            let t = geom::sub(v[i], geom::scale(normal, geom::dot(v[i], normal)));
            out[i] += (gx[0] * t[0] + gx[1] * t[1] + gx[2] * t[2]) * w;
        }
    }
    out
}

/// Impedance condition on one boundary or interface facet.
#[derive(Clone)]
pub struct ImpedanceFacet {
    pub simplex: usize,
    pub local_facet: usize,
    pub eta: f64,
    pub data: Option<FieldFn>,
}

impl std::fmt::Debug for ImpedanceFacet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ImpedanceFacet")
            .field("simplex", &self.simplex)
            .field("local_facet", &self.local_facet)
            .field("eta", &self.eta)
            .finish()
    }
}

/// Impedance facets of the input and output ports.
pub fn port_facets(mesh: &Mesh, data: &ImpedanceData) -> Vec<ImpedanceFacet> {
    let mut out = Vec::new();
    for (k, facet) in mesh.boundary().iter().enumerate() {
        let g = match facet.label {
            BoundaryLabel::In => &data.g_in,
            BoundaryLabel::Out => &data.g_out,
            BoundaryLabel::Wall => continue,
        };
        let (s, f) = mesh.facet_owner(k);
        out.push(ImpedanceFacet {
            simplex: s,
            local_facet: f,
            eta: data.eta,
            data: g.clone(),
        });
    }
    out
}

/// Assemble `K − γ²M` over `elements` plus `iη B` over `facets`, keeping
/// global dofs for which `index` returns a row.
pub fn assemble_matrix<F>(
    mesh: &Mesh,
    dofmap: &DofMap,
    gamma_sq: Complex64,
    elements: &[usize],
    facets: &[ImpedanceFacet],
    index: F,
    n: usize,
) -> Result<CsrMatrix>
where
    F: Fn(usize) -> Option<usize> + Sync,
{
    let r = dofmap.degree();
    let element_part: Vec<Vec<(usize, usize, Complex64)>> = elements
        .par_iter()
        .map(|&s| -> Result<Vec<(usize, usize, Complex64)>> {
            let pts = mesh.simplex_points(s);
            let basis = LocalBasis::new(&pts, mesh.simplex(s), r)?;
            let em = element_matrices(&basis, basis.frame().measure());
            let rows: Vec<Option<usize>> = dofmap.element_dofs(s).iter().map(|&g| index(g)).collect();
            let mut t = Vec::with_capacity(em.n * em.n);
            for i in 0..em.n {
                let Some(ri) = rows[i] else { continue };
                for j in 0..em.n {
                    let Some(rj) = rows[j] else { continue };
                    let v = Complex64::new(em.stiffness[i * em.n + j], 0.0) - gamma_sq * em.mass[i * em.n + j];
                    t.push((ri, rj, v));
                }
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    let facet_part: Vec<Vec<(usize, usize, Complex64)>> = facets
        .par_iter()
        .map(|fc| -> Result<Vec<(usize, usize, Complex64)>> {
            let pts = mesh.simplex_points(fc.simplex);
            let basis = LocalBasis::new(&pts, mesh.simplex(fc.simplex), r)?;
            let b = facet_matrix(&basis, &pts, fc.local_facet);
            let nl = basis.n_dofs();
            let rows: Vec<Option<usize>> = dofmap.element_dofs(fc.simplex).iter().map(|&g| index(g)).collect();
            let mut t = Vec::new();
            for i in 0..nl {
                let Some(ri) = rows[i] else { continue };
                for j in 0..nl {
                    let Some(rj) = rows[j] else { continue };
                    let v = b[i * nl + j];
                    if v != 0.0 {
                        t.push((ri, rj, Complex64::new(0.0, fc.eta * v)));
                    }
                }
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    let triplets: Vec<(usize, usize, Complex64)> = element_part.into_iter().chain(facet_part).flatten().collect();
    CsrMatrix::from_triplets(n, n, &triplets)
}

/// Right-hand side from the facet data `g`.
pub fn assemble_load<F>(mesh: &Mesh, dofmap: &DofMap, facets: &[ImpedanceFacet], index: F, n: usize) -> Result<Vec<Complex64>>
where
    F: Fn(usize) -> Option<usize>,
{
    let r = dofmap.degree();
    let mut b = vec![Complex64::new(0.0, 0.0); n];
    for fc in facets {
        let Some(g) = &fc.data else { continue };
        let pts = mesh.simplex_points(fc.simplex);
        let basis = LocalBasis::new(&pts, mesh.simplex(fc.simplex), r)?;
        let local = facet_load(&basis, &pts, fc.local_facet, g);
        for (i, &gd) in dofmap.element_dofs(fc.simplex).iter().enumerate() {
            if let Some(row) = index(gd) {
                b[row] += local[i];
            }
        }
    }
    Ok(b)
}

/// Linear system over the free dofs.
#[derive(Debug, Clone)]
pub struct ComplexSparseSystem {
    pub matrix: CsrMatrix,
    pub rhs: Vec<Complex64>,
}

impl ComplexSparseSystem {
    pub fn n(&self) -> usize {
        self.rhs.len()
    }
}

/// Assemble the global system for the waveguide problem.
pub fn assemble(mesh: &Mesh, dofmap: &DofMap, params: &PhysicalParams, data: &ImpedanceData) -> Result<ComplexSparseSystem> {
    params.validate()?;
    if mesh.dim() != dofmap.dim() {
        return Err(Error::DimensionMismatch {
            expected: mesh.dim(),
            got: dofmap.dim(),
        });
    }
    let facets = port_facets(mesh, data);
    if !mesh.boundary().iter().any(|b| b.label == BoundaryLabel::In) {
        return Err(Error::Boundary("mesh has no input port facets".into()));
    }
    let elements: Vec<usize> = (0..mesh.num_simplices()).collect();
    let gamma = params.gamma();
    let n = dofmap.n_free();
    let matrix = assemble_matrix(mesh, dofmap, gamma * gamma, &elements, &facets, |g| dofmap.free_index(g), n)?;
    let rhs = assemble_load(mesh, dofmap, &facets, |g| dofmap.free_index(g), n)?;
    Ok(ComplexSparseSystem { matrix, rhs })
}

/// Solve with a sparse direct factorization.
pub fn solve_direct(system: &ComplexSparseSystem) -> Result<Vec<Complex64>> {
    SparseLu::new(&system.matrix)?.solve(&system.rhs)
}

/// `√(∫|E_h − E|² / ∫|E|²)` with element quadrature exact to degree `2r+2`.
pub fn l2_relative_error<F>(mesh: &Mesh, dofmap: &DofMap, coeffs: &[Complex64], reference: F) -> Result<f64>
where
    F: Fn(Vec3) -> Field3 + Sync,
{
    if coeffs.len() != dofmap.n_dofs() {
        return Err(Error::DimensionMismatch {
            expected: dofmap.n_dofs(),
            got: coeffs.len(),
        });
    }
    let r = dofmap.degree();
    let rule = simplex_rule(mesh.dim(), 2 * r + 2);
    let (num, den) = (0..mesh.num_simplices())
        .into_par_iter()
        .map(|s| -> Result<(f64, f64)> {
            let pts = mesh.simplex_points(s);
            let basis = LocalBasis::new(&pts, mesh.simplex(s), r)?;
            let measure = basis.frame().measure();
            let mut num = 0.0;
            let mut den = 0.0;
            for (lam, &w) in rule.points.iter().zip(&rule.weights) {
                let x = geom::barycentric_point(&pts, lam);
                let (eh, _) = evaluate_in_simplex(&basis, dofmap.element_dofs(s), coeffs, lam);
                let e = reference(x);
                for k in 0..3 {
                    num += w * measure * (eh[k] - e[k]).norm_sqr();
                    den += w * measure * e[k].norm_sqr();
                }
            }
            Ok((num, den))
        })
        .try_reduce(|| (0.0, 0.0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
    if den == 0.0 {
        return Err(Error::ZeroNormReference);
    }
    Ok((num / den).sqrt())
}
