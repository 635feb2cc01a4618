//! One-level overlapping Schwarz preconditioners on strips along `x`.
//!
//! The mesh is cut into columns between consecutive distinct node `x`
//! coordinates. Each subdomain owns a contiguous block of at least two
//! columns (its core) and is extended by element layers into its neighbours.
//! A total overlap of `ℓ` layers gives `⌈ℓ/2⌉` layers to the left subdomain
//! and `⌊ℓ/2⌋` to the right one.
//!
//! Partition-of-unity weights are computed in exact rational arithmetic from
//! a cutoff `χ̃_s` sampled at dof-support barycentres (in column units):
//! `χ̃_s = 1` on the closed core; on a side extended by `L ≥ 2` layers it
//! ramps linearly to 0 over `L − 1` layers and stays 0 on the outermost
//! layer; with `L ≤ 1` it drops to 0 right after the core. Weights are then
//! normalized per dof, so `Σ_s R_sᵀ D_s R_s = I` holds exactly.

use std::collections::HashMap;
use std::io::Write;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::assembly::{assemble_matrix, ImpedanceFacet};
use crate::dofmap::{DofEntity, DofMap};
use crate::error::{Error, Result};
use crate::krylov::LinearOperator;
use crate::mesh::{local_facet, BoundaryLabel, Mesh};
use crate::physics::PhysicalParams;
use crate::sparse::{CsrMatrix, SparseLu};

pub type Rational = Ratio<i64>;

/// One strip subdomain.
#[derive(Debug, Clone)]
pub struct Subdomain {
    /// Simplices of the extended strip.
    pub elements: Vec<usize>,
    /// Free-dof indices touched by `elements`, increasing (the set `N_s`).
    pub dofs: Vec<usize>,
    /// Core column range `[lo, hi)`.
    pub core: (usize, usize),
    /// Layers added on the left and right of the core.
    pub extension: (usize, usize),
}

impl Subdomain {
    /// Extended column range `[lo, hi)`.
    pub fn columns(&self) -> (usize, usize) {
        (self.core.0 - self.extension.0, self.core.1 + self.extension.1)
    }
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub n_columns: usize,
    pub overlap: usize,
    pub subdomains: Vec<Subdomain>,
    /// Column coordinate of every mesh node.
    node_layer: Vec<usize>,
    pub warnings: Vec<String>,
}

/// Column index of every node, from the distinct node `x` values.
fn node_layers(mesh: &Mesh) -> Result<(Vec<usize>, usize)> {
    let layers = mesh.x_layers();
    if layers.len() < 2 {
        return Err(Error::Decomposition("mesh has no extent along x".into()));
    }
    let span = layers[layers.len() - 1] - layers[0];
    let tol = 1e-9 * span;
    let idx = mesh
        .nodes()
        .iter()
        .map(|p| {
            let k = layers.partition_point(|&l| l < p[0] - tol);
            debug_assert!((layers[k] - p[0]).abs() <= tol);
            k
        })
        .collect();
    Ok((idx, layers.len() - 1))
}

fn element_column(node_layer: &[usize], simplex: &[usize]) -> usize {
    let sum: usize = simplex.iter().map(|&n| node_layer[n]).sum();
    sum / simplex.len()
}

fn collect_dofs(dofmap: &DofMap, elements: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; dofmap.n_free()];
    for &s in elements {
        for &g in dofmap.element_dofs(s) {
            if let Some(f) = dofmap.free_index(g) {
                seen[f] = true;
            }
        }
    }
    (0..seen.len()).filter(|&f| seen[f]).collect()
}

/// Split `mesh` into `n_sub` strips with a total overlap of `overlap` layers.
pub fn decompose(mesh: &Mesh, dofmap: &DofMap, n_sub: usize, overlap: usize) -> Result<Decomposition> {
    if n_sub < 2 {
        return Err(Error::Decomposition(format!("need at least 2 subdomains, got {n_sub}")));
    }
    let (node_layer, n_columns) = node_layers(mesh)?;
    let bounds: Vec<usize> = (0..=n_sub).map(|s| s * n_columns / n_sub).collect();
    if bounds.windows(2).any(|w| w[1] - w[0] < 2) {
        return Err(Error::Decomposition(format!(
            "{n_columns} element layers cannot hold {n_sub} strips of at least 2 layers"
        )));
    }
    let left_share = overlap.div_ceil(2);
    let right_share = overlap / 2;
    let mut warnings = Vec::new();
    if overlap < 2 {
        warnings.push(format!(
            "overlap of {overlap} layer(s) leaves no room for a smooth cutoff; using a step partition of unity"
        ));
    }
    let columns: Vec<usize> = mesh.simplices().iter().map(|s| element_column(&node_layer, s)).collect();
    let mut subdomains = Vec::with_capacity(n_sub);
    for s in 0..n_sub {
        let core = (bounds[s], bounds[s + 1]);
        let ext_left = if s == 0 { 0 } else { right_share.min(core.0) };
        let ext_right = if s + 1 == n_sub { 0 } else { left_share.min(n_columns - core.1) };
        let (lo, hi) = (core.0 - ext_left, core.1 + ext_right);
        let elements: Vec<usize> = (0..mesh.num_simplices()).filter(|&e| (lo..hi).contains(&columns[e])).collect();
        let dofs = collect_dofs(dofmap, &elements);
        subdomains.push(Subdomain {
            elements,
            dofs,
            core,
            extension: (ext_left, ext_right),
        });
    }
    for w in &warnings {
        log::warn!("{w}");
    }
    Ok(Decomposition {
        n_columns,
        overlap,
        subdomains,
        node_layer,
        warnings,
    })
}

impl Decomposition {
    /// Trivial decomposition with one subdomain covering the mesh.
    pub fn single(mesh: &Mesh, dofmap: &DofMap) -> Result<Self> {
        let (node_layer, n_columns) = node_layers(mesh)?;
        let elements: Vec<usize> = (0..mesh.num_simplices()).collect();
        let dofs = collect_dofs(dofmap, &elements);
        Ok(Decomposition {
            n_columns,
            overlap: 0,
            subdomains: vec![Subdomain {
                elements,
                dofs,
                core: (0, n_columns),
                extension: (0, 0),
            }],
            node_layer,
            warnings: Vec::new(),
        })
    }

    pub fn n_sub(&self) -> usize {
        self.subdomains.len()
    }

    /// Column coordinate of the barycentre of the support of global dof `g`.
    pub fn dof_position(&self, mesh: &Mesh, dofmap: &DofMap, g: usize) -> Rational {
        let nodes: Vec<usize> = match dofmap.entity(g) {
            DofEntity::Edge(e) => mesh.edges()[e].to_vec(),
            DofEntity::Face(f) if mesh.dim() == 3 => mesh.faces()[f].to_vec(),
            DofEntity::Face(s) | DofEntity::Volume(s) => mesh.simplex(s).to_vec(),
        };
        let sum: usize = nodes.iter().map(|&n| self.node_layer[n]).sum();
        Rational::new(sum as i64, nodes.len() as i64)
    }

    /// Text dump: one line per simplex listing the subdomains containing it.
    pub fn write_text<W: Write>(&self, n_simplices: usize, mut w: W) -> Result<()> {
        let mut owners = vec![Vec::new(); n_simplices];
        for (s, sub) in self.subdomains.iter().enumerate() {
            for &e in &sub.elements {
                owners[e].push(s.to_string());
            }
        }
        for (e, o) in owners.iter().enumerate() {
            writeln!(w, "{e} {}", o.join(" "))?;
        }
        Ok(())
    }
}

fn cutoff(sub: &Subdomain, u: Rational) -> Rational {
    let one = Rational::from_integer(1);
    let zero = Rational::zero();
    let lo = Rational::from_integer(sub.core.0 as i64);
    let hi = Rational::from_integer(sub.core.1 as i64);
    let side = |dist: Rational, layers: usize| -> Rational {
        if layers < 2 {
            return zero;
        }
        let width = Rational::from_integer(layers as i64 - 1);
        if dist < width {
            one - dist / width
        } else {
            zero
        }
    };
    if u < lo {
        side(lo - u, sub.extension.0)
    } else if u > hi {
        side(u - hi, sub.extension.1)
    } else {
        one
    }
}

/// Diagonal partition-of-unity weights, one vector per subdomain aligned
/// with [`Subdomain::dofs`].
#[derive(Debug, Clone)]
pub struct PartitionOfUnity {
    pub weights: Vec<Vec<Rational>>,
}

impl PartitionOfUnity {
    pub fn weights_f64(&self, s: usize) -> Vec<f64> {
        self.weights[s].iter().map(|w| w.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Exact check of `Σ_s R_sᵀ D_s R_s = I` over `n_free` dofs.
    pub fn is_exact_identity(&self, decomposition: &Decomposition, n_free: usize) -> bool {
        let mut sum = vec![Rational::zero(); n_free];
        for (sub, w) in decomposition.subdomains.iter().zip(&self.weights) {
            for (&f, &wf) in sub.dofs.iter().zip(w) {
                sum[f] += wf;
            }
        }
        sum.iter().all(|s| *s == Rational::from_integer(1))
    }
}

pub fn build_partition_of_unity(mesh: &Mesh, dofmap: &DofMap, decomposition: &Decomposition) -> Result<PartitionOfUnity> {
    let free = dofmap.free_dofs();
    let raw: Vec<Vec<Rational>> = decomposition
        .subdomains
        .iter()
        .map(|sub| {
            sub.dofs
                .iter()
                .map(|&f| cutoff(sub, decomposition.dof_position(mesh, dofmap, free[f])))
                .collect()
        })
        .collect();
    let mut total = vec![Rational::zero(); dofmap.n_free()];
    for (sub, w) in decomposition.subdomains.iter().zip(&raw) {
        for (&f, &wf) in sub.dofs.iter().zip(w) {
            total[f] += wf;
        }
    }
    if let Some(f) = total.iter().position(|t| t.is_zero()) {
        return Err(Error::Decomposition(format!("free dof {f} has zero total weight")));
    }
    let weights = decomposition
        .subdomains
        .iter()
        .zip(raw)
        .map(|(sub, w)| sub.dofs.iter().zip(w).map(|(&f, wf)| wf / total[f]).collect())
        .collect();
    Ok(PartitionOfUnity { weights })
}

/// Factorized subdomain matrix with impedance transmission conditions.
#[derive(Debug)]
pub struct LocalProblem {
    pub matrix: CsrMatrix,
    pub interface_facets: usize,
    lu: SparseLu,
}

impl LocalProblem {
    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        self.lu.solve(b)
    }
}

/// Assemble and factorize `A_s` for every subdomain. Physical ports keep
/// `port_eta`; interfaces get `η = ω̃`; wall dofs stay eliminated.
pub fn assemble_local(
    mesh: &Mesh,
    dofmap: &DofMap,
    decomposition: &Decomposition,
    params: &PhysicalParams,
    port_eta: f64,
) -> Result<Vec<LocalProblem>> {
    let d = mesh.dim();
    let mut facet_owners: HashMap<Vec<usize>, Vec<(usize, usize)>> = HashMap::new();
    for s in 0..mesh.num_simplices() {
        for i in 0..=d {
            let mut key: Vec<usize> = local_facet(d, i).iter().map(|&l| mesh.simplex(s)[l]).collect();
            key.sort_unstable();
            facet_owners.entry(key).or_default().push((s, i));
        }
    }
    let mut port_of: HashMap<(usize, usize), ()> = HashMap::new();
    for (k, f) in mesh.boundary().iter().enumerate() {
        if f.label != BoundaryLabel::Wall {
            port_of.insert(mesh.facet_owner(k), ());
        }
    }
    let gamma = params.gamma();
    let transmission_eta = params.omega_tilde();
    decomposition
        .subdomains
        .iter()
        .enumerate()
        .map(|(sidx, sub)| -> Result<LocalProblem> {
            let mut inside = vec![false; mesh.num_simplices()];
            for &e in &sub.elements {
                inside[e] = true;
            }
            let mut facets = Vec::new();
            let mut interface_facets = 0;
            for &s in &sub.elements {
                for i in 0..=d {
                    if port_of.contains_key(&(s, i)) {
                        facets.push(ImpedanceFacet {
                            simplex: s,
                            local_facet: i,
                            eta: port_eta,
                            data: None,
                        });
                        continue;
                    }
                    let mut key: Vec<usize> = local_facet(d, i).iter().map(|&l| mesh.simplex(s)[l]).collect();
                    key.sort_unstable();
                    let owners = &facet_owners[&key];
                    if owners.len() == 2 && owners.iter().any(|&(o, _)| !inside[o]) {
                        facets.push(ImpedanceFacet {
                            simplex: s,
                            local_facet: i,
                            eta: transmission_eta,
                            data: None,
                        });
                        interface_facets += 1;
                    }
                }
            }
            let mut local_index = vec![None; dofmap.n_free()];
            for (k, &f) in sub.dofs.iter().enumerate() {
                local_index[f] = Some(k);
            }
            let matrix = assemble_matrix(
                mesh,
                dofmap,
                gamma * gamma,
                &sub.elements,
                &facets,
                |g| dofmap.free_index(g).and_then(|f| local_index[f]),
                sub.dofs.len(),
            )?;
            let lu = SparseLu::new(&matrix).map_err(|e| e.context(format!("subdomain {sidx}")))?;
            Ok(LocalProblem {
                matrix,
                interface_facets,
                lu,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchwarzVariant {
    /// `Σ R_sᵀ D_s A_s⁻¹ R_s`.
    Restricted,
    /// `Σ R_sᵀ A_s⁻¹ R_s`.
    Additive,
}

/// Assembled one-level Schwarz preconditioner.
#[derive(Debug)]
pub struct SchwarzPreconditioner {
    variant: SchwarzVariant,
    n: usize,
    dofs: Vec<Vec<usize>>,
    weights: Vec<Vec<f64>>,
    locals: Vec<LocalProblem>,
}

impl SchwarzPreconditioner {
    pub fn new(
        variant: SchwarzVariant,
        n_free: usize,
        decomposition: &Decomposition,
        partition: &PartitionOfUnity,
        locals: Vec<LocalProblem>,
    ) -> Result<Self> {
        if locals.len() != decomposition.n_sub() || partition.weights.len() != decomposition.n_sub() {
            return Err(Error::DimensionMismatch {
                expected: decomposition.n_sub(),
                got: locals.len(),
            });
        }
        let weights = (0..decomposition.n_sub()).map(|s| partition.weights_f64(s)).collect();
        Ok(SchwarzPreconditioner {
            variant,
            n: n_free,
            dofs: decomposition.subdomains.iter().map(|s| s.dofs.clone()).collect(),
            weights,
            locals,
        })
    }

    /// Build decomposition, partition of unity and local problems in one go.
    pub fn build(
        mesh: &Mesh,
        dofmap: &DofMap,
        params: &PhysicalParams,
        port_eta: f64,
        decomposition: &Decomposition,
        variant: SchwarzVariant,
    ) -> Result<Self> {
        let pou = build_partition_of_unity(mesh, dofmap, decomposition)?;
        let locals = assemble_local(mesh, dofmap, decomposition, params, port_eta)?;
        Self::new(variant, dofmap.n_free(), decomposition, &pou, locals)
    }

    pub fn variant(&self) -> SchwarzVariant {
        self.variant
    }

    /// Same local factorizations with the other variant.
    pub fn with_variant(mut self, variant: SchwarzVariant) -> Self {
        self.variant = variant;
        self
    }

    pub fn locals(&self) -> &[LocalProblem] {
        &self.locals
    }

    pub fn try_apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let parts: Vec<Vec<Complex64>> = (0..self.locals.len())
            .into_par_iter()
            .map(|s| {
                let rhs: Vec<Complex64> = self.dofs[s].iter().map(|&f| x[f]).collect();
                let mut y = self.locals[s].solve(&rhs)?;
                if self.variant == SchwarzVariant::Restricted {
                    for (v, &w) in y.iter_mut().zip(&self.weights[s]) {
                        *v *= w;
                    }
                }
                Ok(y)
            })
            .collect::<Result<_>>()?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for (s, y) in parts.iter().enumerate() {
            for (&f, &v) in self.dofs[s].iter().zip(y) {
                out[f] += v;
            }
        }
        Ok(out)
    }
}

impl LinearOperator for SchwarzPreconditioner {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        let r = self.try_apply(x).expect("local solve failed");
        y.copy_from_slice(&r);
    }
}
