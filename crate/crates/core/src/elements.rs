//! High-order Nédélec edge elements built from Whitney generators
//! `λ^k w^e`, with tangential-moment degrees of freedom and a dualizing
//! matrix computed once per `(r, d)` in exact rational arithmetic.
//!
//! Everything here is expressed on a "construction" simplex whose vertices
//! are the simplex nodes listed by increasing global number. Positions
//! `0..=d` below always refer to that sorted order; [`node_permutation`] maps
//! them back to local node indices and [`dof_permutation`] maps construction
//! dof indices to local storage indices.
//!
//! Construction order: edges `(0,1),(0,2),(0,3),(1,2),(1,3),(2,3)` (the
//! triangle uses the first, second and fourth of these pairs), faces opposite
//! position `0,1,2,3`, then the volume. Face generators and dofs use the two
//! edges leaving the smallest face node, volume ones the three edges leaving
//! node 0.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geom::{self, Vec3};
use crate::mesh::{local_edges, BarycentricFrame};

/// Highest supported degree in 2d.
pub const MAX_DEGREE_2D: usize = 5;
/// Highest supported degree in 3d.
pub const MAX_DEGREE_3D: usize = 3;

pub fn check_degree(r: usize, d: usize) -> Result<()> {
    let ok = match d {
        2 => (1..=MAX_DEGREE_2D).contains(&r),
        3 => (1..=MAX_DEGREE_3D).contains(&r),
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::UnsupportedDegree { r, d })
    }
}

/// Exponents of a barycentric monomial `λ^k`, one entry per simplex node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zeros(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Nodes with a non-zero exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }
}

/// All multi-indices with `nu` components and the given weight, in
/// decreasing lexicographic order: `(k,0,..)`, `(k-1,1,..)`, ...
pub fn multi_indices(nu: usize, weight: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, left: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
        if left == 1 {
            let mut v = prefix.clone();
            v.push(remaining);
            out.push(v);
            return;
        }
        for k in (0..=remaining).rev() {
            prefix.push(k);
            rec(prefix, left - 1, remaining - k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nu > 0 {
        rec(&mut Vec::new(), nu, weight, &mut out);
    }
    out
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Mean value over a `p`-simplex of `Π λ_i^{k_i}` (one exponent per vertex):
/// `p! Π k_i! / (p + Σ k_i)!`.
pub fn magic_integral(k: &[u32]) -> BigRational {
    let p = k.len().saturating_sub(1) as u32;
    let s: u32 = k.iter().sum();
    let num = k.iter().fold(factorial(p), |acc, &ki| acc * factorial(ki));
    BigRational::new(num, factorial(p + s))
}

/// Geometric kind of a generator or dof support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntityKind {
    Edge,
    Face,
    Volume,
}

/// Construction-order edges of a `d`-simplex as pairs of sorted positions.
pub fn construction_edges(d: usize) -> &'static [(usize, usize)] {
    local_edges(d)
}

/// Construction-order faces: in 3d the face opposite position `j`; in 2d the
/// triangle itself.
pub fn construction_faces(d: usize) -> Vec<[usize; 3]> {
    if d == 2 {
        vec![[0, 1, 2]]
    } else {
        (0..4)
            .map(|j| {
                let v: Vec<usize> = (0..4).filter(|&k| k != j).collect();
                [v[0], v[1], v[2]]
            })
            .collect()
    }
}

/// One generator `λ^k w^e` with `w^e = λ_a ∇λ_b − λ_b ∇λ_a`.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub kind: EntityKind,
    /// Construction index of the edge, face or volume the generator belongs to.
    pub entity: usize,
    /// Oriented edge `(a, b)`, `a < b`, in sorted positions.
    pub edge: (usize, usize),
    pub multi_index: MultiIndex,
}

impl Generator {
    /// Nodes appearing in `λ^k` or in `w^e`.
    pub fn nodes(&self) -> Vec<usize> {
        let mut n = self.multi_index.support();
        for v in [self.edge.0, self.edge.1] {
            if !n.contains(&v) {
                n.push(v);
            }
        }
        n.sort_unstable();
        n
    }
}

/// Degree of freedom `w ↦ (1/|S|) ∫_S (w·t) λ^q` on a support `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct DofDescriptor {
    pub kind: EntityKind,
    /// Construction index of the support entity.
    pub entity: usize,
    /// Index of this dof inside its entity block.
    pub sub: usize,
    /// Support vertices in sorted positions (increasing).
    pub support: Vec<usize>,
    /// Tangent `t = x_b − x_a` as sorted positions `(a, b)`.
    pub tangent: (usize, usize),
    /// Weight polynomial exponents, zero outside the support.
    pub weight: MultiIndex,
}

fn tangents_of(kind: EntityKind, support: &[usize]) -> Vec<(usize, usize)> {
    match kind {
        EntityKind::Edge => vec![(support[0], support[1])],
        EntityKind::Face => vec![(support[0], support[1]), (support[0], support[2])],
        EntityKind::Volume => vec![(support[0], support[1]), (support[0], support[2]), (support[0], support[3])],
    }
}

fn entity_blocks(d: usize) -> Vec<(EntityKind, usize, Vec<usize>)> {
    let mut out = Vec::new();
    for (i, &(a, b)) in construction_edges(d).iter().enumerate() {
        out.push((EntityKind::Edge, i, vec![a, b]));
    }
    for (i, f) in construction_faces(d).iter().enumerate() {
        out.push((EntityKind::Face, i, f.to_vec()));
    }
    if d == 3 {
        out.push((EntityKind::Volume, 0, vec![0, 1, 2, 3]));
    }
    out
}

fn lift(d: usize, support: &[usize], local: &[u32]) -> MultiIndex {
    let mut k = MultiIndex::zeros(d + 1);
    for (&v, &e) in support.iter().zip(local) {
        k.0[v] += e;
    }
    k
}

/// Generators of the degree-`r` space on a `d`-simplex, in construction
/// order, keeping only the linearly independent face and volume ones.
pub fn build_generators(r: usize, d: usize) -> Result<Vec<Generator>> {
    check_degree(r, d)?;
    let r = r as u32;
    let mut out = Vec::new();
    for (kind, entity, support) in entity_blocks(d) {
        let codim_extra = support.len() as u32 - 2;
        if r < 1 + codim_extra {
            continue;
        }
        for (a, b) in tangents_of(kind, &support) {
            let others: Vec<usize> = support.iter().copied().filter(|&v| v != a && v != b).collect();
            for q in multi_indices(support.len(), r - 1 - codim_extra) {
                let mut k = lift(d, &support, &q);
                for &o in &others {
                    k.0[o] += 1;
                }
                out.push(Generator {
                    kind,
                    entity,
                    edge: (a, b),
                    multi_index: k,
                });
            }
        }
    }
    Ok(out)
}

/// Degrees of freedom of the degree-`r` space, aligned with [`build_generators`].
pub fn build_dofs(r: usize, d: usize) -> Result<Vec<DofDescriptor>> {
    check_degree(r, d)?;
    let r = r as u32;
    let mut out = Vec::new();
    for (kind, entity, support) in entity_blocks(d) {
        let codim_extra = support.len() as u32 - 2;
        if r < 1 + codim_extra {
            continue;
        }
        let mut sub = 0;
        for t in tangents_of(kind, &support) {
            for q in multi_indices(support.len(), r - 1 - codim_extra) {
                out.push(DofDescriptor {
                    kind,
                    entity,
                    sub,
                    support: support.clone(),
                    tangent: t,
                    weight: lift(d, &support, &q),
                });
                sub += 1;
            }
        }
    }
    Ok(out)
}

/// `dim W_r` on a `d`-simplex: `(r+d)(r+d−1)···(r+2)·r/(d−1)!`.
pub fn space_dimension(r: usize, d: usize) -> usize {
    let mut num = r;
    for k in 2..=d {
        num *= r + k;
    }
    let den: usize = (1..d).product();
    num / den
}

/// Number of dofs per edge, per face and per volume.
pub fn dofs_per_entity(r: usize, d: usize) -> (usize, usize, usize) {
    let binom = |n: usize, k: usize| -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    };
    let e = r;
    let f = if r >= 2 { 2 * binom(r, 2) } else { 0 };
    let v = if d == 3 && r >= 3 { 3 * binom(r, 3) } else { 0 };
    (e, f, v)
}

/// Exact value of a dof applied to a generator.
pub fn dof_on_generator(dof: &DofDescriptor, gen: &Generator) -> BigRational {
    let (a, b) = gen.edge;
    let (t1, t2) = dof.tangent;
    // ∇λ_m · t = δ_{m,t2} − δ_{m,t1}
    let dt = |m: usize| -> i64 { (m == t2) as i64 - (m == t1) as i64 };
    let term = |extra: usize| -> BigRational {
        let mut k = gen.multi_index.0.clone();
        for (ki, qi) in k.iter_mut().zip(&dof.weight.0) {
            *ki += qi;
        }
        k[extra] += 1;
        if (0..k.len()).any(|i| k[i] > 0 && !dof.support.contains(&i)) {
            return BigRational::zero();
        }
        let restricted: Vec<u32> = dof.support.iter().map(|&i| k[i]).collect();
        magic_integral(&restricted)
    };
    let mut v = BigRational::zero();
    let cb = dt(b);
    if cb != 0 {
        v += term(a) * BigRational::from_integer(BigInt::from(cb));
    }
    let ca = dt(a);
    if ca != 0 {
        v -= term(b) * BigRational::from_integer(BigInt::from(ca));
    }
    v
}

/// Generalized Vandermonde matrix `V_ij = ξ_i(w_j)` and its exact inverse.
#[derive(Debug, Clone)]
pub struct DualizingMatrix {
    pub r: usize,
    pub d: usize,
    pub v: Vec<Vec<BigRational>>,
    pub vinv: Vec<Vec<BigRational>>,
    vinv_f64: Vec<f64>,
}

impl DualizingMatrix {
    pub fn n(&self) -> usize {
        self.v.len()
    }

    /// `V⁻¹` as integers, if every entry is integral.
    pub fn vinv_integers(&self) -> Option<Vec<Vec<i64>>> {
        self.vinv
            .iter()
            .map(|row| row.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect())
            .collect()
    }

    /// Row-major `V⁻¹` in floating point.
    pub fn vinv_f64(&self) -> &[f64] {
        &self.vinv_f64
    }

    /// CSV dump (`V` or `V⁻¹`) with exact rational entries such as `-1/6`.
    pub fn to_csv(&self, inverse: bool) -> String {
        let m = if inverse { &self.vinv } else { &self.v };
        let mut s = String::new();
        for row in m {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

fn invert_exact(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &f * &a[col][j];
                a[r][j] -= t;
                let t = &f * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    Some(inv)
}

/// Assemble `V` exactly from the magic formula and invert it.
pub fn assemble_vandermonde(r: usize, d: usize) -> Result<DualizingMatrix> {
    let gens = build_generators(r, d)?;
    let dofs = build_dofs(r, d)?;
    debug_assert_eq!(gens.len(), dofs.len());
    let v: Vec<Vec<BigRational>> = dofs.iter().map(|xi| gens.iter().map(|w| dof_on_generator(xi, w)).collect()).collect();
    let vinv = invert_exact(&v).ok_or(Error::SingularVandermonde { r, d })?;
    let vinv_f64 = vinv.iter().flat_map(|row| row.iter().map(|x| x.to_f64().unwrap_or(f64::NAN))).collect();
    Ok(DualizingMatrix { r, d, v, vinv, vinv_f64 })
}

/// Reference data shared by all simplices for one `(r, d)`.
#[derive(Debug)]
pub struct ReferenceElement {
    pub r: usize,
    pub d: usize,
    pub generators: Vec<Generator>,
    pub dofs: Vec<DofDescriptor>,
    pub dualizing: DualizingMatrix,
    pub per_edge: usize,
    pub per_face: usize,
    pub per_volume: usize,
    /// Non-zeros of each column of `V⁻¹`: `(row, value)`.
    vinv_columns: Vec<Vec<(usize, f64)>>,
}

impl ReferenceElement {
    pub fn n_dofs(&self) -> usize {
        self.dofs.len()
    }

    fn build(r: usize, d: usize) -> Result<Self> {
        let generators = build_generators(r, d)?;
        let dofs = build_dofs(r, d)?;
        let dualizing = assemble_vandermonde(r, d)?;
        let n = dofs.len();
        let f = dualizing.vinv_f64();
        let vinv_columns = (0..n)
            .map(|j| (0..n).filter_map(|l| (f[l * n + j] != 0.0).then(|| (l, f[l * n + j]))).collect())
            .collect();
        let (per_edge, per_face, per_volume) = dofs_per_entity(r, d);
        Ok(ReferenceElement {
            r,
            d,
            generators,
            dofs,
            dualizing,
            per_edge,
            per_face,
            per_volume,
            vinv_columns,
        })
    }
}

/// Cached reference element for `(r, d)`.
pub fn reference_element(r: usize, d: usize) -> Result<Arc<ReferenceElement>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<ReferenceElement>>>> = OnceLock::new();
    check_degree(r, d)?;
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(e) = cache.lock().unwrap().get(&(r, d)) {
        return Ok(e.clone());
    }
    let e = Arc::new(ReferenceElement::build(r, d)?);
    cache.lock().unwrap().insert((r, d), e.clone());
    Ok(e)
}

/// `p[i]` is the local index of the node with the `i`-th smallest global number.
pub fn node_permutation(global: &[usize]) -> Result<Vec<usize>> {
    let mut p: Vec<usize> = (0..global.len()).collect();
    p.sort_by_key(|&i| global[i]);
    for w in p.windows(2) {
        if global[w[0]] == global[w[1]] {
            return Err(Error::DuplicateNode(global[w[0]]));
        }
    }
    Ok(p)
}

fn local_edge_index(d: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    local_edges(d).iter().position(|&e| e == (a, b)).expect("valid local edge")
}

/// Map from construction dof index to local storage index.
///
/// Local storage lists edge dofs by local edge, then face dofs by local face
/// (face `i` opposite local node `i`; the triangle itself in 2d), then the
/// volume dofs; inside each entity the construction order is kept.
pub fn dof_permutation(r: usize, d: usize, global: &[usize]) -> Result<Vec<usize>> {
    check_degree(r, d)?;
    if global.len() != d + 1 {
        return Err(Error::InvalidMesh(format!("{} nodes for a {d}-simplex", global.len())));
    }
    let perm = node_permutation(global)?;
    let (ne, nf, _) = dofs_per_entity(r, d);
    let n_edges = local_edges(d).len();
    let n_faces = if d == 2 { 1 } else { 4 };
    let mut p = Vec::with_capacity(space_dimension(r, d));
    for &(sa, sb) in construction_edges(d) {
        let le = local_edge_index(d, perm[sa], perm[sb]);
        p.extend((0..ne).map(|t| le * ne + t));
    }
    if nf > 0 {
        for j in 0..n_faces {
            let lf = if d == 2 { 0 } else { perm[j] };
            p.extend((0..nf).map(|t| n_edges * ne + lf * nf + t));
        }
    }
    let off = n_edges * ne + n_faces * nf;
    while p.len() < space_dimension(r, d) {
        p.push(off + (p.len() - off));
    }
    Ok(p)
}

/// Dual basis `w̃` of one mesh simplex.
#[derive(Debug, Clone)]
pub struct LocalBasis {
    reference: Arc<ReferenceElement>,
    perm: Vec<usize>,
    to_storage: Vec<usize>,
    /// Gradients of the barycentric coordinates in sorted order.
    grads: Vec<Vec3>,
    /// Vertices in sorted order.
    sorted_points: Vec<Vec3>,
    frame: BarycentricFrame,
}

impl LocalBasis {
    /// `points` and `global` in local node order.
    pub fn new(points: &[Vec3], global: &[usize], r: usize) -> Result<Self> {
        let d = points.len().saturating_sub(1);
        let reference = reference_element(r, d)?;
        let perm = node_permutation(global)?;
        let to_storage = dof_permutation(r, d, global)?;
        let frame = BarycentricFrame::new(points)?;
        let grads = perm.iter().map(|&l| frame.gradients()[l]).collect();
        let sorted_points = perm.iter().map(|&l| points[l]).collect();
        Ok(LocalBasis {
            reference,
            perm,
            to_storage,
            grads,
            sorted_points,
            frame,
        })
    }

    pub fn n_dofs(&self) -> usize {
        self.reference.n_dofs()
    }

    pub fn reference(&self) -> &ReferenceElement {
        &self.reference
    }

    /// Sorted position → local node.
    pub fn node_permutation(&self) -> &[usize] {
        &self.perm
    }

    /// Construction index → storage index.
    pub fn dof_permutation(&self) -> &[usize] {
        &self.to_storage
    }

    pub fn frame(&self) -> &BarycentricFrame {
        &self.frame
    }

    /// Vertices listed by increasing global number.
    pub fn sorted_points(&self) -> &[Vec3] {
        &self.sorted_points
    }

    /// Gradients of barycentric coordinates listed by increasing global number.
    pub fn sorted_gradients(&self) -> &[Vec3] {
        &self.grads
    }

    /// Values and curls of the undualized generators at a point given by its
    /// sorted barycentric coordinates, in construction order.
    pub fn eval_generators(&self, lam: &[f64], vals: &mut [Vec3], curls: &mut [Vec3]) {
        let d = self.reference.d;
        let r = self.reference.r;
        let mut pow = vec![[1.0f64; 8]; d + 1];
        for m in 0..=d {
            for e in 1..=r.min(7) {
                pow[m][e] = pow[m][e - 1] * lam[m];
            }
        }
        let g = &self.grads;
        for (j, gen) in self.reference.generators.iter().enumerate() {
            let k = &gen.multi_index.0;
            let (a, b) = gen.edge;
            let mono: f64 = (0..=d).map(|m| pow[m][k[m] as usize]).product();
            let mut grad_mono = [0.0; 3];
            for m in 0..=d {
                if k[m] == 0 {
                    continue;
                }
                let mut c = k[m] as f64 * pow[m][k[m] as usize - 1];
                for n in 0..=d {
                    if n != m {
                        c *= pow[n][k[n] as usize];
                    }
                }
                grad_mono = geom::add(grad_mono, geom::scale(g[m], c));
            }
            let we = geom::sub(geom::scale(g[b], lam[a]), geom::scale(g[a], lam[b]));
            let curl_we = geom::scale(geom::cross(g[a], g[b]), 2.0);
            vals[j] = geom::scale(we, mono);
            curls[j] = geom::add(geom::cross(grad_mono, we), geom::scale(curl_we, mono));
        }
    }

    /// Values and curls of the dual basis at sorted barycentric coordinates
    /// `lam`, written in local storage order.
    pub fn eval_sorted(&self, lam: &[f64], vals: &mut [Vec3], curls: &mut [Vec3]) {
        let n = self.n_dofs();
        let mut gv = vec![[0.0; 3]; n];
        let mut gc = vec![[0.0; 3]; n];
        self.eval_generators(lam, &mut gv, &mut gc);
        for j in 0..n {
            let mut v = [0.0; 3];
            let mut c = [0.0; 3];
            for &(l, coef) in &self.reference.vinv_columns[j] {
                v = geom::add(v, geom::scale(gv[l], coef));
                c = geom::add(c, geom::scale(gc[l], coef));
            }
            let s = self.to_storage[j];
            vals[s] = v;
            curls[s] = c;
        }
    }

    /// Same as [`LocalBasis::eval_sorted`] with barycentric coordinates in
    /// local node order.
    pub fn eval_local(&self, lam_local: &[f64], vals: &mut [Vec3], curls: &mut [Vec3]) {
        let lam: Vec<f64> = self.perm.iter().map(|&l| lam_local[l]).collect();
        self.eval_sorted(&lam, vals, curls);
    }

    /// Evaluate the dual basis at a physical point inside the simplex.
    pub fn eval_point(&self, x: Vec3) -> Result<(Vec<Vec3>, Vec<Vec3>)> {
        let lam_local = self.frame.lambda(x);
        let min = lam_local.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -1e-12 {
            return Err(Error::PointOutsideSimplex(min));
        }
        let n = self.n_dofs();
        let mut v = vec![[0.0; 3]; n];
        let mut c = vec![[0.0; 3]; n];
        self.eval_local(&lam_local, &mut v, &mut c);
        Ok((v, c))
    }

    /// Dof descriptors in local storage order, with supports and tangents
    /// translated to local node indices.
    pub fn local_dofs(&self) -> Vec<DofDescriptor> {
        let n = self.n_dofs();
        let mut out = vec![None; n];
        for (j, dof) in self.reference.dofs.iter().enumerate() {
            let mut weight = MultiIndex::zeros(dof.weight.0.len());
            for (pos, &e) in dof.weight.0.iter().enumerate() {
                weight.0[self.perm[pos]] = e;
            }
            out[self.to_storage[j]] = Some(DofDescriptor {
                kind: dof.kind,
                entity: dof.entity,
                sub: dof.sub,
                support: dof.support.iter().map(|&p| self.perm[p]).collect(),
                tangent: (self.perm[dof.tangent.0], self.perm[dof.tangent.1]),
                weight,
            });
        }
        out.into_iter().map(|d| d.expect("permutation is a bijection")).collect()
    }
}

/// Evaluate the dual basis of a simplex at `x`: values and curls in local
/// storage order.
pub fn evaluate_dual_basis(points: &[Vec3], global: &[usize], r: usize, x: Vec3) -> Result<(Vec<Vec3>, Vec<Vec3>)> {
    LocalBasis::new(points, global, r)?.eval_point(x)
}

/// Absolute value helper used by tests on exact matrices.
pub fn max_abs_entry(m: &[Vec<BigRational>]) -> BigRational {
    m.iter().flatten().map(|x| x.abs()).fold(BigRational::zero(), |a, b| if b > a { b } else { a })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn magic_formula_values() {
        assert_eq!(magic_integral(&[0, 0]), q(1, 1));
        assert_eq!(magic_integral(&[1, 1]), q(1, 6));
        assert_eq!(magic_integral(&[2, 0]), q(1, 3));
        assert_eq!(magic_integral(&[1, 1, 0]), q(1, 12));
    }

    #[test]
    fn generator_counts_match_dimension() {
        for d in 2..=3 {
            let max = if d == 2 { MAX_DEGREE_2D } else { MAX_DEGREE_3D };
            for r in 1..=max {
                let g = build_generators(r, d).unwrap();
                let x = build_dofs(r, d).unwrap();
                assert_eq!(g.len(), space_dimension(r, d), "r={r} d={d}");
                assert_eq!(x.len(), g.len());
                let (e, f, v) = dofs_per_entity(r, d);
                let nf = if d == 2 { 1 } else { 4 };
                let nv = if d == 3 { 1 } else { 0 };
                assert_eq!(local_edges(d).len() * e + nf * f + nv * v, g.len());
            }
        }
        assert_eq!(space_dimension(2, 3), 20);
        assert_eq!(space_dimension(2, 2), 8);
        assert!(build_generators(4, 3).is_err());
        assert!(build_generators(0, 2).is_err());
    }

    #[test]
    fn generator_kind_matches_node_count() {
        for (r, d) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
            for g in build_generators(r, d).unwrap() {
                let expect = match g.nodes().len() {
                    2 => EntityKind::Edge,
                    3 => EntityKind::Face,
                    _ => EntityKind::Volume,
                };
                assert_eq!(g.kind, expect, "{g:?}");
            }
        }
        let g = build_generators(1, 3).unwrap();
        assert!(g.iter().all(|g| g.multi_index.weight() == 0 && g.kind == EntityKind::Edge));
    }

    #[test]
    fn lowest_order_is_already_dual() {
        for d in 2..=3 {
            let m = assemble_vandermonde(1, d).unwrap();
            for i in 0..m.n() {
                for j in 0..m.n() {
                    let e = if i == j { BigRational::one() } else { BigRational::zero() };
                    assert_eq!(m.v[i][j], e);
                }
            }
        }
    }

    #[test]
    fn leading_block_of_v() {
        let m = assemble_vandermonde(2, 3).unwrap();
        assert_eq!(m.v[0][0], q(1, 3));
        assert_eq!(m.v[0][1], q(1, 6));
        assert_eq!(m.v[1][0], q(1, 6));
        assert_eq!(m.v[1][1], q(1, 3));
    }

    #[test]
    fn zero_structure_of_v() {
        for (r, d) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
            let gens = build_generators(r, d).unwrap();
            let dofs = build_dofs(r, d).unwrap();
            let rank = |k: EntityKind| match k {
                EntityKind::Edge => 0,
                EntityKind::Face => 1,
                EntityKind::Volume => 2,
            };
            for x in &dofs {
                for g in &gens {
                    if rank(g.kind) > rank(x.kind) {
                        assert!(dof_on_generator(x, g).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn node_permutation_examples() {
        assert_eq!(node_permutation(&[12, 32, 42, 22]).unwrap(), vec![0, 3, 1, 2]);
        assert_eq!(node_permutation(&[1, 2, 3]).unwrap(), vec![0, 1, 2]);
        assert_eq!(node_permutation(&[5, 3]).unwrap(), vec![1, 0]);
        assert!(matches!(node_permutation(&[4, 2, 4]), Err(Error::DuplicateNode(4))));
    }

    #[test]
    fn dof_permutation_examples() {
        let t = [12, 32, 42, 22];
        assert_eq!(
            dof_permutation(2, 3, &t).unwrap(),
            vec![4, 5, 0, 1, 2, 3, 8, 9, 10, 11, 6, 7, 12, 13, 18, 19, 14, 15, 16, 17]
        );
        assert_eq!(dof_permutation(1, 3, &t).unwrap(), vec![2, 0, 1, 4, 5, 3]);
        for (r, d) in [(1, 2), (3, 2), (2, 3), (3, 3)] {
            let sorted: Vec<usize> = (0..=d).collect();
            let p = dof_permutation(r, d, &sorted).unwrap();
            assert_eq!(p, (0..space_dimension(r, d)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn csv_dump_is_rational() {
        let m = assemble_vandermonde(2, 3).unwrap();
        let csv = m.to_csv(false);
        assert!(csv.lines().next().unwrap().starts_with("1/3,1/6,"));
        assert_eq!(csv.lines().count(), 20);
        let inv = m.to_csv(true);
        assert!(inv.starts_with("4,-2,0"));
    }
}
