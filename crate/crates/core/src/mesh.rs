//! Structured simplicial meshes of the rectangular waveguide, their edge and
//! face tables, and affine barycentric geometry.
//!
//! Global node numbering is lexicographic in the grid index with `x` running
//! fastest, then `y`, then `z`. Every edge and face is stored once with its
//! nodes sorted by global number; that sorted order is the canonical
//! orientation used by the edge elements.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::geom::{self, Vec3};

/// Local edges of a triangle, as pairs of local node indices.
pub const TRIANGLE_EDGES: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];
/// Local edges of a tetrahedron, as pairs of local node indices.
pub const TETRAHEDRON_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Local edge table for a simplex of dimension `dim`.
pub fn local_edges(dim: usize) -> &'static [(usize, usize)] {
    if dim == 2 {
        &TRIANGLE_EDGES
    } else {
        &TETRAHEDRON_EDGES
    }
}

/// Local nodes of facet `i` (the facet opposite local node `i`), increasing.
pub fn local_facet(dim: usize, i: usize) -> Vec<usize> {
    (0..=dim).filter(|&k| k != i).collect()
}

/// Boundary part of the waveguide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryLabel {
    /// Entrance, `x = 0`.
    In,
    /// Exit, `x = c`.
    Out,
    /// Perfectly conducting walls.
    Wall,
}

impl BoundaryLabel {
    pub fn code(self) -> u8 {
        match self {
            BoundaryLabel::In => 1,
            BoundaryLabel::Out => 2,
            BoundaryLabel::Wall => 3,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            1 => Some(BoundaryLabel::In),
            2 => Some(BoundaryLabel::Out),
            3 => Some(BoundaryLabel::Wall),
            _ => None,
        }
    }
}

/// Requested waveguide mesh: the box `(0,c)×(0,b)` or `(0,c)×(0,b)×(0,a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshSpec {
    pub dim: usize,
    /// `[c, b, a]`; the third entry is ignored in 2d.
    pub extents: [f64; 3],
    pub h: f64,
}

impl MeshSpec {
    pub fn planar(c: f64, b: f64, h: f64) -> Self {
        MeshSpec {
            dim: 2,
            extents: [c, b, 0.0],
            h,
        }
    }

    pub fn solid(c: f64, b: f64, a: f64, h: f64) -> Self {
        MeshSpec {
            dim: 3,
            extents: [c, b, a],
            h,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim != 2 && self.dim != 3 {
            return Err(Error::InvalidMeshSpec(format!("dimension {} not in {{2,3}}", self.dim)));
        }
        let ext = &self.extents[..self.dim];
        if ext.iter().any(|&e| !(e > 0.0) || !e.is_finite()) {
            return Err(Error::InvalidMeshSpec(format!("extents must be positive, got {ext:?}")));
        }
        if !(self.h > 0.0) || !self.h.is_finite() {
            return Err(Error::InvalidMeshSpec(format!("mesh size must be positive, got {}", self.h)));
        }
        let min = ext.iter().cloned().fold(f64::INFINITY, f64::min);
        if self.h > min {
            return Err(Error::InvalidMeshSpec(format!(
                "mesh size {} exceeds the smallest extent {}",
                self.h, min
            )));
        }
        Ok(())
    }

    /// Number of grid cells along each axis so that the cell size is at most `h`.
    pub fn divisions(&self) -> [usize; 3] {
        let mut n = [1usize; 3];
        for (k, n) in n.iter_mut().enumerate().take(self.dim) {
            *n = cells_for(self.extents[k], self.h);
        }
        n
    }
}

/// Smallest cell count `n` with `extent / n <= h`, and at least one.
pub fn cells_for(extent: f64, h: f64) -> usize {
    let ratio = extent / h;
    let n = (ratio - 1e-9 * ratio.max(1.0)).ceil();
    (n as usize).max(1)
}

/// A boundary facet (edge in 2d, triangle in 3d) and its label.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFacet {
    pub nodes: Vec<usize>,
    pub label: BoundaryLabel,
}

/// Simplicial mesh with canonical edge and face tables.
#[derive(Debug, Clone)]
pub struct Mesh {
    dim: usize,
    nodes: Vec<Vec3>,
    simplices: Vec<Vec<usize>>,
    boundary: Vec<BoundaryFacet>,
    edges: Vec<[usize; 2]>,
    edge_index: HashMap<[usize; 2], usize>,
    faces: Vec<[usize; 3]>,
    face_index: HashMap<[usize; 3], usize>,
    simplex_edges: Vec<Vec<usize>>,
    simplex_faces: Vec<Vec<usize>>,
    facet_owner: Vec<(usize, usize)>,
}

fn sorted_key(nodes: &[usize]) -> Vec<usize> {
    let mut k = nodes.to_vec();
    k.sort_unstable();
    k
}

impl Mesh {
    /// Build a mesh from raw arrays, computing the edge/face tables and
    /// checking conformity against the supplied boundary facets.
    pub fn from_parts(
        dim: usize,
        nodes: Vec<Vec3>,
        simplices: Vec<Vec<usize>>,
        boundary: Vec<BoundaryFacet>,
    ) -> Result<Mesh> {
        if dim != 2 && dim != 3 {
            return Err(Error::InvalidMesh(format!("dimension {dim} not in {{2,3}}")));
        }
        let nv = nodes.len();
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for p in &nodes {
            for k in 0..3 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let scale = (0..dim).map(|k| hi[k] - lo[k]).fold(0.0, f64::max);

        let mut edges = Vec::new();
        let mut edge_index = HashMap::new();
        let mut faces = Vec::new();
        let mut face_index = HashMap::new();
        let mut simplex_edges = Vec::with_capacity(simplices.len());
        let mut simplex_faces = Vec::new();
        let mut facet_count: HashMap<Vec<usize>, (usize, usize, usize)> = HashMap::new();

        for (s, simplex) in simplices.iter().enumerate() {
            if simplex.len() != dim + 1 {
                return Err(Error::InvalidMesh(format!(
                    "simplex {s} has {} nodes, expected {}",
                    simplex.len(),
                    dim + 1
                )));
            }
            for (i, &n) in simplex.iter().enumerate() {
                if n >= nv {
                    return Err(Error::InvalidMesh(format!("simplex {s} references missing node {n}")));
                }
                if simplex[..i].contains(&n) {
                    return Err(Error::DuplicateNode(n));
                }
            }
            let pts: Vec<Vec3> = simplex.iter().map(|&n| nodes[n]).collect();
            let measure = geom::simplex_measure(&pts);
            let threshold = 1e-14 * scale.powi(dim as i32);
            if measure <= threshold {
                return Err(Error::DegenerateSimplex { measure, threshold });
            }

            let mut se = Vec::with_capacity(local_edges(dim).len());
            for &(a, b) in local_edges(dim) {
                let (p, q) = (simplex[a], simplex[b]);
                let key = if p < q { [p, q] } else { [q, p] };
                let id = *edge_index.entry(key).or_insert_with(|| {
                    edges.push(key);
                    edges.len() - 1
                });
                se.push(id);
            }
            simplex_edges.push(se);

            if dim == 3 {
                let mut sf = Vec::with_capacity(4);
                for i in 0..4 {
                    let f = local_facet(3, i);
                    let mut key = [simplex[f[0]], simplex[f[1]], simplex[f[2]]];
                    key.sort_unstable();
                    let id = *face_index.entry(key).or_insert_with(|| {
                        faces.push(key);
                        faces.len() - 1
                    });
                    sf.push(id);
                }
                simplex_faces.push(sf);
            }

            for i in 0..=dim {
                let key = sorted_key(&local_facet(dim, i).iter().map(|&l| simplex[l]).collect::<Vec<_>>());
                let e = facet_count.entry(key).or_insert((0, s, i));
                e.0 += 1;
            }
        }

        if let Some((k, _)) = facet_count.iter().find(|(_, v)| v.0 > 2) {
            return Err(Error::InvalidMesh(format!("facet {k:?} shared by more than two simplices")));
        }
        let n_boundary = facet_count.values().filter(|v| v.0 == 1).count();
        if n_boundary != boundary.len() {
            return Err(Error::Boundary(format!(
                "{} labelled boundary facets but the mesh has {} boundary facets",
                boundary.len(),
                n_boundary
            )));
        }
        let mut facet_owner = Vec::with_capacity(boundary.len());
        for f in &boundary {
            if f.nodes.len() != dim {
                return Err(Error::Boundary(format!("facet {:?} has wrong arity", f.nodes)));
            }
            match facet_count.get(&sorted_key(&f.nodes)) {
                Some(&(1, s, i)) => facet_owner.push((s, i)),
                _ => {
                    return Err(Error::Boundary(format!(
                        "labelled facet {:?} is not a boundary facet of the mesh",
                        f.nodes
                    )))
                }
            }
        }

        Ok(Mesh {
            dim,
            nodes,
            simplices,
            boundary,
            edges,
            edge_index,
            faces,
            face_index,
            simplex_edges,
            simplex_faces,
            facet_owner,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nodes(&self) -> &[Vec3] {
        &self.nodes
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn simplex(&self, s: usize) -> &[usize] {
        &self.simplices[s]
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_simplices(&self) -> usize {
        self.simplices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Number of triangular faces (3d only; zero in 2d).
    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Edges as `[low, high]` global node pairs.
    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    /// Faces (3d) as increasing global node triples.
    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        let key = if a < b { [a, b] } else { [b, a] };
        self.edge_index.get(&key).copied()
    }

    pub fn face_id(&self, nodes: [usize; 3]) -> Option<usize> {
        let mut key = nodes;
        key.sort_unstable();
        self.face_index.get(&key).copied()
    }

    /// Global edge ids of the local edges of simplex `s`.
    pub fn simplex_edges(&self, s: usize) -> &[usize] {
        &self.simplex_edges[s]
    }

    /// Global face ids of the local faces of simplex `s` (3d only).
    pub fn simplex_faces(&self, s: usize) -> &[usize] {
        &self.simplex_faces[s]
    }

    pub fn boundary(&self) -> &[BoundaryFacet] {
        &self.boundary
    }

    /// `(simplex, local facet)` owning boundary facet `k`.
    pub fn facet_owner(&self, k: usize) -> (usize, usize) {
        self.facet_owner[k]
    }

    pub fn simplex_points(&self, s: usize) -> Vec<Vec3> {
        self.simplices[s].iter().map(|&n| self.nodes[n]).collect()
    }

    pub fn simplex_measure(&self, s: usize) -> f64 {
        geom::simplex_measure(&self.simplex_points(s))
    }

    pub fn frame(&self, s: usize) -> Result<BarycentricFrame> {
        BarycentricFrame::new(&self.simplex_points(s))
    }

    /// Sorted distinct node `x` coordinates; on a structured mesh these are
    /// the boundaries of the element layers transverse to the waveguide axis.
    pub fn x_layers(&self) -> Vec<f64> {
        let mut xs: Vec<f64> = self.nodes.iter().map(|p| p[0]).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let span = xs.last().copied().unwrap_or(0.0) - xs.first().copied().unwrap_or(0.0);
        let tol = 1e-9 * span.max(f64::MIN_POSITIVE);
        let mut out: Vec<f64> = Vec::new();
        for x in xs {
            if out.last().map_or(true, |&l| x - l > tol) {
                out.push(x);
            }
        }
        out
    }

    /// Sign of local edge `local_edge` of simplex `s` relative to its
    /// canonical low-to-high orientation.
    pub fn edge_orientation_sign(&self, s: usize, local_edge: usize) -> Result<i8> {
        edge_orientation_sign(&self.simplices[s], local_edge)
    }

    /// Write the mesh in the plain-text exchange format.
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{} {} {} {}", self.dim, self.nodes.len(), self.simplices.len(), self.boundary.len())?;
        for p in &self.nodes {
            let coords: Vec<String> = p[..self.dim].iter().map(|c| format!("{c:?}")).collect();
            writeln!(w, "{}", coords.join(" "))?;
        }
        for s in &self.simplices {
            let ids: Vec<String> = s.iter().map(|n| n.to_string()).collect();
            writeln!(w, "{}", ids.join(" "))?;
        }
        for f in &self.boundary {
            let ids: Vec<String> = f.nodes.iter().map(|n| n.to_string()).collect();
            writeln!(w, "{} {}", ids.join(" "), f.label.code())?;
        }
        Ok(())
    }

    /// Read a mesh written by [`Mesh::write_text`].
    pub fn read_text<R: BufRead>(r: R) -> Result<Mesh> {
        let mut lines = r.lines().enumerate().filter_map(|(i, l)| match l {
            Ok(s) if s.trim().is_empty() => None,
            other => Some((i + 1, other)),
        });
        let mut next = |what: &str| -> Result<(usize, Vec<String>)> {
            match lines.next() {
                Some((i, Ok(s))) => Ok((i, s.split_whitespace().map(str::to_owned).collect())),
                Some((_, Err(e))) => Err(e.into()),
                None => Err(Error::Parse {
                    line: 0,
                    msg: format!("unexpected end of input while reading {what}"),
                }),
            }
        };
        fn num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
            s.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("cannot parse {s:?}"),
            })
        }
        let (l, head) = next("header")?;
        if head.len() != 4 {
            return Err(Error::Parse {
                line: l,
                msg: "header must be `dim nv nt nbf`".into(),
            });
        }
        let dim: usize = num(l, &head[0])?;
        let nv: usize = num(l, &head[1])?;
        let nt: usize = num(l, &head[2])?;
        let nbf: usize = num(l, &head[3])?;
        if dim != 2 && dim != 3 {
            return Err(Error::Parse {
                line: l,
                msg: format!("dimension {dim} not in {{2,3}}"),
            });
        }
        let mut nodes = Vec::with_capacity(nv);
        for _ in 0..nv {
            let (l, t) = next("node")?;
            if t.len() != dim {
                return Err(Error::Parse { line: l, msg: format!("expected {dim} coordinates") });
            }
            let mut p = [0.0; 3];
            for k in 0..dim {
                p[k] = num(l, &t[k])?;
            }
            nodes.push(p);
        }
        let mut simplices = Vec::with_capacity(nt);
        for _ in 0..nt {
            let (l, t) = next("simplex")?;
            if t.len() != dim + 1 {
                return Err(Error::Parse { line: l, msg: format!("expected {} node indices", dim + 1) });
            }
            simplices.push(t.iter().map(|s| num(l, s)).collect::<Result<Vec<usize>>>()?);
        }
        let mut boundary = Vec::with_capacity(nbf);
        for _ in 0..nbf {
            let (l, t) = next("boundary facet")?;
            if t.len() != dim + 1 {
                return Err(Error::Parse { line: l, msg: format!("expected {dim} node indices and a label") });
            }
            let nodes = t[..dim].iter().map(|s| num(l, s)).collect::<Result<Vec<usize>>>()?;
            let code: u8 = num(l, &t[dim])?;
            let label = BoundaryLabel::from_code(code).ok_or_else(|| Error::Parse {
                line: l,
                msg: format!("unknown boundary label {code}"),
            })?;
            boundary.push(BoundaryFacet { nodes, label });
        }
        Mesh::from_parts(dim, nodes, simplices, boundary)
    }
}

/// Sign of a simplex's local edge relative to the canonical orientation,
/// which runs from the smaller to the larger global node number.
pub fn edge_orientation_sign(simplex: &[usize], local_edge: usize) -> Result<i8> {
    let dim = simplex.len().saturating_sub(1);
    if dim != 2 && dim != 3 {
        return Err(Error::InvalidMesh(format!("simplex with {} nodes", simplex.len())));
    }
    let table = local_edges(dim);
    let &(a, b) = table.get(local_edge).ok_or(Error::IndexOutOfRange {
        index: local_edge,
        bound: table.len(),
    })?;
    Ok(if simplex[a] < simplex[b] { 1 } else { -1 })
}

/// Generate the structured waveguide mesh described by `spec`.
pub fn generate_waveguide_mesh(spec: &MeshSpec) -> Result<Mesh> {
    spec.validate()?;
    generate_structured_mesh(spec.dim, spec.extents, spec.divisions())
}

/// Uniform grid of `divisions` cells on the box with the given extents.
/// Rectangles are split into 2 triangles along the `(i,j)→(i+1,j+1)`
/// diagonal; boxes into the 6 Kuhn tetrahedra sharing the main diagonal.
/// Facets on `x = 0` are labelled [`BoundaryLabel::In`], on `x = c`
/// [`BoundaryLabel::Out`], all others [`BoundaryLabel::Wall`].
pub fn generate_structured_mesh(dim: usize, extents: [f64; 3], divisions: [usize; 3]) -> Result<Mesh> {
    if dim != 2 && dim != 3 {
        return Err(Error::InvalidMeshSpec(format!("dimension {dim} not in {{2,3}}")));
    }
    if extents[..dim].iter().any(|&e| !(e > 0.0)) {
        return Err(Error::InvalidMeshSpec("extents must be positive".into()));
    }
    let nx = divisions[0].max(1);
    let ny = divisions[1].max(1);
    let nz = if dim == 3 { divisions[2].max(1) } else { 0 };
    let dx = extents[0] / nx as f64;
    let dy = extents[1] / ny as f64;
    let dz = if dim == 3 { extents[2] / nz as f64 } else { 0.0 };
    let id = |i: usize, j: usize, k: usize| i + (nx + 1) * (j + (ny + 1) * k);

    let mut nodes = Vec::new();
    for k in 0..=nz {
        for j in 0..=ny {
            for i in 0..=nx {
                let x = if i == nx { extents[0] } else { i as f64 * dx };
                let y = if j == ny { extents[1] } else { j as f64 * dy };
                let z = if dim == 3 {
                    if k == nz {
                        extents[2]
                    } else {
                        k as f64 * dz
                    }
                } else {
                    0.0
                };
                nodes.push([x, y, z]);
            }
        }
    }

    let mut simplices = Vec::new();
    if dim == 2 {
        for j in 0..ny {
            for i in 0..nx {
                let (v00, v10, v01, v11) = (id(i, j, 0), id(i + 1, j, 0), id(i, j + 1, 0), id(i + 1, j + 1, 0));
                simplices.push(vec![v00, v10, v11]);
                simplices.push(vec![v00, v11, v01]);
            }
        }
    } else {
        const AXIS_ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for k in 0..nz {
            for j in 0..ny {
                for i in 0..nx {
                    for order in AXIS_ORDERS {
                        let mut c = [i, j, k];
                        let mut tet = vec![id(c[0], c[1], c[2])];
                        for axis in order {
                            c[axis] += 1;
                            tet.push(id(c[0], c[1], c[2]));
                        }
                        simplices.push(tet);
                    }
                }
            }
        }
    }

    // Boundary facets: facets owned by exactly one simplex.
    let mut count: HashMap<Vec<usize>, (usize, Vec<usize>)> = HashMap::new();
    let mut order = Vec::new();
    for s in &simplices {
        for f in 0..=dim {
            let nodes_f: Vec<usize> = local_facet(dim, f).iter().map(|&l| s[l]).collect();
            let key = sorted_key(&nodes_f);
            let e = count.entry(key.clone()).or_insert_with(|| {
                order.push(key);
                (0, nodes_f)
            });
            e.0 += 1;
        }
    }
    let xmax = nx;
    let mut boundary = Vec::new();
    for key in order {
        let (c, ref nodes_f) = count[&key];
        if c != 1 {
            continue;
        }
        let ix: Vec<usize> = nodes_f.iter().map(|&n| n % (nx + 1)).collect();
        let label = if ix.iter().all(|&i| i == 0) {
            BoundaryLabel::In
        } else if ix.iter().all(|&i| i == xmax) {
            BoundaryLabel::Out
        } else {
            BoundaryLabel::Wall
        };
        boundary.push(BoundaryFacet {
            nodes: nodes_f.clone(),
            label,
        });
    }

    Mesh::from_parts(dim, nodes, simplices, boundary)
}

/// Affine barycentric coordinates of one simplex.
#[derive(Debug, Clone)]
pub struct BarycentricFrame {
    dim: usize,
    origin: Vec3,
    grads: Vec<Vec3>,
    measure: f64,
}

impl BarycentricFrame {
    /// Build the frame of the simplex with the given vertices (3 in 2d, 4 in 3d).
    pub fn new(vertices: &[Vec3]) -> Result<Self> {
        let dim = vertices.len().saturating_sub(1);
        if dim != 2 && dim != 3 {
            return Err(Error::InvalidMesh(format!("{} vertices do not form a triangle or tetrahedron", vertices.len())));
        }
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for p in vertices {
            for k in 0..3 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let scale = (0..dim).map(|k| hi[k] - lo[k]).fold(0.0, f64::max);
        let measure = geom::simplex_measure(vertices);
        let threshold = 1e-14 * scale.powi(dim as i32);
        if !(measure > threshold) {
            return Err(Error::DegenerateSimplex { measure, threshold });
        }
        let o = vertices[0];
        let mut grads = vec![[0.0; 3]; dim + 1];
        if dim == 2 {
            let a = geom::sub(vertices[1], o);
            let b = geom::sub(vertices[2], o);
            let det = a[0] * b[1] - a[1] * b[0];
            grads[1] = [b[1] / det, -b[0] / det, 0.0];
            grads[2] = [-a[1] / det, a[0] / det, 0.0];
        } else {
            let a = geom::sub(vertices[1], o);
            let b = geom::sub(vertices[2], o);
            let c = geom::sub(vertices[3], o);
            let det = geom::dot(a, geom::cross(b, c));
            grads[1] = geom::scale(geom::cross(b, c), 1.0 / det);
            grads[2] = geom::scale(geom::cross(c, a), 1.0 / det);
            grads[3] = geom::scale(geom::cross(a, b), 1.0 / det);
        }
        let mut g0 = [0.0; 3];
        for g in &grads[1..] {
            g0 = geom::sub(g0, *g);
        }
        grads[0] = g0;
        Ok(BarycentricFrame {
            dim,
            origin: o,
            grads,
            measure,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn measure(&self) -> f64 {
        self.measure
    }

    /// Constant gradients of the barycentric coordinates.
    pub fn gradients(&self) -> &[Vec3] {
        &self.grads
    }

    pub fn lambda(&self, x: Vec3) -> Vec<f64> {
        let d = geom::sub(x, self.origin);
        let mut l = vec![0.0; self.dim + 1];
        let mut rest = 1.0;
        for k in 1..=self.dim {
            l[k] = geom::dot(self.grads[k], d);
            rest -= l[k];
        }
        l[0] = rest;
        l
    }

    /// Values and gradients of all barycentric coordinates at `x`.
    pub fn eval(&self, x: Vec3) -> (Vec<f64>, &[Vec3]) {
        (self.lambda(x), &self.grads)
    }
}
