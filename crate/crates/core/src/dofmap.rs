//! Global numbering of edge, face and volume dofs.
//!
//! Layout: all edge blocks by mesh edge id, then face blocks (mesh face id in
//! 3d, triangle id in 2d), then volume blocks by tetrahedron id. Each block
//! keeps the construction order of its entity, which depends only on the
//! global numbers of the entity's nodes, so every adjacent simplex maps a
//! shared dof to the same index with sign `+1`.

use crate::elements::{check_degree, dofs_per_entity};
use crate::error::Result;
use crate::geom::{self, Vec3};
use crate::mesh::{local_edges, BoundaryLabel, Mesh};

/// Entity carrying a global dof.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DofEntity {
    Edge(usize),
    /// Mesh face in 3d, triangle in 2d.
    Face(usize),
    /// Tetrahedron (3d only).
    Volume(usize),
}

#[derive(Debug, Clone)]
pub struct DofMap {
    r: usize,
    dim: usize,
    per_edge: usize,
    per_face: usize,
    per_volume: usize,
    face_offset: usize,
    volume_offset: usize,
    n_dofs: usize,
    element_dofs: Vec<Vec<usize>>,
    constrained: Vec<bool>,
    free_index: Vec<Option<usize>>,
    free: Vec<usize>,
}

impl DofMap {
    pub fn new(mesh: &Mesh, r: usize) -> Result<Self> {
        let dim = mesh.dim();
        check_degree(r, dim)?;
        let (per_edge, per_face, per_volume) = dofs_per_entity(r, dim);
        let n_face_entities = if dim == 2 { mesh.num_simplices() } else { mesh.num_faces() };
        let n_volume_entities = if dim == 3 { mesh.num_simplices() } else { 0 };
        let face_offset = mesh.num_edges() * per_edge;
        let volume_offset = face_offset + n_face_entities * per_face;
        let n_dofs = volume_offset + n_volume_entities * per_volume;

        let n_local_edges = local_edges(dim).len();
        let mut element_dofs = Vec::with_capacity(mesh.num_simplices());
        for s in 0..mesh.num_simplices() {
            let mut dofs = Vec::new();
            for i in 0..n_local_edges {
                let e = mesh.simplex_edges(s)[i];
                dofs.extend((0..per_edge).map(|t| e * per_edge + t));
            }
            if per_face > 0 {
                if dim == 2 {
                    dofs.extend((0..per_face).map(|t| face_offset + s * per_face + t));
                } else {
                    for &f in mesh.simplex_faces(s) {
                        dofs.extend((0..per_face).map(|t| face_offset + f * per_face + t));
                    }
                }
            }
            dofs.extend((0..per_volume).map(|t| volume_offset + s * per_volume + t));
            element_dofs.push(dofs);
        }

        let mut constrained = vec![false; n_dofs];
        for facet in mesh.boundary().iter().filter(|f| f.label == BoundaryLabel::Wall) {
            let n = &facet.nodes;
            for a in 0..n.len() {
                for b in a + 1..n.len() {
                    if let Some(e) = mesh.edge_id(n[a], n[b]) {
                        constrained[e * per_edge..(e + 1) * per_edge].fill(true);
                    }
                }
            }
            if dim == 3 && per_face > 0 {
                if let Some(f) = mesh.face_id([n[0], n[1], n[2]]) {
                    let o = face_offset + f * per_face;
                    constrained[o..o + per_face].fill(true);
                }
            }
        }
        let mut free_index = vec![None; n_dofs];
        let mut free = Vec::new();
        for g in 0..n_dofs {
            if !constrained[g] {
                free_index[g] = Some(free.len());
                free.push(g);
            }
        }
        Ok(DofMap {
            r,
            dim,
            per_edge,
            per_face,
            per_volume,
            face_offset,
            volume_offset,
            n_dofs,
            element_dofs,
            constrained,
            free_index,
            free,
        })
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Total number of dofs, constrained ones included.
    pub fn n_dofs(&self) -> usize {
        self.n_dofs
    }

    /// Number of dofs not on the metallic wall.
    pub fn n_free(&self) -> usize {
        self.free.len()
    }

    pub fn per_entity(&self) -> (usize, usize, usize) {
        (self.per_edge, self.per_face, self.per_volume)
    }

    /// Global dofs of simplex `s` in local storage order.
    pub fn element_dofs(&self, s: usize) -> &[usize] {
        &self.element_dofs[s]
    }

    pub fn is_constrained(&self, g: usize) -> bool {
        self.constrained[g]
    }

    pub fn free_index(&self, g: usize) -> Option<usize> {
        self.free_index[g]
    }

    /// Global index of each free dof, increasing.
    pub fn free_dofs(&self) -> &[usize] {
        &self.free
    }

    pub fn entity(&self, g: usize) -> DofEntity {
        if g < self.face_offset {
            DofEntity::Edge(g / self.per_edge)
        } else if g < self.volume_offset {
            DofEntity::Face((g - self.face_offset) / self.per_face)
        } else {
            DofEntity::Volume((g - self.volume_offset) / self.per_volume)
        }
    }

    /// Barycenter of the support entity of dof `g`.
    pub fn support_barycenter(&self, mesh: &Mesh, g: usize) -> Vec3 {
        let nodes: Vec<usize> = match self.entity(g) {
            DofEntity::Edge(e) => mesh.edges()[e].to_vec(),
            DofEntity::Face(f) if self.dim == 3 => mesh.faces()[f].to_vec(),
            DofEntity::Face(s) | DofEntity::Volume(s) => mesh.simplex(s).to_vec(),
        };
        let mut c = [0.0; 3];
        for &n in &nodes {
            c = geom::add(c, mesh.nodes()[n]);
        }
        geom::scale(c, 1.0 / nodes.len() as f64)
    }

    /// Scatter a vector over free dofs into a full dof vector (zeros on the wall).
    pub fn expand<T: Copy + Default>(&self, free_values: &[T]) -> Vec<T> {
        let mut out = vec![T::default(); self.n_dofs];
        for (k, &g) in self.free.iter().enumerate() {
            out[g] = free_values[k];
        }
        out
    }

    /// Restrict a full dof vector to the free dofs.
    pub fn restrict<T: Copy>(&self, full: &[T]) -> Vec<T> {
        self.free.iter().map(|&g| full[g]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::generate_structured_mesh;

    #[test]
    fn counts_on_planar_strip() {
        let mesh = generate_structured_mesh(2, [1.0, 0.1, 0.0], [40, 2, 0]).unwrap();
        let expect = [(1, 282), (2, 884), (3, 1806), (5, 4610)];
        for (r, n) in expect {
            assert_eq!(DofMap::new(&mesh, r).unwrap().n_dofs(), n, "r={r}");
        }
    }

    #[test]
    fn shared_edges_map_identically() {
        let mesh = generate_structured_mesh(3, [1.0, 1.0, 1.0], [2, 1, 1]).unwrap();
        let dm = DofMap::new(&mesh, 2).unwrap();
        for s in 0..mesh.num_simplices() {
            for (i, &e) in mesh.simplex_edges(s).iter().enumerate() {
                assert_eq!(dm.element_dofs(s)[2 * i], 2 * e);
            }
        }
    }

    #[test]
    fn wall_dofs_are_constrained() {
        let mesh = generate_structured_mesh(2, [1.0, 1.0, 0.0], [2, 2, 0]).unwrap();
        let dm = DofMap::new(&mesh, 1).unwrap();
        // 4 wall edges on y=0 and y=1, interior and in/out edges free
        assert_eq!(dm.n_dofs() - dm.n_free(), 4);
        let full = dm.expand(&vec![1.0; dm.n_free()]);
        assert_eq!(dm.restrict(&full).len(), dm.n_free());
    }
}
