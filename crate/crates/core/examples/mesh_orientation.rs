//! Global numbering, edge orientation and the local permutations it induces.

use edgefem::elements::{dof_permutation, node_permutation};
use edgefem::mesh::{generate_structured_mesh, local_edges};

fn main() -> edgefem::Result<()> {
    let mesh = generate_structured_mesh(3, [1.0, 1.0, 1.0], [2, 1, 1])?;
    println!(
        "{} nodes, {} simplices, {} edges, {} faces, {} boundary facets",
        mesh.num_nodes(),
        mesh.num_simplices(),
        mesh.num_edges(),
        mesh.num_faces(),
        mesh.boundary().len()
    );

    let s = 0;
    let nodes = mesh.simplex(s);
    println!("simplex {s}: nodes {nodes:?}");
    for (k, &(a, b)) in local_edges(3).iter().enumerate() {
        let sign = mesh.edge_orientation_sign(s, k)?;
        println!("  local edge ({a},{b}) -> global {:?}, sign {sign:+}", mesh.edges()[mesh.simplex_edges(s)[k]]);
    }

    let global = [12, 32, 42, 22];
    println!("node permutation of {global:?}: {:?}", node_permutation(&global)?);
    println!("dof permutation r=2: {:?}", dof_permutation(2, 3, &global)?);
    Ok(())
}
