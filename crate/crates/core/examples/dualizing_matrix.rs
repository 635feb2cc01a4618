//! Exact generalized Vandermonde matrix and its inverse.
//!
//! `cargo run --example dualizing_matrix -- 3 2` prints the inverse for
//! `d = 3`, `r = 2` as CSV.

use edgefem::elements::{assemble_vandermonde, build_generators, space_dimension};

fn main() -> edgefem::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let d = args.first().copied().unwrap_or(3);
    let r = args.get(1).copied().unwrap_or(2);

    let dm = assemble_vandermonde(r, d)?;
    eprintln!("d = {d}, r = {r}: {} basis functions", space_dimension(r, d));
    for (i, g) in build_generators(r, d)?.iter().enumerate() {
        eprintln!("  g{i:<3} {:?} on edge {:?} times {:?}", g.kind, g.edge, g.multi_index.0);
    }
    match dm.vinv_integers() {
        Some(_) => eprintln!("inverse is integral"),
        None => eprintln!("inverse has fractional entries"),
    }
    print!("{}", dm.to_csv(true));
    Ok(())
}
