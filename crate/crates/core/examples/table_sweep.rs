//! Run a named parameter sweep and print the results as CSV.
//!
//! `cargo run --release --example table_sweep -- table3`

use edgefem::experiment::{preset, run_experiment, CSV_HEADER};

fn main() -> edgefem::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "table1".into());
    println!("{CSV_HEADER}");
    for config in preset(&name)? {
        let config = edgefem::experiment::ExperimentConfig { spectrum: false, ..config };
        println!("{}", run_experiment(&config)?.csv_row());
    }
    Ok(())
}
