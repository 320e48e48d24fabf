//! The full tapering pipeline on the BeH2 fixture: the three reflection
//! planes give five commuting symmetries, one more than the kernel search
//! alone can find, so 14 qubits reduce to 9.
//!
//! Run with: cargo run --example taper_molecule

use std::path::Path;

use symtaper::pipeline::{run_taper, RunConfig};

fn main() -> symtaper::Result<()> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let cfg = RunConfig::new(fixtures.join("beh2.fcidump"))
        .with_symmetries(fixtures.join("beh2_sym.json"));
    let (report, artifacts) = run_taper(&cfg)?;
    print!("{report}");
    println!(
        "\nreduced Hamiltonian acts on {} qubits ({} terms)",
        artifacts.reduced.n_qubits(),
        artifacts.reduced.n_terms()
    );
    Ok(())
}
