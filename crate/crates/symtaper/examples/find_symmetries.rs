//! Find the Z2 Pauli symmetries of a molecular Hamiltonian via the GF(2)
//! kernel of its check matrix.
//!
//! Run with: cargo run --example find_symmetries

use std::path::Path;

use symtaper::fermion::{map_hamiltonian, MappingKind};
use symtaper::gf2::{build_check_matrix, extract_generators};
use symtaper::parse_fcidump_file;

fn main() -> symtaper::Result<()> {
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/lih.fcidump");
    let ints = parse_fcidump_file(&fixture)?;
    println!(
        "LiH: {} spatial orbitals, {} electrons, e_core = {:.6} Ha",
        ints.n_spatial(),
        ints.n_electrons(),
        ints.e_core()
    );

    let h = map_hamiltonian(&ints, MappingKind::JordanWigner)?;
    println!(
        "Jordan-Wigner Hamiltonian: {} qubits, {} Pauli terms",
        h.n_qubits(),
        h.n_terms()
    );

    let e = build_check_matrix(&h)?;
    println!("check matrix E: {} x {}", e.rows(), e.cols());

    let kernel = e.kernel();
    let generators = extract_generators(&kernel, &h)?;
    println!("independent symmetry generators: {}", generators.len());
    for (i, g) in generators.iter().enumerate() {
        println!("  tau_{}: {}", i + 1, g.label());
    }
    Ok(())
}
