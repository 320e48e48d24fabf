//! Exact eigensolvers: the dense path against the matrix-free Lanczos path.
//!
//! Run with: cargo run --example spectrum_check

use num_complex::Complex64;
use symtaper::spectrum::{dense_spectrum, min_eigenvalue_iterative};
use symtaper::{PauliString, PauliSum};

fn main() -> symtaper::Result<()> {
    // a toy 8-qubit transverse-field Ising chain
    let n = 8;
    let mut h = PauliSum::new(n);
    for q in 0..n - 1 {
        let mut label = vec!['I'; n];
        label[q] = 'Z';
        label[q + 1] = 'Z';
        h.add(
            &PauliString::from_label(&label.iter().collect::<String>())?,
            Complex64::new(-1.0, 0.0),
        );
    }
    for q in 0..n {
        let mut label = vec!['I'; n];
        label[q] = 'X';
        h.add(
            &PauliString::from_label(&label.iter().collect::<String>())?,
            Complex64::new(-0.75, 0.0),
        );
    }

    let dense = dense_spectrum(&h)?;
    let iterative = min_eigenvalue_iterative(&h, 0)?;
    println!("dense minimum eigenvalue:     {:.12}", dense.min_eigenvalue);
    println!(
        "iterative minimum eigenvalue: {:.12}  ({} iterations, residual {:.2e})",
        iterative.min_eigenvalue, iterative.iterations, iterative.residual
    );
    println!(
        "agreement: {:.2e}",
        (dense.min_eigenvalue - iterative.min_eigenvalue).abs()
    );
    Ok(())
}
