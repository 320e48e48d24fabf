//! Turn point-group operations (signed permutation matrices over orbitals)
//! into single Pauli-Z symmetry strings.
//!
//! Run with: cargo run --example pointgroup_to_pauli

use symtaper::pointgroup::{second_quantized_permutation, simultaneous_diagonalize};
use symtaper::SignedPermutation;

fn main() -> symtaper::Result<()> {
    // A diagonal operation with -1 entries at modes 2 and 4 (1-based) of a
    // 5-mode system is already a parity operator: its Pauli string is Z2 Z4.
    let diag = SignedPermutation::new(vec![0, 1, 2, 3, 4], vec![1, -1, 1, -1, 1])?;
    let (v, syms) = simultaneous_diagonalize(&[diag])?;
    println!(
        "diagonal reflection: rotation is identity = {}, Z string = {}",
        v.is_identity(),
        syms[0].pauli().label()
    );

    // A mode swap has eigenvectors (e_p ± e_q)/sqrt(2); the -1 eigenvalue
    // shows up on the antisymmetric combination and the symmetry becomes a
    // Z on that rotated mode.
    let swap = SignedPermutation::new(vec![1, 0], vec![1, 1])?;
    let (v, syms) = simultaneous_diagonalize(std::slice::from_ref(&swap))?;
    println!("\nmode swap on 2 modes:");
    println!("  V = {:.4}", v.matrix());
    println!(
        "  Z string in the rotated basis: {}",
        syms[0].pauli().label()
    );

    // The same swap as a Fock-space operator under Jordan-Wigner: a sum of
    // Pauli strings, which is why the kernel search alone cannot see it.
    let rhat = second_quantized_permutation(&swap)?;
    println!("  second-quantized image ({} terms):", rhat.n_terms());
    for (s, c) in rhat.iter_terms() {
        println!("    {:+.4} {}", c.re, s.label());
    }
    Ok(())
}
