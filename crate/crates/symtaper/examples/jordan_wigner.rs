//! Jordan-Wigner images of fermionic operators.
//!
//! Run with: cargo run --example jordan_wigner

use symtaper::fermion::{map_excitation, MappingKind};

fn print_sum(name: &str, sum: &symtaper::PauliSum) {
    println!("{name}:");
    for (s, c) in sum.iter_terms() {
        println!("  {:+.4}{:+.4}i  {}", c.re, c.im, s.label());
    }
}

fn main() -> symtaper::Result<()> {
    let jw = MappingKind::JordanWigner;

    // occupation of mode 0: (I - Z)/2, so an occupied mode reads Z = -1
    print_sum("n_0 on 1 mode", &map_excitation(0, 0, 1, jw)?);

    // nearest-neighbour hopping: (X X + Y Y)/2
    print_sum(
        "\na†_0 a_1 + a†_1 a_0 on 2 modes",
        &map_excitation(0, 1, 2, jw)?,
    );

    // long-range hopping carries the Z string that keeps fermionic signs
    print_sum(
        "\na†_0 a_2 + a†_2 a_0 on 3 modes",
        &map_excitation(0, 2, 3, jw)?,
    );

    // the parity mapping trades Z strings for X strings
    print_sum(
        "\nsame operator under the parity mapping",
        &map_excitation(0, 2, 3, MappingKind::Parity)?,
    );
    Ok(())
}
