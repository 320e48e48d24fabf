//! Qubit-count reduction for second-quantized molecular Hamiltonians.
//!
//! The library discovers Z2 Pauli symmetries of a qubit Hamiltonian through
//! the GF(2) kernel of its check matrix, converts molecular point-group
//! operations (signed permutation matrices over atom-centred orbitals) into
//! Pauli-Z symmetries, and tapers qubits by conjugating with Cliffords of the
//! form (tau + sigma_x)/sqrt(2) and substituting sector eigenvalues. An exact
//! small-scale eigensolver verifies that tapering preserves the spectrum.
//!
//! Pipeline entry points live in [`pipeline`]; the `symtaper` binary and the
//! runnable examples are thin wrappers over them.

pub mod bits;
pub mod error;
pub mod fcidump;
pub mod fermion;
pub mod gf2;
pub mod pauli;
pub mod pipeline;
pub mod pointgroup;
pub mod report;
pub mod spectrum;
pub mod taper;

pub use error::{Error, Result};
pub use fcidump::{parse_fcidump, parse_fcidump_file, IntegralSet};
pub use fermion::{map_excitation, map_hamiltonian, MappingKind};
pub use pauli::{Pauli, PauliString, PauliSum};
pub use pointgroup::{OrbitalRotation, SignedPermutation, ZSymmetry};
pub use spectrum::{dense_spectrum, min_eigenvalue_iterative, SpectrumResult};
pub use taper::TaperingPlan;
