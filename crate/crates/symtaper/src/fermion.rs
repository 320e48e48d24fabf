//! Fermion-to-qubit mappings: mode operator images and Hamiltonian assembly.
//!
//! Jordan-Wigner places the Z string on modes strictly below the target mode,
//! so the occupation of mode p is stored in qubit p and an occupied mode
//! corresponds to the Z eigenvalue -1. The parity variant stores the running
//! occupation parity of modes 0..=p in qubit p.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fcidump::IntegralSet;
use crate::pauli::{Pauli, PauliString, PauliSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MappingKind {
    JordanWigner,
    Parity,
}

impl MappingKind {
    pub fn name(&self) -> &'static str {
        match self {
            MappingKind::JordanWigner => "jordan-wigner",
            MappingKind::Parity => "parity",
        }
    }
}

impl std::str::FromStr for MappingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jw" | "jordan-wigner" | "jordanwigner" => Ok(MappingKind::JordanWigner),
            "parity" => Ok(MappingKind::Parity),
            other => Err(Error::Usage(format!(
                "unsupported mapping '{other}' (expected jw or parity)"
            ))),
        }
    }
}

fn string_with(m: usize, entries: &[(usize, Pauli)]) -> PauliString {
    let mut s = PauliString::identity(m);
    for &(q, p) in entries {
        let single = PauliString::single(m, q, p);
        s = PauliString::multiply(&s, &single).expect("same size");
    }
    s
}

/// Qubit image of the annihilation operator a_p.
pub fn lowering_operator(p: usize, m: usize, kind: MappingKind) -> PauliSum {
    assert!(p < m, "mode index out of range");
    let half = Complex64::new(0.5, 0.0);
    let half_i = Complex64::new(0.0, 0.5);
    let mut sum = PauliSum::new(m);
    match kind {
        MappingKind::JordanWigner => {
            // a_p = Z_0..Z_{p-1} (X_p + i Y_p)/2
            let mut zx: Vec<(usize, Pauli)> = (0..p).map(|q| (q, Pauli::Z)).collect();
            let mut zy = zx.clone();
            zx.push((p, Pauli::X));
            zy.push((p, Pauli::Y));
            sum.add(&string_with(m, &zx), half);
            sum.add(&string_with(m, &zy), half_i);
        }
        MappingKind::Parity => {
            // a_p = X_{m-1}..X_{p+1} (X_p Z_{p-1} + i Y_p)/2
            let tail: Vec<(usize, Pauli)> = (p + 1..m).map(|q| (q, Pauli::X)).collect();
            let mut xz = tail.clone();
            xz.push((p, Pauli::X));
            if p > 0 {
                xz.push((p - 1, Pauli::Z));
            }
            let mut y = tail;
            y.push((p, Pauli::Y));
            sum.add(&string_with(m, &xz), half);
            sum.add(&string_with(m, &y), half_i);
        }
    }
    sum
}

/// Qubit image of the creation operator a†_p.
pub fn raising_operator(p: usize, m: usize, kind: MappingKind) -> PauliSum {
    lowering_operator(p, m, kind).adjoint()
}

/// Qubit image of a†_p a_q + a†_q a_p (p != q), or of the number operator
/// a†_p a_p (p == q). Hermitian by construction.
pub fn map_excitation(p: usize, q: usize, m: usize, kind: MappingKind) -> Result<PauliSum> {
    if p >= m || q >= m {
        return Err(Error::SizeMismatch(format!(
            "mode index out of range: ({p},{q}) for M={m}"
        )));
    }
    let mut out = PauliSum::mul(
        &raising_operator(p, m, kind),
        &lowering_operator(q, m, kind),
    )?;
    if p != q {
        let other = PauliSum::mul(
            &raising_operator(q, m, kind),
            &lowering_operator(p, m, kind),
        )?;
        out.add_sum(&other, Complex64::new(1.0, 0.0));
    }
    out.simplify();
    Ok(out)
}

/// Map the full second-quantized Hamiltonian to a qubit Pauli sum, including
/// the e_core identity term. Assembly follows the one- and two-body sums
/// term by term in index order, so the result is deterministic.
pub fn map_hamiltonian(ints: &IntegralSet, kind: MappingKind) -> Result<PauliSum> {
    let m = ints.n_spin_orbitals();
    let lowers: Vec<PauliSum> = (0..m).map(|p| lowering_operator(p, m, kind)).collect();
    let raisers: Vec<PauliSum> = lowers.iter().map(|a| a.adjoint()).collect();

    let mut h = PauliSum::identity(m, Complex64::new(ints.e_core(), 0.0));

    // one-body: precompute a†_i a_j products
    for i in 0..m {
        for j in 0..m {
            let v = ints.h1(i, j);
            if v.abs() <= 1e-14 {
                continue;
            }
            let prod = PauliSum::mul(&raisers[i], &lowers[j])?;
            h.add_sum(&prod, Complex64::new(v, 0.0));
        }
    }

    // two-body: 1/2 sum h2[i,j,k,l] a†_i a†_j a_k a_l, with pair products
    // cached so each (i,j) / (k,l) pair is multiplied once.
    let mut raise_pairs: Vec<Option<PauliSum>> = vec![None; m * m];
    let mut lower_pairs: Vec<Option<PauliSum>> = vec![None; m * m];
    for i in 0..m {
        for j in 0..m {
            let mut any = false;
            for k in 0..m {
                for l in 0..m {
                    if ints.h2(i, j, k, l).abs() > 1e-14 {
                        any = true;
                        break;
                    }
                }
                if any {
                    break;
                }
            }
            if !any {
                continue;
            }
            if raise_pairs[i * m + j].is_none() {
                raise_pairs[i * m + j] = Some(PauliSum::mul(&raisers[i], &raisers[j])?);
            }
            let rp = raise_pairs[i * m + j].as_ref().unwrap().clone();
            if rp.is_empty() {
                continue; // a†_i a†_i = 0
            }
            for k in 0..m {
                for l in 0..m {
                    let v = ints.h2(i, j, k, l);
                    if v.abs() <= 1e-14 {
                        continue;
                    }
                    if lower_pairs[k * m + l].is_none() {
                        lower_pairs[k * m + l] = Some(PauliSum::mul(&lowers[k], &lowers[l])?);
                    }
                    let lp = lower_pairs[k * m + l].as_ref().unwrap();
                    if lp.is_empty() {
                        continue;
                    }
                    let prod = PauliSum::mul(&rp, lp)?;
                    h.add_sum(&prod, Complex64::new(0.5 * v, 0.0));
                }
            }
        }
    }

    h.simplify();
    if !h.is_hermitian(1e-9) {
        return Err(Error::Precondition(
            "mapped Hamiltonian has non-real coefficients; integrals are not Hermitian".into(),
        ));
    }
    Ok(h)
}
