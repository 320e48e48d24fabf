//! GF(2) linear algebra: check matrices, kernels, and extraction of an
//! independent commuting generator set for the symmetry group of a Pauli sum.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliSum};

/// Dense binary matrix, one packed bit vector per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Bits>,
}

impl BinMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BinMatrix {
            rows,
            cols,
            data: vec![Bits::zeros(cols); rows],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Bits>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row width mismatch");
        }
        BinMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BinMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.data[r].set(c, v);
    }

    pub fn row(&self, r: usize) -> &Bits {
        &self.data[r]
    }

    /// m · v over GF(2).
    pub fn mul_vec(&self, v: &Bits) -> Bits {
        assert_eq!(v.len(), self.cols);
        let mut out = Bits::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            if row.and_count(v) % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    /// In-place reduced row echelon form. Returns the pivot columns in order.
    /// Pivoting is leftmost-nonzero with rows processed in input order, so the
    /// result is deterministic.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i].get(c)) else {
                continue;
            };
            self.data.swap(r, pr);
            let pivot_row = self.data[r].clone();
            for (i, row) in self.data.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_with(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right nullspace {v : m·v = 0} over GF(2). The basis is in
    /// reduced form keyed to the free columns, hence deterministic.
    pub fn kernel(&self) -> Vec<Bits> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = Bits::zeros(self.cols);
            v.set(free, true);
            // pivot row i has its pivot at pivots[i]; solve backwards
            for (i, &pc) in pivots.iter().enumerate() {
                if m.data[i].get(free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Check matrix E of shape r x 2M: row j is (a_z | a_x) of Hamiltonian term j.
/// Its kernel, read as (v_x | v_z), is the set of Pauli strings commuting with
/// every term.
pub fn build_check_matrix(h: &PauliSum) -> Result<BinMatrix> {
    if h.is_empty() {
        return Err(Error::Precondition(
            "cannot build a check matrix for an empty Hamiltonian".into(),
        ));
    }
    let rows = h
        .iter_terms()
        .map(|(s, _)| s.z_bits().concat(s.x_bits()))
        .collect();
    Ok(BinMatrix::from_rows(2 * h.n_qubits(), rows))
}

/// Reduce a kernel basis to an independent set of Pauli symmetry generators.
///
/// Vectors are read as (a_x | a_z), brought to reduced row echelon form so
/// each generator owns a distinguishing pivot bit, and returned in pivot
/// order. The identity (all-zero vector) is never emitted, and every
/// generator is re-checked to commute with all Hamiltonian terms and with the
/// other generators; a failure there means the caller handed in vectors that
/// are not actually in the kernel.
pub fn extract_generators(kernel_basis: &[Bits], h: &PauliSum) -> Result<Vec<PauliString>> {
    let n = h.n_qubits();
    if kernel_basis.is_empty() {
        return Ok(Vec::new());
    }
    for v in kernel_basis {
        if v.len() != 2 * n {
            return Err(Error::SizeMismatch(format!(
                "kernel vector has {} bits, expected {}",
                v.len(),
                2 * n
            )));
        }
    }
    let mut m = BinMatrix::from_rows(2 * n, kernel_basis.to_vec());
    let pivots = m.rref();
    let mut gens = Vec::with_capacity(pivots.len());
    for i in 0..pivots.len() {
        let row = m.row(i);
        if row.is_zero() {
            continue;
        }
        let (x, z) = row.split(n);
        gens.push(PauliString::from_symplectic(x, z)?);
    }
    for (i, g) in gens.iter().enumerate() {
        if !h.commutes_with(g)? {
            return Err(Error::Precondition(format!(
                "candidate generator {} does not commute with the Hamiltonian (upstream bug)",
                g.label()
            )));
        }
        for other in gens.iter().skip(i + 1) {
            if !PauliString::commutes(g, other)? {
                return Err(Error::Precondition(format!(
                    "symmetry candidates {} and {} anticommute; the commutant is not abelian",
                    g.label(),
                    other.label()
                )));
            }
        }
    }
    Ok(gens)
}

/// Symplectic row (x | z) of a Pauli string, as used by `extract_generators`.
pub fn symplectic_row(s: &PauliString) -> Bits {
    s.x_bits().concat(s.z_bits())
}
