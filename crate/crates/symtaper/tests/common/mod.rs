//! Shared oracle helpers for the integration tests.
//!
//! Everything here is built from first principles (explicit 2x2 matrices,
//! Kronecker products, occupation-basis fermionic operators) so the oracles
//! stay independent of the library's symplectic bit representation.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use symtaper::PauliSum;

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn ci(im: f64) -> Complex64 {
    Complex64::new(0.0, im)
}

fn single(label: char) -> CMat {
    let z = c(0.0);
    match label {
        'I' => CMat::from_row_slice(2, 2, &[c(1.0), z, z, c(1.0)]),
        'X' => CMat::from_row_slice(2, 2, &[z, c(1.0), c(1.0), z]),
        'Y' => CMat::from_row_slice(2, 2, &[z, ci(-1.0), ci(1.0), z]),
        'Z' => CMat::from_row_slice(2, 2, &[c(1.0), z, z, c(-1.0)]),
        _ => panic!("bad Pauli label {label}"),
    }
}

/// Kronecker product with qubit 0 on the least significant bit, matching the
/// amplitude convention 'bit q of the index is qubit q'.
pub fn pauli_matrix(label: &str) -> CMat {
    let mut m = CMat::from_row_slice(1, 1, &[c(1.0)]);
    for ch in label.chars() {
        m = single(ch).kronecker(&m);
    }
    m
}

/// Dense matrix of a whole Pauli sum, assembled from labels only.
pub fn sum_matrix(h: &PauliSum) -> CMat {
    let dim = 1usize << h.n_qubits();
    let mut m = CMat::from_element(dim, dim, c(0.0));
    for (s, coeff) in h.iter_terms() {
        m += pauli_matrix(&s.label()) * coeff;
    }
    m
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn eigenvalues(m: &CMat) -> Vec<f64> {
    let eig = m.clone().symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

pub fn commutator_norm(a: &CMat, b: &CMat) -> f64 {
    max_abs(&(a * b - b * a))
}

/// Occupation-basis annihilation operator for mode p out of m, with the
/// fermionic sign (-1)^(number of occupied modes below p). Bit q of the
/// basis index is mode q.
pub fn fermi_annihilate(p: usize, m: usize) -> CMat {
    let dim = 1usize << m;
    let mut out = CMat::from_element(dim, dim, c(0.0));
    for b in 0..dim {
        if (b >> p) & 1 == 1 {
            let sign = if ((b & ((1 << p) - 1)).count_ones() & 1) == 1 {
                -1.0
            } else {
                1.0
            };
            out[(b & !(1 << p), b)] = c(sign);
        }
    }
    out
}

pub fn fermi_create(p: usize, m: usize) -> CMat {
    fermi_annihilate(p, m).adjoint()
}

/// Dense second-quantized Hamiltonian assembled directly from spatial
/// chemist integrals in blocked spin ordering:
/// H = sum h[p,q] a†_ps a_qs + 1/2 sum (pq|rs) a†_ps a†_rt a_st a_qs + e_core.
pub fn dense_from_spatial(ns: usize, hcore: &[f64], eri_chem: &[f64], e_core: f64) -> CMat {
    let m = 2 * ns;
    let dim = 1usize << m;
    let a: Vec<CMat> = (0..m).map(|p| fermi_annihilate(p, m)).collect();
    let ad: Vec<CMat> = a.iter().map(|x| x.adjoint()).collect();
    let mut h = CMat::identity(dim, dim) * c(e_core);
    for p in 0..ns {
        for q in 0..ns {
            let v = hcore[p * ns + q];
            if v.abs() < 1e-15 {
                continue;
            }
            for spin in 0..2 {
                let (i, j) = (p + spin * ns, q + spin * ns);
                h += (&ad[i] * &a[j]) * c(v);
            }
        }
    }
    let chem = |p: usize, q: usize, r: usize, s: usize| eri_chem[((p * ns + q) * ns + r) * ns + s];
    for p in 0..ns {
        for q in 0..ns {
            for r in 0..ns {
                for s in 0..ns {
                    let v = chem(p, q, r, s);
                    if v.abs() < 1e-15 {
                        continue;
                    }
                    for sigma in 0..2 {
                        for tau in 0..2 {
                            let (i, j, k, l) =
                                (p + sigma * ns, r + tau * ns, s + tau * ns, q + sigma * ns);
                            h += (&ad[i] * &ad[j] * &a[k] * &a[l]) * c(0.5 * v);
                        }
                    }
                }
            }
        }
    }
    h
}

/// Tiny deterministic generator for test inputs.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed.wrapping_mul(0x9e3779b97f4a7c15) ^ 0x1234567890abcdef)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// uniform in [-1, 1)
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 52) as f64 * 2.0 - 1.0
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn pauli_label(&mut self, n: usize) -> String {
        (0..n)
            .map(|_| ['I', 'X', 'Y', 'Z'][self.below(4)])
            .collect()
    }
}

/// Random symmetric spatial integrals (hcore and 8-fold-symmetric chemist
/// eri) for ns spatial orbitals.
pub fn random_spatial_integrals(ns: usize, rng: &mut TestRng) -> (Vec<f64>, Vec<f64>) {
    let mut hcore = vec![0.0; ns * ns];
    for p in 0..ns {
        for q in 0..=p {
            let v = rng.unit();
            hcore[p * ns + q] = v;
            hcore[q * ns + p] = v;
        }
    }
    let mut eri = vec![0.0; ns * ns * ns * ns];
    let idx = |p: usize, q: usize, r: usize, s: usize| ((p * ns + q) * ns + r) * ns + s;
    for p in 0..ns {
        for q in 0..=p {
            for r in 0..=p {
                let smax = if r == p { q } else { r };
                for s in 0..=smax {
                    let v = 0.5 * rng.unit();
                    for (a, b, cc, d) in [
                        (p, q, r, s),
                        (q, p, r, s),
                        (p, q, s, r),
                        (q, p, s, r),
                        (r, s, p, q),
                        (s, r, p, q),
                        (r, s, q, p),
                        (s, r, q, p),
                    ] {
                        eri[idx(a, b, cc, d)] = v;
                    }
                }
            }
        }
    }
    (hcore, eri)
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}
