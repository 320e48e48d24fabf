//! Exact small-scale eigensolvers for Pauli sums: a dense path for small
//! qubit counts and a matrix-free restarted Lanczos path for the extremal
//! eigenvalue up to 20 qubits.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pauli::PauliSum;

pub const DENSE_QUBIT_LIMIT: usize = 14;
pub const ITERATIVE_QUBIT_LIMIT: usize = 20;
const RESIDUAL_TOL: f64 = 1e-9;
const ITERATION_CAP: usize = 2000;

#[derive(Debug, Clone)]
pub struct SpectrumResult {
    /// Lowest eigenvalue (Hartree for molecular inputs).
    pub min_eigenvalue: f64,
    /// Full ascending spectrum; dense path only.
    pub spectrum: Option<Vec<f64>>,
    pub iterations: usize,
    pub residual: f64,
}

/// Terms flattened for fast matrix-free application (single-word masks).
struct CompiledTerm {
    x_mask: u64,
    z_mask: u64,
    coeff: Complex64, // folded coefficient times i^{y_count}
}

fn compile_terms(h: &PauliSum) -> Vec<CompiledTerm> {
    h.iter_terms()
        .map(|(s, c)| {
            let x_mask = s.x_bits().words().first().copied().unwrap_or(0);
            let z_mask = s.z_bits().words().first().copied().unwrap_or(0);
            let y = (x_mask & z_mask).count_ones() as usize;
            let iy = match y % 4 {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
            CompiledTerm {
                x_mask,
                z_mask,
                coeff: c * iy,
            }
        })
        .collect()
}

fn apply_compiled(terms: &[CompiledTerm], x: &[Complex64], out: &mut [Complex64]) {
    // Gather form: out[j] = sum_t coeff_t * sign * x[j ^ xm_t]. Each output
    // element is accumulated in fixed term order, so the result is bitwise
    // deterministic for any thread count.
    out.par_iter_mut().enumerate().for_each(|(j, y)| {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in terms {
            let src = j ^ t.x_mask as usize;
            let sign = if ((src as u64 & t.z_mask).count_ones() & 1) == 1 {
                -1.0
            } else {
                1.0
            };
            acc += t.coeff * sign * x[src];
        }
        *y = acc;
    });
}

/// y = H·x computed term by term, no matrix materialization.
pub fn apply_pauli_sum(h: &PauliSum, x: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = h.n_qubits();
    if n > ITERATIVE_QUBIT_LIMIT {
        return Err(Error::TooLarge(format!(
            "state vectors for {n} qubits exceed the {ITERATIVE_QUBIT_LIMIT}-qubit limit"
        )));
    }
    let dim = 1usize << n;
    if x.len() != dim {
        return Err(Error::SizeMismatch(format!(
            "state vector of length {} for {} qubits (expected {})",
            x.len(),
            n,
            dim
        )));
    }
    let terms = compile_terms(h);
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    apply_compiled(&terms, x, &mut out);
    Ok(out)
}

/// Dense 2^n x 2^n matrix of the sum. Intended for small n (tests, oracles).
pub fn to_dense(h: &PauliSum) -> DMatrix<Complex64> {
    let n = h.n_qubits();
    assert!(n <= DENSE_QUBIT_LIMIT, "dense matrix too large");
    let dim = 1usize << n;
    let terms = compile_terms(h);
    let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for t in &terms {
        for col in 0..dim {
            let row = col ^ t.x_mask as usize;
            let sign = if ((col as u64 & t.z_mask).count_ones() & 1) == 1 {
                -1.0
            } else {
                1.0
            };
            m[(row, col)] += t.coeff * sign;
        }
    }
    m
}

fn require_hermitian(h: &PauliSum) -> Result<()> {
    if !h.is_hermitian(1e-9) {
        return Err(Error::Precondition(
            "spectrum requested for a non-Hermitian Pauli sum".into(),
        ));
    }
    Ok(())
}

/// Full real spectrum, ascending. n_qubits must be at most 14.
pub fn dense_spectrum(h: &PauliSum) -> Result<SpectrumResult> {
    let n = h.n_qubits();
    if n > DENSE_QUBIT_LIMIT {
        return Err(Error::TooLarge(format!(
            "dense path limited to {DENSE_QUBIT_LIMIT} qubits, got {n}"
        )));
    }
    require_hermitian(h)?;
    let m = to_dense(h);
    let eig = m.symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(SpectrumResult {
        min_eigenvalue: vals[0],
        spectrum: Some(vals),
        iterations: 0,
        residual: 0.0,
    })
}

/// splitmix64: tiny deterministic generator for start vectors.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn unit_uniform(state: &mut u64) -> f64 {
    // [-1, 1)
    (splitmix64(state) >> 11) as f64 / (1u64 << 52) as f64 * 2.0 - 1.0
}

pub(crate) fn seeded_vector(dim: usize, seed: u64) -> Vec<Complex64> {
    let mut state = seed.wrapping_mul(0x2545f4914f6cdd1d) ^ 0x853c49e6748fea9b;
    let mut v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(unit_uniform(&mut state), unit_uniform(&mut state)))
        .collect();
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    for c in &mut v {
        *c /= norm;
    }
    v
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Lowest eigenvalue via restarted Lanczos with full reorthogonalization,
/// deterministic for a given seed.
pub fn min_eigenvalue_iterative(h: &PauliSum, seed: u64) -> Result<SpectrumResult> {
    let n = h.n_qubits();
    if n > ITERATIVE_QUBIT_LIMIT {
        return Err(Error::TooLarge(format!(
            "iterative path limited to {ITERATIVE_QUBIT_LIMIT} qubits, got {n}"
        )));
    }
    require_hermitian(h)?;
    let dim = 1usize << n;
    let terms = compile_terms(h);

    // window size bounded by a vector-storage budget
    let budget_vectors = ((768usize << 20) / (dim * 16)).max(24);
    let window = dim.min(160).min(budget_vectors);

    let mut v0 = seeded_vector(dim, seed);
    let mut total_iters = 0usize;
    let mut last_residual = f64::INFINITY;
    let mut scratch = vec![Complex64::new(0.0, 0.0); dim];

    while total_iters < ITERATION_CAP {
        let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(window);
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();
        basis.push(v0.clone());
        let mut invariant = false;

        for j in 0..window {
            if total_iters >= ITERATION_CAP {
                break;
            }
            total_iters += 1;
            apply_compiled(&terms, &basis[j], &mut scratch);
            let mut w = scratch.clone();
            let alpha = dot(&basis[j], &w).re;
            alphas.push(alpha);
            // full reorthogonalization, twice for stability
            for _ in 0..2 {
                for q in &basis {
                    let proj = dot(q, &w);
                    for (wi, qi) in w.iter_mut().zip(q) {
                        *wi -= proj * qi;
                    }
                }
            }
            let beta = norm(&w);
            if beta < 1e-13 {
                invariant = true;
                break;
            }
            if j + 1 < window {
                betas.push(beta);
                for wi in &mut w {
                    *wi /= beta;
                }
                basis.push(w);
            }
        }

        // Rayleigh-Ritz on the tridiagonal
        let k = alphas.len();
        let mut t = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alphas[i];
            if i + 1 < k {
                t[(i, i + 1)] = betas[i];
                t[(i + 1, i)] = betas[i];
            }
        }
        let eig = t.symmetric_eigen();
        let mut best = 0;
        for i in 1..k {
            if eig.eigenvalues[i] < eig.eigenvalues[best] {
                best = i;
            }
        }
        let theta = eig.eigenvalues[best];
        let y = eig.eigenvectors.column(best);

        // Ritz vector
        let mut ritz = vec![Complex64::new(0.0, 0.0); dim];
        for (j, q) in basis.iter().enumerate() {
            let w = Complex64::new(y[j], 0.0);
            for (r, qi) in ritz.iter_mut().zip(q) {
                *r += w * qi;
            }
        }
        let rn = norm(&ritz);
        for r in &mut ritz {
            *r /= rn;
        }

        // true residual ||H v - theta v||
        apply_compiled(&terms, &ritz, &mut scratch);
        let mut res = 0.0f64;
        for (hv, v) in scratch.iter().zip(&ritz) {
            res += (hv - Complex64::new(theta, 0.0) * v).norm_sqr();
        }
        let res = res.sqrt();
        last_residual = res;

        if res <= RESIDUAL_TOL || invariant {
            return Ok(SpectrumResult {
                min_eigenvalue: theta,
                spectrum: None,
                iterations: total_iters,
                residual: res,
            });
        }
        v0 = ritz;
    }

    Err(Error::NonConvergence {
        residual: last_residual,
        iterations: total_iters,
    })
}

/// Dense path for small systems, iterative otherwise.
pub fn min_eigenvalue_auto(h: &PauliSum, seed: u64) -> Result<SpectrumResult> {
    if h.n_qubits() <= 8 {
        dense_spectrum(h)
    } else {
        min_eigenvalue_iterative(h, seed)
    }
}
