//! Point-group operations as signed permutations over orbitals: invariance
//! checks at the tensor level, second-quantized images, simultaneous
//! diagonalization of commuting involutions, and the resulting Pauli-Z
//! symmetry strings.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::fcidump::IntegralSet;
use crate::fermion::{map_excitation, MappingKind};
use crate::pauli::{Pauli, PauliString, PauliSum};

/// Default tolerance for the tensor-level invariance check.
pub const INVARIANCE_TOL: f64 = 1e-8;

/// Orthogonal matrix with exactly one ±1 entry per row and column.
/// Column j has entry `signs[j]` at row `perm[j]`, i.e. the transformed mode
/// operators are `b_j = signs[j] * a_perm[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        if perm.len() != signs.len() {
            return Err(Error::SizeMismatch(
                "perm and signs must have equal length".into(),
            ));
        }
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::Precondition(
                    "perm is not a bijection on mode indices".into(),
                ));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Precondition("signs must be ±1".into()));
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Matrix entry `R[i][j]`.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if self.perm[j] == i {
            self.signs[j] as f64
        } else {
            0.0
        }
    }

    /// Exact composition (self ∘ other as matrices: self · other).
    pub fn compose(&self, other: &SignedPermutation) -> Result<SignedPermutation> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch("composing different sizes".into()));
        }
        let n = self.size();
        let mut perm = vec![0; n];
        let mut signs = vec![1i8; n];
        for j in 0..n {
            // (A·B) e_j = A (signs_B[j] e_{perm_B[j]})
            perm[j] = self.perm[other.perm[j]];
            signs[j] = other.signs[j] * self.signs[other.perm[j]];
        }
        SignedPermutation::new(perm, signs)
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p == j) && self.signs.iter().all(|&s| s == 1)
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).map(|r| r.is_identity()).unwrap_or(false)
    }

    pub fn commutes_with(&self, other: &SignedPermutation) -> bool {
        match (self.compose(other), other.compose(self)) {
            (Ok(ab), Ok(ba)) => ab == ba,
            _ => false,
        }
    }

    /// Block-double a spatial operation to spin orbitals (same action on the
    /// alpha and beta blocks).
    pub fn lift_to_spin(&self) -> SignedPermutation {
        let ns = self.size();
        let mut perm = Vec::with_capacity(2 * ns);
        let mut signs = Vec::with_capacity(2 * ns);
        for j in 0..ns {
            perm.push(self.perm[j]);
            signs.push(self.signs[j]);
        }
        for j in 0..ns {
            perm.push(self.perm[j] + ns);
            signs.push(self.signs[j]);
        }
        SignedPermutation { perm, signs }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.size();
        DMatrix::from_fn(n, n, |i, j| self.entry(i, j))
    }
}

/// Dense orthogonal basis change that simultaneously diagonalizes a commuting
/// involution set.
#[derive(Clone, Debug)]
pub struct OrbitalRotation {
    mat: DMatrix<f64>,
}

impl OrbitalRotation {
    pub fn new(mat: DMatrix<f64>) -> Result<Self> {
        let n = mat.nrows();
        if mat.ncols() != n {
            return Err(Error::SizeMismatch("rotation must be square".into()));
        }
        let gram = mat.transpose() * &mat;
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { 1.0 } else { 0.0 };
                if (gram[(i, j)] - expect).abs() > 1e-12 {
                    return Err(Error::Precondition(
                        "rotation is not orthogonal within 1e-12".into(),
                    ));
                }
            }
        }
        Ok(OrbitalRotation { mat })
    }

    pub fn identity(n: usize) -> Self {
        OrbitalRotation {
            mat: DMatrix::identity(n, n),
        }
    }

    pub fn size(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn is_identity(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| {
            (0..n).all(|j| (self.mat[(i, j)] - if i == j { 1.0 } else { 0.0 }).abs() < 1e-14)
        })
    }

    /// Count of basis vectors that are not plain coordinate vectors.
    pub fn mixed_columns(&self) -> usize {
        let n = self.size();
        (0..n)
            .filter(|&j| {
                let col = self.mat.column(j);
                !(0..n).any(|i| (col[i].abs() - 1.0).abs() < 1e-12)
            })
            .count()
    }
}

/// A point-group symmetry in diagonal form: the parity operator
/// S = prod_{p in support} (-1)^{n_p}, i.e. a Z string on `support`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZSymmetry {
    support: Vec<usize>,
    pauli: PauliString,
}

impl ZSymmetry {
    pub fn new(n_modes: usize, support: Vec<usize>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::Precondition(
                "a nontrivial Z symmetry needs a nonempty support".into(),
            ));
        }
        if support.iter().any(|&p| p >= n_modes) {
            return Err(Error::SizeMismatch("support index out of range".into()));
        }
        let mut pauli = PauliString::identity(n_modes);
        for &p in &support {
            pauli = PauliString::multiply(&pauli, &PauliString::single(n_modes, p, Pauli::Z))
                .expect("same size");
        }
        Ok(ZSymmetry { support, pauli })
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn pauli(&self) -> &PauliString {
        &self.pauli
    }
}

/// Transform the integral tensors by R (index relabeling with signs) and
/// report whether they are unchanged. Returns (invariant, max deviation).
pub fn check_invariance(
    ints: &IntegralSet,
    r: &SignedPermutation,
    tol: f64,
) -> Result<(bool, f64)> {
    let m = ints.n_spin_orbitals();
    if r.size() != m {
        return Err(Error::SizeMismatch(format!(
            "operation acts on {} modes, integrals have {}",
            r.size(),
            m
        )));
    }
    // h1' = R^T h1 R: h1'[i][j] = s_i s_j h1[perm[i]][perm[j]]
    let perm = r.perm();
    let signs = r.signs();
    let mut max_dev: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let transformed = (signs[i] * signs[j]) as f64 * ints.h1(perm[i], perm[j]);
            max_dev = max_dev.max((transformed - ints.h1(i, j)).abs());
        }
    }
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    let s = (signs[i] * signs[j] * signs[k] * signs[l]) as f64;
                    let transformed = s * ints.h2(perm[i], perm[j], perm[k], perm[l]);
                    let dev = (transformed - ints.h2(i, j, k, l)).abs();
                    if dev > max_dev {
                        max_dev = dev;
                    }
                }
            }
        }
    }
    Ok((max_dev <= tol, max_dev))
}

/// Second-quantized (Fock-space) image of a signed permutation under the
/// Jordan-Wigner mapping, built from transposition operators
/// I - n_p - n_q + a†_p a_q + a†_q a_p and sign operators 1 - 2 n_p.
pub fn second_quantized_permutation(r: &SignedPermutation) -> Result<PauliSum> {
    let m = r.size();
    let kind = MappingKind::JordanWigner;
    let one = Complex64::new(1.0, 0.0);

    let number_op = |p: usize| -> Result<PauliSum> { map_excitation(p, p, m, kind) };

    let transposition = |p: usize, q: usize| -> Result<PauliSum> {
        let mut op = PauliSum::identity(m, one);
        op.add_sum(&number_op(p)?, -one);
        op.add_sum(&number_op(q)?, -one);
        op.add_sum(&map_excitation(p, q, m, kind)?, one);
        op.simplify();
        Ok(op)
    };

    // R = P · D as matrices, with D = diag(signs). The map X -> X̂ defined by
    // X̂ a_p X̂† = Σ_q ⟨p|X|q⟩ a_q reverses products, so R̂ = D̂ · P̂ and the
    // transpositions inside each cycle compose in reversed matrix order.
    // For involutions (disjoint 2-cycles, coherent signs) all factors
    // commute and the order is immaterial.
    let mut transpositions: Vec<(usize, usize)> = Vec::new();
    let mut visited = vec![false; m];
    for start in 0..m {
        if visited[start] {
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let mut cur = r.perm()[start];
        while cur != start {
            visited[cur] = true;
            cycle.push(cur);
            cur = r.perm()[cur];
        }
        // cycle c0 -> c1 -> ... -> ck -> c0 equals the matrix product
        // T(c0,c1) · T(c1,c2) ... T(c_{k-1},ck)
        for w in cycle.windows(2) {
            transpositions.push((w[0], w[1]));
        }
    }

    // D̂: product of (1 - 2 n_j) = Z_j over columns with sign -1; a single
    // Pauli string.
    let mut zs = PauliString::identity(m);
    for (j, &s) in r.signs().iter().enumerate() {
        if s == -1 {
            zs = PauliString::multiply(&zs, &PauliString::single(m, j, Pauli::Z))?;
        }
    }
    let mut rhat = PauliSum::new(m);
    rhat.add(&zs, one);
    for &(p, q) in transpositions.iter().rev() {
        rhat = PauliSum::mul(&rhat, &transposition(p, q)?)?;
    }
    rhat.simplify();
    Ok(rhat)
}

/// Keep involutions, then greedily build a maximal pairwise-commuting subset
/// (exact integer arithmetic, input order preserved). Returns the retained
/// indices into `candidates`.
pub fn select_commuting_involutions(candidates: &[SignedPermutation]) -> Vec<usize> {
    let mut retained: Vec<usize> = Vec::new();
    for (i, cand) in candidates.iter().enumerate() {
        if cand.is_identity() || !cand.is_involution() {
            continue;
        }
        if retained.iter().all(|&j| cand.commutes_with(&candidates[j])) {
            retained.push(i);
        }
    }
    retained
}

fn extract_signed_permutation(a: &DMatrix<f64>) -> Result<SignedPermutation> {
    let n = a.nrows();
    let mut perm = vec![usize::MAX; n];
    let mut signs = vec![0i8; n];
    for j in 0..n {
        let mut hit = None;
        for i in 0..n {
            let v = a[(i, j)];
            if v.abs() > 0.5 {
                if hit.is_some() || (v.abs() - 1.0).abs() > 1e-9 {
                    return Err(Error::Precondition(
                        "operations do not conjugate to signed permutations; \
                         the set is not simultaneously diagonalizable in this form"
                            .into(),
                    ));
                }
                hit = Some((i, if v > 0.0 { 1i8 } else { -1 }));
            } else if v.abs() > 1e-9 {
                return Err(Error::Precondition(
                    "residual off-structure entry while diagonalizing".into(),
                ));
            }
        }
        let (i, s) =
            hit.ok_or_else(|| Error::Precondition("zero column while diagonalizing".into()))?;
        perm[j] = i;
        signs[j] = s;
    }
    SignedPermutation::new(perm, signs)
}

/// Rotation W diagonalizing one signed-permutation involution: fixed points
/// keep their basis vectors; a 2-cycle (p, q), p < q, maps column p to
/// (e_p + e_q)/sqrt(2) with eigenvalue `sign` and column q to
/// (e_p - e_q)/sqrt(2) with eigenvalue `-sign`.
fn cycle_rotation(r: &SignedPermutation) -> DMatrix<f64> {
    let n = r.size();
    let mut w = DMatrix::<f64>::zeros(n, n);
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut done = vec![false; n];
    for p in 0..n {
        if done[p] {
            continue;
        }
        let q = r.perm()[p];
        if q == p {
            w[(p, p)] = 1.0;
            done[p] = true;
        } else {
            let (p, q) = (p.min(q), p.max(q));
            w[(p, p)] = inv_sqrt2;
            w[(q, p)] = inv_sqrt2;
            w[(p, q)] = inv_sqrt2;
            w[(q, q)] = -inv_sqrt2;
            done[p] = true;
            done[q] = true;
        }
    }
    w
}

/// Simultaneously diagonalize pairwise-commuting signed-permutation
/// involutions. Returns the orthogonal V with Vᵀ R_i V diagonal (entries ±1)
/// and, per operation, the Z symmetry supported on the -1 eigenvalue modes.
pub fn simultaneous_diagonalize(
    ops: &[SignedPermutation],
) -> Result<(OrbitalRotation, Vec<ZSymmetry>)> {
    if ops.is_empty() {
        return Err(Error::Precondition("no operations to diagonalize".into()));
    }
    let n = ops[0].size();
    for r in ops {
        if r.size() != n {
            return Err(Error::SizeMismatch("mixed operation sizes".into()));
        }
        if !r.is_involution() {
            return Err(Error::Precondition(
                "all operations must square to the identity".into(),
            ));
        }
    }
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            if !ops[i].commutes_with(&ops[j]) {
                return Err(Error::Precondition(
                    "operations must pairwise commute".into(),
                ));
            }
        }
    }

    let mut v = DMatrix::<f64>::identity(n, n);
    for r in ops {
        // the operation expressed in the current basis is again a signed
        // permutation because it commutes with everything diagonalized so far
        let a = v.transpose() * r.to_dense() * &v;
        let current = extract_signed_permutation(&a)?;
        let w = cycle_rotation(&current);
        v *= w;
    }

    let rotation = OrbitalRotation::new(v)?;
    let mut syms = Vec::with_capacity(ops.len());
    for r in ops {
        let d = rotation.matrix().transpose() * r.to_dense() * rotation.matrix();
        let mut support = Vec::new();
        for p in 0..n {
            for q in 0..n {
                let expect_diag = p == q;
                let val = d[(p, q)];
                if expect_diag {
                    if (val.abs() - 1.0).abs() > 1e-12 {
                        return Err(Error::Precondition(
                            "diagonalization failed: eigenvalue not ±1".into(),
                        ));
                    }
                } else if val.abs() > 1e-12 {
                    return Err(Error::Precondition(
                        "diagonalization failed: off-diagonal residue".into(),
                    ));
                }
            }
            if d[(p, p)] < 0.0 {
                support.push(p);
            }
        }
        if support.is_empty() {
            return Err(Error::Precondition(
                "operation diagonalizes to the identity; it contributes no symmetry".into(),
            ));
        }
        syms.push(ZSymmetry::new(n, support)?);
    }
    Ok((rotation, syms))
}

/// Transform the integrals into the rotated orbital basis: h1' = Vᵀ h1 V and
/// the four-index orthogonal transform of h2 (applied one index at a time).
/// e_core is unchanged.
pub fn rotate_integrals(ints: &IntegralSet, v: &OrbitalRotation) -> Result<IntegralSet> {
    let m = ints.n_spin_orbitals();
    if v.size() != m {
        return Err(Error::SizeMismatch(format!(
            "rotation size {} does not match {} spin orbitals",
            v.size(),
            m
        )));
    }
    let vm = v.matrix();

    // one-body
    let mut h1 = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            let mut acc = 0.0;
            for a in 0..m {
                let va = vm[(a, i)];
                if va == 0.0 {
                    continue;
                }
                for b in 0..m {
                    acc += va * ints.h1(a, b) * vm[(b, j)];
                }
            }
            h1[i * m + j] = acc;
        }
    }

    // two-body: contract one index at a time, O(M^5) each
    let idx = |i: usize, j: usize, k: usize, l: usize| ((i * m + j) * m + k) * m + l;
    let mut cur = ints.h2_raw().to_vec();
    for axis in 0..4 {
        let mut next = vec![0.0; cur.len()];
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        let out_at = idx(i, j, k, l);
                        let target = [i, j, k, l][axis];
                        let mut acc = 0.0;
                        for a in 0..m {
                            let w = vm[(a, target)];
                            if w == 0.0 {
                                continue;
                            }
                            let mut src = [i, j, k, l];
                            src[axis] = a;
                            acc += w * cur[idx(src[0], src[1], src[2], src[3])];
                        }
                        next[out_at] = acc;
                    }
                }
            }
        }
        cur = next;
    }

    Ok(IntegralSet::new(
        ints.n_spatial(),
        h1,
        cur,
        ints.e_core(),
        ints.n_alpha(),
        ints.n_beta(),
    ))
}

/// True iff every term of the rotated Hamiltonian commutes with the symmetry.
pub fn verify_z_symmetry(h_rotated: &PauliSum, s: &ZSymmetry) -> Result<bool> {
    h_rotated.commutes_with(s.pauli())
}

/// Symmetry input file: spatial-orbital signed permutations.
#[derive(Debug, Deserialize)]
pub struct SymmetryFile {
    pub n_spatial: usize,
    pub operations: Vec<SymmetryOpSpec>,
}

#[derive(Debug, Deserialize)]
pub struct SymmetryOpSpec {
    pub name: String,
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SymmetryFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: SymmetryFile = serde_json::from_str(text)?;
        for op in &file.operations {
            if op.perm.len() != file.n_spatial || op.signs.len() != file.n_spatial {
                return Err(Error::Parse(format!(
                    "operation '{}' does not match n_spatial={}",
                    op.name, file.n_spatial
                )));
            }
        }
        Ok(file)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Validated spatial-level signed permutations, in file order.
    pub fn operations(&self) -> Result<Vec<(String, SignedPermutation)>> {
        self.operations
            .iter()
            .map(|op| {
                SignedPermutation::new(op.perm.clone(), op.signs.clone())
                    .map(|sp| (op.name.clone(), sp))
            })
            .collect()
    }
}
