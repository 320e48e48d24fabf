//! Signed Pauli strings in symplectic (x|z) form and weighted Pauli sums.
//!
//! A [`PauliString`] stores the operator `i^phase_exp * P_0 ⊗ P_1 ⊗ ... ⊗ P_{n-1}`
//! where each single-qubit factor is determined by its (x, z) bit pair:
//! (0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y. With this convention a string with
//! `phase_exp == 0` is always Hermitian, so a kernel vector read back as a
//! Pauli string is a valid symmetry generator with eigenvalues ±1.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Coefficients below this magnitude are dropped whenever a sum is simplified.
pub const DROP_TOL: f64 = 1e-12;

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_xz(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn xz(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn label(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            _ => Err(Error::Parse(format!("invalid Pauli character '{c}'"))),
        }
    }
}

/// An n-qubit Pauli operator with a quarter phase: `i^phase_exp * ⊗ P_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliString {
    n: usize,
    x: Bits,
    z: Bits,
    phase_exp: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            n,
            x: Bits::zeros(n),
            z: Bits::zeros(n),
            phase_exp: 0,
        }
    }

    /// Hermitian string from symplectic bits (phase_exp = 0).
    pub fn from_symplectic(x: Bits, z: Bits) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::SizeMismatch(format!(
                "x has {} bits, z has {}",
                x.len(),
                z.len()
            )));
        }
        let n = x.len();
        Ok(PauliString {
            n,
            x,
            z,
            phase_exp: 0,
        })
    }

    /// Single-qubit Pauli embedded in an n-qubit identity.
    pub fn single(n: usize, qubit: usize, p: Pauli) -> Self {
        let mut x = Bits::zeros(n);
        let mut z = Bits::zeros(n);
        let (xb, zb) = p.xz();
        x.set(qubit, xb);
        z.set(qubit, zb);
        PauliString {
            n,
            x,
            z,
            phase_exp: 0,
        }
    }

    /// Parse a label like "XIZY"; qubit 0 is the leftmost character.
    pub fn from_label(label: &str) -> Result<Self> {
        let n = label.chars().count();
        let mut x = Bits::zeros(n);
        let mut z = Bits::zeros(n);
        for (q, c) in label.chars().enumerate() {
            let (xb, zb) = Pauli::from_char(c)?.xz();
            x.set(q, xb);
            z.set(q, zb);
        }
        Ok(PauliString {
            n,
            x,
            z,
            phase_exp: 0,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn x_bits(&self) -> &Bits {
        &self.x
    }

    pub fn z_bits(&self) -> &Bits {
        &self.z
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    pub fn with_phase(mut self, phase_exp: u8) -> Self {
        self.phase_exp = phase_exp % 4;
        self
    }

    pub fn pauli_at(&self, q: usize) -> Pauli {
        Pauli::from_xz(self.x.get(q), self.z.get(q))
    }

    /// Number of non-identity positions.
    pub fn weight(&self) -> usize {
        self.x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero() && self.phase_exp == 0
    }

    fn y_count(&self) -> usize {
        self.x.and_count(&self.z)
    }

    /// Hermitian iff the quarter phase is real (i^0 or i^2). Such strings
    /// also square to the identity.
    pub fn is_hermitian(&self) -> bool {
        self.phase_exp.is_multiple_of(2)
    }

    /// i^phase_exp as a complex number.
    pub fn phase_factor(&self) -> Complex64 {
        match self.phase_exp % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// Label over {I,X,Y,Z}, qubit 0 leftmost. The phase is not part of the label.
    pub fn label(&self) -> String {
        (0..self.n).map(|q| self.pauli_at(q).label()).collect()
    }

    /// Product of two Pauli strings with exact quarter-phase bookkeeping.
    pub fn multiply(a: &PauliString, b: &PauliString) -> Result<PauliString> {
        if a.n != b.n {
            return Err(Error::SizeMismatch(format!(
                "cannot multiply Pauli strings on {} and {} qubits",
                a.n, b.n
            )));
        }
        let mut x = a.x.clone();
        x.xor_with(&b.x);
        let mut z = a.z.clone();
        z.xor_with(&b.z);
        let yc = x.and_count(&z);
        // i-exponent: phases, the Y-count correction between the canonical
        // forms, and a (-1) for every Z of `a` passing an X of `b`.
        let k = a.phase_exp as usize
            + b.phase_exp as usize
            + a.y_count()
            + b.y_count()
            + 4 * yc  // keep the subtraction non-negative
            - yc
            + 2 * a.z.and_count(&b.x);
        Ok(PauliString {
            n: a.n,
            x,
            z,
            phase_exp: (k % 4) as u8,
        })
    }

    /// True iff the symplectic product a_x·b_z + a_z·b_x vanishes mod 2.
    pub fn commutes(a: &PauliString, b: &PauliString) -> Result<bool> {
        if a.n != b.n {
            return Err(Error::SizeMismatch(format!(
                "cannot compare Pauli strings on {} and {} qubits",
                a.n, b.n
            )));
        }
        Ok((a.x.and_count(&b.z) + a.z.and_count(&b.x)).is_multiple_of(2))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase_exp % 4 {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{}{}", prefix, self.label())
    }
}

/// Map key for a phase-free Pauli string.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct PauliKey {
    x: Bits,
    z: Bits,
}

/// A complex-weighted sum of Pauli strings. Phases are folded into the
/// coefficients so that keys are phase-free; term order is the fixed key
/// order, which keeps every operation deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n: usize,
    terms: BTreeMap<PauliKey, Complex64>,
}

impl PauliSum {
    pub fn new(n: usize) -> Self {
        PauliSum {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, coeff: Complex64) -> Self {
        let mut s = PauliSum::new(n);
        s.add(&PauliString::identity(n), coeff);
        s
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `coeff * string`, folding the string's phase into the coefficient.
    pub fn add(&mut self, s: &PauliString, coeff: Complex64) {
        assert_eq!(s.n_qubits(), self.n, "term qubit count mismatch");
        let key = PauliKey {
            x: s.x.clone(),
            z: s.z.clone(),
        };
        *self.terms.entry(key).or_insert(Complex64::new(0.0, 0.0)) += coeff * s.phase_factor();
    }

    pub fn add_sum(&mut self, other: &PauliSum, scale: Complex64) {
        assert_eq!(other.n, self.n);
        for (k, c) in &other.terms {
            *self
                .terms
                .entry(k.clone())
                .or_insert(Complex64::new(0.0, 0.0)) += scale * c;
        }
    }

    pub fn scale(&mut self, factor: Complex64) {
        for c in self.terms.values_mut() {
            *c *= factor;
        }
    }

    /// Remove terms with |coefficient| <= tol.
    pub fn prune(&mut self, tol: f64) {
        self.terms.retain(|_, c| c.norm() > tol);
    }

    pub fn simplify(&mut self) {
        self.prune(DROP_TOL);
    }

    /// Iterate terms as (phase-free Hermitian string, folded coefficient),
    /// in deterministic key order.
    pub fn iter_terms(&self) -> impl Iterator<Item = (PauliString, Complex64)> + '_ {
        self.terms.iter().map(|(k, c)| {
            (
                PauliString {
                    n: self.n,
                    x: k.x.clone(),
                    z: k.z.clone(),
                    phase_exp: 0,
                },
                *c,
            )
        })
    }

    pub fn coefficient(&self, s: &PauliString) -> Complex64 {
        let key = PauliKey {
            x: s.x.clone(),
            z: s.z.clone(),
        };
        self.terms.get(&key).copied().unwrap_or_default() * s.phase_factor().conj()
    }

    /// All folded coefficients real within tol.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    /// sqrt(sum |c|^2) over stored terms.
    pub fn coeff_norm(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn mul(a: &PauliSum, b: &PauliSum) -> Result<PauliSum> {
        if a.n != b.n {
            return Err(Error::SizeMismatch(format!(
                "cannot multiply sums on {} and {} qubits",
                a.n, b.n
            )));
        }
        let mut out = PauliSum::new(a.n);
        for (sa, ca) in a.iter_terms() {
            for (sb, cb) in b.iter_terms() {
                let p = PauliString::multiply(&sa, &sb)?;
                out.add(&p, ca * cb);
            }
        }
        out.simplify();
        Ok(out)
    }

    /// Hermitian adjoint (conjugate coefficients; keys are Hermitian strings).
    pub fn adjoint(&self) -> PauliSum {
        let mut out = PauliSum::new(self.n);
        for (k, c) in &self.terms {
            out.terms.insert(k.clone(), c.conj());
        }
        out
    }

    /// True iff every term commutes with `s`.
    pub fn commutes_with(&self, s: &PauliString) -> Result<bool> {
        for (t, _) in self.iter_terms() {
            if !PauliString::commutes(&t, s)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Conjugate by U = (tau + sigma)/sqrt(2), where tau and sigma are
    /// anticommuting Hermitian involutions. U is Hermitian and unitary, so
    /// the result is (tau + sigma) H (tau + sigma) / 2, accumulated exactly.
    pub fn conjugated_by(&self, tau: &PauliString, sigma: &PauliString) -> Result<PauliSum> {
        if tau.n_qubits() != self.n || sigma.n_qubits() != self.n {
            return Err(Error::SizeMismatch(
                "Clifford generators must match the sum's qubit count".into(),
            ));
        }
        if !tau.is_hermitian() || !sigma.is_hermitian() {
            return Err(Error::Precondition(
                "tau and sigma must be Hermitian involutions (even quarter phase)".into(),
            ));
        }
        if PauliString::commutes(tau, sigma)? {
            return Err(Error::Precondition("tau and sigma must anticommute".into()));
        }
        let half = Complex64::new(0.5, 0.0);
        let mut out = PauliSum::new(self.n);
        for (t, c) in self.iter_terms() {
            for left in [tau, sigma] {
                for right in [tau, sigma] {
                    let p = PauliString::multiply(&PauliString::multiply(left, &t)?, right)?;
                    out.add(&p, c * half);
                }
            }
        }
        out.simplify();
        Ok(out)
    }

    /// Relabel qubits: old index q moves to `perm[q]`. Coefficients unchanged.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<PauliSum> {
        if perm.len() != self.n {
            return Err(Error::SizeMismatch(format!(
                "permutation has {} entries for {} qubits",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(Error::Precondition(
                    "qubit permutation is not a bijection".into(),
                ));
            }
            seen[p] = true;
        }
        let mut out = PauliSum::new(self.n);
        for (k, c) in &self.terms {
            let mut x = Bits::zeros(self.n);
            let mut z = Bits::zeros(self.n);
            for q in 0..self.n {
                if k.x.get(q) {
                    x.set(perm[q], true);
                }
                if k.z.get(q) {
                    z.set(perm[q], true);
                }
            }
            out.terms.insert(PauliKey { x, z }, *c);
        }
        Ok(out)
    }

    /// Replace the X factor on qubit `q` by `eigenvalue` and delete the qubit.
    /// Every term must act on `q` with I or X.
    pub fn restrict_qubit(&self, q: usize, eigenvalue: i8) -> Result<PauliSum> {
        if q >= self.n {
            return Err(Error::SizeMismatch(format!(
                "qubit {} out of range for {} qubits",
                q, self.n
            )));
        }
        assert!(eigenvalue == 1 || eigenvalue == -1, "eigenvalue must be ±1");
        let mut out = PauliSum::new(self.n - 1);
        for (k, c) in &self.terms {
            if k.z.get(q) {
                return Err(Error::Precondition(format!(
                    "term acts on qubit {} with {} (only I or X allowed)",
                    q,
                    Pauli::from_xz(k.x.get(q), true).label()
                )));
            }
            let scale = if k.x.get(q) {
                Complex64::new(eigenvalue as f64, 0.0)
            } else {
                Complex64::new(1.0, 0.0)
            };
            let key = PauliKey {
                x: k.x.with_bit_removed(q),
                z: k.z.with_bit_removed(q),
            };
            *out.terms.entry(key).or_insert(Complex64::new(0.0, 0.0)) += c * scale;
        }
        out.simplify();
        Ok(out)
    }

    /// One term per line: `<coeff_real> <coeff_imag> <label>`, sorted by label.
    pub fn to_text(&self) -> String {
        let mut lines: Vec<(String, Complex64)> =
            self.iter_terms().map(|(s, c)| (s.label(), c)).collect();
        lines.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out = String::new();
        for (label, c) in lines {
            out.push_str(&format!("{:.16e} {:.16e} {}\n", c.re, c.im, label));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<PauliSum> {
        let mut sum: Option<PauliSum> = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse(format!(
                    "line {}: expected `<re> <im> <label>`, got {} fields",
                    lineno + 1,
                    fields.len()
                )));
            }
            let re: f64 = fields[0]
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad real part", lineno + 1)))?;
            let im: f64 = fields[1]
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad imaginary part", lineno + 1)))?;
            let s = PauliString::from_label(fields[2])?;
            let sum = sum.get_or_insert_with(|| PauliSum::new(s.n_qubits()));
            if s.n_qubits() != sum.n_qubits() {
                return Err(Error::Parse(format!(
                    "line {}: label length {} does not match {}",
                    lineno + 1,
                    s.n_qubits(),
                    sum.n_qubits()
                )));
            }
            sum.add(&s, Complex64::new(re, im));
        }
        sum.ok_or_else(|| Error::Parse("empty Pauli-sum text".into()))
    }
}
