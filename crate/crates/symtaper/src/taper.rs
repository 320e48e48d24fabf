//! Tapering: choose a qubit per symmetry generator, conjugate the Hamiltonian
//! so each generator becomes a single-qubit Pauli X, and replace those X's by
//! sector eigenvalues, deleting the qubits.

use crate::error::{Error, Result};
use crate::fcidump::IntegralSet;
use crate::fermion::MappingKind;
use crate::pauli::{Pauli, PauliString, PauliSum};
use crate::spectrum;

/// Upper bound on the number of unknown sector positions a scan enumerates.
pub const SCAN_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorValue {
    Known(i8),
    Unknown,
}

/// One Clifford conjugation step U = (tau + sigma)/sqrt(2).
#[derive(Debug, Clone)]
pub struct CliffordStep {
    pub tau: PauliString,
    pub sigma: PauliString,
}

/// Ordered generators, their tapering qubits and single-qubit partners, the
/// Clifford sequence, the final qubit reordering, and sector eigenvalues.
#[derive(Debug, Clone)]
pub struct TaperingPlan {
    pub generators: Vec<PauliString>,
    pub qubit_choices: Vec<usize>,
    pub single_paulis: Vec<Pauli>,
    pub cliffords: Vec<CliffordStep>,
    /// old index -> new index; tapered qubit i lands at n-k+i
    pub permutation: Vec<usize>,
    pub sector: Vec<SectorValue>,
    n_qubits: usize,
}

impl TaperingPlan {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_tapered(&self) -> usize {
        self.generators.len()
    }

    pub fn sector_values(&self) -> Result<Vec<i8>> {
        self.sector
            .iter()
            .map(|s| match s {
                SectorValue::Known(v) => Ok(*v),
                SectorValue::Unknown => Err(Error::Precondition(
                    "sector contains unknown eigenvalues; run a sector scan".into(),
                )),
            })
            .collect()
    }
}

/// For each generator find a qubit q(i) and a single-qubit Pauli that
/// anticommutes with that generator and commutes with all the others.
///
/// The search prefers Pauli X, then Z, then Y, at the lowest valid qubit, and
/// backtracks over the (rare) qubit collisions, so the assignment is
/// deterministic. Independent generators in reduced row echelon form always
/// admit an assignment through their pivot bits.
pub fn choose_taper_qubits(generators: &[PauliString]) -> Result<Vec<(usize, Pauli)>> {
    if generators.is_empty() {
        return Ok(Vec::new());
    }
    let n = generators[0].n_qubits();
    for g in generators {
        if g.n_qubits() != n {
            return Err(Error::SizeMismatch("generator sizes differ".into()));
        }
    }
    let mut options: Vec<Vec<(usize, Pauli)>> = Vec::with_capacity(generators.len());
    for (i, g) in generators.iter().enumerate() {
        let mut opts = Vec::new();
        for q in 0..n {
            for p in [Pauli::X, Pauli::Z, Pauli::Y] {
                let single = PauliString::single(n, q, p);
                if PauliString::commutes(&single, g)? {
                    continue;
                }
                let ok = generators
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .all(|(_, other)| PauliString::commutes(&single, other).unwrap_or(false));
                if ok {
                    opts.push((q, p));
                }
            }
        }
        if opts.is_empty() {
            return Err(Error::Precondition(format!(
                "no single-qubit Pauli anticommutes with generator {} alone; \
                 generators are not independent",
                g.label()
            )));
        }
        options.push(opts);
    }

    fn backtrack(
        options: &[Vec<(usize, Pauli)>],
        i: usize,
        used: &mut Vec<bool>,
        out: &mut Vec<(usize, Pauli)>,
    ) -> bool {
        if i == options.len() {
            return true;
        }
        for &(q, p) in &options[i] {
            if used[q] {
                continue;
            }
            used[q] = true;
            out.push((q, p));
            if backtrack(options, i + 1, used, out) {
                return true;
            }
            out.pop();
            used[q] = false;
        }
        false
    }

    let mut used = vec![false; n];
    let mut out = Vec::new();
    if !backtrack(&options, 0, &mut used, &mut out) {
        return Err(Error::Precondition(
            "no conflict-free tapering qubit assignment exists (dependent generators)".into(),
        ));
    }
    Ok(out)
}

/// Assemble the plan for a commuting independent generator set: qubit
/// choices, the Clifford sequence (including the basis change to Pauli X
/// where a Z or Y partner was chosen), and the tapered-to-the-end reordering.
pub fn build_plan(generators: Vec<PauliString>, n_qubits: usize) -> Result<TaperingPlan> {
    for g in &generators {
        if g.n_qubits() != n_qubits {
            return Err(Error::SizeMismatch("generator size mismatch".into()));
        }
        if !g.is_hermitian() {
            return Err(Error::Precondition(
                "generators must be Hermitian involutions".into(),
            ));
        }
    }
    for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            if !PauliString::commutes(&generators[i], &generators[j])? {
                return Err(Error::Precondition(
                    "generators must pairwise commute".into(),
                ));
            }
        }
    }

    let choices = choose_taper_qubits(&generators)?;
    let mut cliffords = Vec::new();
    for (g, &(q, p)) in generators.iter().zip(&choices) {
        let single = PauliString::single(n_qubits, q, p);
        cliffords.push(CliffordStep {
            tau: g.clone(),
            sigma: single.clone(),
        });
        if p != Pauli::X {
            // rotate the partner Pauli into X on that qubit
            cliffords.push(CliffordStep {
                tau: single,
                sigma: PauliString::single(n_qubits, q, Pauli::X),
            });
        }
    }

    let k = generators.len();
    let mut permutation = vec![usize::MAX; n_qubits];
    for (i, &(q, _)) in choices.iter().enumerate() {
        permutation[q] = n_qubits - k + i;
    }
    let mut next = 0;
    for slot in permutation.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }

    let sector = vec![SectorValue::Unknown; k];
    Ok(TaperingPlan {
        qubit_choices: choices.iter().map(|&(q, _)| q).collect(),
        single_paulis: choices.iter().map(|&(_, p)| p).collect(),
        generators,
        cliffords,
        permutation,
        sector,
        n_qubits,
    })
}

/// Apply the plan's Clifford sequence and final permutation. The output acts
/// on each tapered position (the last k qubits) with I or X only; anything
/// else is an invariant breach and reported as an error.
pub fn build_and_apply(h: &PauliSum, plan: &TaperingPlan) -> Result<PauliSum> {
    if h.n_qubits() != plan.n_qubits {
        return Err(Error::SizeMismatch(
            "Hamiltonian does not match the plan's qubit count".into(),
        ));
    }
    let mut cur = h.clone();
    for step in &plan.cliffords {
        cur = cur.conjugated_by(&step.tau, &step.sigma)?;
    }
    let cur = cur.permute_qubits(&plan.permutation)?;
    let n = plan.n_qubits;
    let k = plan.n_tapered();
    for (t, _) in cur.iter_terms() {
        for pos in n - k..n {
            if t.z_bits().get(pos) {
                return Err(Error::Precondition(format!(
                    "transformed term {} acts on tapered qubit {} with Y or Z",
                    t.label(),
                    pos
                )));
            }
        }
    }
    Ok(cur)
}

/// Hartree-Fock occupation in the rotated basis: the lowest n_alpha alpha
/// modes and the lowest n_beta beta modes are filled.
fn hf_occupation(ints: &IntegralSet) -> Vec<bool> {
    let ns = ints.n_spatial();
    let mut occupied = vec![false; 2 * ns];
    for p in 0..ints.n_alpha() {
        occupied[p] = true;
    }
    for p in 0..ints.n_beta() {
        occupied[ns + p] = true;
    }
    occupied
}

/// Qubit values of the Hartree-Fock determinant under the chosen encoding:
/// Jordan-Wigner stores occupations directly, the parity encoding stores the
/// running occupation parity of modes 0..=q.
fn hf_qubit_bits(ints: &IntegralSet, kind: MappingKind) -> Vec<bool> {
    let occupied = hf_occupation(ints);
    match kind {
        MappingKind::JordanWigner => occupied,
        MappingKind::Parity => {
            let mut parity = false;
            occupied
                .iter()
                .map(|&occ| {
                    parity ^= occ;
                    parity
                })
                .collect()
        }
    }
}

/// Physical sector selection: the Hartree-Fock determinant is a computational
/// basis state in the encoded rotated basis, so a Z-type generator's
/// eigenvalue is (-1)^(set qubits in its support). Generators that are not
/// Z-type come back Unknown and fall through to a sector scan.
pub fn select_sector(
    generators: &[PauliString],
    ints_rotated: &IntegralSet,
    kind: MappingKind,
) -> Vec<SectorValue> {
    let bits = hf_qubit_bits(ints_rotated, kind);
    generators
        .iter()
        .map(|g| {
            if !g.x_bits().is_zero() {
                return SectorValue::Unknown;
            }
            let count = g.z_bits().iter_ones().filter(|&p| bits[p]).count();
            SectorValue::Known(if count % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

fn taper_with_sector(
    h_transformed: &PauliSum,
    plan: &TaperingPlan,
    sector: &[i8],
) -> Result<PauliSum> {
    let n = plan.n_qubits;
    let k = plan.n_tapered();
    assert_eq!(sector.len(), k);
    let mut cur = h_transformed.clone();
    for i in (0..k).rev() {
        cur = cur.restrict_qubit(n - k + i, sector[i])?;
    }
    Ok(cur)
}

/// Replace each tapered qubit's X by its sector eigenvalue. Requires every
/// sector entry to be known.
pub fn taper(h_transformed: &PauliSum, plan: &TaperingPlan) -> Result<PauliSum> {
    let sector = plan.sector_values()?;
    taper_with_sector(h_transformed, plan, &sector)
}

#[derive(Debug, Clone)]
pub struct ScanEntry {
    pub sector: Vec<i8>,
    pub energy: f64,
}

#[derive(Debug, Clone)]
pub struct ScanOutcome {
    pub entries: Vec<ScanEntry>,
    pub best: ScanEntry,
}

/// Enumerate sectors (all of them, or only the positions marked Unknown in
/// `fixed`) and solve each reduced Hamiltonian for its minimum eigenvalue.
/// The argmin is the first entry in enumeration order on ties, enumerating
/// +1 before -1 per position.
pub fn sector_scan(
    h_transformed: &PauliSum,
    plan: &TaperingPlan,
    fixed: &[SectorValue],
    seed: u64,
) -> Result<ScanOutcome> {
    let k = plan.n_tapered();
    assert_eq!(fixed.len(), k);
    let free: Vec<usize> = (0..k)
        .filter(|&i| matches!(fixed[i], SectorValue::Unknown))
        .collect();
    if free.len() > SCAN_LIMIT {
        return Err(Error::TooLarge(format!(
            "sector scan over {} unknown positions exceeds the limit of {SCAN_LIMIT}",
            free.len()
        )));
    }
    let mut entries: Vec<ScanEntry> = Vec::with_capacity(1 << free.len());
    for mask in 0..(1u64 << free.len()) {
        let mut sector = vec![1i8; k];
        for (i, s) in fixed.iter().enumerate() {
            if let SectorValue::Known(v) = s {
                sector[i] = *v;
            }
        }
        for (bit, &pos) in free.iter().enumerate() {
            sector[pos] = if (mask >> bit) & 1 == 1 { -1 } else { 1 };
        }
        let reduced = taper_with_sector(h_transformed, plan, &sector)?;
        let energy = if reduced.is_empty() {
            0.0
        } else {
            spectrum::min_eigenvalue_auto(&reduced, seed)?.min_eigenvalue
        };
        entries.push(ScanEntry { sector, energy });
    }
    let best = entries
        .iter()
        .min_by(|a, b| a.energy.partial_cmp(&b.energy).unwrap())
        .cloned()
        .expect("at least one sector");
    Ok(ScanOutcome { entries, best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    #[test]
    fn choose_for_single_zz() {
        let g = PauliString::from_label("ZZ").unwrap();
        let choices = choose_taper_qubits(&[g]).unwrap();
        assert_eq!(choices, vec![(0, Pauli::X)]);
    }

    #[test]
    fn choose_for_mixed_pair() {
        // {ZZ, XX}: X at one qubit handles ZZ, a Z-type partner handles XX
        let g1 = PauliString::from_label("ZZ").unwrap();
        let g2 = PauliString::from_label("XX").unwrap();
        let choices = choose_taper_qubits(&[g1.clone(), g2.clone()]).unwrap();
        assert_eq!(choices.len(), 2);
        assert_ne!(choices[0].0, choices[1].0);
        for (g, &(q, p)) in [g1, g2].iter().zip(&choices) {
            let single = PauliString::single(2, q, p);
            assert!(!PauliString::commutes(&single, g).unwrap());
        }
    }

    #[test]
    fn empty_generators_empty_plan() {
        assert!(choose_taper_qubits(&[]).unwrap().is_empty());
        let plan = build_plan(vec![], 3).unwrap();
        let h = PauliSum::identity(3, c(2.0));
        let out = build_and_apply(&h, &plan).unwrap();
        assert_eq!(out, h);
        let reduced = taper(&out, &plan).unwrap();
        assert_eq!(reduced, h);
    }

    #[test]
    fn taper_toy_two_qubit() {
        // h = 1·Z0Z1 + 0.5·X0X1, tau = Z0Z1
        let mut h = PauliSum::new(2);
        h.add(&PauliString::from_label("ZZ").unwrap(), c(1.0));
        h.add(&PauliString::from_label("XX").unwrap(), c(0.5));
        let g = PauliString::from_label("ZZ").unwrap();
        let mut plan = build_plan(vec![g], 2).unwrap();
        let transformed = build_and_apply(&h, &plan).unwrap();

        plan.sector = vec![SectorValue::Known(1)];
        let plus = taper(&transformed, &plan).unwrap();
        let s_plus = spectrum::dense_spectrum(&plus).unwrap().spectrum.unwrap();
        plan.sector = vec![SectorValue::Known(-1)];
        let minus = taper(&transformed, &plan).unwrap();
        let s_minus = spectrum::dense_spectrum(&minus).unwrap().spectrum.unwrap();

        let expect_plus = [0.5, 1.5];
        let expect_minus = [-1.5, -0.5];
        for (a, b) in s_plus.iter().zip(expect_plus) {
            assert!((a - b).abs() < 1e-12, "plus sector {s_plus:?}");
        }
        for (a, b) in s_minus.iter().zip(expect_minus) {
            assert!((a - b).abs() < 1e-12, "minus sector {s_minus:?}");
        }

        // union of sector spectra equals the full spectrum
        let mut union: Vec<f64> = s_plus.iter().chain(&s_minus).copied().collect();
        union.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let full = spectrum::dense_spectrum(&h).unwrap().spectrum.unwrap();
        for (a, b) in union.iter().zip(&full) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn scan_finds_minimum_sector() {
        let mut h = PauliSum::new(2);
        h.add(&PauliString::from_label("ZZ").unwrap(), c(1.0));
        h.add(&PauliString::from_label("XX").unwrap(), c(0.5));
        let g = PauliString::from_label("ZZ").unwrap();
        let plan = build_plan(vec![g], 2).unwrap();
        let transformed = build_and_apply(&h, &plan).unwrap();
        let scan = sector_scan(&transformed, &plan, &[SectorValue::Unknown], 0).unwrap();
        assert_eq!(scan.entries.len(), 2);
        assert_eq!(scan.best.sector, vec![-1]);
        assert!((scan.best.energy + 1.5).abs() < 1e-12);
    }

    #[test]
    fn select_sector_counts_occupation() {
        // 2 spatial orbitals, 1 alpha + 1 beta electron, occupied = {0, 2}
        let ints = IntegralSet::from_spatial(2, &[0.0; 4], &[0.0; 16], 0.0, 1, 1);
        let g_alpha = PauliString::from_label("ZZII").unwrap();
        let g_swap = PauliString::from_label("IZIZ").unwrap();
        let g_x = PauliString::from_label("XXII").unwrap();
        let sectors = select_sector(&[g_alpha, g_swap, g_x], &ints, MappingKind::JordanWigner);
        assert_eq!(sectors[0], SectorValue::Known(-1)); // one occupied in alpha block
        assert_eq!(sectors[1], SectorValue::Known(1)); // support {1,3} unoccupied
        assert_eq!(sectors[2], SectorValue::Unknown);
    }

    #[test]
    fn select_sector_parity_encoding() {
        // occupied modes {0, 2} store prefix parities (1, 1, 0, 0)
        let ints = IntegralSet::from_spatial(2, &[0.0; 4], &[0.0; 16], 0.0, 1, 1);
        let g_last = PauliString::from_label("IIIZ").unwrap(); // total parity qubit
        let g_first_two = PauliString::from_label("ZZII").unwrap();
        let sectors = select_sector(&[g_last, g_first_two], &ints, MappingKind::Parity);
        assert_eq!(sectors[0], SectorValue::Known(1)); // two electrons in total
        assert_eq!(sectors[1], SectorValue::Known(1)); // parities 1 and 1 cancel
    }

    #[test]
    fn zero_electrons_all_plus() {
        let ints = IntegralSet::from_spatial(2, &[0.0; 4], &[0.0; 16], 0.0, 0, 0);
        let g = PauliString::from_label("ZZZZ").unwrap();
        assert_eq!(
            select_sector(&[g], &ints, MappingKind::JordanWigner),
            vec![SectorValue::Known(1)]
        );
    }

    #[test]
    fn scan_with_no_free_positions_returns_single_sector() {
        let mut h = PauliSum::new(1);
        h.add(&PauliString::from_label("Z").unwrap(), c(1.0));
        let plan = build_plan(vec![], 1).unwrap();
        let scan = sector_scan(&h, &plan, &[], 0).unwrap();
        assert_eq!(scan.entries.len(), 1);
        assert!((scan.best.energy + 1.0).abs() < 1e-12);
    }

    #[test]
    fn transformed_purity_on_tapered_positions() {
        let mut h = PauliSum::new(2);
        h.add(&PauliString::from_label("ZZ").unwrap(), c(0.8));
        h.add(&PauliString::from_label("XX").unwrap(), c(0.3));
        let plan = build_plan(vec![PauliString::from_label("ZZ").unwrap()], 2).unwrap();
        let transformed = build_and_apply(&h, &plan).unwrap();
        let n = transformed.n_qubits();
        for (t, _) in transformed.iter_terms() {
            assert!(!t.z_bits().get(n - 1));
        }
    }
}
