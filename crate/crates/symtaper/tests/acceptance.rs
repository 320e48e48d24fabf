//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::time::{Duration, Instant};

use common::*;
use symtaper::fermion::{map_hamiltonian, MappingKind};
use symtaper::gf2::{build_check_matrix, extract_generators, symplectic_row, BinMatrix};
use symtaper::pipeline::{run_taper, run_taper_pipeline, RunConfig};
use symtaper::pointgroup::{
    check_invariance, rotate_integrals, second_quantized_permutation, simultaneous_diagonalize,
    verify_z_symmetry, INVARIANCE_TOL,
};
use symtaper::spectrum::{dense_spectrum, min_eigenvalue_auto};
use symtaper::taper::{build_and_apply, build_plan, sector_scan, select_sector, SectorValue};
use symtaper::{IntegralSet, PauliString, PauliSum, SignedPermutation};

/// Frozen outputs of the external electronic-structure oracle (full-CI total
/// energies on the same FCIDUMP fixtures, Hartree).
const H2_FCI: f64 = -1.1372701041;
const LIH_FCI: f64 = -7.8824030993;

fn cfg_for(mol: &str, with_pg: bool) -> RunConfig {
    let mut cfg = RunConfig::new(fixture(&format!("{mol}.fcidump")));
    if with_pg {
        cfg = cfg.with_symmetries(fixture(&format!("{mol}_sym.json")));
    }
    cfg
}

#[test]
fn acceptance_1_h2_tapers_to_one_qubit_and_preserves_energy() {
    let started = Instant::now();
    let art = run_taper_pipeline(&cfg_for("h2", true)).unwrap();
    assert_eq!(art.n_qubits_before(), 4, "H2 should map to 4 qubits");
    assert_eq!(art.n_qubits_after(), 1, "H2 should taper 4 -> 1");

    let full = dense_spectrum(&art.hamiltonian).unwrap().min_eigenvalue;
    let tapered = dense_spectrum(&art.reduced).unwrap().min_eigenvalue;
    assert!(
        (full - tapered).abs() <= 1e-9,
        "energy drift {:.3e}",
        (full - tapered).abs()
    );
    assert!(
        (full - H2_FCI).abs() <= 1e-8,
        "ground energy {full} vs external FCI {H2_FCI}"
    );
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(1),
        "H2 run took {elapsed:?}, budget is 1 s"
    );
    println!(
        "ACCEPTANCE 1: H2 4->1 qubits, |full - tapered| <= 1e-9, {} ms ... PASS",
        elapsed.as_millis()
    );
}

fn check_molecule(mol: &str, expect_before: usize, expect_tapered: usize, frozen_fci: Option<f64>) {
    let started = Instant::now();
    let art = run_taper_pipeline(&cfg_for(mol, true)).unwrap();
    assert_eq!(art.n_qubits_before(), expect_before, "{mol} qubit count");
    assert_eq!(
        art.n_qubits_before() - art.n_qubits_after(),
        expect_tapered,
        "{mol} tapered count"
    );
    let full = min_eigenvalue_auto(&art.hamiltonian, 0)
        .unwrap()
        .min_eigenvalue;
    let tapered = min_eigenvalue_auto(&art.reduced, 0).unwrap().min_eigenvalue;
    assert!(
        (full - tapered).abs() <= 1e-8,
        "{mol}: full {full} vs tapered {tapered}"
    );
    if let Some(fci) = frozen_fci {
        assert!(
            (full - fci).abs() <= 1e-8,
            "{mol}: {full} vs external FCI {fci}"
        );
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(300),
        "{mol} run took {elapsed:?}, budget is 5 min"
    );
    println!(
        "ACCEPTANCE 2 [{}]: {} -> {} qubits ({} tapered), |full - tapered| = {:.1e}, {:.1} s ... PASS",
        mol,
        expect_before,
        expect_before - expect_tapered,
        expect_tapered,
        (full - tapered).abs(),
        elapsed.as_secs_f64()
    );
}

#[test]
fn acceptance_2a_lih_counts_and_energy() {
    check_molecule("lih", 12, 4, Some(LIH_FCI));
}

#[test]
fn acceptance_2b_h2o_counts_and_energy() {
    check_molecule("h2o", 14, 4, None);
}

#[test]
fn acceptance_2c_beh2_counts_and_energy() {
    check_molecule("beh2", 14, 5, None);
}

#[test]
fn acceptance_2d_nh3_counts_and_energy() {
    check_molecule("nh3", 16, 3, None);
}

#[test]
fn acceptance_2e_beh2_kernel_only_tapers_four() {
    let art = run_taper_pipeline(&cfg_for("beh2", false)).unwrap();
    assert_eq!(art.n_qubits_before() - art.n_qubits_after(), 4);
    println!("ACCEPTANCE 2 [beh2, kernel-only]: 4 tapered vs 5 with point groups ... PASS");
    println!(
        "ACCEPTANCE 2 [large rows]: C2H4/BF3/CO2/C2H2 are documented as out-of-scale (no fixtures)"
    );
}

fn random_commuting_independent(n: usize, k: usize, rng: &mut TestRng) -> Vec<PauliString> {
    loop {
        let cands: Vec<PauliString> = (0..k)
            .map(|_| PauliString::from_label(&rng.pauli_label(n)).unwrap())
            .collect();
        if cands.iter().any(|s| s.weight() == 0) {
            continue;
        }
        let commuting = (0..k)
            .all(|i| (i + 1..k).all(|j| PauliString::commutes(&cands[i], &cands[j]).unwrap()));
        if !commuting {
            continue;
        }
        let rows: Vec<_> = cands.iter().map(symplectic_row).collect();
        if BinMatrix::from_rows(2 * n, rows).rank() == k {
            return cands;
        }
    }
}

fn random_planted_hamiltonian(
    n: usize,
    planted: &[PauliString],
    terms: usize,
    rng: &mut TestRng,
) -> PauliSum {
    let mut h = PauliSum::new(n);
    let mut added = 0;
    while added < terms {
        let s = PauliString::from_label(&rng.pauli_label(n)).unwrap();
        if planted
            .iter()
            .all(|p| PauliString::commutes(&s, p).unwrap())
        {
            h.add(&s, c(0.25 + 0.75 * rng.unit().abs()));
            added += 1;
        }
    }
    h.simplify();
    h
}

#[test]
fn acceptance_3_spectrum_conservation_on_random_hamiltonians() {
    let mut rng = TestRng::new(2024);
    let mut done = 0;
    let mut attempts = 0;
    while done < 200 {
        attempts += 1;
        assert!(attempts < 600, "too many resamples");
        let n = 2 + (attempts % 4); // 2..=5 qubits
        let k = if n == 2 { 1 } else { 1 + (attempts % 2) };
        let planted = random_commuting_independent(n, k, &mut rng);
        let h = random_planted_hamiltonian(n, &planted, 3 * n + 2, &mut rng);
        if h.is_empty() {
            continue;
        }

        let e = build_check_matrix(&h).unwrap();
        let gens = match extract_generators(&e.kernel(), &h) {
            Ok(g) => g,
            Err(_) => continue, // non-abelian commutant; draw another instance
        };
        let plan = match build_plan(gens, n) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let transformed = match build_and_apply(&h, &plan) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let k_found = plan.n_tapered();

        let full = dense_spectrum(&h).unwrap().spectrum.unwrap();
        let mut union: Vec<f64> = Vec::with_capacity(full.len());
        for mask in 0..(1u64 << k_found) {
            let sector: Vec<i8> = (0..k_found)
                .map(|i| if (mask >> i) & 1 == 1 { -1 } else { 1 })
                .collect();
            let mut plan_s = plan.clone();
            plan_s.sector = sector.iter().map(|&v| SectorValue::Known(v)).collect();
            let reduced = symtaper::taper::taper(&transformed, &plan_s).unwrap();
            if reduced.n_qubits() == 0 {
                // fully tapered: the remaining scalar is the sector energy
                let c0 = reduced.iter_terms().map(|(_, c)| c.re).sum::<f64>();
                union.push(c0);
            } else {
                union.extend(dense_spectrum(&reduced).unwrap().spectrum.unwrap());
            }
        }
        union.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(union.len(), full.len(), "dimension mismatch");
        for (a, b) in union.iter().zip(&full) {
            assert!(
                (a - b).abs() <= 1e-10,
                "spectrum mismatch: {a} vs {b} (n={n}, k={k_found})"
            );
        }
        // ground-state capture
        let min_sector = union[0];
        assert!((min_sector - full[0]).abs() <= 1e-9);
        done += 1;
    }
    println!("ACCEPTANCE 3: spectrum conservation on {done} random Hamiltonians ... PASS");
}

#[test]
fn acceptance_4_kernel_matches_exhaustive_commutant() {
    let mut rng = TestRng::new(555);
    let mut done = 0;
    let mut attempts = 0;
    while done < 30 {
        attempts += 1;
        assert!(attempts < 200, "too many resamples");
        let n = 2 + (attempts % 3); // 2..=4 qubits
        let mut h = PauliSum::new(n);
        for _ in 0..3 * n {
            h.add(
                &PauliString::from_label(&rng.pauli_label(n)).unwrap(),
                c(rng.unit()),
            );
        }
        h.simplify();
        if h.is_empty() {
            continue;
        }
        let e = build_check_matrix(&h).unwrap();
        let gens = match extract_generators(&e.kernel(), &h) {
            Ok(g) => g,
            Err(_) => continue,
        };

        // exact symplectic re-check against every term
        for g in &gens {
            assert!(h.commutes_with(g).unwrap(), "generator fails commutation");
        }

        // exhaustive enumeration of the commutant over all 4^n strings
        let mut commutant = 0usize;
        let mut labels = vec![String::new()];
        for _ in 0..n {
            labels = labels
                .iter()
                .flat_map(|s| ["I", "X", "Y", "Z"].iter().map(move |p| format!("{s}{p}")))
                .collect();
        }
        for label in &labels {
            let s = PauliString::from_label(label).unwrap();
            if h.commutes_with(&s).unwrap() {
                commutant += 1;
            }
        }
        assert_eq!(
            commutant,
            1usize << gens.len(),
            "commutant size vs generator count (n={n})"
        );

        // products of random generator subsets still commute with all terms
        if !gens.is_empty() {
            for _ in 0..4 {
                let mut prod = PauliString::identity(n);
                for g in &gens {
                    if rng.below(2) == 1 {
                        prod = PauliString::multiply(&prod, g).unwrap();
                    }
                }
                assert!(h.commutes_with(&prod).unwrap());
            }
        }
        done += 1;
    }
    println!(
        "ACCEPTANCE 4: kernel generators match exhaustive commutants ({done} instances) ... PASS"
    );
}

#[test]
fn acceptance_5_pointgroup_consistency_dense() {
    let mut rng = TestRng::new(909);
    for trial in 0..20 {
        let ns = 2 + rng.below(2); // M <= 6
        let (mut hcore, mut eri) = random_spatial_integrals(ns, &mut rng);
        // random signed-permutation involution: one 2-cycle + random flips
        let i = rng.below(ns);
        let mut j = rng.below(ns);
        while j == i {
            j = rng.below(ns);
        }
        let mut perm: Vec<usize> = (0..ns).collect();
        perm.swap(i, j);
        let pair_sign = if rng.below(2) == 0 { 1i8 } else { -1 };
        let mut signs = vec![1i8; ns];
        signs[i] = pair_sign;
        signs[j] = pair_sign;
        let r_spatial = SignedPermutation::new(perm, signs).unwrap();

        // project the tensors onto the invariant subspace
        let rp = r_spatial.perm();
        let rs = r_spatial.signs();
        let mut h2 = hcore.clone();
        for a in 0..ns {
            for b in 0..ns {
                h2[a * ns + b] =
                    0.5 * (hcore[a * ns + b] + (rs[a] * rs[b]) as f64 * hcore[rp[a] * ns + rp[b]]);
            }
        }
        hcore = h2;
        let idx = |p: usize, q: usize, r: usize, s: usize| ((p * ns + q) * ns + r) * ns + s;
        let mut g2 = eri.clone();
        for p in 0..ns {
            for q in 0..ns {
                for r in 0..ns {
                    for s in 0..ns {
                        let sg = (rs[p] * rs[q] * rs[r] * rs[s]) as f64;
                        g2[idx(p, q, r, s)] = 0.5
                            * (eri[idx(p, q, r, s)] + sg * eri[idx(rp[p], rp[q], rp[r], rp[s])]);
                    }
                }
            }
        }
        eri = g2;

        let ints = IntegralSet::from_spatial(ns, &hcore, &eri, 0.0, 1, 1);
        let r = r_spatial.lift_to_spin();
        let (ok, _) = check_invariance(&ints, &r, INVARIANCE_TOL).unwrap();
        assert!(ok);

        let h = map_hamiltonian(&ints, MappingKind::JordanWigner).unwrap();
        let rhat = sum_matrix(&second_quantized_permutation(&r).unwrap());
        let comm = commutator_norm(&rhat, &sum_matrix(&h));
        assert!(comm <= 1e-10, "trial {trial}: commutator {comm:e}");

        let (v, syms) = simultaneous_diagonalize(&[r]).unwrap();
        let rotated = rotate_integrals(&ints, &v).unwrap();
        let h_rot = map_hamiltonian(&rotated, MappingKind::JordanWigner).unwrap();
        assert!(
            verify_z_symmetry(&h_rot, &syms[0]).unwrap(),
            "trial {trial}"
        );
    }
    println!("ACCEPTANCE 5: tensor and Fock-space views agree on 20 random involutions ... PASS");
}

#[test]
fn acceptance_6_sector_selection_matches_scan() {
    for mol in ["h2", "lih", "beh2", "h2o"] {
        let art = run_taper_pipeline(&cfg_for(mol, true)).unwrap();
        assert_eq!(
            art.sector_source, "hf-occupation",
            "{mol}: occupation rule should fix every sector"
        );
        let selected = art.plan.sector_values().unwrap();
        let all_unknown = vec![SectorValue::Unknown; art.plan.n_tapered()];
        let scan = sector_scan(&art.transformed, &art.plan, &all_unknown, 0).unwrap();
        assert_eq!(
            selected, scan.best.sector,
            "{mol}: HF-occupation sector vs scan argmin"
        );
        println!("ACCEPTANCE 6 [{mol}]: selected sector equals scan argmin ... PASS");
    }

    // BeH2 spin-parity rule: three electrons per spin block -> -1 and -1
    let art = run_taper_pipeline(&cfg_for("beh2", true)).unwrap();
    let ns = art.ints_rotated.n_spatial();
    let alpha = PauliString::from_label(&format!("{}{}", "Z".repeat(ns), "I".repeat(ns))).unwrap();
    let beta = PauliString::from_label(&format!("{}{}", "I".repeat(ns), "Z".repeat(ns))).unwrap();
    assert!(art.hamiltonian.commutes_with(&alpha).unwrap());
    assert!(art.hamiltonian.commutes_with(&beta).unwrap());
    let sectors = select_sector(&[alpha, beta], &art.ints_rotated, MappingKind::JordanWigner);
    assert_eq!(
        sectors,
        vec![SectorValue::Known(-1), SectorValue::Known(-1)],
        "BeH2 spin parities must select -1, -1"
    );
    println!("ACCEPTANCE 6 [beh2 spin parities]: eigenvalues (-1, -1) ... PASS");
}

#[test]
fn acceptance_7_reports_are_byte_identical() {
    let cfg = cfg_for("beh2", true);
    let (report_a, art_a) = run_taper(&cfg).unwrap();
    let (report_b, art_b) = run_taper(&cfg).unwrap();
    assert_eq!(report_a, report_b, "taper reports differ between runs");
    assert_eq!(
        art_a.reduced.to_text(),
        art_b.reduced.to_text(),
        "reduced Hamiltonian files differ between runs"
    );

    // the scan path must be deterministic too
    let mut cfg = cfg_for("h2", true);
    cfg.sector_scan = true;
    let (scan_a, _) = run_taper(&cfg).unwrap();
    let (scan_b, _) = run_taper(&cfg).unwrap();
    assert_eq!(scan_a, scan_b, "sector-scan reports differ between runs");
    println!("ACCEPTANCE 7: byte-identical reports across repeated runs ... PASS");
}
