//! FCIDUMP (Molpro-style) reader and the spin-orbital integral container.
//!
//! Spatial integrals from the file are expanded to spin orbitals in BLOCKED
//! ordering: alpha orbitals first (0..n_spatial-1), then beta. The file stores
//! chemist-notation (ij|kl) values with 8-fold permutation symmetry; the
//! expanded two-body tensor is converted to physicist ordering so that
//!
//! ```text
//! H = sum_ij h1[i,j] a†_i a_j + 1/2 sum_ijkl h2[i,j,k,l] a†_i a†_j a_k a_l + e_core
//! ```
//!
//! All energies are in Hartree.

use crate::error::{Error, Result};

const DUP_TOL: f64 = 1e-10;

/// One- and two-body integrals over M = 2·n_spatial spin orbitals.
#[derive(Clone, Debug)]
pub struct IntegralSet {
    n_spatial: usize,
    h1: Vec<f64>,
    h2: Vec<f64>,
    e_core: f64,
    n_alpha: usize,
    n_beta: usize,
}

impl IntegralSet {
    pub fn new(
        n_spatial: usize,
        h1: Vec<f64>,
        h2: Vec<f64>,
        e_core: f64,
        n_alpha: usize,
        n_beta: usize,
    ) -> Self {
        let m = 2 * n_spatial;
        assert_eq!(h1.len(), m * m);
        assert_eq!(h2.len(), m * m * m * m);
        IntegralSet {
            n_spatial,
            h1,
            h2,
            e_core,
            n_alpha,
            n_beta,
        }
    }

    pub fn n_spatial(&self) -> usize {
        self.n_spatial
    }

    /// Number of spin orbitals M.
    pub fn n_spin_orbitals(&self) -> usize {
        2 * self.n_spatial
    }

    pub fn e_core(&self) -> f64 {
        self.e_core
    }

    pub fn n_alpha(&self) -> usize {
        self.n_alpha
    }

    pub fn n_beta(&self) -> usize {
        self.n_beta
    }

    pub fn n_electrons(&self) -> usize {
        self.n_alpha + self.n_beta
    }

    #[inline]
    pub fn h1(&self, i: usize, j: usize) -> f64 {
        self.h1[i * self.n_spin_orbitals() + j]
    }

    #[inline]
    pub fn h2(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let m = self.n_spin_orbitals();
        self.h2[((i * m + j) * m + k) * m + l]
    }

    pub fn h1_raw(&self) -> &[f64] {
        &self.h1
    }

    pub fn h2_raw(&self) -> &[f64] {
        &self.h2
    }

    /// Spatial index and spin (0 = alpha, 1 = beta) of a spin orbital.
    pub fn spatial_spin(&self, i: usize) -> (usize, usize) {
        if i < self.n_spatial {
            (i, 0)
        } else {
            (i - self.n_spatial, 1)
        }
    }

    /// Build from spatial integrals: hcore (ns x ns, row-major) and chemist
    /// (pq|rs) electron repulsion integrals (ns^4, index ((p·ns+q)·ns+r)·ns+s).
    pub fn from_spatial(
        n_spatial: usize,
        hcore: &[f64],
        eri_chem: &[f64],
        e_core: f64,
        n_alpha: usize,
        n_beta: usize,
    ) -> Self {
        let ns = n_spatial;
        let m = 2 * ns;
        assert_eq!(hcore.len(), ns * ns);
        assert_eq!(eri_chem.len(), ns * ns * ns * ns);
        let sp = |i: usize| if i < ns { (i, 0usize) } else { (i - ns, 1) };
        let mut h1 = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                let (pi, si) = sp(i);
                let (pj, sj) = sp(j);
                if si == sj {
                    h1[i * m + j] = hcore[pi * ns + pj];
                }
            }
        }
        let chem =
            |p: usize, q: usize, r: usize, s: usize| eri_chem[((p * ns + q) * ns + r) * ns + s];
        let mut h2 = vec![0.0; m * m * m * m];
        for i in 0..m {
            let (pi, si) = sp(i);
            for j in 0..m {
                let (pj, sj) = sp(j);
                for k in 0..m {
                    let (pk, sk) = sp(k);
                    if sk != sj {
                        continue;
                    }
                    for l in 0..m {
                        let (pl, sl) = sp(l);
                        if sl != si {
                            continue;
                        }
                        // physicist h_{ijkl} = (sp(i) sp(l) | sp(j) sp(k))
                        h2[((i * m + j) * m + k) * m + l] = chem(pi, pl, pj, pk);
                    }
                }
            }
        }
        IntegralSet::new(n_spatial, h1, h2, e_core, n_alpha, n_beta)
    }

    /// Spatial hcore recovered from the alpha block.
    pub fn spatial_h1(&self) -> Vec<f64> {
        let ns = self.n_spatial;
        let m = self.n_spin_orbitals();
        let mut out = vec![0.0; ns * ns];
        for p in 0..ns {
            for q in 0..ns {
                out[p * ns + q] = self.h1[p * m + q];
            }
        }
        out
    }

    /// Spatial chemist (pq|rs) recovered from the mixed-spin block.
    pub fn spatial_eri_chem(&self) -> Vec<f64> {
        let ns = self.n_spatial;
        let mut out = vec![0.0; ns * ns * ns * ns];
        for p in 0..ns {
            for q in 0..ns {
                for r in 0..ns {
                    for s in 0..ns {
                        // h2[p_a, r_b, s_b, q_a] = (pq|rs)
                        out[((p * ns + q) * ns + r) * ns + s] = self.h2(p, r + ns, s + ns, q);
                    }
                }
            }
        }
        out
    }

    /// Serialize back to FCIDUMP text (8-fold-unique chemist entries).
    pub fn to_fcidump_string(&self) -> String {
        let ns = self.n_spatial;
        let nelec = self.n_electrons();
        let ms2 = self.n_alpha as i64 - self.n_beta as i64;
        let mut out = String::new();
        out.push_str(&format!(
            "&FCI NORB={},NELEC={},MS2={},\n  ORBSYM={}\n  ISYM=1,\n&END\n",
            ns,
            nelec,
            ms2,
            "1,".repeat(ns)
        ));
        let eri = self.spatial_eri_chem();
        let chem = |p: usize, q: usize, r: usize, s: usize| eri[((p * ns + q) * ns + r) * ns + s];
        for p in 0..ns {
            for q in 0..=p {
                for r in 0..=p {
                    let s_max = if r == p { q } else { r };
                    for s in 0..=s_max {
                        let v = chem(p, q, r, s);
                        if v.abs() > 1e-14 {
                            out.push_str(&format!(
                                " {:.16E} {} {} {} {}\n",
                                v,
                                p + 1,
                                q + 1,
                                r + 1,
                                s + 1
                            ));
                        }
                    }
                }
            }
        }
        let h1 = self.spatial_h1();
        for p in 0..ns {
            for q in 0..=p {
                let v = h1[p * ns + q];
                if v.abs() > 1e-14 {
                    out.push_str(&format!(" {:.16E} {} {} 0 0\n", v, p + 1, q + 1));
                }
            }
        }
        out.push_str(&format!(" {:.16E} 0 0 0 0\n", self.e_core));
        out
    }
}

fn header_int(header: &str, key: &str) -> Result<Option<i64>> {
    let Some(pos) = header.find(key) else {
        return Ok(None);
    };
    let rest = &header[pos + key.len()..];
    let digits: String = rest
        .chars()
        .skip_while(|c| c.is_whitespace())
        .take_while(|c| c.is_ascii_digit() || *c == '-' || *c == '+')
        .collect();
    digits
        .parse::<i64>()
        .map(Some)
        .map_err(|_| Error::Parse(format!("malformed {key} in FCIDUMP header")))
}

/// Parse FCIDUMP text into an [`IntegralSet`].
pub fn parse_fcidump(text: &str) -> Result<IntegralSet> {
    let mut lines = text.lines();
    let mut header = String::new();
    let mut found_end = false;
    for line in lines.by_ref() {
        let upper = line.to_ascii_uppercase();
        header.push_str(&upper);
        header.push(' ');
        if upper.contains("&END") || upper.trim_end().ends_with('/') {
            found_end = true;
            break;
        }
    }
    if !header.contains("&FCI") || !found_end {
        return Err(Error::Parse(
            "missing &FCI ... &END header in FCIDUMP".into(),
        ));
    }
    let norb = header_int(&header, "NORB=")?
        .ok_or_else(|| Error::Parse("FCIDUMP header lacks NORB".into()))? as usize;
    let nelec = header_int(&header, "NELEC=")?
        .ok_or_else(|| Error::Parse("FCIDUMP header lacks NELEC".into()))?;
    let ms2 = header_int(&header, "MS2=")?.unwrap_or(0);
    if norb == 0 {
        return Err(Error::Parse("NORB must be positive".into()));
    }
    if nelec < 0 || (nelec + ms2) % 2 != 0 || nelec < ms2.abs() {
        return Err(Error::Parse(format!(
            "inconsistent NELEC={nelec} / MS2={ms2}"
        )));
    }
    let n_alpha = ((nelec + ms2) / 2) as usize;
    let n_beta = ((nelec - ms2) / 2) as usize;

    let ns = norb;
    let mut hcore = vec![0.0; ns * ns];
    let mut hcore_seen = vec![false; ns * ns];
    let mut eri = vec![0.0; ns * ns * ns * ns];
    let mut eri_seen = vec![false; ns * ns * ns * ns];
    let mut e_core = 0.0;

    let idx4 = |p: usize, q: usize, r: usize, s: usize| ((p * ns + q) * ns + r) * ns + s;

    for (lineno, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(Error::Parse(format!(
                "FCIDUMP data line {} has {} fields (expected 5)",
                lineno + 1,
                fields.len()
            )));
        }
        let v: f64 = fields[0]
            .parse()
            .map_err(|_| Error::Parse(format!("bad value on FCIDUMP data line {}", lineno + 1)))?;
        let ix: Vec<i64> = fields[1..]
            .iter()
            .map(|f| f.parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("bad index on FCIDUMP data line {}", lineno + 1)))?;
        let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
        for &t in &[i, j, k, l] {
            if t < 0 || t as usize > ns {
                return Err(Error::Parse(format!(
                    "orbital index {} out of range 0..{} on line {}",
                    t,
                    ns,
                    lineno + 1
                )));
            }
        }
        match (i, j, k, l) {
            (0, 0, 0, 0) => e_core = v,
            (i, j, 0, 0) if i > 0 && j > 0 => {
                let (p, q) = ((i - 1) as usize, (j - 1) as usize);
                for (a, b) in [(p, q), (q, p)] {
                    let at = a * ns + b;
                    if hcore_seen[at] && (hcore[at] - v).abs() > DUP_TOL {
                        return Err(Error::Parse(format!(
                            "conflicting one-body entries for ({},{}) on line {}",
                            a + 1,
                            b + 1,
                            lineno + 1
                        )));
                    }
                    hcore[at] = v;
                    hcore_seen[at] = true;
                }
            }
            (i, 0, 0, 0) if i > 0 => {
                // orbital-energy convenience line; not part of the Hamiltonian
            }
            (i, j, k, l) if i > 0 && j > 0 && k > 0 && l > 0 => {
                let (p, q, r, s) = (
                    (i - 1) as usize,
                    (j - 1) as usize,
                    (k - 1) as usize,
                    (l - 1) as usize,
                );
                for (a, b, c, d) in [
                    (p, q, r, s),
                    (q, p, r, s),
                    (p, q, s, r),
                    (q, p, s, r),
                    (r, s, p, q),
                    (s, r, p, q),
                    (r, s, q, p),
                    (s, r, q, p),
                ] {
                    let at = idx4(a, b, c, d);
                    if eri_seen[at] && (eri[at] - v).abs() > DUP_TOL {
                        return Err(Error::Parse(format!(
                            "conflicting two-body entries for ({} {}|{} {}) on line {}",
                            a + 1,
                            b + 1,
                            c + 1,
                            d + 1,
                            lineno + 1
                        )));
                    }
                    eri[at] = v;
                    eri_seen[at] = true;
                }
            }
            _ => {
                return Err(Error::Parse(format!(
                    "unrecognized index pattern {i} {j} {k} {l} on line {}",
                    lineno + 1
                )));
            }
        }
    }

    Ok(IntegralSet::from_spatial(
        ns, &hcore, &eri, e_core, n_alpha, n_beta,
    ))
}

pub fn parse_fcidump_file(path: &std::path::Path) -> Result<IntegralSet> {
    let text = std::fs::read_to_string(path)?;
    parse_fcidump(&text)
}

/// Verify the canonical anticommutation relations of the mapped mode
/// operators as dense matrices: {a_i, a_j} = 0 and {a_i, a†_j} = δ_ij I.
/// Returns the maximum absolute deviation. Diagnostic only; M must be small.
pub fn hamiltonian_action_check(ints: &IntegralSet) -> Result<f64> {
    let m = ints.n_spin_orbitals();
    if m > 6 {
        return Err(Error::TooLarge(format!(
            "action check builds 2^{m} dense matrices; M must be <= 6"
        )));
    }
    let lowers: Vec<_> = (0..m)
        .map(|p| crate::fermion::lowering_operator(p, m, crate::fermion::MappingKind::JordanWigner))
        .collect();
    let dim = 1usize << m;
    let dense: Vec<_> = lowers.iter().map(crate::spectrum::to_dense).collect();
    let mut max_dev: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let anti = &dense[i] * &dense[j] + &dense[j] * &dense[i];
            for v in anti.iter() {
                max_dev = max_dev.max(v.norm());
            }
            let daggered = dense[j].adjoint();
            let anti = &dense[i] * &daggered + &daggered * &dense[i];
            let delta = if i == j { 1.0 } else { 0.0 };
            for (r, c) in (0..dim).flat_map(|r| (0..dim).map(move |c| (r, c))) {
                let expect = if r == c { delta } else { 0.0 };
                max_dev =
                    max_dev.max((anti[(r, c)] - num_complex::Complex64::new(expect, 0.0)).norm());
            }
        }
    }
    Ok(max_dev)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TINY: &str = "&FCI NORB=2,NELEC=2,MS2=0,\n  ORBSYM=1,1,\n  ISYM=1,\n&END\n \
 6.0E-01 1 1 1 1\n 1.5E-01 2 1 1 1\n 5.0E-01 2 2 1 1\n 1.0E-01 2 1 2 1\n 5.5E-01 2 2 2 2\n \
 -1.25E+00 1 1 0 0\n -4.0E-01 2 1 0 0\n -9.0E-01 2 2 0 0\n 7.0E-01 0 0 0 0\n";

    #[test]
    fn header_arithmetic() {
        let ints = parse_fcidump(TINY).unwrap();
        assert_eq!(ints.n_spatial(), 2);
        assert_eq!(ints.n_spin_orbitals(), 4);
        assert_eq!(ints.n_alpha(), 1);
        assert_eq!(ints.n_beta(), 1);
        assert!((ints.e_core() - 0.7).abs() < 1e-15);
    }

    #[test]
    fn missing_core_line_defaults_to_zero() {
        let text = "&FCI NORB=1,NELEC=2,MS2=0,\n&END\n 1.0 1 1 0 0\n";
        let ints = parse_fcidump(text).unwrap();
        assert_eq!(ints.e_core(), 0.0);
    }

    #[test]
    fn blocked_spin_expansion() {
        let ints = parse_fcidump(TINY).unwrap();
        let m = ints.n_spin_orbitals();
        // alpha block equals beta block exactly
        for p in 0..2 {
            for q in 0..2 {
                assert_eq!(ints.h1(p, q), ints.h1(p + 2, q + 2));
            }
        }
        // spin-forbidden one-body entries are exactly zero
        for p in 0..2 {
            for q in 2..m {
                assert_eq!(ints.h1(p, q), 0.0);
            }
        }
        // h1 symmetric
        for i in 0..m {
            for j in 0..m {
                assert!((ints.h1(i, j) - ints.h1(j, i)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn physicist_tensor_hermiticity() {
        let ints = parse_fcidump(TINY).unwrap();
        let m = ints.n_spin_orbitals();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        assert!(
                            (ints.h2(i, j, k, l) - ints.h2(l, k, j, i)).abs() < 1e-12,
                            "h2 hermiticity broken at {i}{j}{k}{l}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn eightfold_expansion() {
        let ints = parse_fcidump(TINY).unwrap();
        let eri = ints.spatial_eri_chem();
        let ns = 2;
        let chem = |p: usize, q: usize, r: usize, s: usize| eri[((p * ns + q) * ns + r) * ns + s];
        // the (21|11)=0.15 line must populate (12|11), (11|21), (11|12), ...
        assert!((chem(1, 0, 0, 0) - 0.15).abs() < 1e-15);
        assert!((chem(0, 1, 0, 0) - 0.15).abs() < 1e-15);
        assert!((chem(0, 0, 1, 0) - 0.15).abs() < 1e-15);
        assert!((chem(0, 0, 0, 1) - 0.15).abs() < 1e-15);
    }

    #[test]
    fn roundtrip_write_parse() {
        let ints = parse_fcidump(TINY).unwrap();
        let text = ints.to_fcidump_string();
        let back = parse_fcidump(&text).unwrap();
        assert_eq!(back.n_spatial(), ints.n_spatial());
        assert!((back.e_core() - ints.e_core()).abs() < 1e-12);
        let m = ints.n_spin_orbitals();
        for i in 0..m * m {
            assert!((back.h1_raw()[i] - ints.h1_raw()[i]).abs() < 1e-12);
        }
        for i in 0..m * m * m * m {
            assert!((back.h2_raw()[i] - ints.h2_raw()[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn conflicting_duplicates_rejected() {
        let text = "&FCI NORB=2,NELEC=2,MS2=0,\n&END\n 1.0 1 2 0 0\n 2.0 2 1 0 0\n";
        assert!(parse_fcidump(text).is_err());
    }

    #[test]
    fn malformed_header_rejected() {
        assert!(parse_fcidump("NORB=2\n 1.0 1 1 0 0\n").is_err());
        assert!(parse_fcidump("&FCI NELEC=2,\n&END\n").is_err());
        assert!(parse_fcidump("&FCI NORB=2,NELEC=3,MS2=0,\n&END\n").is_err());
    }

    #[test]
    fn out_of_range_index_rejected() {
        let text = "&FCI NORB=2,NELEC=2,MS2=0,\n&END\n 1.0 3 1 0 0\n";
        assert!(parse_fcidump(text).is_err());
    }

    #[test]
    fn action_check_is_exact_for_m2() {
        let ints = IntegralSet::from_spatial(1, &[0.5], &[0.25], 0.0, 1, 0);
        let dev = hamiltonian_action_check(&ints).unwrap();
        assert_eq!(dev, 0.0);
    }
}
