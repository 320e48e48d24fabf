#!/usr/bin/env python3
"""Generate FCIDUMP fixtures and symmetry files for the test molecules.

Computes STO-3G one- and two-electron integrals (McMurchie-Davidson scheme)
over atom-centred Gaussians, symmetrically orthogonalizes the basis (Lowdin
S^-1/2, which commutes with every point-group operation that permutes and
sign-flips the atomic orbitals), and writes Molpro-style FCIDUMP files plus
the point-group operations as signed-permutation JSON.

Sanity checks performed per molecule:
  * restricted Hartree-Fock energy against literature STO-3G values
  * invariance of the orthogonalized tensors under each symmetry operation
  * for H2 and LiH, exact diagonalization of the full Fock-space Hamiltonian
    (the frozen oracle energies used by the Rust acceptance tests)

Usage: python3 scripts/gen_fixtures.py [outdir]
"""

import json
import math
import os
import sys
from functools import lru_cache

import numpy as np
from scipy.special import hyp1f1

ANGSTROM = 1.8897259886  # bohr per angstrom

# ----------------------------------------------------------------------------
# STO-3G basis data: universal fit coefficients, per-element Slater exponents.

S1_COEF = [0.1543289673, 0.5353281423, 0.4446345422]
S1_ALPHA = [2.227660584, 0.405771156, 0.109818]
SP_S_COEF = [-0.09996722919, 0.3995128261, 0.7001154689]
SP_P_COEF = [0.155916275, 0.6076837186, 0.3919573931]
SP_ALPHA = [0.994203, 0.231031, 0.0751386]

# (zeta_1s, zeta_2sp or None, nuclear charge)
ELEMENTS = {
    "H": (1.24, None, 1),
    "Li": (2.69, 0.80, 3),
    "Be": (3.68, 1.15, 4),
    "N": (6.67, 1.95, 7),
    "O": (7.66, 2.25, 8),
}


def double_factorial(n):
    return 1 if n <= 0 else n * double_factorial(n - 2)


def prim_norm(a, lmn):
    l, m, n = lmn
    return (
        (2 * a / math.pi) ** 0.75
        * (4 * a) ** ((l + m + n) / 2.0)
        / math.sqrt(
            double_factorial(2 * l - 1)
            * double_factorial(2 * m - 1)
            * double_factorial(2 * n - 1)
        )
    )


class Shell:
    """One contracted Cartesian Gaussian."""

    def __init__(self, center, lmn, alphas, coefs):
        self.center = np.asarray(center, dtype=float)
        self.lmn = tuple(lmn)
        self.alphas = list(alphas)
        norms = [prim_norm(a, lmn) for a in alphas]
        self.coefs = [c * n for c, n in zip(coefs, norms)]
        # normalize the contraction
        s = 0.0
        for ci, ai in zip(self.coefs, self.alphas):
            for cj, aj in zip(self.coefs, self.alphas):
                s += ci * cj * overlap_prim(ai, self.lmn, self.center, aj, self.lmn, self.center)
        self.coefs = [c / math.sqrt(s) for c in self.coefs]


@lru_cache(maxsize=None)
def hermite_e(i, j, t, qx, a, b):
    p = a + b
    q = a * b / p
    if t < 0 or t > i + j or i < 0 or j < 0:
        return 0.0
    if i == j == t == 0:
        return math.exp(-q * qx * qx)
    if j == 0:
        return (
            (1.0 / (2 * p)) * hermite_e(i - 1, j, t - 1, qx, a, b)
            - (q * qx / a) * hermite_e(i - 1, j, t, qx, a, b)
            + (t + 1) * hermite_e(i - 1, j, t + 1, qx, a, b)
        )
    return (
        (1.0 / (2 * p)) * hermite_e(i, j - 1, t - 1, qx, a, b)
        + (q * qx / b) * hermite_e(i, j - 1, t, qx, a, b)
        + (t + 1) * hermite_e(i, j - 1, t + 1, qx, a, b)
    )


def overlap_prim(a, lmn1, A, b, lmn2, B):
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    if min(l1, m1, n1, l2, m2, n2) < 0:
        return 0.0
    s1 = hermite_e(l1, l2, 0, A[0] - B[0], a, b)
    s2 = hermite_e(m1, m2, 0, A[1] - B[1], a, b)
    s3 = hermite_e(n1, n2, 0, A[2] - B[2], a, b)
    return s1 * s2 * s3 * (math.pi / (a + b)) ** 1.5


def kinetic_prim(a, lmn1, A, b, lmn2, B):
    l2, m2, n2 = lmn2
    term0 = b * (2 * (l2 + m2 + n2) + 3) * overlap_prim(a, lmn1, A, b, lmn2, B)
    term1 = -2 * b * b * (
        overlap_prim(a, lmn1, A, b, (l2 + 2, m2, n2), B)
        + overlap_prim(a, lmn1, A, b, (l2, m2 + 2, n2), B)
        + overlap_prim(a, lmn1, A, b, (l2, m2, n2 + 2), B)
    )
    term2 = -0.5 * (
        l2 * (l2 - 1) * overlap_prim(a, lmn1, A, b, (l2 - 2, m2, n2), B)
        + m2 * (m2 - 1) * overlap_prim(a, lmn1, A, b, (l2, m2 - 2, n2), B)
        + n2 * (n2 - 1) * overlap_prim(a, lmn1, A, b, (l2, m2, n2 - 2), B)
    )
    return term0 + term1 + term2


def boys(n, t):
    return hyp1f1(n + 0.5, n + 1.5, -t) / (2.0 * n + 1.0)


@lru_cache(maxsize=None)
def hermite_r(t, u, v, n, p, pcx, pcy, pcz, rpc):
    T = p * rpc * rpc
    if t == u == v == 0:
        return (-2.0 * p) ** n * boys(n, T)
    if t == u == 0:
        val = 0.0
        if v > 1:
            val += (v - 1) * hermite_r(t, u, v - 2, n + 1, p, pcx, pcy, pcz, rpc)
        return val + pcz * hermite_r(t, u, v - 1, n + 1, p, pcx, pcy, pcz, rpc)
    if t == 0:
        val = 0.0
        if u > 1:
            val += (u - 1) * hermite_r(t, u - 2, v, n + 1, p, pcx, pcy, pcz, rpc)
        return val + pcy * hermite_r(t, u - 1, v, n + 1, p, pcx, pcy, pcz, rpc)
    val = 0.0
    if t > 1:
        val += (t - 1) * hermite_r(t - 2, u, v, n + 1, p, pcx, pcy, pcz, rpc)
    return val + pcx * hermite_r(t - 1, u, v, n + 1, p, pcx, pcy, pcz, rpc)


def nuclear_prim(a, lmn1, A, b, lmn2, B, C):
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    p = a + b
    P = (a * A + b * B) / p
    rpc = float(np.linalg.norm(P - C))
    val = 0.0
    for t in range(l1 + l2 + 1):
        et = hermite_e(l1, l2, t, A[0] - B[0], a, b)
        for u in range(m1 + m2 + 1):
            eu = hermite_e(m1, m2, u, A[1] - B[1], a, b)
            for v in range(n1 + n2 + 1):
                ev = hermite_e(n1, n2, v, A[2] - B[2], a, b)
                val += et * eu * ev * hermite_r(
                    t, u, v, 0, p, P[0] - C[0], P[1] - C[1], P[2] - C[2], rpc
                )
    return val * 2.0 * math.pi / p


def eri_prim(a, lmn1, A, b, lmn2, B, c, lmn3, C, d, lmn4, D):
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    l3, m3, n3 = lmn3
    l4, m4, n4 = lmn4
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    P = (a * A + b * B) / p
    Q = (c * C + d * D) / q
    rpq = float(np.linalg.norm(P - Q))
    val = 0.0
    for t in range(l1 + l2 + 1):
        e1 = hermite_e(l1, l2, t, A[0] - B[0], a, b)
        for u in range(m1 + m2 + 1):
            e2 = hermite_e(m1, m2, u, A[1] - B[1], a, b)
            for v in range(n1 + n2 + 1):
                e3 = hermite_e(n1, n2, v, A[2] - B[2], a, b)
                pre = e1 * e2 * e3
                if pre == 0.0:
                    continue
                for tau in range(l3 + l4 + 1):
                    f1 = hermite_e(l3, l4, tau, C[0] - D[0], c, d)
                    for nu in range(m3 + m4 + 1):
                        f2 = hermite_e(m3, m4, nu, C[1] - D[1], c, d)
                        for phi in range(n3 + n4 + 1):
                            f3 = hermite_e(n3, n4, phi, C[2] - D[2], c, d)
                            sign = -1.0 if (tau + nu + phi) % 2 else 1.0
                            val += pre * f1 * f2 * f3 * sign * hermite_r(
                                t + tau,
                                u + nu,
                                v + phi,
                                0,
                                alpha,
                                P[0] - Q[0],
                                P[1] - Q[1],
                                P[2] - Q[2],
                                rpq,
                            )
    return val * 2.0 * math.pi ** 2.5 / (p * q * math.sqrt(p + q))


def contracted(fn, sa, sb, *rest):
    total = 0.0
    for ca, aa in zip(sa.coefs, sa.alphas):
        for cb, ab in zip(sb.coefs, sb.alphas):
            total += ca * cb * fn(aa, sa.lmn, sa.center, ab, sb.lmn, sb.center, *rest)
    return total


def contracted_eri(sa, sb, sc, sd):
    total = 0.0
    for ca, aa in zip(sa.coefs, sa.alphas):
        for cb, ab in zip(sb.coefs, sb.alphas):
            for cc, ac in zip(sc.coefs, sc.alphas):
                for cd, ad in zip(sd.coefs, sd.alphas):
                    total += ca * cb * cc * cd * eri_prim(
                        aa, sa.lmn, sa.center,
                        ab, sb.lmn, sb.center,
                        ac, sc.lmn, sc.center,
                        ad, sd.lmn, sd.center,
                    )
    return total


def build_shells(atoms):
    """atoms: list of (symbol, xyz in bohr). Returns shells in the fixed
    order: per atom, [1s, (2s, 2px, 2py, 2pz if second row)]."""
    shells = []
    for symbol, xyz in atoms:
        zeta1, zeta2, _ = ELEMENTS[symbol]
        a1 = [zeta1 ** 2 * x for x in S1_ALPHA]
        shells.append(Shell(xyz, (0, 0, 0), a1, S1_COEF))
        if zeta2 is not None:
            a2 = [zeta2 ** 2 * x for x in SP_ALPHA]
            shells.append(Shell(xyz, (0, 0, 0), a2, SP_S_COEF))
            shells.append(Shell(xyz, (1, 0, 0), a2, SP_P_COEF))
            shells.append(Shell(xyz, (0, 1, 0), a2, SP_P_COEF))
            shells.append(Shell(xyz, (0, 0, 1), a2, SP_P_COEF))
    return shells


def integrals(atoms):
    shells = build_shells(atoms)
    n = len(shells)
    S = np.zeros((n, n))
    T = np.zeros((n, n))
    V = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            S[i, j] = S[j, i] = contracted(overlap_prim, shells[i], shells[j])
            T[i, j] = T[j, i] = contracted(kinetic_prim, shells[i], shells[j])
            v = 0.0
            for symbol, xyz in atoms:
                charge = ELEMENTS[symbol][2]
                v -= charge * contracted(nuclear_prim, shells[i], shells[j], np.asarray(xyz))
            V[i, j] = V[j, i] = v
    eri = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(i + 1):
            for k in range(i + 1):
                lmax = j if k == i else k
                for l in range(lmax + 1):
                    val = contracted_eri(shells[i], shells[j], shells[k], shells[l])
                    for (a, b, c, d) in {
                        (i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
                        (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i),
                    }:
                        eri[a, b, c, d] = val
    enuc = 0.0
    for p in range(len(atoms)):
        for q in range(p):
            zp = ELEMENTS[atoms[p][0]][2]
            zq = ELEMENTS[atoms[q][0]][2]
            enuc += zp * zq / np.linalg.norm(np.asarray(atoms[p][1]) - np.asarray(atoms[q][1]))
    return S, T + V, eri, enuc


def lowdin(S, hcore, eri):
    w, U = np.linalg.eigh(S)
    X = U @ np.diag(w ** -0.5) @ U.T
    h = X.T @ hcore @ X
    g = np.einsum("pi,qj,rk,sl,pqrs->ijkl", X, X, X, X, eri, optimize=True)
    return h, g


def rhf(h, g, nelec, enuc, iters=200, tol=1e-10):
    """Restricted HF in an orthonormal basis."""
    n = h.shape[0]
    nocc = nelec // 2
    F = h.copy()
    D = np.zeros((n, n))
    e_old = 0.0
    for _ in range(iters):
        w, C = np.linalg.eigh(F)
        Cocc = C[:, :nocc]
        D = 2.0 * Cocc @ Cocc.T
        J = np.einsum("pqrs,rs->pq", g, D, optimize=True)
        K = np.einsum("prqs,rs->pq", g, D, optimize=True)
        F = h + J - 0.5 * K
        e = 0.5 * np.sum(D * (h + F)) + enuc
        if abs(e - e_old) < tol:
            return e
        e_old = e
    return e_old


def spin_expand(h, g):
    """Blocked spin-orbital expansion, physicist ordering (matches the Rust
    parser's convention)."""
    ns = h.shape[0]
    m = 2 * ns

    def sp(i):
        return (i, 0) if i < ns else (i - ns, 1)

    h1 = np.zeros((m, m))
    for i in range(m):
        for j in range(m):
            pi, si = sp(i)
            pj, sj = sp(j)
            if si == sj:
                h1[i, j] = h[pi, pj]
    h2 = np.zeros((m, m, m, m))
    for i in range(m):
        pi, si = sp(i)
        for j in range(m):
            pj, sj = sp(j)
            for k in range(m):
                pk, sk = sp(k)
                if sk != sj:
                    continue
                for l in range(m):
                    pl, sl = sp(l)
                    if sl != si:
                        continue
                    h2[i, j, k, l] = g[pi, pl, pj, pk]
    return h1, h2


def popcount_below(states, p):
    """Parity sign (-1)^(occupied modes below p) per state, vectorized."""
    mask = (1 << p) - 1
    masked = states & mask
    counts = np.zeros_like(masked)
    tmp = masked.copy()
    while np.any(tmp):
        counts += tmp & 1
        tmp >>= 1
    return 1.0 - 2.0 * (counts % 2)


def apply_op_chain(states, amp0, chain):
    """Apply a normal-ordered operator chain (rightmost first) to all basis
    states. chain entries: ('a'|'c', mode). Returns (targets, sources, amps)."""
    st = states
    src = states
    am = np.full(states.shape, amp0)
    for op, p in chain:
        keep = ((st >> p) & 1) == (1 if op == "a" else 0)
        st, src, am = st[keep], src[keep], am[keep]
        if st.size == 0:
            break
        am = am * popcount_below(st, p)
        st = (st & ~(1 << p)) if op == "a" else (st | (1 << p))
    return st, src, am


def fock_space_min(h, g, enuc, nelec):
    """Exact diagonalization of the full Fock-space Hamiltonian (and of the
    fixed-particle-number block). Only for small mode counts."""
    m = 2 * h.shape[0]
    dim = 1 << m
    h1, h2 = spin_expand(h, g)
    H = np.zeros((dim, dim))
    states = np.arange(dim, dtype=np.int64)

    for i in range(m):
        for j in range(m):
            if abs(h1[i, j]) < 1e-14:
                continue
            st, src, am = apply_op_chain(states, h1[i, j], [("a", j), ("c", i)])
            if st.size:
                H[st, src] += am
    for i in range(m):
        for j in range(m):
            for k in range(m):
                for l in range(m):
                    v = h2[i, j, k, l]
                    if abs(v) < 1e-14:
                        continue
                    st, src, am = apply_op_chain(
                        states, 0.5 * v, [("a", l), ("a", k), ("c", j), ("c", i)]
                    )
                    if st.size:
                        H[st, src] += am
    H += enuc * np.eye(dim)
    evals = np.linalg.eigvalsh(H)
    pop = np.array([bin(int(s)).count("1") for s in states])
    keep = pop == nelec
    evals_n = np.linalg.eigvalsh(H[np.ix_(keep, keep)])
    return float(evals[0]), float(evals_n[0])


def check_symmetry(h, g, name, perm, signs, tol=1e-9):
    ns = len(perm)
    dev = 0.0
    for i in range(ns):
        for j in range(ns):
            dev = max(dev, abs(signs[i] * signs[j] * h[perm[i], perm[j]] - h[i, j]))
    gt = g[np.ix_(perm, perm, perm, perm)]
    sv = np.asarray(signs, dtype=float)
    gt = np.einsum("i,j,k,l,ijkl->ijkl", sv, sv, sv, sv, gt)
    dev = max(dev, float(np.max(np.abs(gt - g))))
    if dev > tol:
        raise SystemExit(f"symmetry {name} is NOT a symmetry (max dev {dev:.3e})")
    return dev


def write_fcidump(path, h, g, enuc, nelec, ms2=0):
    ns = h.shape[0]
    with open(path, "w") as f:
        f.write(f"&FCI NORB={ns},NELEC={nelec},MS2={ms2},\n")
        f.write("  ORBSYM=" + "1," * ns + "\n  ISYM=1,\n&END\n")
        for p in range(ns):
            for q in range(p + 1):
                for r in range(p + 1):
                    smax = q if r == p else r
                    for s in range(smax + 1):
                        v = g[p, q, r, s]
                        if abs(v) > 1e-14:
                            f.write(f" {v:.16E} {p+1} {q+1} {r+1} {s+1}\n")
        for p in range(ns):
            for q in range(p + 1):
                v = h[p, q]
                if abs(v) > 1e-14:
                    f.write(f" {v:.16E} {p+1} {q+1} 0 0\n")
        f.write(f" {enuc:.16E} 0 0 0 0\n")


MOLECULES = {}


def molecule(name):
    def deco(fn):
        MOLECULES[name] = fn
        return fn
    return deco


@molecule("h2")
def mol_h2():
    r = 0.7414 * ANGSTROM
    atoms = [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, r))]
    ops = [
        {"name": "C2x", "perm": [1, 0], "signs": [1, 1]},
        {"name": "sigma_h", "perm": [1, 0], "signs": [1, 1]},
    ]
    return atoms, 2, ops, -1.1167


@molecule("lih")
def mol_lih():
    r = 1.5949 * ANGSTROM
    atoms = [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, r))]
    ops = [
        {"name": "C2z", "perm": [0, 1, 2, 3, 4, 5], "signs": [1, 1, -1, -1, 1, 1]},
        {"name": "sigma_xz", "perm": [0, 1, 2, 3, 4, 5], "signs": [1, 1, 1, -1, 1, 1]},
        {"name": "sigma_yz", "perm": [0, 1, 2, 3, 4, 5], "signs": [1, 1, -1, 1, 1, 1]},
    ]
    return atoms, 4, ops, -7.8618


@molecule("beh2")
def mol_beh2():
    r = 1.291 * ANGSTROM
    atoms = [
        ("Be", (0.0, 0.0, 0.0)),
        ("H", (0.0, 0.0, r)),
        ("H", (0.0, 0.0, -r)),
    ]
    ops = [
        {"name": "sigma_xy", "perm": [0, 1, 2, 3, 4, 6, 5], "signs": [1, 1, 1, 1, -1, 1, 1]},
        {"name": "sigma_xz", "perm": [0, 1, 2, 3, 4, 5, 6], "signs": [1, 1, 1, -1, 1, 1, 1]},
        {"name": "sigma_yz", "perm": [0, 1, 2, 3, 4, 5, 6], "signs": [1, 1, -1, 1, 1, 1, 1]},
    ]
    return atoms, 6, ops, -15.5612


@molecule("h2o")
def mol_h2o():
    r = 0.9572 * ANGSTROM
    theta = math.radians(104.52)
    xh = r * math.sin(theta / 2.0)
    zh = -r * math.cos(theta / 2.0)
    atoms = [
        ("O", (0.0, 0.0, 0.0)),
        ("H", (xh, 0.0, zh)),
        ("H", (-xh, 0.0, zh)),
    ]
    ops = [
        {"name": "C2z", "perm": [0, 1, 2, 3, 4, 6, 5], "signs": [1, 1, -1, -1, 1, 1, 1]},
        {"name": "sigma_xz", "perm": [0, 1, 2, 3, 4, 5, 6], "signs": [1, 1, 1, -1, 1, 1, 1]},
        {"name": "sigma_yz", "perm": [0, 1, 2, 3, 4, 6, 5], "signs": [1, 1, -1, 1, 1, 1, 1]},
    ]
    return atoms, 10, ops, -74.9629


@molecule("nh3")
def mol_nh3():
    r = 1.0116 * ANGSTROM
    hnh = math.radians(106.7)
    cos_t = -math.sqrt((2.0 * math.cos(hnh) + 1.0) / 3.0)
    sin_t = math.sqrt(1.0 - cos_t * cos_t)
    sx = r * sin_t
    zc = r * cos_t
    atoms = [
        ("N", (0.0, 0.0, 0.0)),
        ("H", (sx, 0.0, zc)),
        ("H", (-0.5 * sx, 0.5 * math.sqrt(3.0) * sx, zc)),
        ("H", (-0.5 * sx, -0.5 * math.sqrt(3.0) * sx, zc)),
    ]
    ops = [
        {"name": "sigma_xz", "perm": [0, 1, 2, 3, 4, 5, 7, 6], "signs": [1, 1, 1, -1, 1, 1, 1, 1]},
    ]
    return atoms, 10, ops, -55.4554


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "crates/symtaper/fixtures"
    os.makedirs(outdir, exist_ok=True)
    for name, builder in MOLECULES.items():
        atoms, nelec, ops, e_ref = builder()
        atoms = [(sym, np.asarray(xyz)) for sym, xyz in atoms]
        print(f"== {name}: {len(atoms)} atoms, {nelec} electrons")
        S, hcore, eri, enuc = integrals(atoms)
        h, g = lowdin(S, hcore, eri)
        e_rhf = rhf(h, g, nelec, enuc)
        print(f"   RHF total energy     {e_rhf:+.6f} Ha (reference {e_ref:+.4f})")
        if abs(e_rhf - e_ref) > 0.01:
            raise SystemExit(f"{name}: RHF energy off by {abs(e_rhf - e_ref):.4f} Ha")
        for op in ops:
            dev = check_symmetry(h, g, op["name"], op["perm"], op["signs"])
            print(f"   {op['name']}: invariant, max tensor deviation {dev:.3e}")
        if 2 * h.shape[0] <= 12:
            e_fock, e_neutral = fock_space_min(h, g, enuc, nelec)
            print(f"   Fock-space minimum   {e_fock:+.10f} Ha")
            print(f"   {nelec}-electron FCI     {e_neutral:+.10f} Ha")
        write_fcidump(os.path.join(outdir, f"{name}.fcidump"), h, g, enuc, nelec)
        with open(os.path.join(outdir, f"{name}_sym.json"), "w") as f:
            json.dump({"n_spatial": h.shape[0], "operations": ops}, f, indent=1)
            f.write("\n")
        hermite_e.cache_clear()
        hermite_r.cache_clear()
    print("done")


if __name__ == "__main__":
    main()
