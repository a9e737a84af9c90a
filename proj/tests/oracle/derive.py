#!/usr/bin/env python3
"""Independent oracle for the expected values frozen into the C++ test suites.

Everything here is computed from first principles with sympy/numpy only:
syzygy-space dimensions as nullspaces of coefficient matrices, minor gcds,
Hilbert functions as ranks of multiplication maps, and the combinatorial
enumerations.  Ranks of the larger integer matrices are taken modulo two
independent large primes (agreement required); small cases are additionally
checked exactly over Q with sympy.

Run from the repo root:  python3 tests/oracle/derive.py > tests/oracle/derived_values.txt
"""

import itertools
import sys
from fractions import Fraction

import numpy as np
import sympy as sp

X = sp.symbols("x0 x1 x2 x3")
P1, P2 = 1000003, 999983


def monomials(nvars, deg):
    out = []
    for c in itertools.combinations_with_replacement(range(nvars), deg):
        e = [0] * nvars
        for i in c:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out)


def poly_dict(expr, nvars):
    p = sp.Poly(sp.expand(expr), *X[:nvars])
    return {tuple(m): Fraction(int(sp.Rational(c).p), int(sp.Rational(c).q))
            for m, c in p.terms() if c != 0}


def rank_mod(rows, ncols, p):
    if not rows:
        return 0
    m = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        for j, v in r.items():
            num = v.numerator % p
            den = pow(v.denominator % p, p - 2, p)
            m[i, j] = (num * den) % p
    rank, row = 0, 0
    for col in range(ncols):
        piv = None
        for r in range(row, m.shape[0]):
            if m[r, col] % p:
                piv = r
                break
        if piv is None:
            continue
        m[[row, piv]] = m[[piv, row]]
        inv = pow(int(m[row, col]), p - 2, p)
        m[row] = (m[row] * inv) % p
        mask = (m[:, col] != 0)
        mask[row] = False
        if mask.any():
            m[mask] = (m[mask] - np.outer(m[mask, col], m[row])) % p
        rank += 1
        row += 1
        if row == m.shape[0]:
            break
    return rank


def rank2(rows, ncols, exact_limit=0):
    r1 = rank_mod(rows, ncols, P1)
    r2 = rank_mod(rows, ncols, P2)
    assert r1 == r2, "prime disagreement"
    if exact_limit and len(rows) * ncols <= exact_limit:
        m = sp.zeros(len(rows), ncols)
        for i, r in enumerate(rows):
            for j, v in r.items():
                m[i, j] = sp.Rational(v.numerator, v.denominator)
        assert m.rank() == r1, "exact rank disagreement"
    return r1


def syz_dim(forms, nvars, a):
    """dim of degree-a syzygies of the Jacobian rows of `forms`."""
    grads = [[poly_dict(sp.diff(f, X[j]), nvars) for j in range(nvars)] for f in forms]
    degs = [sp.Poly(f, *X[:nvars]).total_degree() - 1 for f in forms]
    mons_a = monomials(nvars, a)
    col_of = {(j, m): j * len(mons_a) + k for j in range(nvars) for k, m in enumerate(mons_a)}
    rows = []
    for i, grad in enumerate(grads):
        out_mons = {m: k for k, m in enumerate(monomials(nvars, a + degs[i]))}
        eqs = [dict() for _ in out_mons]
        for j in range(nvars):
            for me, ce in grad[j].items():
                for m in mons_a:
                    mo = tuple(x + y for x, y in zip(me, m))
                    eqs[out_mons[mo]][col_of[(j, m)]] = eqs[out_mons[mo]].get(col_of[(j, m)], Fraction(0)) + ce
        rows.extend(e for e in eqs if e)
    ncols = nvars * len(mons_a)
    return ncols - rank2(rows, ncols, exact_limit=40000)


def ideal_hilbert(gens, nvars, t):
    """dim (R/I)_t for the ideal generated by `gens`."""
    cols_mons = {m: k for k, m in enumerate(monomials(nvars, t))}
    rows = []
    for g in gens:
        gd = poly_dict(g, nvars)
        d = max(sum(m) for m in gd)
        if d > t:
            continue
        for m in monomials(nvars, t - d):
            row = {}
            for mg, c in gd.items():
                row[cols_mons[tuple(x + y for x, y in zip(mg, m))]] = c
            rows.append(row)
    return len(cols_mons) - rank2(rows, len(cols_mons))


def minors2x2(forms, nvars):
    J = sp.Matrix([[sp.diff(f, X[j]) for j in range(nvars)] for f in forms])
    out = []
    for a, b in itertools.combinations(range(nvars), 2):
        m = sp.expand(J[0, a] * J[1, b] - J[0, b] * J[1, a])
        if m != 0:
            out.append(m)
    return out


def omega(f1, f2, nvars):
    d1 = sp.Poly(f1, *X[:nvars]).total_degree() - 1
    d2 = sp.Poly(f2, *X[:nvars]).total_degree() - 1
    return [sp.expand((d1 + 1) * f1 * sp.diff(f2, X[j]) - (d2 + 1) * f2 * sp.diff(f1, X[j]))
            for j in range(nvars)]


def partitions(n, maxpart=None):
    if n == 0:
        yield ()
        return
    if maxpart is None:
        maxpart = n
    for first in range(min(n, maxpart), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def symbol_multisets(weight, pcap):
    """Multisets of point partitions with given total weight; each point has <= pcap parts
    (the corank of a pencil member at a point is bounded by the ambient cap)."""
    def glue(total, bound):
        # bound: lexicographic cap on (weight, partition) to build multisets canonically
        if total == 0:
            yield ()
            return
        for w in range(min(total, bound[0] if bound else total), 0, -1):
            for lam in partitions(w):
                if len(lam) > pcap:
                    continue
                key = (w, lam)
                if bound and key > bound:
                    continue
                for rest in glue(total - w, key):
                    yield (lam,) + rest
    return list(glue(weight, None))


def regular_symbols(n):
    return symbol_multisets(n + 1, n)


def irregular_rows(n):
    rows = []
    for r1 in range(1, n + 1):
        for v in range(0, (n + 1 - r1) // 2 + 1):
            u = n + 1 - r1 - v
            if u < v:
                continue
            # degree vectors: partitions of v into <= r1 positive parts, zero-extended
            for cpos in (partitions(v) if v else [()]):
                if len(cpos) > r1:
                    continue
                for sym in symbol_multisets(u - v, n - r1):
                    rows.append((r1, (u, v), tuple(sorted(cpos, reverse=True)), sym))
    return rows


def splitting_rows(n):
    rows = []
    for r1 in range(1, n + 1):
        for v in range(0, (n + 1 - r1) // 2 + 1):
            u = n + 1 - r1 - v
            if u < v or u + v < 1:
                continue
            for cpos in (partitions(v) if v else [()]):
                if len(cpos) > r1:
                    continue
                rows.append((r1, (u, v), tuple(sorted(cpos, reverse=True))))
    return rows


def main():
    out = []

    def emit(key, val):
        out.append(f"{key} = {val}")
        print(f"{key} = {val}")

    # --- free pencil sigma = (x0*x1, x2^3+x3^3):
    f1, g = X[0] * X[1], X[2] ** 3 + X[3] ** 3
    emit("syz.sigma_free.dims_a0_to_a4", [syz_dim([f1, g], 4, a) for a in range(5)])

    # --- sigma' = (x0*x1, x0^2*x1 + x2^3 + x3^3):
    f2p = X[0] ** 2 * X[1] + g
    emit("syz.sigma_prime.dims_a0_to_a6", [syz_dim([f1, f2p], 4, a) for a in range(7)])

    # --- (x0, x3^2) and regenerations:
    emit("syz.x0_x3sq.dims_a0_to_a2", [syz_dim([X[0], X[3] ** 2], 4, a) for a in range(3)])
    h_c = X[0] + X[1] + X[2] + X[3]
    emit("syz.regen_c_nonzero.dims_a0_to_a2",
         [syz_dim([X[0], X[0] * h_c + X[3] ** 2], 4, a) for a in range(3)])
    h_b = X[0] + X[1]
    emit("syz.regen_b_nonzero.dims_a0_to_a2",
         [syz_dim([X[0], X[0] * h_b + X[3] ** 2], 4, a) for a in range(3)])
    h_0 = X[0] + X[3]
    emit("syz.regen_bc_zero.dims_a0_to_a2",
         [syz_dim([X[0], X[0] * h_0 + X[3] ** 2], 4, a) for a in range(3)])

    # --- irregular incompressible free pencil (x0*x2, 2*x0*x1 + x3^2):
    emit("syz.irreg_free.dims_a0_to_a2",
         [syz_dim([X[0] * X[2], 2 * X[0] * X[1] + X[3] ** 2], 4, a) for a in range(3)])

    # --- power lift tau = (x0^2, x3^2) of (x0, x3^2):
    emit("syz.x0sq_x3sq.dims_a0_to_a2", [syz_dim([X[0] ** 2, X[3] ** 2], 4, a) for a in range(3)])

    # --- P3 normal form [3,1]: (2*x1*x2 - x3^2, 2*x0*x2 + x1^2 + x3^2):
    nf31 = [2 * X[1] * X[2] - X[3] ** 2, 2 * X[0] * X[2] + X[1] ** 2 + X[3] ** 2]
    emit("syz.nf_31.dims_a1_to_a4", [syz_dim(nf31, 4, a) for a in range(1, 5)])

    # --- P3 normal form [(2,1),1]: (x1^2 - x3^2, 2*x0*x1 + x2^2 + x3^2):
    nf211 = [X[1] ** 2 - X[3] ** 2, 2 * X[0] * X[1] + X[2] ** 2 + X[3] ** 2]
    emit("syz.nf_211.dims_a1_to_a4", [syz_dim(nf211, 4, a) for a in range(1, 5)])

    # --- P3 normal form [(1^3),1]: (-x3^2, x0^2 + x1^2 + x2^2 + x3^2):
    nf1311 = [-X[3] ** 2, X[0] ** 2 + X[1] ** 2 + X[2] ** 2 + X[3] ** 2]
    emit("syz.nf_1311.dims_a1_to_a4", [syz_dim(nf1311, 4, a) for a in range(1, 5)])

    # --- P3 normal form [(2,1^2)]: (x1^2, 2*x0*x1 + x2^2 + x3^2):
    nf211b = [X[1] ** 2, 2 * X[0] * X[1] + X[2] ** 2 + X[3] ** 2]
    emit("syz.nf_2_1_1_onepoint.dims_a1_to_a4", [syz_dim(nf211b, 4, a) for a in range(1, 5)])

    # --- section-7 family, k=0: f = x0*x1^2 + x2^3 + x2^2*x3, g = x2*x3*(x2 - x1):
    s7f = X[0] * X[1] ** 2 + X[2] ** 3 + X[2] ** 2 * X[3]
    s7g = X[2] * X[3] * (X[2] - X[1])
    emit("syz.s7_k0.dims_a0_to_a5", [syz_dim([s7f, s7g], 4, a) for a in range(6)])
    mins = minors2x2([s7f, s7g], 4)
    gc = sp.gcd_list(mins)
    emit("s7_k0.minors_gcd_degree", sp.Poly(gc, *X).total_degree() if gc != 1 else 0)
    emit("s7_k0.minors_hilbert_t6_to_t14", [ideal_hilbert(mins, 4, t) for t in range(6, 15)])

    # --- Example 2.2 sequence (x0*x1 + x2*x3, x0*x1*x2*x3):
    e22 = [X[0] * X[1] + X[2] * X[3], X[0] * X[1] * X[2] * X[3]]
    mins = minors2x2(e22, 4)
    gc = sp.gcd_list(mins)
    emit("e22.minors_gcd", sp.factor(gc))
    red = [sp.expand(sp.cancel(m / gc)) for m in mins]
    emit("e22.residual_hilbert_t1_to_t8", [ideal_hilbert(red, 4, t) for t in range(1, 9)])
    emit("e22.syz.dims_a0_to_a3", [syz_dim(e22, 4, a) for a in range(4)])

    # --- one-double-plane pencils:
    odp = [X[0] ** 2, X[1] ** 2 + X[2] ** 2 + X[3] ** 2]
    mins = minors2x2(odp, 4)
    gc = sp.gcd_list(mins)
    emit("odp.minors_gcd", sp.factor(gc))
    red = [sp.expand(sp.cancel(m / gc)) for m in mins]
    emit("odp.residual_hilbert_t1_to_t6", [ideal_hilbert(red, 4, t) for t in range(1, 7)])
    odp2 = [X[0] ** 2, X[0] * X[1] + X[2] ** 2]
    mins2 = minors2x2(odp2, 4)
    gc2 = sp.gcd_list(mins2)
    emit("odp_compressible.minors_gcd", sp.factor(gc2))
    red2 = [sp.expand(sp.cancel(m / gc2)) for m in mins2]
    emit("odp_compressible.residual_hilbert_t1_to_t6",
         [ideal_hilbert(red2, 4, t) for t in range(1, 7)])

    # --- generic r0=1 pencil [1,1,1,1]: diag(1,2,3,4) vs identity:
    gen = [X[0] ** 2 + 2 * X[1] ** 2 + 3 * X[2] ** 2 + 4 * X[3] ** 2,
           X[0] ** 2 + X[1] ** 2 + X[2] ** 2 + X[3] ** 2]
    mins = minors2x2(gen, 4)
    emit("generic1111.minors_gcd", sp.gcd_list(mins))
    emit("generic1111.minors_hilbert_t2_to_t8", [ideal_hilbert(mins, 4, t) for t in range(2, 9)])

    # --- rational one-forms:
    emit("omega.x0x1_x2x3", omega(X[0] * X[1], X[2] * X[3], 4))
    emit("omega.x0sq_x1sq", omega(X[0] ** 2, X[1] ** 2, 4))

    # --- enumerations:
    syms3 = regular_symbols(3)
    emit("atlas.regular_n3.count", len(syms3))
    emit("atlas.regular_n3.symbols", sorted(syms3))
    emit("atlas.regular_n4.count", len(regular_symbols(4)))
    emit("atlas.regular_n5.count", len(regular_symbols(5)))
    irr3 = irregular_rows(3)
    emit("atlas.irregular_n3.count", len(irr3))
    emit("atlas.irregular_n3.rows", irr3)
    emit("atlas.splitting_n5.count", len(splitting_rows(5)))
    emit("atlas.splitting_n5.rows", splitting_rows(5))

    with open("tests/oracle/derived_values.txt", "w") as fh:
        fh.write("\n".join(out) + "\n")


if __name__ == "__main__":
    sys.exit(main())
