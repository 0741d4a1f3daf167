#!/usr/bin/env python3
"""Generates the exceptional-group catalog files under data/catalog/.

Each group is emitted as JSON with exact cyclotomic matrix entries
(coefficient vectors mod the m-th cyclotomic polynomial, rationals as
"p/q" strings).  Every construction is sanity-checked numerically before
writing; the C++ loader re-verifies everything exactly.
"""

import itertools
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np
from sympy import cyclotomic_poly, Symbol


# ---------------------------------------------------------------- cyclotomics

_phi_cache = {}


def phi_poly(m):
    """Integer coefficient list of Phi_m, low degree first."""
    if m not in _phi_cache:
        x = Symbol("x")
        p = cyclotomic_poly(m, x).as_poly(x)
        _phi_cache[m] = [int(c) for c in reversed(p.all_coeffs())]
    return _phi_cache[m]


def euler_phi(m):
    return len(phi_poly(m)) - 1


class Cyc:
    """Element of Q(zeta_m), reduced coefficient vector mod Phi_m."""

    def __init__(self, m, coeffs=None):
        self.m = m
        d = euler_phi(m)
        self.c = [Fraction(0)] * d if coeffs is None else list(coeffs)
        assert len(self.c) == d

    @staticmethod
    def zero(m):
        return Cyc(m)

    @staticmethod
    def from_powers(m, powers):
        """powers: dict {k: Fraction} meaning sum q_k * zeta_m^k."""
        d = euler_phi(m)
        raw = [Fraction(0)] * m
        for k, q in powers.items():
            raw[k % m] += Fraction(q)
        # reduce mod Phi_m
        phi = [Fraction(v) for v in phi_poly(m)]
        deg = len(phi) - 1
        for i in range(m - 1, deg - 1, -1):
            q = raw[i]
            if q:
                for j in range(deg + 1):
                    raw[i - deg + j] -= q * phi[j]
        out = Cyc(m)
        out.c = raw[:d]
        return out

    @staticmethod
    def rational(m, q):
        return Cyc.from_powers(m, {0: Fraction(q)})

    def __add__(self, o):
        assert self.m == o.m
        return Cyc(self.m, [a + b for a, b in zip(self.c, o.c)])

    def __sub__(self, o):
        assert self.m == o.m
        return Cyc(self.m, [a - b for a, b in zip(self.c, o.c)])

    def __neg__(self):
        return Cyc(self.m, [-a for a in self.c])

    def __mul__(self, o):
        assert self.m == o.m
        d = len(self.c)
        raw = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        raw[i + j] += a * b
        phi = [Fraction(v) for v in phi_poly(self.m)]
        deg = len(phi) - 1
        for i in range(len(raw) - 1, deg - 1, -1):
            q = raw[i]
            if q:
                for j in range(deg + 1):
                    raw[i - deg + j] -= q * phi[j]
        return Cyc(self.m, raw[:d])

    def numeric(self):
        z = np.exp(2j * np.pi / self.m)
        return sum(float(a) * z**k for k, a in enumerate(self.c))

    def strings(self):
        return [f"{q.numerator}/{q.denominator}" for q in self.c]


def zeta(m, k=1):
    return Cyc.from_powers(m, {k: Fraction(1)})


def conj_powers(powers, m):
    return {(-k) % m: q for k, q in powers.items()}


# ------------------------------------------------------------- constructions


def gram_generators(m, gram_powers):
    """Reflection generators in the root basis from a Hermitian Gram matrix
    with diagonal 2.  gram_powers[i][j] is a power-dict for <a_i, a_j>;
    only i<j entries are given, the rest derived by conjugation."""
    n = len(gram_powers)
    G = [[None] * n for _ in range(n)]
    for i in range(n):
        G[i][i] = Cyc.rational(m, 2)
    for i in range(n):
        for j in range(i + 1, n):
            G[i][j] = Cyc.from_powers(m, gram_powers[i][j])
            G[j][i] = Cyc.from_powers(m, conj_powers(gram_powers[i][j], m))
    gens = []
    for i in range(n):
        M = [[Cyc.rational(m, 1 if r == c else 0) for c in range(n)] for r in range(n)]
        for j in range(n):
            # r_i(a_j) = a_j - <a_j, a_i> a_i ;  <a_j, a_i> = conj(G[i][j])
            M[i][j] = M[i][j] - G[j][i]
        gens.append(M)
    return gens


def root_reflection(m, root_powers, norm):
    """Unitary reflection x -> x - (2/N) <x,v> v with <x,v> = sum x_i conj(v_i)."""
    n = len(root_powers)
    v = [Cyc.from_powers(m, p) for p in root_powers]
    vbar = [Cyc.from_powers(m, conj_powers(p, m)) for p in root_powers]
    scale = Cyc.rational(m, Fraction(2, norm))
    M = []
    for r in range(n):
        row = []
        for c in range(n):
            e = Cyc.rational(m, 1 if r == c else 0)
            e = e - scale * v[r] * vbar[c]
            row.append(e)
        M.append(row)
    return M


def cartan_generators(cartan):
    n = len(cartan)
    gens = []
    for i in range(n):
        M = [[Cyc.rational(1, 1 if r == c else 0) for c in range(n)] for r in range(n)]
        for j in range(n):
            M[i][j] = M[i][j] - Cyc.rational(1, cartan[i][j])
        gens.append(M)
    return gens


# golden ratio and sqrt(-7) as power dicts
def tau_powers_c5():  # (1+sqrt5)/2 = 1 + z5 + z5^4
    return {0: 1, 1: 1, 4: 1}


def tau_powers_c15():  # same, z5 = z15^3
    return {0: 1, 3: 1, 12: 1}


def lam_powers_c7():  # (-1+sqrt(-7))/2 ; sqrt(-7) = z+z^2+z^4-z^3-z^5-z^6
    h = Fraction(1, 2)
    return {0: -h, 1: h, 2: h, 4: h, 3: -h, 5: -h, 6: -h}


def neg(p):
    return {k: -q for k, q in p.items()}


def groups():
    out = []

    # ---- real exceptional types, Cartan basis, conductor 1
    def chain(n, links):
        C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for (i, j, a, b) in links:
            C[i][j] = a
            C[j][i] = b
        return C

    a = -1
    e8 = chain(8, [(0, 2, a, a), (1, 3, a, a), (2, 3, a, a), (3, 4, a, a),
                   (4, 5, a, a), (5, 6, a, a), (6, 7, a, a)])
    e7 = [row[:7] for row in e8[:7]]
    e6 = [row[:6] for row in e8[:6]]
    f4 = chain(4, [(0, 1, a, a), (1, 2, -2, -1), (2, 3, a, a)])
    out.append(("F4", 1, [2, 6, 8, 12], cartan_generators(f4)))
    out.append(("E6", 1, [2, 5, 6, 8, 9, 12], cartan_generators(e6)))
    out.append(("E7", 1, [2, 6, 8, 10, 12, 14, 18], cartan_generators(e7)))
    out.append(("E8", 1, [2, 8, 12, 14, 18, 20, 24, 30], cartan_generators(e8)))

    # ---- H3, H4 at conductor 5
    t = neg(tau_powers_c5())
    one = {0: -1}
    z = {}
    h3 = [[None, t, z], [None, None, one], [None, None, None]]
    h4 = [[None, t, z, z], [None, None, one, z], [None, None, None, one],
          [None, None, None, None]]
    out.append(("H3", 5, [2, 6, 10], gram_generators(5, h3)))
    out.append(("H4", 5, [2, 12, 20, 30], gram_generators(5, h4)))

    # ---- G24 at conductor 7: Gram offdiag (1, -lambda, 1)
    lam = lam_powers_c7()
    pone = {0: 1}
    g24 = [[None, pone, pone], [None, None, neg(lam)], [None, None, None]]
    out.append(("G24", 7, [4, 6, 14], gram_generators(7, g24)))

    # ---- G27 at conductor 15: Gram offdiag (1, tau, -omega)
    tau15 = tau_powers_c15()
    momega = {5: -1}  # -z3 = -z15^5
    g27 = [[None, pone, tau15], [None, None, momega], [None, None, None]]
    out.append(("G27", 15, [6, 12, 30], gram_generators(15, g27)))

    # ---- G29 at conductor 4 (Gaussian roots)
    i1 = {1: 1}
    mi = {1: -1}
    o = {0: 1}
    mo = {0: -1}
    g29_roots = [
        ([o, z, z, mi], 2),          # e1 - i e4
        ([z, o, o, z], 2),           # e2 + e3
        ([o, mo, i1, i1], 4),        # (1,-1,i,i)
        ([o, o, o, o], 4),           # (1,1,1,1)
    ]
    out.append(("G29", 4, [4, 8, 12, 20],
                [root_reflection(4, r, nn) for r, nn in g29_roots]))

    # ---- G33, G34 at conductor 3 (Eisenstein roots, norm 4)
    w1 = {1: 1}          # omega
    mw = {1: -1}
    opw = {0: 1, 1: 1}   # 1+omega = -omega^2
    mopw = {0: -1, 1: -1}
    two = {0: 2}
    g33_roots = [
        [w1, opw, z, o, o],
        [w1, mw, mw, mw, z],
        [o, opw, w1, z, w1],
        [mopw, z, mw, mo, opw],
        [z, w1, mopw, o, mw],
    ]
    out.append(("G33", 3, [4, 6, 10, 12, 18],
                [root_reflection(3, r, 4) for r in g33_roots]))
    g34_roots = [
        [o, z, mo, z, opw, mw],
        [z, z, z, two, z, z],
        [z, w1, opw, mo, w1, z],
        [o, w1, mopw, z, z, mopw],
        [w1, z, z, w1, opw, o],
        [o, z, mo, z, mopw, w1],
    ]
    out.append(("G34", 3, [6, 12, 18, 24, 30, 42],
                [root_reflection(3, r, 4) for r in g34_roots]))
    return out


# ---------------------------------------------------------------- validation


def numeric_check(name, m, degrees, gens):
    n = len(gens)
    h = degrees[-1]
    num = [np.array([[e.numeric() for e in row] for row in g]) for g in gens]
    for g in num:
        assert np.allclose(g @ g, np.eye(n), atol=1e-9), f"{name}: generator not involutive"
        assert np.linalg.matrix_rank(g - np.eye(n), tol=1e-8) == 1, f"{name}: not a reflection"
    M = np.eye(n)
    for g in num:
        M = M @ g
    target = sorted((1 - d) % h for d in degrees)
    ev = np.linalg.eigvals(M)
    assert np.allclose(np.abs(ev), 1, atol=1e-8), f"{name}: non-unitary spectrum"
    got = sorted(int(round(np.angle(z) * h / (2 * np.pi))) % h for z in ev)
    assert got == target, f"{name}: Coxeter spectrum {got} != {target}"
    # conjugacy closure count
    def key(X):
        return tuple(np.round(X, 6).ravel().view(float))
    mats = {key(g): g for g in num}
    frontier = list(mats.values())
    nref = sum(d - 1 for d in degrees)
    while frontier and len(mats) <= 2 * nref:
        nf = []
        for X in frontier:
            for g in num:
                C = g @ X @ g
                k = key(C)
                if k not in mats:
                    mats[k] = C
                    nf.append(C)
        frontier = nf
    assert len(mats) == nref, f"{name}: closure {len(mats)} != {nref}"
    print(f"  {name}: ok (|R|={nref}, h={h})")


# --------------------------------------------------------------------- output


def fnv1a64(data: bytes) -> str:
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return f"{h:016x}"


def main():
    outdir = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                          "data", "catalog")
    os.makedirs(outdir, exist_ok=True)
    for name, m, degrees, gens in groups():
        rank = len(gens)
        order = math.prod(degrees)
        nrefl = sum(d - 1 for d in degrees)
        numeric_check(name, m, degrees, gens)
        gen_json = []
        flat = []
        for g in gens:
            rows = []
            for row in g:
                rows.append([e.strings() for e in row])
                for e in row:
                    flat.append(",".join(e.strings()))
            gen_json.append(rows)
        canon = "\n".join([name, str(rank), str(m),
                           ",".join(map(str, degrees)), str(order), str(nrefl),
                           ";".join(flat)])
        doc = {
            "schema_version": 1,
            "name": name,
            "rank": rank,
            "conductor": m,
            "degrees": degrees,
            "order": order,
            "reflection_count": nrefl,
            "generators": gen_json,
            "checksum": "fnv1a64:" + fnv1a64(canon.encode()),
        }
        path = os.path.join(outdir, name.lower() + ".json")
        with open(path, "w") as f:
            json.dump(doc, f, indent=1)
            f.write("\n")
        print(f"  wrote {path}")


if __name__ == "__main__":
    main()
