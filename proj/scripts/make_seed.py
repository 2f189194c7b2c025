#!/usr/bin/env python3
"""Fixture generator for seed-data files (requires cypari2).

Computes fundamental S-unit systems of Q(zeta_p) and K = Q(zeta_p, ell1^(1/p))
with S = primes over ell0, the sigma/delta action matrices and the inclusion
matrix modulo p-th powers, and writes the versioned SeedData JSON consumed by
`kummer_rt certify` / `kummer_rt run`.

Usage: make_seed.py P ELL0 ELL1 OUT.json
"""

import json
import sys
from fractions import Fraction
from math import gcd

import cypari2

pari = cypari2.Pari()
pari.allocatemem(3 * 10**9, silent=True)

SCHEMA_VERSION = 1


def smallest_primitive_root(p):
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in range(2, p) if (p - 1) % r == 0 and all(r % s for s in range(2, r))):
            return g
    raise ValueError(p)


def bivariate_zero(p):
    return [[Fraction(0)] * p for _ in range(p - 1)]


def reduce_zeta_power(p, a):
    """zeta^a (0 <= a < 2p) as coefficients in 1..zeta^(p-2)."""
    a %= p
    out = [Fraction(0)] * (p - 1)
    if a < p - 1:
        out[a] = Fraction(1)
    else:
        for i in range(p - 1):
            out[i] = Fraction(-1)
    return out


def biv_mul(p, ell1, x, y):
    acc = [[Fraction(0)] * (2 * p - 1) for _ in range(2 * p - 3)]
    for a1 in range(p - 1):
        for b1 in range(p):
            c1 = x[a1][b1]
            if c1 == 0:
                continue
            for a2 in range(p - 1):
                for b2 in range(p):
                    c2 = y[a2][b2]
                    if c2:
                        acc[a1 + a2][b1 + b2] += c1 * c2
    out = bivariate_zero(p)
    for a in range(2 * p - 3):
        for b in range(2 * p - 1):
            c = acc[a][b]
            if c == 0:
                continue
            bb, scale = (b, 1) if b < p else (b - p, ell1)
            z = reduce_zeta_power(p, a)
            for i in range(p - 1):
                if z[i]:
                    out[i][bb] += c * scale * z[i]
    return out


class Tower:
    def __init__(self, p, ell0, ell1):
        self.p, self.ell0, self.ell1 = p, ell0, ell1
        self.g = smallest_primitive_root(p)
        self.nfF = pari.bnfinit(pari(f"polcyclo({p},y)"), 1)
        eq = pari.rnfequation(self.nfF, pari(f"x^{p}-{ell1}"), 1)
        self.Pabs, self.zeta_abs, self.k = eq[0], eq[1], int(eq[2])
        self.bnfK = pari.bnfinit(self.Pabs)
        # theta = mu + k*zeta; precompute theta^n in tower coordinates.
        theta = bivariate_zero(p)
        theta[0][1] += 1
        zk = reduce_zeta_power(p, 1)
        for i in range(p - 1):
            theta[i][0] += self.k * zk[i]
        one = bivariate_zero(p)
        one[0][0] = Fraction(1)
        self.theta_pows = [one]
        for _ in range(1, p * (p - 1)):
            self.theta_pows.append(biv_mul(p, ell1, self.theta_pows[-1], theta))
        self.mu_abs = pari(f"Mod(x,{self.Pabs})") - self.k * self.zeta_abs

    def abs_pol(self, elt):
        return pari.lift(pari.Mod(pari.nfbasistoalg(self.bnfK, elt), self.Pabs))

    def abs_to_tower(self, elt):
        pol = self.abs_pol(elt)
        out = bivariate_zero(self.p)
        deg = int(pari.poldegree(pol)) if pol != 0 else -1
        for n in range(deg + 1):
            c = Fraction(str(pari.polcoef(pol, n)))
            if c == 0:
                continue
            tp = self.theta_pows[n]
            for a in range(self.p - 1):
                for b in range(self.p):
                    if tp[a][b]:
                        out[a][b] += c * tp[a][b]
        return out

    def small_to_tower(self, elt):
        pol = pari.lift(pari.nfbasistoalg(self.nfF, elt))
        out = bivariate_zero(self.p)
        deg = int(pari.poldegree(pol)) if pol != 0 else -1
        for n in range(deg + 1):
            c = Fraction(str(pari.polcoef(pol, n)))
            z = reduce_zeta_power(self.p, n)
            for i in range(self.p - 1):
                out[i][0] += c * z[i]
        return out

    def small_to_abs(self, elt):
        pol = pari.lift(pari.nfbasistoalg(self.nfF, elt))
        return pari.subst(pol, "y", self.zeta_abs)


def class_order(bnf, ideal):
    cyc = [int(c) for c in pari("(b)->b.cyc")(bnf)]
    cls = [int(c) for c in pari.bnfisprincipal(bnf, ideal, 0)]
    order = 1
    for c, e in zip(cyc, cls):
        o = c // gcd(c, e)
        order = order * o // gcd(order, o)
    return order


def inverse_mod_p(mat, p):
    n = len(mat)
    aug = [[x % p for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [x * inv % p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def sunit_basis(bnf, ell0, p):
    """Torsion, fundamental units, generators of P^ord(P): a basis mod p-th powers."""
    S = pari.idealprimedec(bnf, ell0)
    U = pari.bnfunits(bnf, S)
    tu = pari("(b)->b.tu")(bnf)[1]
    elts = [pari.nfalgtobasis(bnf, tu)]
    elts += [pari.nfalgtobasis(bnf, u) for u in pari("(b)->b.fu")(bnf)]
    for P in S:
        o = class_order(bnf, P)
        if o % p == 0:
            raise RuntimeError("class order divisible by p")
        elts.append(pari.bnfisprincipal(bnf, pari.idealpow(bnf, P, o), 3)[1])
    n = len(elts)
    # PARI order: S-units, fundamental units, torsion; rotate torsion first.
    perm = [n - 1] + list(range(len(S), n - 1)) + list(range(len(S)))

    def raw(x):
        ex = pari.bnfisunit(bnf, x, U)
        if len(ex) == 0:
            raise RuntimeError("not an S-unit")
        return [int(ex[i]) % p for i in perm]

    change_inv = inverse_mod_p([raw(e) for e in elts], p)

    def coords(x):
        r = raw(x)
        return [sum(r[j] * change_inv[j][i] for j in range(n)) % p for i in range(n)]

    return elts, coords


def encode(mat):
    return [[str(c) for c in row] for row in mat]


def subfield_class_number(p, ell1):
    """h(Q(ell1^(1/p))); p | h there forces p | h_K since [K : Q(ell1^(1/p))] = p - 1."""
    return int(pari.bnfinit(pari(f"x^{p} - {ell1}")).bnf_get_no())


def write_gate_file(out_path, p, ell0, ell1, reason):
    with open(out_path, "w") as fh:
        json.dump({"schema_version": SCHEMA_VERSION,
                   "params": {"p": p, "ell0": ell0, "ell1": ell1},
                   "class_number_coprime": False}, fh, indent=1)
        fh.write("\n")
    print(f"p | h_K for ({p},{ell0},{ell1}): {reason}", file=sys.stderr)
    sys.exit(3)


def main():
    p, ell0, ell1, out_path = int(sys.argv[1]), int(sys.argv[2]), int(sys.argv[3]), sys.argv[4]
    h_sub = subfield_class_number(p, ell1)
    if h_sub % p == 0:
        write_gate_file(out_path, p, ell0, ell1, f"h(Q({ell1}^(1/{p}))) = {h_sub}")
    tw = Tower(p, ell0, ell1)
    if int(pari("(b)->b.no")(tw.bnfK)) % p == 0:
        write_gate_file(out_path, p, ell0, ell1, "h_K")

    small_elts, small_coords = sunit_basis(tw.nfF, ell0, p)
    tw.bnfK = pari.bnfinit(tw.Pabs, 1)
    big_elts, big_coords = sunit_basis(tw.bnfK, ell0, p)

    # Galois automorphisms of the absolute field as images of x.
    zeta = tw.zeta_abs
    mu = tw.mu_abs
    sigma_img = pari.lift(zeta * mu + tw.k * zeta)
    delta_img = pari.lift(mu + tw.k * zeta ** tw.g)

    def apply_aut(img, elt):
        pol = tw.abs_pol(elt)
        return pari.lift(pari.Mod(pari.subst(pol, "x", img), tw.Pabs))

    sigma_rows = [big_coords(apply_aut(sigma_img, u)) for u in big_elts]
    delta_rows = [big_coords(apply_aut(delta_img, u)) for u in big_elts]
    incl_rows = [big_coords(tw.small_to_abs(u)) for u in small_elts]
    for i, u in enumerate(small_elts):
        assert small_coords(u) == [int(i == j) for j in range(len(small_elts))]

    data = {
        "schema_version": SCHEMA_VERSION,
        "params": {"p": p, "ell0": ell0, "ell1": ell1},
        "delta_generator": tw.g,
        "rank_small": len(small_elts) - 1,
        "rank_big": len(big_elts) - 1,
        "basis_small": [{"coeffs": encode(tw.small_to_tower(u))} for u in small_elts],
        "basis_big": [{"coeffs": encode(tw.abs_to_tower(u))} for u in big_elts],
        "sigma_matrix": sigma_rows,
        "delta_matrix": delta_rows,
        "inclusion_matrix": incl_rows,
        "class_number_coprime": True,
    }
    with open(out_path, "w") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
