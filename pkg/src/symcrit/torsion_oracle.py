"""Brute-force p-torsion over finite fields: division polynomials, symplectic
bases, the Weil pairing and Frobenius matrices.

This is an independent oracle for the formula-based modules; it only uses
point arithmetic and never consults class polynomials.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import gl2
from . import kernels as K
from .curve_core import WeierstrassModel, legendre
from .errors import (
    BasisNotFound,
    CharacteristicClash,
    NotIsomorphic,
    PairingDegenerate,
    ResourceBound,
)
from .ffield import FiniteField
from .goodred import count_points, reduce_at

MAX_P = 19
DEFAULT_MAX_BITS = 64
SYMPLECTIC = "Symplectic"
ANTI = "AntiSymplectic"


# ---------------------------------------------------------------- division polynomials


class _Ring:
    """Coefficient arithmetic: exact rationals (ell=None) or integers mod ell."""

    def __init__(self, ell=None):
        self.ell = ell

    def norm(self, c):
        if self.ell is None:
            c = Fraction(c)
            return c.numerator if c.denominator == 1 else c
        c = Fraction(c)
        return c.numerator * pow(c.denominator, -1, self.ell) % self.ell

    def trim(self, a):
        a = [self.norm(c) for c in a]
        while a and a[-1] == 0:
            a.pop()
        return a

    def mul(self, a, b):
        if not a or not b:
            return []
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self.trim(out)

    def sub(self, a, b):
        n = max(len(a), len(b))
        a = list(a) + [0] * (n - len(a))
        b = list(b) + [0] * (n - len(b))
        return self.trim([x - y for x, y in zip(a, b)])


def _ainvs_of(curve) -> tuple:
    if isinstance(curve, WeierstrassModel):
        return curve.ainvs
    return tuple(curve)


def division_polynomial(curve, n: int, ell: int | None = None) -> list:
    """psi_n for odd n as a polynomial in x (constant term first).

    Over Q when ``ell`` is None, else with coefficients reduced mod ell.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be a positive odd integer")
    if ell is not None and n % ell == 0:
        raise CharacteristicClash(f"{n} is divisible by the characteristic {ell}")
    R = _Ring(ell)
    a1, a2, a3, a4, a6 = (Fraction(c) for c in _ainvs_of(curve))
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    F = R.trim([b6, 2 * b4, b2, 4])  # psi_2^2
    F2 = R.mul(F, F)
    # f_m = psi_m for odd m, psi_m / psi_2 for even m
    f = {
        0: [],
        1: [1],
        2: [1],
        3: R.trim([b8, 3 * b6, 3 * b4, b2, 3]),
        4: R.trim([b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2]),
    }

    def get(m):
        if m in f:
            return f[m]
        k = m // 2
        if m % 2:
            if k % 2 == 0:
                left = R.mul(F2, R.mul(get(k + 2), R.mul(get(k), R.mul(get(k), get(k)))))
                right = R.mul(get(k - 1), R.mul(get(k + 1), R.mul(get(k + 1), get(k + 1))))
            else:
                left = R.mul(get(k + 2), R.mul(get(k), R.mul(get(k), get(k))))
                right = R.mul(F2, R.mul(get(k - 1), R.mul(get(k + 1), R.mul(get(k + 1), get(k + 1)))))
            f[m] = R.sub(left, right)
        else:
            inner = R.sub(
                R.mul(get(k + 2), R.mul(get(k - 1), get(k - 1))),
                R.mul(get(k - 2), R.mul(get(k + 1), get(k + 1))),
            )
            f[m] = R.mul(get(k), inner)
        return f[m]

    return get(n)


# ---------------------------------------------------------------- field degree


def _traces(a: int, ell: int):
    """Yield (k, a_k) with a_k the trace of pi^k, k = 1, 2, ..."""
    prev, cur, k = 2, a, 1
    while True:
        yield k, cur
        prev, cur, k = cur, a * cur - ell * prev, k + 1


def _candidate_degree(a: int, ell: int, p: int) -> int:
    """Least k with pi^k unipotent on E[p]: ell^k = 1 and a_k = 2 mod p."""
    for k, ak in _traces(a, ell):
        if pow(ell, k, p) == 1 and (ak - 2) % p == 0:
            return k
        if k > p * p:
            raise BasisNotFound("no unipotent power of Frobenius found")


def _check_resources(ell: int, k: int, p: int, max_bits: int):
    if p > MAX_P:
        raise ResourceBound(f"p = {p} exceeds the oracle limit {MAX_P}")
    if k * math.log2(ell) > max_bits:
        raise ResourceBound(f"F_{{{ell}^{k}}} exceeds {max_bits} bits")


# ---------------------------------------------------------------- points


class _Curve:
    def __init__(self, ainvs, F: FiniteField):
        self.ainvs = tuple(int(c) % F.ell for c in ainvs)
        self.F = F

    def add(self, P, Q):
        return K.ec_add(P, Q, self.ainvs, self.F.modulus, self.F.ell)

    def mul(self, P, n):
        return K.ec_mul(P, n, self.ainvs, self.F.modulus, self.F.ell)

    def neg(self, P):
        return K.ec_neg(P, self.ainvs, self.F.modulus, self.F.ell)

    def on_curve(self, P) -> bool:
        if P is None:
            return True
        F = self.F
        a1, a2, a3, a4, a6 = (F.const(c) for c in self.ainvs)
        x, y = P
        lhs = F.add(F.mul(y, y), F.add(F.mul(F.mul(a1, x), y), F.mul(a3, y)))
        x2 = F.mul(x, x)
        rhs = F.add(F.add(F.mul(x2, x), F.mul(a2, x2)), F.add(F.mul(a4, x), a6))
        return lhs == rhs

    def frob(self, P):
        if P is None:
            return None
        return (self.F.frob(P[0]), self.F.frob(P[1]))

    def random_point(self, rng: random.Random):
        F = self.F
        a1, a2, a3, a4, a6 = (F.const(c) for c in self.ainvs)
        while True:
            x = F.random(rng)
            x2 = F.mul(x, x)
            rhs = F.add(F.add(F.mul(x2, x), F.mul(a2, x2)), F.add(F.mul(a4, x), a6))
            lin = F.add(F.mul(a1, x), a3)
            if F.ell == 2:
                if F.is_zero(lin):
                    y = F.sqrt(rhs, rng)
                else:
                    il = F.inv(lin)
                    z = F.solve_artin_schreier(F.mul(rhs, F.mul(il, il)), rng)
                    if z is None:
                        continue
                    y = F.mul(z, lin)
            else:
                disc = F.add(F.scale(rhs, 4), F.mul(lin, lin))
                s = F.sqrt(disc, rng)
                if s is None:
                    continue
                y = F.scale(F.sub(s, lin), pow(2, -1, F.ell))
            if rng.random() < 0.5:
                y = F.neg(F.add(y, lin))
            P = (x, y)
            assert self.on_curve(P)
            return P


def _order_exp(C: _Curve, S, p: int) -> int:
    c = 0
    while S is not None:
        S = C.mul(S, p)
        c += 1
    return c


# ---------------------------------------------------------------- Weil pairing


def _multiple_of(C: _Curve, P, Q, p: int):
    """i with Q = iP, or None."""
    R = None
    for i in range(p):
        if R == Q:
            return i
        R = C.add(R, P)
    return None


def weil_pairing(P, Q, p: int, C: _Curve):
    """e_p(P, Q) in the field of C, via Miller's algorithm."""
    F = C.F
    if P is None or Q is None or P == Q or _multiple_of(C, P, Q, p) is not None:
        return F.one
    fP = K.miller(P, Q, p, C.ainvs, F.modulus, F.ell)
    fQ = K.miller(Q, P, p, C.ainvs, F.modulus, F.ell)
    val = F.mul(fP, F.inv(fQ))
    return F.neg(val) if p % 2 else val


def canonical_zeta(F: FiniteField, p: int, seed_root=None):
    """Lexicographically smallest element of multiplicative order p."""
    z = seed_root
    if z is None:
        if (F.order - 1) % p:
            raise PairingDegenerate(f"F_{F.order} contains no primitive {p}-th root")
        rng = random.Random(0)
        while True:
            g = F.random(rng)
            if F.is_zero(g):
                continue
            z = F.pow(g, (F.order - 1) // p)
            if z != F.one:
                break
    roots = [F.pow(z, i) for i in range(1, p)]
    return min(roots)


def _dlog(z, base, p: int, F: FiniteField) -> int:
    cur = F.one
    for i in range(p):
        if cur == z:
            return i
        cur = F.mul(cur, base)
    raise PairingDegenerate("value is not a power of zeta")


# ---------------------------------------------------------------- torsion basis


@dataclass(frozen=True)
class TorsionBasis:
    ell: int
    k: int
    p: int
    ainvs: tuple
    P: tuple
    Q: tuple
    pairing: tuple
    zeta: tuple
    symplectic: bool

    @property
    def field(self) -> FiniteField:
        return FiniteField(self.ell, self.k)

    def curve(self) -> _Curve:
        return _Curve(self.ainvs, self.field)


def _reduced(curve, ell: int) -> tuple:
    if isinstance(curve, WeierstrassModel):
        return reduce_at(curve, ell)
    return tuple(int(c) % ell for c in curve)


def _try_basis(C: _Curve, N: int, p: int, rng: random.Random, tries: int = 40):
    """Two independent points of E[p] in E(F_q), or None if E[p] is not rational."""
    v, m = 0, N
    while m % p == 0:
        m //= p
        v += 1
    if v < 2:
        return None
    # S: a Sylow element of maximal order seen so far
    S, a = None, 0
    for _ in range(tries):
        T = C.mul(C.random_point(rng), m)
        c = _order_exp(C, T, p)
        if c > a:
            S, a = T, c
            continue
        if c == 0 or S is None:
            continue
        P = C.mul(S, p ** (a - 1))
        # strip the <S>-component of T until its p-torsion image leaves <P>
        while T is not None:
            c = _order_exp(C, T, p)
            top = C.mul(T, p ** (c - 1))
            mu = _multiple_of(C, P, top, p)
            if mu is None:
                return P, top
            T = C.add(T, C.neg(C.mul(S, mu * p ** (a - c))))
    return None


def torsion_basis(curve, ell: int, p: int, seed: int = 0,
                  max_bits: int = DEFAULT_MAX_BITS) -> TorsionBasis:
    """Symplectic basis of E[p] over the smallest F_{ell^k} containing it."""
    if p % 2 == 0 or p < 3:
        raise ValueError("p must be an odd prime")
    if p == ell:
        raise CharacteristicClash("p equals the characteristic")
    ainvs = _reduced(curve, ell)
    _, a = count_points(ainvs, ell)
    k0 = _candidate_degree(a, ell, p)
    rng = random.Random(seed)
    for k in (k0, p * k0):
        _check_resources(ell, k, p, max_bits)
        F = FiniteField(ell, k)
        C = _Curve(ainvs, F)
        ak = dict(_take(_traces(a, ell), k))[k]
        N = ell ** k + 1 - ak
        found = _try_basis(C, N, p, rng)
        if found is None:
            continue
        P, Q = found
        w = weil_pairing(P, Q, p, C)
        if w == F.one:
            raise BasisNotFound("independent points with trivial pairing")
        zeta = canonical_zeta(F, p, w)
        s = _dlog(w, zeta, p, F)
        Q = C.mul(Q, pow(s, -1, p))
        w = weil_pairing(P, Q, p, C)
        assert w == zeta
        return TorsionBasis(ell, k, p, ainvs, P, Q, w, zeta, True)
    raise BasisNotFound(f"no basis of E[{p}] found over F_{ell}^{p * k0}")


def _take(it, k):
    for item in it:
        yield item
        if item[0] >= k:
            return


# ---------------------------------------------------------------- Frobenius


def _coords(C: _Curve, B: TorsionBasis):
    table = {}
    iP = None
    for i in range(B.p):
        R = iP
        for j in range(B.p):
            table[R] = (i, j)
            R = C.add(R, B.Q)
        iP = C.add(iP, B.P)
    return table


def frobenius_matrix(curve, ell: int, p: int, basis: TorsionBasis | None = None,
                     seed: int = 0, max_bits: int = DEFAULT_MAX_BITS) -> tuple:
    """Matrix of x -> x^ell on E[p] in a symplectic basis (columns = images)."""
    B = basis or torsion_basis(curve, ell, p, seed, max_bits)
    C = B.curve()
    table = _coords(C, B)
    fp, fq = table[C.frob(B.P)], table[C.frob(B.Q)]
    M = gl2.mat(fp[0], fq[0], fp[1], fq[1], p)
    _, a = count_points(B.ainvs, ell)
    assert gl2.det(M, p) == ell % p and gl2.trace(M, p) == a % p
    return M


def oracle_symplectic_type(E, E2, ell: int, p: int, seed: int = 0,
                           max_bits: int = DEFAULT_MAX_BITS) -> frozenset:
    """Symplectic types of the isomorphisms E[p] -> E'[p] commuting with Frobenius."""
    A = frobenius_matrix(E, ell, p, seed=seed, max_bits=max_bits)
    Bm = frobenius_matrix(E2, ell, p, seed=seed, max_bits=max_bits)
    if not gl2.conjugate(A, Bm, p):
        raise NotIsomorphic("Frobenius matrices are not conjugate")
    basis = gl2.commutant_basis(Bm, A, p)  # M A = B M
    types = set()
    from itertools import product

    for coeffs in product(range(p), repeat=len(basis)):
        M = ((0, 0), (0, 0))
        for c, Bi in zip(coeffs, basis):
            M = gl2.mat(M[0][0] + c * Bi[0][0], M[0][1] + c * Bi[0][1],
                        M[1][0] + c * Bi[1][0], M[1][1] + c * Bi[1][1], p)
        d = gl2.det(M, p)
        if d:
            types.add(SYMPLECTIC if legendre(d, p) == 1 else ANTI)
        if len(types) == 2:
            break
    return frozenset(types)


__all__ = [
    "TorsionBasis", "division_polynomial", "torsion_basis", "weil_pairing",
    "canonical_zeta", "frobenius_matrix", "oracle_symplectic_type", "SYMPLECTIC", "ANTI",
]
