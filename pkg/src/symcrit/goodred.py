"""Good reduction: traces of Frobenius, class polynomials, beta and the
Frobenius matrix modulo p."""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import mpmath

from . import gl2
from . import kernels as K
from .curve_core import WeierstrassModel, minimal_model_at, standard_invariants
from .errors import (
    BadReduction,
    NoValidH,
    PrecisionFailure,
    SingularReduction,
    UnsupportedReduction,
)

MAX_ELL = 10_000


# ---------------------------------------------------------------- reduction


def reduce_at(model: WeierstrassModel, ell: int) -> tuple:
    """Coefficients mod ell of an ell-minimal model; requires good reduction."""
    mm, loc = minimal_model_at(model, ell)
    if loc.v_disc != 0:
        raise BadReduction(f"bad reduction at {ell} (v(disc) = {loc.v_disc})")
    return tuple(a % ell for a in mm.ainvs)


def _disc_mod(ainvs, ell: int) -> int:
    a1, a2, a3, a4, a6 = ainvs
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return (-b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6) % ell


def _c4_mod(ainvs, ell: int) -> int:
    a1, a2, a3, a4, a6 = ainvs
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    return (b2 * b2 - 24 * b4) % ell


def _c6_mod(ainvs, ell: int) -> int:
    a1, a2, a3, a4, a6 = ainvs
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    return (-b2 ** 3 + 36 * b2 * b4 - 216 * b6) % ell


def j_mod(ainvs, ell: int) -> int:
    """j-invariant of a nonsingular curve over F_ell."""
    d = _disc_mod(ainvs, ell)
    if d == 0:
        raise SingularReduction("singular curve over F_%d" % ell)
    return pow(_c4_mod(ainvs, ell), 3, ell) * pow(d, -1, ell) % ell


def count_points(ainvs, ell: int) -> tuple[int, int]:
    """(#E(F_ell), a_ell) for a nonsingular curve given by coefficients mod ell."""
    if ell > MAX_ELL:
        raise ValueError(f"naive point count refused for ell > {MAX_ELL}")
    ainvs = tuple(int(a) % ell for a in ainvs)
    if _disc_mod(ainvs, ell) == 0:
        raise SingularReduction(f"reduction mod {ell} is singular")
    n = K.count_points(ainvs, ell)
    a = ell + 1 - n
    assert a * a <= 4 * ell, "Hasse bound violated"
    return n, a


# ---------------------------------------------------------------- class polynomials


@dataclass(frozen=True)
class ClassPolynomial:
    D: int
    coefficients: tuple  # constant term first

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def eval_mod(self, x: int, ell: int) -> int:
        r = 0
        for c in reversed(self.coefficients):
            r = (r * x + c) % ell
        return r

    def __str__(self) -> str:
        cs = self.coefficients
        if len(cs) == 1:
            return str(cs[0])
        parts = []
        for i in range(len(cs) - 1, -1, -1):
            c = cs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def to_json(self) -> dict:
        return {"D": self.D, "coefficients": list(self.coefficients), "poly": str(self)}


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """Reduced primitive positive definite forms (a, b, c) of discriminant D < 0."""
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                out.append((a, b, c))
        a += 1
    return out


def _poly_from_roots(roots):
    coeffs = [mpmath.mpc(1)]
    for r in roots:
        new = [mpmath.mpc(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i + 1] += c
            new[i] -= r * c
        coeffs = new
    return coeffs


def _single_order_poly(D: int) -> tuple:
    forms = reduced_forms(D)
    bound = math.pi * math.sqrt(-D) * sum(1.0 / a for a, _, _ in forms) / math.log(2)
    prec = 128 + math.ceil(bound)
    for _ in range(8):
        with mpmath.workprec(prec):
            sq = mpmath.sqrt(-D)
            roots = []
            for a, b, _c in forms:
                tau = mpmath.mpc(-b, sq) / (2 * a)
                roots.append(1728 * mpmath.kleinj(tau))
            coeffs = _poly_from_roots(roots)
            ints = [int(mpmath.nint(c.real)) for c in coeffs]
            err = max(abs(c - n) for c, n in zip(coeffs, ints))
            if err < mpmath.mpf(2) ** -16:
                return tuple(ints)
        prec *= 2
    raise PrecisionFailure(f"class polynomial for D = {D} did not round cleanly")


_CACHE: dict[int, ClassPolynomial] = {}
_LOCK = threading.Lock()


def _is_disc(D: int) -> bool:
    return D % 4 in (0, 1)


def hilbert_class_poly(D: int) -> ClassPolynomial:
    """Product of the class polynomials of every order containing O_D."""
    if D > 0:
        raise ValueError("discriminant must be non-positive")
    if D in _CACHE:
        return _CACHE[D]
    if D == 0:
        res = ClassPolynomial(0, (0,))
    elif not _is_disc(D):
        res = ClassPolynomial(D, (1,))
    else:
        poly = [1]
        g = 1
        while g * g <= -D:
            if D % (g * g) == 0 and _is_disc(D // (g * g)):
                part = _single_order_poly(D // (g * g))
                new = [0] * (len(poly) + len(part) - 1)
                for i, x in enumerate(poly):
                    for j, y in enumerate(part):
                        new[i + j] += x * y
                poly = new
            g += 1
        res = ClassPolynomial(D, tuple(poly))
    with _LOCK:
        _CACHE.setdefault(D, res)
    return _CACHE[D]


# ---------------------------------------------------------------- Frobenius data


def beta(j: int, disc: int, ell: int) -> int:
    """Largest h with h^2 | disc and P_{disc/h^2}(j) = 0 mod ell."""
    if disc >= 0:
        raise ValueError("Delta_ell must be negative")
    best = None
    h = 1
    while h * h <= -disc:
        if disc % (h * h) == 0:
            if hilbert_class_poly(disc // (h * h)).eval_mod(j, ell) == 0:
                best = h
        h += 1
    if best is None:
        raise NoValidH(f"no h for Delta = {disc}, j = {j} mod {ell}")
    return best


@dataclass(frozen=True)
class FrobeniusData:
    ell: int
    a: int
    disc: int
    beta: int
    j: int

    def to_json(self) -> dict:
        return {"ell": self.ell, "a": self.a, "disc": self.disc, "beta": self.beta, "j_mod_ell": self.j}


def frobenius_data_from_reduction(ainvs, ell: int) -> FrobeniusData:
    _, a = count_points(ainvs, ell)
    j = j_mod(ainvs, ell)
    disc = a * a - 4 * ell
    return FrobeniusData(ell, a, disc, beta(j, disc, ell), j)


def frobenius_data(model: WeierstrassModel, ell: int) -> FrobeniusData:
    return frobenius_data_from_reduction(reduce_at(model, ell), ell)


def frob_matrix(data: FrobeniusData, p: int) -> tuple:
    """Matrix of Frobenius at ell acting on E[p] in a suitable basis."""
    if p == 2 or p < 2:
        raise ValueError("p must be an odd prime")
    a, D, b = data.a, data.disc, data.beta
    if b % p == 0:
        raise UnsupportedReduction(f"p = {p} divides beta = {b}")
    i2b = pow(2 * b, -1, p)
    m = gl2.mat(
        (a * b - D) * i2b,
        D * (b * b - D) * pow(4 * b ** 3, -1, p),
        b,
        (a * b + D) * i2b,
        p,
    )
    assert gl2.trace(m, p) == a % p and gl2.det(m, p) == data.ell % p
    return m


def frob_class(data: FrobeniusData, p: int) -> tuple:
    """A representative of the conjugacy class of Frobenius mod p.

    Unlike frob_matrix this also covers p | beta, where Frobenius acts on
    E[p] as a scalar whenever p | Delta_ell as well.
    """
    if data.beta % p:
        return frob_matrix(data, p)
    if data.disc % p:
        raise UnsupportedReduction("p | beta but p does not divide Delta_ell")
    h = data.a * pow(2, -1, p)
    return gl2.mat(h, 0, 0, h, p)


def frob_order_condition(data: FrobeniusData, p: int) -> bool:
    """Frobenius mod p has order divisible by p."""
    return data.disc % p == 0 and data.beta % p != 0


# ---------------------------------------------------------------- isomorphism over F_ell


def _apply(ainvs, u, r, s, t, ell):
    """Coefficients after the change of variables (u, r, s, t) over F_ell."""
    a1, a2, a3, a4, a6 = ainvs
    ui = pow(u, -1, ell)
    n1 = (a1 + 2 * s) * ui
    n2 = (a2 - s * a1 + 3 * r - s * s) * ui ** 2
    n3 = (a3 + r * a1 + 2 * t) * ui ** 3
    n4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) * ui ** 4
    n6 = (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) * ui ** 6
    return tuple(x % ell for x in (n1, n2, n3, n4, n6))


def residual_iso_exhaustive(e1, e2, ell: int) -> bool:
    e1 = tuple(a % ell for a in e1)
    e2 = tuple(a % ell for a in e2)
    for u in range(1, ell):
        for r, s, t in product(range(ell), repeat=3):
            if _apply(e1, u, r, s, t, ell) == e2:
                return True
    return False


def residual_iso_check(e1, e2, ell: int) -> bool:
    """Whether two nonsingular curves over F_ell are F_ell-isomorphic."""
    e1 = tuple(int(a) % ell for a in e1)
    e2 = tuple(int(a) % ell for a in e2)
    if j_mod(e1, ell) != j_mod(e2, ell):
        return False
    if e1 == e2:
        return True
    if ell <= 3:
        return residual_iso_exhaustive(e1, e2, ell)
    # short form y^2 = x^3 - 27 c4 x - 54 c6; an isomorphism scales (c4, c6) by (u^4, u^6)
    A1, B1 = _c4_mod(e1, ell), _c6_mod(e1, ell)
    A2, B2 = _c4_mod(e2, ell), _c6_mod(e2, ell)
    for u in range(1, ell):
        u2 = u * u % ell
        if A1 * u2 * u2 % ell == A2 and B1 * u2 ** 3 % ell == B2:
            return True
    return False


def model_mod(model: WeierstrassModel, ell: int) -> tuple:
    """Coefficients of a rational model reduced mod ell (denominators prime to ell)."""
    out = []
    for a in model.ainvs:
        a = Fraction(a)
        out.append(a.numerator * pow(a.denominator, -1, ell) % ell)
    return tuple(out)


def trace_of(model: WeierstrassModel, ell: int) -> int:
    """a_ell of the curve, from its ell-minimal model."""
    return count_points(reduce_at(model, ell), ell)[1]


__all__ = [
    "ClassPolynomial", "FrobeniusData", "reduce_at", "count_points", "j_mod",
    "reduced_forms", "hilbert_class_poly", "beta", "frobenius_data",
    "frobenius_data_from_reduction", "frob_matrix", "frob_class",
    "frob_order_condition", "residual_iso_check", "residual_iso_exhaustive",
    "model_mod", "trace_of", "standard_invariants",
]
