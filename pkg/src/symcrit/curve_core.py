"""Weierstrass models over Q, their invariants, coordinate changes and
local minimal models (Tate's algorithm).

All arithmetic is exact: coefficients are ``int`` or ``fractions.Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InputError, SingularModel, ZeroInput, ZeroScale, ZeroTwist

Number = Union[int, Fraction]
INFINITY = math.inf


def _norm(x) -> Number:
    """Return ``x`` as int when integral, else as Fraction."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: Number = 0
    a2: Number = 0
    a3: Number = 0
    a4: Number = 0
    a6: Number = 0

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, _norm(getattr(self, name)))

    @classmethod
    def from_list(cls, coeffs) -> "WeierstrassModel":
        """Accept [a1,a2,a3,a4,a6] or the short form [a,b]."""
        coeffs = list(coeffs)
        if len(coeffs) == 2:
            return cls(0, 0, 0, coeffs[0], coeffs[1])
        if len(coeffs) == 5:
            return cls(*coeffs)
        raise InputError(f"expected 2 or 5 coefficients, got {len(coeffs)}")

    @property
    def ainvs(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def is_integral(self) -> bool:
        return all(isinstance(a, int) for a in self.ainvs)

    def to_json(self) -> list:
        return [a if isinstance(a, int) else str(a) for a in self.ainvs]

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.ainvs) + "]"


@dataclass(frozen=True)
class StandardInvariants:
    b2: Number
    b4: Number
    b6: Number
    b8: Number
    c4: Number
    c6: Number
    disc: Number
    j: Fraction


def _b_invariants(a1, a2, a3, a4, a6):
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def _disc(b2, b4, b6, b8):
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def standard_invariants(model: WeierstrassModel) -> StandardInvariants:
    b2, b4, b6, b8 = _b_invariants(*model.ainvs)
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    disc = _disc(b2, b4, b6, b8)
    if disc == 0:
        raise SingularModel(f"model {model} has zero discriminant")
    assert c4 ** 3 - c6 ** 2 == 1728 * disc
    return StandardInvariants(
        *(_norm(v) for v in (b2, b4, b6, b8, c4, c6, disc)), j=Fraction(c4) ** 3 / Fraction(disc)
    )


def transform(model: WeierstrassModel, u, r, s, t) -> WeierstrassModel:
    """Model obtained by x = u^2 x' + r, y = u^3 y' + u^2 s x' + t."""
    u, r, s, t = (Fraction(v) for v in (u, r, s, t))
    if u == 0:
        raise ZeroScale("u must be nonzero")
    a1, a2, a3, a4, a6 = (Fraction(a) for a in model.ainvs)
    n1 = a1 + 2 * s
    n2 = a2 - s * a1 + 3 * r - s * s
    n3 = a3 + r * a1 + 2 * t
    n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
    n6 = a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1
    return WeierstrassModel(n1 / u, n2 / u ** 2, n3 / u ** 3, n4 / u ** 4, n6 / u ** 6)


def inverse_transform(u, r, s, t) -> tuple:
    """Parameters of the change of variables undoing (u, r, s, t)."""
    u, r, s, t = (Fraction(v) for v in (u, r, s, t))
    if u == 0:
        raise ZeroScale("u must be nonzero")
    return (1 / u, -r / u ** 2, -s / u, (r * s - t) / u ** 3)


def model_from_c4c6(c4: int, c6: int) -> WeierstrassModel | None:
    """Integral model with exactly these c4, c6, or None if none exists."""
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    num4 = b2 * b2 - c4
    if num4 % 24:
        return None
    b4 = num4 // 24
    num6 = -b2 ** 3 + 36 * b2 * b4 - c6
    if num6 % 216:
        return None
    b6 = num6 // 216
    a1 = b2 % 2
    a3 = b6 % 2
    if (b2 - a1) % 4 or (b4 - a1 * a3) % 2 or (b6 - a3) % 4:
        return None
    m = WeierstrassModel(a1, (b2 - a1) // 4, a3, (b4 - a1 * a3) // 2, (b6 - a3) // 4)
    inv = standard_invariants(m)
    if inv.c4 != c4 or inv.c6 != c6:
        return None
    return m


def quadratic_twist(model: WeierstrassModel, d: int) -> WeierstrassModel:
    """Model of the twist by Q(sqrt d) with c4 -> d^2 c4 and c6 -> d^3 c6."""
    if d == 0:
        raise ZeroTwist("cannot twist by 0")
    inv = standard_invariants(model)
    c4, c6 = inv.c4 * d * d, inv.c6 * d ** 3
    if isinstance(c4, int) and isinstance(c6, int):
        m = model_from_c4c6(c4, c6)
        if m is not None:
            return m
    # y^2 = x^3 + d b2 x^2 + 8 d^2 b4 x + 16 d^3 b6 has c4 = 16 d^2 c4; rescale by u = 2
    big = WeierstrassModel(0, d * inv.b2, 0, 8 * d * d * inv.b4, 16 * d ** 3 * inv.b6)
    return transform(big, 2, 0, 0, 0)


# ---------------------------------------------------------------- arithmetic


def valuation(n: Number, p: int) -> float | int:
    """p-adic valuation; returns INFINITY for 0."""
    if n == 0:
        return INFINITY
    n = Fraction(n)
    return _ival(n.numerator, p) - _ival(n.denominator, p)


def _ival(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def tilde_parts(n: int, ell: int, k: int = 1) -> tuple[int, int]:
    """Split n = ell^v * m with ell not dividing m; return (v, m mod ell^k)."""
    if n == 0:
        raise ZeroInput("tilde_parts of 0")
    if k < 1:
        raise ValueError("precision k must be >= 1")
    v = _ival(n, ell)
    return v, (n // ell ** v) % ell ** k


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    if p == 2 or p < 2:
        raise ValueError("legendre needs an odd prime")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def default_digits(ell: int) -> int:
    """Residue precision (number of ell-adic digits) used by default."""
    return {2: 5, 3: 2}.get(ell, 1)


def prime_factors(n: int) -> list[int]:
    from sympy import factorint

    return sorted(factorint(abs(n)).keys())


# ---------------------------------------------------------------- Tate


@dataclass(frozen=True)
class LocalInvariants:
    """Valuations and unit residues of a minimal model at ell."""

    prime: int
    v_c4: float | int
    v_c6: float | int
    v_disc: int
    c4_res: int | None
    c6_res: int | None
    disc_res: int
    digits: int
    kodaira: str
    conductor_exponent: int
    c4: int
    c6: int
    disc: int

    @property
    def modulus(self) -> int:
        return self.prime ** self.digits

    @property
    def triple(self) -> tuple:
        return (self.v_c4, self.v_c6, self.v_disc)

    @property
    def v_j(self) -> float | int:
        return 3 * self.v_c4 - self.v_disc

    def res(self, which: str, m: int) -> int:
        """Residue of c4~ / c6~ / disc~ modulo m (m must divide ell^digits)."""
        full = {"c4": self.c4, "c6": self.c6, "disc": self.disc}[which]
        if full == 0:
            raise ZeroInput(f"{which} is zero")
        return tilde_parts(full, self.prime, 64)[1] % m

    def to_json(self) -> dict:
        def v(x):
            return "inf" if x == INFINITY else x

        return {
            "prime": self.prime,
            "v_c4": v(self.v_c4),
            "v_c6": v(self.v_c6),
            "v_disc": self.v_disc,
            "c4_res": self.c4_res,
            "c6_res": self.c6_res,
            "disc_res": self.disc_res,
            "modulus": self.modulus,
            "kodaira": self.kodaira,
            "conductor_exponent": self.conductor_exponent,
        }


def _rst(a, r, s, t):
    a1, a2, a3, a4, a6 = a
    return (
        a1 + 2 * s,
        a2 - s * a1 + 3 * r - s * s,
        a3 + r * a1 + 2 * t,
        a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
        a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1,
    )


def _integral_at(model: WeierstrassModel, p: int) -> tuple:
    """Scale the model by a power of p (and clear other denominators) to make it integral."""
    den = 1
    for a in model.ainvs:
        if isinstance(a, Fraction):
            den = den * a.denominator // math.gcd(den, a.denominator)
    if den == 1:
        return model.ainvs
    scaled = transform(model, Fraction(1, den), 0, 0, 0)
    return tuple(int(a) for a in scaled.ainvs)


def _singular_point(a, p):
    """(x0, y0) mod p of the singular point of the reduction (assumes p | disc)."""
    a1, a2, a3, a4, a6 = a
    if p <= 3:
        for x in range(p):
            for y in range(p):
                f = y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6
                fx = a1 * y - 3 * x * x - 2 * a2 * x - a4
                fy = 2 * y + a1 * x + a3
                if f % p == 0 and fx % p == 0 and fy % p == 0:
                    return x, y
        raise AssertionError("no singular point found")
    b2, b4, b6, b8 = _b_invariants(*a)
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    if c4 % p == 0:
        x = (-b2 * pow(12, -1, p)) % p
    else:
        x = (-(c6 + b2 * c4) * pow(12 * c4, -1, p)) % p
    y = (-(a1 * x + a3) * pow(2, -1, p)) % p
    return x, y


def _tate(model: WeierstrassModel, p: int):
    """Tate's algorithm. Returns (minimal ainvs, kodaira, conductor exponent)."""
    a = _integral_at(model, p)
    half = pow(2, -1, p) if p != 2 else None

    def v(x):
        return INFINITY if x == 0 else _ival(x, p)

    while True:
        b2, b4, b6, b8 = _b_invariants(*a)
        vd = v(_disc(b2, b4, b6, b8))
        if vd == 0:
            return a, "I0", 0
        x0, y0 = _singular_point(a, p)
        a = _rst(a, x0, 0, y0)
        a1, a2, a3, a4, a6 = a
        b2, b4, b6, b8 = _b_invariants(*a)
        if b2 % p:
            return a, f"I{vd}", 1
        if v(a6) < 2:
            return a, "II", vd
        if v(b8) < 3:
            return a, "III", vd - 1
        if v(b6) < 3:
            return a, "IV", vd - 2
        # p | a1, a2 ; p^2 | a3, a4 ; p^3 | a6
        if p == 2:
            s, t = a2 % 2, 2 * ((a6 // 4) % 2)
        else:
            s, t = (-a1 * half) % p, p * ((-(a3 // p) * half) % p)
        a = _rst(a, 0, s, t)
        a1, a2, a3, a4, a6 = a
        assert a1 % p == 0 and a2 % p == 0 and a3 % p ** 2 == 0 and a4 % p ** 2 == 0 and a6 % p ** 3 == 0
        b, c, d = a2 // p, a4 // p ** 2, a6 // p ** 3
        w = 27 * d * d - b * b * c * c + 4 * b ** 3 * d - 18 * b * c * d + 4 * c ** 3
        xx = 3 * c - b * b
        if w % p:
            return a, "I0*", vd - 4
        if xx % p:
            # double root: move it to 0 and peel off I_m^*
            if p == 2:
                r = c
            elif p == 3:
                r = b * c
            else:
                r = (b * c - 9 * d) * pow(2 * xx, -1, p)
            a = _rst(a, p * (r % p), 0, 0)
            ix = iy = 3
            mx = my = p * p
            while True:
                a1, a2, a3, a4, a6 = a
                a2t, a3t, a4t, a6t = a2 // p, a3 // my, a4 // (p * mx), a6 // (mx * my)
                if (a3t * a3t + 4 * a6t) % p:
                    break
                t = my * (a6t % 2 if p == 2 else (-a3t * half) % p)
                a = _rst(a, 0, 0, t)
                my *= p
                iy += 1
                a1, a2, a3, a4, a6 = a
                a2t, a3t, a4t, a6t = a2 // p, a3 // my, a4 // (p * mx), a6 // (mx * my)
                if (a4t * a4t - 4 * a6t * a2t) % p:
                    break
                if p == 2:
                    r = mx * ((a6t * a2t) % 2)
                else:
                    r = mx * ((-a4t * half * pow(a2t, -1, p)) % p)
                a = _rst(a, r, 0, 0)
                mx *= p
                ix += 1
            m = ix + iy - 5
            return a, f"I{m}*", vd - m - 4
        # triple root
        if p == 2:
            r = b
        elif p == 3:
            r = -d
        else:
            r = -b * pow(3, -1, p)
        a = _rst(a, p * (r % p), 0, 0)
        a1, a2, a3, a4, a6 = a
        a3t, a6t = a3 // p ** 2, a6 // p ** 4
        if (a3t * a3t + 4 * a6t) % p:
            return a, "IV*", vd - 6
        t = p * p * (a6t % 2 if p == 2 else (-a3t * half) % p)
        a = _rst(a, 0, 0, t)
        a1, a2, a3, a4, a6 = a
        if v(a4) < 4:
            return a, "III*", vd - 7
        if v(a6) < 6:
            return a, "II*", vd - 8
        # non-minimal: scale by u = p and restart
        a = (a1 // p, a2 // p ** 2, a3 // p ** 3, a4 // p ** 4, a6 // p ** 6)


def minimal_model_at(model: WeierstrassModel, ell: int, digits: int | None = None):
    """ell-minimal model and its LocalInvariants."""
    standard_invariants(model)  # raises SingularModel
    if digits is None:
        digits = default_digits(ell)
    a, kod, f = _tate(model, ell)
    mm = WeierstrassModel(*a)
    inv = standard_invariants(mm)
    mod = ell ** digits

    def part(n):
        if n == 0:
            return INFINITY, None
        return tilde_parts(n, ell, digits)

    v4, r4 = part(inv.c4)
    v6, r6 = part(inv.c6)
    vd, rd = part(inv.disc)
    assert rd is not None and 0 <= rd < mod
    loc = LocalInvariants(ell, v4, v6, vd, r4, r6, rd, digits, kod, f, inv.c4, inv.c6, inv.disc)
    return mm, loc


def conductor_exponents(model: WeierstrassModel) -> dict[int, int]:
    """Conductor exponent at every prime of bad reduction."""
    inv = standard_invariants(model)
    d = Fraction(inv.disc)
    out = {}
    for p in prime_factors(d.numerator * d.denominator):
        _, loc = minimal_model_at(model, p)
        if loc.conductor_exponent:
            out[p] = loc.conductor_exponent
    return out


def conductor(model: WeierstrassModel) -> int:
    n = 1
    for p, f in conductor_exponents(model).items():
        n *= p ** f
    return n


def minimal_discriminant(model: WeierstrassModel) -> int:
    inv = standard_invariants(model)
    d = Fraction(inv.disc)
    out = -1 if d < 0 else 1
    for p in prime_factors(d.numerator * d.denominator):
        _, loc = minimal_model_at(model, p)
        out *= p ** loc.v_disc
    return out
