"""Reduction type, semistability defect and inertial-field tags at a prime."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .curve_core import (
    INFINITY,
    LocalInvariants,
    WeierstrassModel,
    minimal_model_at,
    quadratic_twist,
    standard_invariants,
)
from .errors import TableMiss, UnclassifiedReduction

GOOD = "Good"
MULT = "Multiplicative"
POT_MULT = "PotentiallyMultiplicative"
POT_GOOD = "PotentiallyGood"

_INERTIA = {1: "C1", 2: "C2", 3: "C3", 4: "C4", 6: "C6", 8: "H8", 12: "Dic12", 24: "SL2F3"}


# ---------------------------------------------------------------- model table
# A row is (name, ell, e, list of triple patterns, extra predicate, conductor).
# A pattern entry is an int (exact) or (">=", n).


def _ge(n):
    return (">=", n)


def _val_ok(v, pat) -> bool:
    if isinstance(pat, tuple):
        return v >= pat[1]
    return v == pat


def _triple_ok(loc: LocalInvariants, pats) -> bool:
    return any(all(_val_ok(v, q) for v, q in zip(loc.triple, pat)) for pat in pats)


def _r(loc, which, m):
    return loc.res(which, m)


@dataclass(frozen=True)
class Row:
    name: str
    ell: int
    e: int
    patterns: tuple
    extra: Optional[Callable] = None
    conductor: Optional[int] = None

    def matches(self, loc: LocalInvariants) -> bool:
        if loc.prime != self.ell and not (self.ell == 5 and loc.prime >= 5):
            return False
        if not _triple_ok(loc, self.patterns):
            return False
        if self.conductor is not None and loc.conductor_exponent != self.conductor:
            return False
        return self.extra is None or bool(self.extra(loc))


def _d9_24(loc):
    return _r(loc, "disc", 9) in (2, 4)


# ell = 5 stands for "ell >= 5"
MODEL_TABLE = (
    Row("A3", 5, 3, ((_ge(2), 2, 4), (_ge(3), 4, 8))),
    Row("A4", 5, 4, ((1, _ge(2), 3), (3, _ge(5), 9))),
    Row("B3", 3, 3, ((2, 3, 4), (5, 8, 12))),
    Row("B4i", 3, 4, ((2, _ge(5), 3), (4, _ge(8), 9))),
    Row("B4ii", 3, 4, ((_ge(2), 3, 3),), _d9_24),
    Row("B4iii", 3, 4, ((_ge(4), 6, 9),), _d9_24),
    Row("C4", 2, 4, ((5, 8, 9), (7, 11, 15)), None, 8),
    Row("C3i", 2, 3, ((4, 5, 4),), lambda L: _r(L, "c4", 4) == 3 and _r(L, "c6", 4) == 1),
    Row("C3ii", 2, 3, ((_ge(6), 5, 4),), lambda L: _r(L, "c6", 4) == 1),
    Row("C3iii", 2, 3, ((4, 6, 8),), lambda L: _r(L, "c6", 4) == 3 and _r(L, "disc", 4) == 3),
    Row("C3iv", 2, 3, ((_ge(7), 7, 8),), lambda L: _r(L, "c6", 4) == 1),
    Row("Da", 2, 8, ((4, _ge(7), 6),), lambda L: _r(L, "c4", 4) == 3, 5),
    Row("Db", 2, 8, ((6, _ge(10), 12),), lambda L: _r(L, "c4", 4) == 1, 5),
    Row("Dc", 2, 8, ((7, 9, 12),), None, 5),
    Row("Dd", 2, 8, ((4, 6, 9),), None, 5),
    Row("De", 2, 8, ((5, _ge(9), 9),), None, 8),
    Row("Df", 2, 8, ((7, _ge(12), 15),), None, 8),
    Row("Ga", 3, 12, ((_ge(2), 3, 3),), lambda L: not _d9_24(L), 3),
    Row("Gb", 3, 12, ((_ge(4), 6, 9),), lambda L: not _d9_24(L), 3),
    Row("Gc", 3, 12, ((2, 4, 3),), None, 3),
    Row("Gd", 3, 12, ((2, 3, 5),), None, 3),
    Row("Ge", 3, 12, ((4, 7, 9),), None, 3),
    Row("Gf", 3, 12, ((4, 6, 11),), None, 3),
    Row("Gg", 3, 12, ((_ge(3), 4, 5),), None, 5),
    Row("Gh", 3, 12, ((_ge(4), 5, 7),), None, 5),
    Row("Gi", 3, 12, ((_ge(5), 7, 11),), None, 5),
    Row("Gj", 3, 12, ((_ge(6), 8, 13),), None, 5),
)


def table_case(loc: LocalInvariants) -> Optional[Row]:
    """The model-table row matched by a minimal model's invariants, if any."""
    for row in MODEL_TABLE:
        if row.matches(loc):
            return row
    return None


# ---------------------------------------------------------------- classification


@dataclass(frozen=True)
class ReductionClass:
    prime: int
    kind: str
    e: Optional[int]
    inertia: str
    conductor_exponent: int
    case: Optional[str] = None
    twist: int = 1  # quadratic twist used to reach the table (or good / multiplicative)
    local: LocalInvariants = field(default=None, repr=False, compare=False)

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "kind": self.kind,
            "e": self.e,
            "inertia": self.inertia,
            "conductor_exponent": self.conductor_exponent,
            "case": self.case,
            "twist": self.twist,
            "local": self.local.to_json() if self.local else None,
        }


def _model_of(loc: LocalInvariants) -> WeierstrassModel:
    # y^2 = x^3 - 27 c4 x - 54 c6 is an integral model of the same curve
    return WeierstrassModel(0, 0, 0, -27 * loc.c4, -54 * loc.c6)


def _twists(ell: int):
    return (-1, 2, -2, ell, -ell, 2 * ell, -2 * ell) if ell != 2 else (-1, 2, -2)


def twisted_local(loc: LocalInvariants, d: int) -> LocalInvariants:
    return minimal_model_at(quadratic_twist(_model_of(loc), d), loc.prime)[1]


def _defect(loc: LocalInvariants):
    """(e, case, twist) for potentially good reduction."""
    ell = loc.prime
    if loc.v_disc == 0:
        return 1, None, 1
    if ell >= 5:
        e = 12 // math.gcd(loc.v_disc, 12)
        # twisting by ell shifts v(disc) by 6 mod 12: e = 2, 6 become 1, 3
        return e, None, (ell if e in (2, 6) else 1)
    row = table_case(loc)
    if row is not None:
        return row.e, row.name, 1
    for d in _twists(ell):
        tl = twisted_local(loc, d)
        if tl.v_disc == 0:
            return 2, None, d
        row = table_case(tl)
        if row is None:
            continue
        e = {3: 6}.get(row.e, row.e)
        if row.e == 8 and loc.conductor_exponent != 6:
            continue  # twisting a genuine table curve never lands here; be safe
        return e, row.name, d
    if ell == 2 and loc.v_disc % 3:
        return 24, None, 1
    raise UnclassifiedReduction(
        f"no table row matches at {ell} for triple {loc.triple}, f = {loc.conductor_exponent}"
    )


def semistability_defect(loc: LocalInvariants) -> int:
    """e for a curve with potentially good reduction at loc.prime."""
    if loc.v_j < 0:
        raise UnclassifiedReduction("potentially multiplicative reduction has no finite e")
    return _defect(loc)[0]


def classify_local(loc: LocalInvariants) -> ReductionClass:
    ell, f = loc.prime, loc.conductor_exponent
    if loc.v_disc == 0:
        return ReductionClass(ell, GOOD, 1, "C1", 0, None, 1, loc)
    if f == 1:
        return ReductionClass(ell, MULT, None, "C1", 1, None, 1, loc)
    if loc.v_j < 0:
        for d in _twists(ell):
            if twisted_local(loc, d).conductor_exponent == 1:
                return ReductionClass(ell, POT_MULT, None, "C2", f, None, d, loc)
        raise UnclassifiedReduction("no quadratic twist with multiplicative reduction found")
    e, case, d = _defect(loc)
    return ReductionClass(ell, POT_GOOD, e, _INERTIA[e], f, case, d, loc)


def classify(model: WeierstrassModel, ell: int) -> ReductionClass:
    """Reduction type of the curve at ell."""
    return classify_local(minimal_model_at(model, ell)[1])


# ---------------------------------------------------------------- inertial field


def _n(loc):
    return loc.v_c6


def _pick(table: dict, key):
    if key not in table:
        raise TableMiss(f"residue {key} is in no row")
    return table[key]


def inertial_field_tag(loc: LocalInvariants, e: int, f: int) -> str:
    """Tag of the field over which a non-abelian curve gains good reduction.

    g1..g4 (ell = 2, e = 8), h1..h5 (ell = 3, e = 12), f1/f2 (ell = 2, e = 4)
    and k1 (the single cubic field when ell = e = 3).
    """
    ell = loc.prime
    row = table_case(loc)
    if row is None or row.e != e:
        raise TableMiss(f"invariants {loc.triple} are in no row with e = {e}")
    name = row.name
    if ell == 2 and e == 8 and f == 5:
        c4m4, dm4 = loc.res("c4", 4), loc.res("disc", 4)
        if name == "Da":
            return "g1" if _n(loc) >= 8 else "g2"
        if name == "Db":
            return "g1" if _n(loc) >= 11 else "g2"
        if name == "Dc":
            return _pick({1: "g1", 3: "g2"}, c4m4)
        if name == "Dd":
            return _pick({1: "g1", 3: "g2"}, dm4)
    if ell == 2 and e == 8 and f == 8:
        c4m8 = loc.res("c4", 8)
        low = c4m8 in (1, 3)
        if name == "De":
            return "g3" if low else "g4"
        if name == "Df":
            return "g4" if low else "g3"
    if ell == 2 and e == 4 and name == "C4":
        key = (loc.res("c4", 8), loc.res("c6", 4))
        first = {(1, 1): "f2", (5, 3): "f2", (1, 3): "f1", (5, 1): "f1"}
        if key in first:
            tag = first[key]
            if loc.triple == (7, 11, 15):
                tag = "f1" if tag == "f2" else "f2"
            return tag
    if ell == 3 and e == 3 and name == "B3":
        return "k1"
    if ell == 3 and e == 12 and f == 3:
        d3 = loc.res("disc", 3)
        if name == "Ga":
            return "h1" if loc.v_c4 == 2 else "h2"
        if name == "Gb":
            return "h1" if loc.v_c4 == 4 else "h2"
        if name in ("Gc", "Gd", "Ge", "Gf"):
            return _pick({1: "h1", 2: "h2"}, d3)
    if ell == 3 and e == 12 and f == 5:
        d9 = loc.res("disc", 9)
        if name in ("Gh", "Gj"):
            return _pick({8: "h4", 5: "h3", 2: "h5"}, d9)
        low = (name == "Gg" and loc.v_c4 == 3) or (name == "Gi" and loc.v_c4 == 5)
        if not low:
            return _pick({8: "h3", 5: "h4", 2: "h5"}, d9)
        key = (d9, loc.res("c4", 3))
        table = {(2, 2): "h3", (5, 1): "h3", (2, 1): "h4", (8, 2): "h4", (5, 2): "h5", (8, 1): "h5"}
        if key in table:
            return table[key]
    raise TableMiss(f"no inertial-field entry for case {name}, e = {e}, f = {f}")


__all__ = [
    "GOOD", "MULT", "POT_MULT", "POT_GOOD", "MODEL_TABLE", "Row", "ReductionClass",
    "table_case", "classify", "classify_local", "semistability_defect",
    "inertial_field_tag", "twisted_local", "INFINITY", "standard_invariants",
    "CRITERIA", "PrimeEntry", "criterion_prime_list",
]


# ---------------------------------------------------------------- criterion list

CRITERIA = (
    "good", "tame-e3", "e3-p3", "wild-e3", "tame-e4", "wild-e4",
    "e8", "e12", "e24", "pot-mult",
)


@dataclass(frozen=True)
class PrimeEntry:
    """Which criterion (if any) applies at ell; twist is applied to both curves first."""

    prime: int
    criterion: Optional[str]
    twist: int = 1
    reason: Optional[str] = None

    def to_json(self) -> dict:
        return {"prime": self.prime, "criterion": self.criterion, "twist": self.twist, "reason": self.reason}


def _pot_good_criterion(ell: int, e: int, p: int, loc: LocalInvariants):
    """(criterion id, reason) for matching potentially good curves with defect e."""
    if e == 1:
        return "good", None
    if e == 3:
        if ell == 3:
            if loc.res("disc", 3) != 2:
                return None, "wild e=3 with disc~ = 1 mod 3 (abelian torsion field)"
            return "wild-e3", None
        if ell % 3 == 2:
            return "tame-e3", None
        if p == 3:
            return "e3-p3", None
        return None, "e=3 with ell = 1 mod 3 needs p = 3"
    if e == 4:
        if ell == 2:
            if (loc.res("c4", 8) - 5 * loc.res("disc", 8)) % 8:
                return None, "wild e=4 without c4~ = 5 disc~ mod 8"
            return "wild-e4", None
        if ell % 4 == 3:
            if p == 3:
                return None, "tame e=4 with p = 3 is not covered"
            return "tame-e4", None
        return None, "e=4 with ell = 1 mod 4 (abelian torsion field)"
    return {8: "e8", 12: "e12", 24: "e24"}[e], None


def _entry_at(E: WeierstrassModel, E2: WeierstrassModel, ell: int, p: int) -> PrimeEntry:
    try:
        c1, c2 = classify(E, ell), classify(E2, ell)
    except UnclassifiedReduction as exc:
        return PrimeEntry(ell, None, 1, f"unclassified: {exc}")
    if c1.kind in (MULT, POT_MULT):
        d = c1.twist
        t2 = classify(quadratic_twist(E2, d), ell) if d != 1 else c2
        if t2.kind != MULT:
            return PrimeEntry(ell, None, d, "reduction types differ")
        v = c1.local.v_disc if d == 1 else twisted_local(c1.local, d).v_disc
        if v % p == 0:
            return PrimeEntry(ell, None, d, "p divides v(disc)")
        return PrimeEntry(ell, "pot-mult", d, None)
    if c1.kind == GOOD:
        if c2.kind != GOOD:
            return PrimeEntry(ell, None, 1, "reduction types differ")
        return PrimeEntry(ell, "good", 1, None)
    if c2.kind != POT_GOOD or c2.e != c1.e:
        return PrimeEntry(ell, None, 1, "reduction types differ")
    e, d, loc = c1.e, 1, c1.local
    if e in (2, 6):
        d = c1.twist
        loc = twisted_local(c1.local, d)
        e //= 2
        t2 = classify_local(twisted_local(c2.local, d))
        if t2.kind not in (GOOD, POT_GOOD) or t2.e != e:
            return PrimeEntry(ell, None, d, "twist does not reduce both curves alike")
    cid, reason = _pot_good_criterion(ell, e, p, loc)
    return PrimeEntry(ell, cid, d, reason)


def criterion_prime_list(E: WeierstrassModel, E2: WeierstrassModel, p: int,
                         bound: int = 0, extra_primes=()) -> list[PrimeEntry]:
    """Criterion applicable at every bad prime of E, E' and at qualifying good primes.

    Good primes up to ``bound`` (and any in ``extra_primes``) are listed only when
    (ell/p) = 1, p | Delta_ell and p does not divide beta_ell.
    """
    from sympy import primerange

    from .curve_core import conductor_exponents, legendre
    from .goodred import frobenius_data, frob_order_condition

    if p < 3:
        raise ValueError("p must be an odd prime")
    bad = set(conductor_exponents(E)) | set(conductor_exponents(E2))
    out = [_entry_at(E, E2, ell, p) for ell in sorted(bad) if ell != p]
    good = sorted((set(primerange(2, bound + 1)) | set(extra_primes)) - bad - {p})
    for ell in good:
        if legendre(ell, p) != 1:
            continue
        if frob_order_condition(frobenius_data(E, ell), p):
            out.append(PrimeEntry(ell, "good", 1, None))
    return sorted(out, key=lambda x: x.prime)
