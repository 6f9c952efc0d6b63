"""Frey curves, the residual-pair scan for x^2 + y^3 = z^p and the symplectic
argument for y^2 = x^p - l and y^2 = x^p - 2l."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from . import gl2
from .criteria import crit_e8, crit_e24, crit_pot_mult, local_input, SYMPLECTIC
from .curve_core import WeierstrassModel, legendre, standard_invariants
from .errors import DegenerateFrey, EquationViolated, GcdViolated, HypothesisFailed
from .goodred import (
    frob_class,
    frob_order_condition,
    frobenius_data,
    frobenius_data_from_reduction,
    reduce_at,
    residual_iso_check,
)


# ---------------------------------------------------------------- Frey curves


@dataclass(frozen=True)
class FreySpec:
    tag: str
    params: dict
    model: WeierstrassModel
    c4: int
    c6: int
    disc: int
    notes: tuple = ()

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "params": self.params,
            "model": self.model.to_json(),
            "c4": self.c4,
            "c6": self.c6,
            "disc": self.disc,
            "notes": list(self.notes),
        }


def _spec(tag, params, model, notes=()):
    inv = standard_invariants(model)
    assert inv.c4 ** 3 - inv.c6 ** 2 == 1728 * inv.disc
    return FreySpec(tag, params, model, inv.c4, inv.c6, inv.disc, tuple(notes))


def frey_x2y3zp(a: int, b: int) -> FreySpec:
    """y^2 = x^3 + 3b x - 2a, attached to a^2 + b^3 = c^p."""
    if a * a + b ** 3 == 0:
        raise DegenerateFrey("a^2 + b^3 = 0 gives a singular curve")
    notes = () if math.gcd(a, b) == 1 else ("gcd(a, b) != 1",)
    return _spec("x2y3zp", {"a": a, "b": b}, WeierstrassModel(0, 0, 0, 3 * b, -2 * a), notes)


def frey_residual(a: int, b: int, d: int, ell: int) -> tuple:
    """Reduction mod ell of the twist by d of the Frey curve of (a, b)."""
    return (0, 0, 0, 3 * b * d * d % ell, -2 * a * d ** 3 % ell)


def _y2_x3_ax2_bx(a, b) -> WeierstrassModel:
    return WeierstrassModel(0, a, 0, b, 0)


def frey_hyperelliptic(u: int, v: int, w: int, ell: int, p: int, variant: str) -> FreySpec:
    """Frey curves for y^2 = x^p - l (hyper_E1, hyper_E2) and y^2 = x^p - 2l (hyper2_E2).

    The defining equations are u^p + l(-v^2)^p = w^2 and 2l(-v^2)^p + u^p = w^2.
    """
    if math.gcd(u, v) != 1 or math.gcd(w, v) != 1:
        raise GcdViolated("need gcd(u, v) = gcd(w, v) = 1")
    notes = []
    if variant in ("hyper_E1", "hyper_E2"):
        if u ** p + ell * (-v * v) ** p != w * w:
            raise EquationViolated("u^p + l(-v^2)^p != w^2")
        if u % 2 == 0:
            raise EquationViolated("u must be odd")
        if v % 2:
            if u % 4 != 1 or w % 2:
                raise EquationViolated("v odd forces u = 1 mod 4 and w even")
        if variant == "hyper_E1":
            model = _y2_x3_ax2_bx(2 * w, u ** p)
        else:
            model = _y2_x3_ax2_bx(2 * w, -ell * v ** (2 * p))
    elif variant == "hyper2_E2":
        if 2 * ell * (-v * v) ** p + u ** p != w * w:
            raise EquationViolated("2l(-v^2)^p + u^p != w^2")
        if (u * w) % 2 == 0:
            raise EquationViolated("u w must be odd")
        if v % 2 == 0 and u % 4 != 1:
            raise EquationViolated("v even forces u = 1 mod 4")
        if v % 2 and u % 4 != 3:
            raise EquationViolated("v odd forces u = -1 mod 4")
        model = _y2_x3_ax2_bx(2 * w, u ** p)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return _spec(variant, {"u": u, "v": v, "w": w, "ell": ell, "p": p}, model, notes)


def frey_triple(frey: FreySpec) -> tuple:
    from .curve_core import minimal_model_at

    return minimal_model_at(frey.model, 2)[1].triple


# ---------------------------------------------------------------- level lowering


def level_lowering_congruence(a: int, ell: int, p: int) -> bool:
    """a = +-(ell + 1) mod p, i.e. the form could come from multiplicative reduction."""
    return (a - ell - 1) % p == 0 or (a + ell + 1) % p == 0


# ---------------------------------------------------------------- residual scan


def least_nonresidue(ell: int) -> int:
    return next(n for n in range(2, ell) if legendre(n, ell) == -1)


@dataclass(frozen=True)
class ScanRecord:
    d: int
    a: int
    b: int
    residual: tuple
    trace: int
    matrix: tuple
    iso: bool

    def to_json(self) -> dict:
        return {
            "d": self.d, "a": self.a, "b": self.b, "residual": list(self.residual),
            "trace": self.trace, "matrix": [list(r) for r in self.matrix], "iso": self.iso,
        }


ELIMINATED = "Eliminated"
NOT_ELIMINATED = "NotEliminated"


@dataclass(frozen=True)
class ScanReport:
    p: int
    w_tag: str
    ell: int
    w_residual: tuple
    w_trace: int
    w_matrix: tuple
    order_condition: bool
    level_lowering: bool
    matches: tuple
    verdict: str
    reasons: tuple = field(default=())

    @property
    def match_keys(self) -> list:
        return [(r.d, r.a, r.b) for r in self.matches]

    @property
    def survivors(self) -> list:
        return [r for r in self.matches if not r.iso]

    def to_json(self) -> dict:
        return {
            "p": self.p, "w": self.w_tag, "ell": self.ell,
            "w_residual": list(self.w_residual), "w_trace": self.w_trace,
            "w_matrix": [list(r) for r in self.w_matrix],
            "order_condition": self.order_condition, "level_lowering": self.level_lowering,
            "matches": [r.to_json() for r in self.matches],
            "verdict": self.verdict, "reasons": list(self.reasons),
        }


def _scan_cells(args):
    ell, p, d, a_values, w_class, w_res = args
    out = []
    for a in a_values:
        for b in range(ell):
            if (a, b) == (0, 0) or (a * a + b ** 3) % ell == 0:
                continue
            res = frey_residual(a, b, d, ell)
            fd = frobenius_data_from_reduction(res, ell)
            m = frob_class(fd, p)
            if gl2.conjugate(m, w_class, p):
                out.append(ScanRecord(d, a, b, res, fd.a, m, residual_iso_check(res, w_res, ell)))
    return out


def scan_residual_pairs(W: WeierstrassModel, ell: int, p: int, w_tag: str = "W",
                        jobs: int = 1) -> ScanReport:
    """Run through all residual Frey curves mod ell whose Frobenius matches W's.

    The verdict is Eliminated when W's Frobenius has order divisible by p, the
    multiplicative level-lowering congruence fails at ell, and every matching
    residual curve is F_ell-isomorphic to W mod ell (so the good-reduction
    criterion forces a symplectic isomorphism).
    """
    if ell < 5:
        raise ValueError("the scan needs ell >= 5")
    w_res = reduce_at(W, ell)
    fdW = frobenius_data(W, ell)
    w_class = frob_class(fdW, p)
    tasks = [(ell, p, d, list(range(ell)), w_class, w_res) for d in (1, least_nonresidue(ell))]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        split = [(ell, p, d, list(range(i, ell, jobs)), w_class, w_res)
                 for (_, _, d, _, _, _) in tasks for i in range(jobs)]
        with ProcessPoolExecutor(jobs) as ex:
            parts = list(ex.map(_scan_cells, split))
    else:
        parts = [_scan_cells(t) for t in tasks]
    matches = tuple(sorted((r for part in parts for r in part), key=lambda r: (r.d, r.a, r.b)))
    order_ok = frob_order_condition(fdW, p)
    ll = level_lowering_congruence(fdW.a, ell, p)
    reasons = []
    if not order_ok:
        reasons.append("Frobenius of W mod p has order prime to p")
    if ll:
        reasons.append("a_ell(W) = +-(ell+1) mod p: multiplicative reduction at ell not excluded")
    bad = [r for r in matches if not r.iso]
    if bad:
        reasons.append(f"{len(bad)} matching residual curves are not isomorphic to W mod ell")
    verdict = NOT_ELIMINATED if reasons else ELIMINATED
    return ScanReport(p, w_tag, ell, w_res, fdW.a, w_class, order_ok, ll, matches, verdict, tuple(reasons))


# ---------------------------------------------------------------- hyperelliptic chains


FORCED = "(2/p) = 1 forced"
NOT_FORCED = "no parity forced"


@dataclass(frozen=True)
class ParityResult:
    ell: int
    variant: int
    frey: WeierstrassModel
    comparisons: tuple  # (label, model)
    table: tuple  # rows (label, p, (2/p), verdict at 2, verdict at ell, consistent)
    allowed: tuple  # values of (2/p) compatible with some comparison curve
    conclusion: str

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "variant": self.variant,
            "frey": self.frey.to_json(),
            "comparisons": [[lab, m.to_json()] for lab, m in self.comparisons],
            "table": [list(r) for r in self.table],
            "allowed": list(self.allowed),
            "conclusion": self.conclusion,
        }


def _isqrt_exact(n: int) -> Optional[int]:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def _is_prime(n: int) -> bool:
    from sympy import isprime

    return isprime(n)


_SAMPLE_P = (7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43)


def _chain(ell, variant):
    """(Frey stand-in, [(label, comparison model)], criterion at 2)."""
    if variant == 1:
        if ell == 3:
            # E1 with u = 7, v = 1, w = 2 (u - 3 v^2 = w^2); compared with 96a1
            return _y2_x3_ax2_bx(4, 7), [("96a1", WeierstrassModel(0, 1, 0, -2, 0))], crit_e8
        if ell == 5:
            # E2 with w = 2, v = 1; compared with 160a1
            return _y2_x3_ax2_bx(4, -5), [("160a1", WeierstrassModel(0, 1, 0, -6, 4))], crit_e8
        if ell % 8 != 5:
            raise HypothesisFailed(f"{ell} is not 5 mod 8")
        s = _isqrt_exact(ell - 1)
        if s is None:
            raise HypothesisFailed(f"{ell} - 1 is not a square")
        if ell < 29:
            raise HypothesisFailed("the general chain needs ell >= 29")
        return _y2_x3_ax2_bx(4, -ell), [("F", _y2_x3_ax2_bx(2 * s, -1))], crit_e8
    if variant == 2:
        if ell % 8 != 3:
            raise HypothesisFailed(f"{ell} is not 3 mod 8")
        s = _isqrt_exact(ell - 2)
        if s is None:
            raise HypothesisFailed(f"{ell} - 2 is not a square")
        if ell < 29:
            raise HypothesisFailed("the chain needs ell >= 29")
        # E2 with v = 1, w = 1, u = 1 + 2 ell
        frey = _y2_x3_ax2_bx(2, 1 + 2 * ell)
        comps = [("F1", _y2_x3_ax2_bx(2 * s, ell)), ("F2", _y2_x3_ax2_bx(2 * s, -2))]
        return frey, comps, crit_e24
    raise ValueError("variant must be 1 or 2")


def hyperelliptic_parity_argument(ell: int, variant: int = 1) -> ParityResult:
    """Which values of (2/p) survive the two local criteria for the Frey curve.

    For each comparison curve F allowed by the classification of curves with a
    rational 2-torsion point, and for sample primes p of both parities of (2/p),
    the criterion at 2 and the multiplicative criterion at ell are evaluated; a
    parity survives only if both agree for some F.
    """
    if not _is_prime(ell):
        raise HypothesisFailed(f"{ell} is not prime")
    frey, comps, crit2 = _chain(ell, variant)
    rows, allowed = [], set()
    for label, F in comps:
        for p in _SAMPLE_P:
            if p == ell:
                continue
            v2 = crit2(local_input(frey, F, 2, p)).outcome
            vl = crit_pot_mult(local_input(frey, F, ell, p)).outcome
            ok = v2 == vl
            s = legendre(2, p)
            rows.append((label, p, s, v2, vl, ok))
            if ok:
                allowed.add(s)
    conclusion = FORCED if allowed == {1} else NOT_FORCED
    return ParityResult(ell, variant, frey, tuple(comps), tuple(rows), tuple(sorted(allowed)), conclusion)


__all__ = [
    "FreySpec", "frey_x2y3zp", "frey_residual", "frey_hyperelliptic", "frey_triple",
    "level_lowering_congruence", "least_nonresidue", "ScanRecord", "ScanReport",
    "scan_residual_pairs", "ELIMINATED", "NOT_ELIMINATED", "ParityResult",
    "hyperelliptic_parity_argument", "FORCED", "NOT_FORCED", "SYMPLECTIC",
]
