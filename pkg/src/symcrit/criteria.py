"""Local symplectic criteria, the existence gate and the (E, E', p) orchestrator."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import gl2
from .curve_core import (
    LocalInvariants,
    WeierstrassModel,
    legendre,
    minimal_model_at,
    quadratic_twist,
)
from .errors import (
    DegreeDivisibleByP,
    InconsistentPair,
    PreconditionFailed,
    SymcritError,
    TableMiss,
)
from .goodred import (
    FrobeniusData,
    frob_order_condition,
    frobenius_data_from_reduction,
    reduce_at,
    residual_iso_check,
)
from .reduction import (
    GOOD,
    MULT,
    POT_GOOD,
    PrimeEntry,
    ReductionClass,
    classify_local,
    criterion_prime_list,
    inertial_field_tag,
    table_case,
)

SYMPLECTIC = "Symplectic"
ANTI = "AntiSymplectic"
BOTH = "BothPossible"
NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class Witness:
    prime: int
    criterion: str
    r: Optional[int] = None
    t: Optional[int] = None


@dataclass(frozen=True)
class SymplecticVerdict:
    outcome: str
    reason: Optional[str] = None
    witness: Optional[Witness] = None
    assumptions: tuple = ()

    @property
    def determined(self) -> bool:
        return self.outcome in (SYMPLECTIC, ANTI)

    def to_json(self) -> dict:
        w = self.witness
        return {
            "prime": w.prime if w else None,
            "criterion": w.criterion if w else None,
            "r": w.r if w else None,
            "t": w.t if w else None,
            "outcome": self.outcome,
            "reason": self.reason,
            "assumptions": list(self.assumptions),
        }


def _verdict(sym: bool, ell: int, cid: str, r=None, t=None, assumptions=()) -> SymplecticVerdict:
    return SymplecticVerdict(SYMPLECTIC if sym else ANTI, None, Witness(ell, cid, r, t), tuple(assumptions))


@dataclass(frozen=True)
class CriterionInput:
    """Local data of both curves at one prime, after any common twist."""

    prime: int
    p: int
    local1: LocalInvariants
    local2: LocalInvariants
    class1: ReductionClass
    class2: ReductionClass
    frob1: Optional[FrobeniusData] = None
    frob2: Optional[FrobeniusData] = None
    residual1: Optional[tuple] = None
    residual2: Optional[tuple] = None
    same_inertial_field: bool = False
    twist: int = 1
    notes: tuple = field(default=())


def local_input(E: WeierstrassModel, E2: WeierstrassModel, ell: int, p: int,
                twist: int = 1, same_inertial_field: bool = True) -> CriterionInput:
    """Bundle the local data; both curves are twisted by ``twist`` first."""
    notes = ()
    if twist != 1:
        E, E2 = quadratic_twist(E, twist), quadratic_twist(E2, twist)
        notes = (f"both curves twisted by {twist}",)
    m1, l1 = minimal_model_at(E, ell)
    m2, l2 = minimal_model_at(E2, ell)
    c1, c2 = classify_local(l1), classify_local(l2)
    f1 = f2 = r1 = r2 = None
    if c1.kind == GOOD and c2.kind == GOOD:
        r1, r2 = reduce_at(m1, ell), reduce_at(m2, ell)
        f1, f2 = frobenius_data_from_reduction(r1, ell), frobenius_data_from_reduction(r2, ell)
    return CriterionInput(ell, p, l1, l2, c1, c2, f1, f2, r1, r2, same_inertial_field, twist, notes)


# ---------------------------------------------------------------- helpers


def _need(cond: bool, msg: str):
    if not cond:
        raise PreconditionFailed(msg)


def _odd_prime_p(inp: CriterionInput, least: int = 3):
    _need(inp.p >= least and inp.p % 2 == 1, f"p must be an odd prime >= {least}")
    _need(inp.p != inp.prime, "p must differ from ell")


def _pot_good_e(inp: CriterionInput, e: int):
    for c in (inp.class1, inp.class2):
        _need(c.kind == POT_GOOD and c.e == e, f"both curves need e = {e} (got {c.kind}, e = {c.e})")


def has_rational_3torsion_local(loc: LocalInvariants) -> bool:
    """Whether a tame e = 3 curve over Q_ell (ell != 3) has a 3-torsion point."""
    ell = loc.prime
    if ell == 3:
        raise ValueError("ell = 3 is the wild case")
    if ell >= 5:
        return legendre(-6 * loc.res("c6", ell), ell) == 1
    tri = loc.triple
    if tri == (4, 5, 4):
        return (loc.res("c4", 8), loc.res("c6", 8)) in ((7, 1), (3, 5))
    if (tri[1:] == (5, 4) and tri[0] >= 6) or (tri[1:] == (7, 8) and tri[0] >= 7):
        return loc.res("c6", 8) == 5
    if tri == (4, 6, 8):
        return (loc.res("c4", 32), loc.res("c6", 16)) in ((29, 15), (5, 3), (13, 7), (21, 11))
    raise PreconditionFailed(f"triple {tri} is not a tame e = 3 triple at 2")


# ---------------------------------------------------------------- criteria


def crit_tame3(inp: CriterionInput) -> SymplecticVerdict:
    ell, p = inp.prime, inp.p
    _need(ell % 3 == 2, "needs ell = 2 mod 3")
    _odd_prime_p(inp)
    _pot_good_e(inp, 3)
    r = int(inp.local1.v_disc % 3 != inp.local2.v_disc % 3)
    t = int(has_rational_3torsion_local(inp.local1) != has_rational_3torsion_local(inp.local2))
    if p == 3 and t:
        raise InconsistentPair("isomorphic E[3] force equal 3-torsion behaviour")
    val = legendre(ell, p) ** r * (legendre(3, p) ** t if t else 1)
    return _verdict(val == 1, ell, "tame-e3", r, t)


def crit_e3_p3(inp: CriterionInput) -> SymplecticVerdict:
    ell = inp.prime
    _need(ell % 3 == 1, "needs ell = 1 mod 3")
    _need(inp.p == 3, "needs p = 3")
    _pot_good_e(inp, 3)
    r = int(inp.local1.v_disc % 3 != inp.local2.v_disc % 3)
    return _verdict(r == 0, ell, "e3-p3", r)


_WILD3 = {(2, 3, 4), (5, 8, 12)}


def crit_wild3(inp: CriterionInput) -> SymplecticVerdict:
    _need(inp.prime == 3, "needs ell = 3")
    _odd_prime_p(inp, 5)
    for loc in (inp.local1, inp.local2):
        _need(loc.triple in _WILD3, f"triple {loc.triple} not in {sorted(_WILD3)}")
    _need(inp.local1.res("disc", 3) == 2, "needs disc~ = 2 mod 3")
    if inp.local2.res("disc", 3) != 2:
        raise InconsistentPair("disc~' must also be 2 mod 3")
    r = int(inp.local1.res("c6", 3) != inp.local2.res("c6", 3))
    return _verdict(legendre(3, inp.p) ** r == 1, 3, "wild-e3", r)


def crit_tame4(inp: CriterionInput) -> SymplecticVerdict:
    ell, p = inp.prime, inp.p
    _need(ell % 4 == 3, "needs ell = 3 mod 4")
    _odd_prime_p(inp, 5)
    _pot_good_e(inp, 4)
    r = int(inp.local1.v_disc % 4 != inp.local2.v_disc % 4)
    sq1 = legendre(inp.local1.res("disc", ell), ell) == 1
    sq2 = legendre(inp.local2.res("disc", ell), ell) == 1
    t = int(sq1 != sq2)
    val = legendre(ell, p) ** r * legendre(2, p) ** t
    return _verdict(val == 1, ell, "tame-e4", r, t)


_WILD4 = {(5, 8, 9), (7, 11, 15)}


def _c4_5disc(loc) -> bool:
    return (loc.res("c4", 8) - 5 * loc.res("disc", 8)) % 8 == 0


def crit_wild4(inp: CriterionInput) -> SymplecticVerdict:
    _need(inp.prime == 2, "needs ell = 2")
    _odd_prime_p(inp)
    for loc in (inp.local1, inp.local2):
        _need(loc.triple in _WILD4, f"triple {loc.triple} not in {sorted(_WILD4)}")
    _need(_c4_5disc(inp.local1), "needs c4~ = 5 disc~ mod 8")
    if not _c4_5disc(inp.local2):
        raise InconsistentPair("c4~' = 5 disc~' mod 8 must also hold")
    r = int(inp.local1.res("c6", 4) != inp.local2.res("c6", 4))
    return _verdict(legendre(2, inp.p) ** r == 1, 2, "wild-e4", r)


def crit_e24(inp: CriterionInput, same_inertial_field: Optional[bool] = None) -> SymplecticVerdict:
    _need(inp.prime == 2, "needs ell = 2")
    _odd_prime_p(inp)
    _pot_good_e(inp, 24)
    same = inp.same_inertial_field if same_inertial_field is None else same_inertial_field
    _need(bool(same), "same inertial field must be asserted")
    note = ("same inertial field asserted by caller",)
    if legendre(2, inp.p) == 1:
        return _verdict(True, 2, "e24", None, None, note)
    r = int(inp.local1.v_disc % 3 != inp.local2.v_disc % 3)
    return _verdict(r == 0, 2, "e24", r, None, note)


_E8_GROUPS = {"Da": "a", "Dc": "a", "Db": "b", "Dd": "b"}
_E12_GROUPS = {"Ga": "a", "Gc": "a", "Gf": "a", "Gb": "b", "Gd": "b", "Ge": "b",
          "Gg": "c", "Gj": "c", "Gh": "d", "Gi": "d"}


def _case(loc: LocalInvariants, groups: dict) -> str:
    row = table_case(loc)
    if row is None or row.name not in groups:
        raise TableMiss(f"triple {loc.triple} (f = {loc.conductor_exponent}) is in no case")
    return groups[row.name]


def crit_e8(inp: CriterionInput) -> SymplecticVerdict:
    _need(inp.prime == 2, "needs ell = 2")
    _odd_prime_p(inp)
    _pot_good_e(inp, 8)
    l1, l2 = inp.local1, inp.local2
    notes = []
    if 6 in (l1.conductor_exponent, l2.conductor_exponent):
        from .reduction import twisted_local

        l1, l2 = twisted_local(l1, 2), twisted_local(l2, 2)
        notes.append("both curves twisted by 2 to leave conductor 2^6")
    f1, f2 = l1.conductor_exponent, l2.conductor_exponent
    _need(f1 == f2 and f1 in (5, 8), f"conductor exponents {f1}, {f2} are not both 5 or both 8")
    if inertial_field_tag(l1, 8, f1) != inertial_field_tag(l2, 8, f2):
        raise PreconditionFailed("curves have different inertial fields")
    if legendre(2, inp.p) == 1:
        return _verdict(True, 2, "e8", assumptions=notes)
    if f1 == 5:
        same = _case(l1, _E8_GROUPS) == _case(l2, _E8_GROUPS)
    else:
        same = l1.res("c4", 4) == l2.res("c4", 4)
    return _verdict(same, 2, "e8", int(not same), None, notes)


def crit_e12(inp: CriterionInput) -> SymplecticVerdict:
    _need(inp.prime == 3, "needs ell = 3")
    _odd_prime_p(inp, 5)
    _pot_good_e(inp, 12)
    l1, l2 = inp.local1, inp.local2
    if inertial_field_tag(l1, 12, l1.conductor_exponent) != inertial_field_tag(l2, 12, l2.conductor_exponent):
        raise PreconditionFailed("curves have different inertial fields")
    if legendre(3, inp.p) == 1:
        return _verdict(True, 3, "e12")
    same = _case(l1, _E12_GROUPS) == _case(l2, _E12_GROUPS)
    return _verdict(same, 3, "e12", int(not same))


def crit_good(inp: CriterionInput) -> SymplecticVerdict:
    ell, p = inp.prime, inp.p
    _odd_prime_p(inp)
    _need(inp.class1.kind == GOOD and inp.class2.kind == GOOD, "needs good reduction for both")
    fd = inp.frob1
    _need(fd.disc % p == 0, f"p does not divide Delta_ell = {fd.disc}")
    _need(fd.beta % p != 0, f"p divides beta_ell = {fd.beta}")
    _need(residual_iso_check(inp.residual1, inp.residual2, ell), "residual curves are not isomorphic")
    return _verdict(True, ell, "good")


def crit_pot_mult(inp: CriterionInput) -> SymplecticVerdict:
    ell, p = inp.prime, inp.p
    _odd_prime_p(inp)
    _need(inp.class1.kind == MULT and inp.class2.kind == MULT, "needs multiplicative reduction for both")
    v1, v2 = inp.local1.v_disc, inp.local2.v_disc
    _need(v1 % p != 0, "p divides v(disc)")
    if v2 % p == 0:
        raise InconsistentPair("p divides v(disc') but not v(disc)")
    ratio = v1 * pow(v2, -1, p) % p
    return _verdict(legendre(ratio, p) == 1, ell, "pot-mult", r=ratio)


DISPATCH = {
    "good": crit_good,
    "tame-e3": crit_tame3,
    "e3-p3": crit_e3_p3,
    "wild-e3": crit_wild3,
    "tame-e4": crit_tame4,
    "wild-e4": crit_wild4,
    "e8": crit_e8,
    "e12": crit_e12,
    "e24": crit_e24,
    "pot-mult": crit_pot_mult,
}


def run_criterion(cid: str, inp: CriterionInput) -> SymplecticVerdict:
    """Apply one criterion, turning a failed precondition into NotApplicable."""
    try:
        v = DISPATCH[cid](inp)
    except PreconditionFailed as exc:
        return SymplecticVerdict(NOT_APPLICABLE, f"{cid}: {exc}")
    if inp.notes:
        v = SymplecticVerdict(v.outcome, v.reason, v.witness, inp.notes + v.assumptions)
    return v


# ---------------------------------------------------------------- isogenies, existence


def isogeny_type(n: int, p: int) -> str:
    """Symplectic type of the isomorphism on p-torsion induced by an n-isogeny."""
    if n % p == 0:
        raise DegreeDivisibleByP(f"p = {p} divides the degree {n}")
    return SYMPLECTIC if legendre(n, p) == 1 else ANTI


EXISTS = "Exists"
EXISTS_NOT = "ExistsNot"


@dataclass(frozen=True)
class ExistenceReport:
    outcome: str
    pattern: Optional[str]  # "A" (non-abelian), "B" (unipotent-type cyclic) or None
    centralizer_order: int
    nonsquare_witness: Optional[tuple] = None

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "pattern": self.pattern,
            "centralizer_order": self.centralizer_order,
            "nonsquare_witness": self.nonsquare_witness,
        }


def _closure(gens, p):
    group = {gl2.identity(p)}
    frontier = list(group)
    while frontier:
        new = []
        for g in frontier:
            for h in gens:
                x = gl2.mul(g, h, p)
                if x not in group:
                    group.add(x)
                    new.append(x)
        frontier = new
    return group


def _is_unipotent_type(g, p) -> bool:
    """Non-scalar with a repeated eigenvalue, i.e. conjugate to [[a,1],[0,a]]."""
    tr, dt = gl2.trace(g, p), gl2.det(g, p)
    return not gl2.is_scalar(g) and (tr * tr - 4 * dt) % p == 0


def criterion_exists(generators, p: int) -> ExistenceReport:
    """Whether every centralizer element of <generators> has square determinant."""
    if p % 2 == 0 or p < 3:
        raise ValueError("p must be an odd prime")
    if p > 23:
        raise ValueError("criterion_exists is limited to p <= 23")
    gens = [gl2.mat(*g[0], *g[1], p) for g in generators]
    for g in gens:
        if gl2.det(g, p) == 0:
            raise ValueError("generators must be invertible")
    order, witness = 0, None
    for m in gl2.all_invertible(p):
        if all(gl2.mul(m, g, p) == gl2.mul(g, m, p) for g in gens):
            order += 1
            if witness is None and legendre(gl2.det(m, p), p) != 1:
                witness = m
    abelian = all(gl2.mul(a, b, p) == gl2.mul(b, a, p) for a in gens for b in gens)
    pattern = None
    if not abelian:
        pattern = "A"
    else:
        group = _closure(gens, p)
        if any(_is_unipotent_type(g, p) and len(_closure([g], p)) == len(group) for g in group):
            pattern = "B"
    return ExistenceReport(EXISTS if witness is None else EXISTS_NOT, pattern, order, witness)


# ---------------------------------------------------------------- orchestrator


@dataclass(frozen=True)
class PrimeVerdict:
    prime: int
    criterion: Optional[str]
    verdict: Optional[SymplecticVerdict]
    error: Optional[str] = None

    def to_json(self) -> dict:
        out = {"prime": self.prime, "criterion": self.criterion, "error": self.error}
        if self.verdict is not None:
            out.update({k: v for k, v in self.verdict.to_json().items() if k not in ("prime", "criterion")})
        else:
            out.update({"outcome": NOT_APPLICABLE, "r": None, "t": None, "reason": self.error, "assumptions": []})
        return out


@dataclass(frozen=True)
class CompareReport:
    p: int
    entries: tuple
    consensus: str

    def to_json(self) -> dict:
        return {"p": self.p, "entries": [e.to_json() for e in self.entries], "consensus": self.consensus}

    def at(self, ell: int) -> PrimeVerdict:
        for e in self.entries:
            if e.prime == ell:
                return e
        raise KeyError(ell)


INCONSISTENT = "Inconsistent"
UNDETERMINED = "Undetermined"


def _evaluate(E, E2, entry: PrimeEntry, p: int, same_inertial_field: bool) -> PrimeVerdict:
    if entry.criterion is None:
        return PrimeVerdict(entry.prime, None, SymplecticVerdict(NOT_APPLICABLE, entry.reason))
    try:
        inp = local_input(E, E2, entry.prime, p, entry.twist, same_inertial_field)
        return PrimeVerdict(entry.prime, entry.criterion, run_criterion(entry.criterion, inp))
    except SymcritError as exc:
        return PrimeVerdict(entry.prime, entry.criterion, None, f"{type(exc).__name__}: {exc}")


def compare(E: WeierstrassModel, E2: WeierstrassModel, p: int, bound: int = 0,
            extra_primes=(), same_inertial_field: bool = True, jobs: int = 1) -> CompareReport:
    """Every local verdict for (E, E', p), assuming E[p] and E'[p] are isomorphic.

    The isomorphism assumption also gives equal inertial fields (the inertial
    field is cut out by E[p]), which the e = 24 criterion consumes.
    """
    entries = criterion_prime_list(E, E2, p, bound, extra_primes)
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(jobs) as ex:
            results = list(ex.map(lambda en: _evaluate(E, E2, en, p, same_inertial_field), entries))
    else:
        results = [_evaluate(E, E2, en, p, same_inertial_field) for en in entries]
    results.sort(key=lambda r: r.prime)
    outs = {r.verdict.outcome for r in results if r.verdict is not None and r.verdict.determined}
    if not outs:
        consensus = UNDETERMINED
    elif len(outs) == 1:
        consensus = outs.pop()
    else:
        consensus = INCONSISTENT
    return CompareReport(p, tuple(results), consensus)


__all__ = [
    "SYMPLECTIC", "ANTI", "BOTH", "NOT_APPLICABLE", "EXISTS", "EXISTS_NOT",
    "INCONSISTENT", "UNDETERMINED", "Witness", "SymplecticVerdict", "CriterionInput",
    "local_input", "has_rational_3torsion_local", "crit_tame3", "crit_e3_p3",
    "crit_wild3", "crit_tame4", "crit_wild4", "crit_e24", "crit_e8", "crit_e12",
    "crit_good", "crit_pot_mult", "run_criterion", "isogeny_type",
    "criterion_exists", "ExistenceReport", "PrimeVerdict", "CompareReport", "compare",
    "frob_order_condition",
]
