import json

import pytest

from symcrit.curve_core import WeierstrassModel, standard_invariants
from symcrit.diophantine import (
    ELIMINATED,
    FORCED,
    NOT_ELIMINATED,
    _scan_cells,
    frey_hyperelliptic,
    frey_residual,
    frey_triple,
    frey_x2y3zp,
    hyperelliptic_parity_argument,
    least_nonresidue,
    level_lowering_congruence,
    scan_residual_pairs,
)
from symcrit.errors import DegenerateFrey, EquationViolated, GcdViolated, HypothesisFailed
from symcrit.goodred import frob_class, frobenius_data, reduce_at, residual_iso_check


def test_frey_x2y3zp_invariants():
    s = frey_x2y3zp(3, -2)  # 9 - 8 = 1
    assert (s.c4, s.c6) == (288, 1728 * 3)
    assert s.disc == -1728 * (9 - 8)
    assert s.model.ainvs == (0, 0, 0, -6, -6)
    assert s.notes == ()
    assert frey_x2y3zp(2, 2).notes == ("gcd(a, b) != 1",)
    with pytest.raises(DegenerateFrey):
        frey_x2y3zp(8, -4)


def test_frey_residual():
    assert frey_residual(2, 4, 1, 5) == (0, 0, 0, 2, 1)
    assert frey_residual(2, 4, 2, 5) == (0, 0, 0, 3, 3)


def test_hyper_e1():
    # 5^3 - 109 = 16
    s = frey_hyperelliptic(5, 1, 4, 109, 3, "hyper_E1")
    assert s.model.ainvs == (0, 8, 0, 125, 0)
    assert s.disc == -64 * 109 * 5 ** 6
    s2 = frey_hyperelliptic(5, 1, 4, 109, 3, "hyper_E2")
    assert s2.model.ainvs == (0, 8, 0, -109, 0)
    assert isinstance(frey_triple(s), tuple)


def test_hyper2_e2():
    # 2*13*(-1) + 27 = 1
    s = frey_hyperelliptic(3, 1, 1, 13, 3, "hyper2_E2")
    assert s.model.ainvs == (0, 2, 0, 27, 0)


def test_hyper_errors():
    with pytest.raises(GcdViolated):
        frey_hyperelliptic(2, 2, 1, 3, 3, "hyper_E1")
    with pytest.raises(EquationViolated):
        frey_hyperelliptic(5, 1, 3, 109, 3, "hyper_E1")
    with pytest.raises(EquationViolated):
        # even u: 4^3 - 63 = 1
        frey_hyperelliptic(4, 1, 1, 63, 3, "hyper_E1")
    with pytest.raises(EquationViolated):
        # u = 3 mod 4 with v odd: 3^3 - 2 = 25
        frey_hyperelliptic(3, 1, 5, 2, 3, "hyper_E1")
    with pytest.raises(EquationViolated):
        # v odd needs u = -1 mod 4: 5^3 - 2*62 = 1
        frey_hyperelliptic(5, 1, 1, 62, 3, "hyper2_E2")
    with pytest.raises(ValueError):
        frey_hyperelliptic(5, 1, 4, 109, 3, "other")


def test_level_lowering():
    assert level_lowering_congruence(-1, 5, 19) is False
    assert level_lowering_congruence(6, 5, 19) is True
    assert level_lowering_congruence(-6 + 19, 5, 19) is True


def test_least_nonresidue():
    assert [least_nonresidue(q) for q in (5, 7, 13, 31)] == [2, 3, 2, 3]


SCANS = [
    (19, "864a1", 5, 4),
    (19, "864b1", 7, 6),
    (43, "864a1", 31, 30),
    (43, "864b1", 13, 12),
    (67, "864b1", 19, 18),
]


@pytest.mark.parametrize("p,tag,ell,n", SCANS)
def test_scan_eliminates(curve, p, tag, ell, n):
    rep = scan_residual_pairs(curve(tag), ell, p, tag)
    assert rep.verdict == ELIMINATED, rep.reasons
    assert len(rep.matches) == n
    assert rep.order_condition and not rep.level_lowering
    assert rep.survivors == []


@pytest.mark.parametrize("ainvs,triples", [
    ((0, 0, 0, -243, 4374), [(19, 5, 4), (43, 31, 30)]),
    ((0, 0, 0, -24, 48), [(19, 7, 6), (43, 13, 12), (67, 19, 18)]),
])
def test_scan_alternative_864_models(ainvs, triples):
    # other short models of conductor 864 sharing the fixtures' local data
    from symcrit.curve_core import conductor

    W = WeierstrassModel(*ainvs)
    assert conductor(W) == 864
    for p, ell, n in triples:
        rep = scan_residual_pairs(W, ell, p)
        assert rep.verdict == ELIMINATED and len(rep.matches) == n


def test_scan_864a1_details(curve):
    rep = scan_residual_pairs(curve("864a1"), 5, 19, "864a1")
    assert rep.match_keys == [(1, 2, 4), (1, 3, 4), (2, 1, 1), (2, 4, 1)]
    assert rep.w_matrix == ((9, 0), (1, 9))
    assert rep.w_residual == (0, 0, 0, 2, 1)


def test_scan_not_eliminated(curve):
    rep = scan_residual_pairs(curve("54a1"), 47, 19, "54a1")
    assert rep.verdict == NOT_ELIMINATED
    assert len(rep.survivors) == 276


def test_scan_closed_under_scaling(curve):
    # (a, b) -> (a s^6, b s^4) rescales the Frey curve by s
    ell = 13
    rep = scan_residual_pairs(curve("864b1"), ell, 43)
    keys = set(rep.match_keys)
    for d, a, b in keys:
        for s in range(1, ell):
            assert (d, a * s ** 6 % ell, b * s ** 4 % ell) in keys


def test_scan_other_nonresidue(curve):
    W = curve("864b1")
    ell, p = 13, 43
    w_res = reduce_at(W, ell)
    w_class = frob_class(frobenius_data(W, ell), p)
    n = least_nonresidue(ell)
    base = _scan_cells((ell, p, n, list(range(ell)), w_class, w_res))
    other = _scan_cells((ell, p, n * 9 % ell, list(range(ell)), w_class, w_res))
    assert len(base) == len(other)
    assert all(r.iso for r in other)
    for r in other:
        assert any(residual_iso_check(r.residual, s.residual, ell) for s in base)


def test_scan_jobs_parity(curve):
    one = scan_residual_pairs(curve("864b1"), 7, 19)
    two = scan_residual_pairs(curve("864b1"), 7, 19, jobs=2)
    assert one.to_json() == two.to_json()


def test_scan_json(curve):
    rep = scan_residual_pairs(curve("864a1"), 5, 19, "864a1")
    back = json.loads(json.dumps(rep.to_json()))
    assert back["verdict"] == ELIMINATED and back["w"] == "864a1"
    assert back["w_matrix"] == [[9, 0], [1, 9]]


def test_scan_small_ell():
    with pytest.raises(ValueError):
        scan_residual_pairs(WeierstrassModel(0, 0, 0, 1, 1), 3, 19)


@pytest.mark.parametrize("ell,variant", [(3, 1), (5, 1), (37, 1), (83, 2)])
def test_parity_forced(ell, variant):
    res = hyperelliptic_parity_argument(ell, variant)
    assert res.conclusion == FORCED
    assert res.allowed == (1,)
    assert any(row[5] for row in res.table)
    assert all(not row[5] for row in res.table if row[2] == -1)
    json.dumps(res.to_json())


@pytest.mark.parametrize("ell,variant", [(29, 1), (53, 1), (13, 1), (7, 1), (11, 2), (15, 1), (19, 2), (5, 3)])
def test_parity_hypotheses(ell, variant):
    with pytest.raises((HypothesisFailed, ValueError)):
        hyperelliptic_parity_argument(ell, variant)
