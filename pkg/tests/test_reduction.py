import pytest

from symcrit.curve_core import WeierstrassModel, minimal_model_at, quadratic_twist
from symcrit.diophantine import frey_x2y3zp
from symcrit.errors import TableMiss, UnclassifiedReduction
from symcrit.fixtures import load_curve
from symcrit.reduction import (
    GOOD,
    MULT,
    POT_GOOD,
    POT_MULT,
    classify,
    classify_local,
    criterion_prime_list,
    inertial_field_tag,
    semistability_defect,
    table_case,
)


def test_multiplicative_at_3_case_c():
    rc = classify(load_curve("12696f1"), 3)
    assert rc.kind == MULT and rc.conductor_exponent == 1
    assert rc.local.v_disc == 5


def test_good():
    rc = classify(load_curve("864a1"), 5)
    assert rc.kind == GOOD and rc.e == 1 and rc.inertia == "C1"


def test_frey_multiplicative():
    # 2^2 + 1^3 = 5, so the Frey curve of (2, 1) is multiplicative at 5
    rc = classify(frey_x2y3zp(2, 1).model, 5)
    assert rc.kind == MULT


def test_tame_e3_at_23():
    rc = classify(load_curve("2116a1"), 23)
    assert rc.local.v_disc == 8
    assert rc.kind == POT_GOOD and rc.e == 3 and rc.inertia == "C3"
    assert semistability_defect(rc.local) == 3


def test_e2_from_twist_of_good():
    E = quadratic_twist(load_curve("864a1"), 5)
    rc = classify(E, 5)
    assert rc.local.v_disc == 6
    assert (rc.e, rc.twist) == (2, 5)
    assert classify(quadratic_twist(E, rc.twist), 5).kind == GOOD


def test_e6_twists_to_e3():
    E = quadratic_twist(load_curve("2116a1"), 23)
    rc = classify(E, 23)
    assert rc.e == 6 and rc.inertia == "C6"
    back = classify(quadratic_twist(E, rc.twist), 23)
    assert back.e == 3


def test_e4_at_large_prime():
    # y^2 = x^3 + 7x has v_7(disc) = 3
    rc = classify(WeierstrassModel.from_list([7, 0]), 7)
    assert (rc.local.v_disc, rc.e, rc.inertia) == (3, 4, "C4")


def test_e24_at_2():
    for label in ("648a1", "12696e1", "12696f1", "4536c1"):
        rc = classify(load_curve(label), 2)
        assert rc.e == 24 and rc.inertia == "SL2F3", label


def test_wild_e3_rows():
    for label in ("648a1", "12312a1"):
        rc = classify(load_curve(label), 3)
        assert rc.e == 3 and rc.case == "B3"
        assert inertial_field_tag(rc.local, 3, rc.conductor_exponent) == "k1"


def test_potentially_multiplicative():
    E = quadratic_twist(load_curve("12696f1"), 3)
    rc = classify(E, 3)
    assert rc.kind == POT_MULT and rc.inertia == "C2"
    assert rc.conductor_exponent == 2
    back = classify(quadratic_twist(E, rc.twist), 3)
    assert back.kind == MULT and back.local.v_disc == 5


def test_table_case_none_for_good():
    _, loc = minimal_model_at(load_curve("864a1"), 5)
    assert table_case(loc) is None


def test_tag_requires_row():
    _, loc = minimal_model_at(load_curve("2116a1"), 2)
    with pytest.raises(TableMiss):
        inertial_field_tag(loc, 8, loc.conductor_exponent)


def test_pot_mult_has_no_defect():
    _, loc = minimal_model_at(load_curve("12696f1"), 3)
    with pytest.raises(UnclassifiedReduction):
        semistability_defect(loc)


def test_prime_list_case_b():
    entries = {e.prime: e for e in criterion_prime_list(load_curve("648a1"), load_curve("12312a1"), 7)}
    assert entries[3].criterion == "wild-e3"
    assert entries[2].criterion == "e24"
    assert entries[19].criterion is None


def test_prime_list_case_g():
    entries = {e.prime: e for e in criterion_prime_list(load_curve("3675k1"), load_curve("47775cq1"), 17)}
    assert (entries[5].criterion, entries[5].twist) == ("tame-e3", 5)
    assert entries[3].criterion == "pot-mult"


def test_prime_list_good_primes_filtered():
    from symcrit.curve_core import legendre
    from symcrit.goodred import frob_order_condition, frobenius_data

    E = load_curve("864a1")
    entries = criterion_prime_list(E, E, 19, bound=60)
    good = [e.prime for e in entries if e.criterion == "good"]
    assert 5 in good
    for ell in good:
        assert legendre(ell, 19) == 1
        assert frob_order_condition(frobenius_data(E, ell), 19)
    # bad primes 2, 3 are always listed
    assert {2, 3} <= {e.prime for e in entries}


def test_prime_list_empty_good_part():
    E = load_curve("864a1")
    entries = criterion_prime_list(E, E, 19, bound=4)
    assert [e for e in entries if e.criterion == "good"] == []


def test_prime_list_rejects_p2():
    with pytest.raises(ValueError):
        criterion_prime_list(load_curve("54a1"), load_curve("54a1"), 2)


def test_classify_json():
    d = classify(load_curve("648a1"), 3).to_json()
    assert d["e"] == 3 and d["local"]["v_disc"] == 4
