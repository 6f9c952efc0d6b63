import re
from fractions import Fraction

import pytest

from symcrit.curve_core import (
    WeierstrassModel,
    conductor,
    inverse_transform,
    legendre,
    minimal_discriminant,
    minimal_model_at,
    quadratic_twist,
    standard_invariants,
    tilde_parts,
    transform,
)
from symcrit.errors import InputError, SingularModel, ZeroInput, ZeroScale, ZeroTwist
from symcrit.fixtures import labels, load_curve, parse_curve


def test_frey_shape_invariants():
    # y^2 = x^3 + 3bx - 2a has c4 = -144 b and c6 = 1728 a
    for a, b in [(1, 1), (3, -2), (-5, 7)]:
        inv = standard_invariants(WeierstrassModel(0, 0, 0, 3 * b, -2 * a))
        assert inv.c4 == -144 * b
        assert inv.c6 == 1728 * a
        assert inv.disc == -1728 * (a * a + b ** 3)


def test_singular_model():
    with pytest.raises(SingularModel):
        standard_invariants(WeierstrassModel(0, 0, 0, 0, 0))


def test_x3_plus_x():
    inv = standard_invariants(WeierstrassModel.from_list([1, 0]))
    assert (inv.c4, inv.c6, inv.disc) == (-48, 0, -64)
    assert inv.j == 1728


def test_transform_identity_and_scaling():
    E = WeierstrassModel(1, -1, 0, 12, 8)
    assert transform(E, 1, 0, 0, 0) == E
    E2 = transform(WeierstrassModel.from_list([1, 0]), 2, 0, 0, 0)
    assert E2.a4 == Fraction(1, 16)
    assert standard_invariants(E2).c4 == -3
    with pytest.raises(ZeroScale):
        transform(E, 0, 1, 1, 1)


def test_transform_round_trip():
    E = WeierstrassModel(1, -1, 1, -3, 5)
    params = (3, 2, -1, 7)
    back = transform(transform(E, *params), *inverse_transform(*params))
    assert back == E


def test_twist_laws():
    E = WeierstrassModel.from_list([1, 0])
    inv = standard_invariants(E)
    assert standard_invariants(quadratic_twist(E, 1)).j == inv.j
    T = quadratic_twist(E, -1)
    ti = standard_invariants(T)
    assert (ti.c4, ti.c6) == (-48, 0)
    E = load_curve("54a1")
    inv = standard_invariants(E)
    for d in (-1, 5, -6):
        ti = standard_invariants(quadratic_twist(E, d))
        assert (ti.c4, ti.c6, ti.disc) == (d * d * inv.c4, d ** 3 * inv.c6, d ** 6 * inv.disc)
        back = standard_invariants(quadratic_twist(quadratic_twist(E, d), d))
        assert back.j == inv.j and back.c4 == d ** 4 * inv.c4
    with pytest.raises(ZeroTwist):
        quadratic_twist(E, 0)


def test_tilde_parts():
    assert tilde_parts(-1024, 3, 1) == (0, 2)
    assert tilde_parts(-1024, 3, 3) == (0, -1024 % 27)
    assert tilde_parts(7, 7) == (1, 1)
    assert tilde_parts(552064, 23) == (0, 552064 % 23)
    assert tilde_parts(2 ** 5 * 3, 2, 3) == (5, 3)
    with pytest.raises(ZeroInput):
        tilde_parts(0, 5)


def test_legendre_values():
    assert legendre(3, 7) == -1
    assert legendre(2, 11) == -1
    assert legendre(1, 13) == 1
    assert legendre(26, 13) == 0


def test_minimal_model_b3_row():
    # 648a1 is minimal at 3 with triple (2, 3, 4)
    mm, loc = minimal_model_at(load_curve("648a1"), 3)
    assert loc.triple == (2, 3, 4)
    mm2, loc2 = minimal_model_at(mm, 3)
    assert mm2 == mm and loc2.triple == loc.triple


def test_minimal_model_recovers_scaled():
    E = load_curve("864b1")
    _, loc = minimal_model_at(E, 2)
    big = transform(E, Fraction(1, 2), 0, 0, 0)  # u = 1/2 multiplies a4 by 16
    assert big.is_integral()
    assert standard_invariants(big).c4 == 2 ** 4 * standard_invariants(E).c4
    mm, loc2 = minimal_model_at(big, 2)
    assert loc2.triple == loc.triple
    assert loc2.conductor_exponent == loc.conductor_exponent


@pytest.mark.parametrize("label", labels())
def test_fixture_conductors_match_labels(label):
    n = int(re.match(r"\d+", label).group())
    assert conductor(load_curve(label)) == n


def test_fixture_discriminants():
    # spot values quoted in the worked examples
    assert minimal_discriminant(load_curve("12696e1")) == -(2 ** 11) * 3 ** 3 * 23 ** 8
    assert minimal_discriminant(load_curve("12696f1")) == -(2 ** 8) * 3 ** 5 * 23 ** 4
    assert minimal_discriminant(load_curve("648a1")) == -(2 ** 10) * 3 ** 4
    _, loc = minimal_model_at(load_curve("648a1"), 3)
    assert loc.disc // 3 ** loc.v_disc == -1024
    assert loc.c6 // 3 ** loc.v_c6 == -448


def test_parse_curve():
    assert parse_curve("[1,2]") == WeierstrassModel(0, 0, 0, 1, 2)
    assert parse_curve("864a1") == load_curve("864a1")
    with pytest.raises(InputError):
        parse_curve("[1,2,3]")
    with pytest.raises(InputError):
        parse_curve("nope")
    with pytest.raises(InputError):
        parse_curve("[1.5, 2]")
