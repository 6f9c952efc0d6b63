import itertools

import pytest

from symcrit import gl2
from symcrit.curve_core import WeierstrassModel, quadratic_twist
from symcrit.errors import BadReduction, SingularReduction, UnsupportedReduction
from symcrit.fixtures import load_curve
from symcrit.goodred import (
    FrobeniusData,
    beta,
    count_points,
    frob_class,
    frob_matrix,
    frob_order_condition,
    frobenius_data,
    frobenius_data_from_reduction,
    hilbert_class_poly,
    j_mod,
    reduce_at,
    reduced_forms,
    residual_iso_check,
    residual_iso_exhaustive,
)


def _brute_count(ainvs, ell):
    a1, a2, a3, a4, a6 = ainvs
    n = 1
    for x, y in itertools.product(range(ell), repeat=2):
        if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % ell == 0:
            n += 1
    return n


def test_reduction_864a1_at_5():
    assert reduce_at(load_curve("864a1"), 5) == (0, 0, 0, 2, 1)
    fd = frobenius_data(load_curve("864a1"), 5)
    assert (fd.a, fd.disc, fd.beta, fd.j) == (-1, -19, 1, 4)
    assert 18 % 19 == fd.a % 19


def test_bad_reduction():
    with pytest.raises(BadReduction):
        reduce_at(load_curve("864a1"), 3)
    with pytest.raises(SingularReduction):
        count_points((0, 0, 0, 0, 0), 5)


def test_supersingular_f3():
    assert count_points((0, 0, 0, 1, 0), 3) == (4, 0)


@pytest.mark.parametrize("ell", [2, 3, 5, 7, 11, 13])
def test_count_matches_brute_force(ell):
    for ainvs in itertools.islice(itertools.product(range(ell), repeat=5), 0, None, 7 if ell <= 5 else 97):
        try:
            n, a = count_points(ainvs, ell)
        except SingularReduction:
            continue
        assert n == _brute_count(ainvs, ell)
        assert a * a <= 4 * ell


def test_twist_sign_law():
    E = load_curve("54a1")
    for ell in (5, 7, 11, 13):
        d = next(n for n in range(2, ell) if pow(n, (ell - 1) // 2, ell) == ell - 1)
        a = count_points(reduce_at(E, ell), ell)[1]
        at = count_points(reduce_at(quadratic_twist(E, d), ell), ell)[1]
        assert at == -a


@pytest.mark.parametrize(
    "D, coeffs",
    [
        (-3, (0, 1)),
        (-4, (-1728, 1)),
        (-7, (3375, 1)),
        (-19, (884736, 1)),
        (-12, (0, -54000, 1)),
        (-16, (496793088, -289224, 1)),
        (0, (0,)),
        (-5, (1,)),
        (-6, (1,)),
    ],
)
def test_class_polynomials(D, coeffs):
    assert hilbert_class_poly(D).coefficients == coeffs


def test_class_poly_strings():
    assert str(hilbert_class_poly(-4)) == "x - 1728"
    assert str(hilbert_class_poly(-12)) == "x^2 - 54000*x"
    assert str(hilbert_class_poly(-19)) == "x + 884736"


@pytest.mark.parametrize("D", [-3, -4, -7, -8, -11, -12, -15, -16, -20, -23, -27, -28, -36, -39, -47])
def test_class_poly_degree(D):
    deg = sum(len(reduced_forms(D // (g * g))) for g in range(1, 10)
              if D % (g * g) == 0 and (D // (g * g)) % 4 in (0, 1))
    P = hilbert_class_poly(D)
    assert P.degree == deg
    assert P.coefficients[-1] == 1


def test_class_poly_rejects_positive():
    with pytest.raises(ValueError):
        hilbert_class_poly(5)


def test_beta_examples():
    assert beta(4, -19, 5) == 1
    # j = 1728 curve y^2 = x^3 + x over F_5: a = 2, Delta = -16
    fd = frobenius_data_from_reduction((0, 0, 0, 1, 0), 5)
    assert fd.disc == -16 and fd.j == 1728 % 5
    assert fd.beta == 2  # x - 1728 vanishes at j = 1728 mod 5
    with pytest.raises(ValueError):
        beta(1, 4, 5)


def test_frob_matrix_diophantine():
    fd = FrobeniusData(5, -1, -19, 1, 4)
    assert frob_matrix(fd, 19) == ((9, 0), (1, 9))
    assert frob_order_condition(fd, 19)
    assert not frob_order_condition(fd, 7)


def test_frob_matrix_entries():
    # a = 2, ell = 7, Delta = -24, beta = 1, p = 5
    fd = FrobeniusData(7, 2, -24, 1, 0)
    m = frob_matrix(fd, 5)
    assert m == gl2.mat((2 + 24) * pow(2, -1, 5), -24 * 25 * pow(4, -1, 5), 1, (2 - 24) * pow(2, -1, 5), 5)
    assert gl2.trace(m, 5) == 2 and gl2.det(m, 5) == 2


def test_frob_matrix_unsupported():
    fd = FrobeniusData(5, 2, -16, 3, 3)  # p = 3 divides beta but not Delta
    with pytest.raises(UnsupportedReduction):
        frob_matrix(fd, 3)
    with pytest.raises(UnsupportedReduction):
        frob_class(fd, 3)


def test_scalar_frobenius_class():
    # search j = 1728 curves for one whose Frobenius is scalar mod p
    found = None
    for ell in (13, 17, 29, 37, 41):
        for a4 in range(1, ell):
            fd = frobenius_data_from_reduction((0, 0, 0, a4, 0), ell)
            for p in (3, 5, 7):
                if fd.beta % p == 0 and fd.disc % p == 0:
                    found = (fd, p)
    assert found is not None
    fd, p = found
    m = frob_class(fd, p)
    assert gl2.is_scalar(m)
    assert not frob_order_condition(fd, p)


def test_residual_iso():
    assert residual_iso_check((0, 0, 0, 2, 1), (0, 0, 0, 2, 1), 5)
    assert residual_iso_check((0, 0, 0, 2, 1), (0, 0, 0, 2, 4), 5)
    # nontrivial twist with a != 0 is not isomorphic
    e = (0, 0, 0, 2, 1)
    assert count_points(e, 5)[1] != 0
    tw = (0, 0, 0, 2 * 4 % 5, 1 * 8 % 5)  # twist by 2: a4 d^2, a6 d^3
    assert count_points(tw, 5)[1] == -count_points(e, 5)[1]
    assert not residual_iso_check(e, tw, 5)


@pytest.mark.parametrize("ell", [5, 7])
def test_residual_iso_fast_matches_exhaustive(ell):
    curves = [(0, 0, 0, a, b) for a in range(ell) for b in range(ell)
              if (4 * a ** 3 + 27 * b * b) % ell]
    for e1 in curves[::3]:
        for e2 in curves[::4]:
            assert residual_iso_check(e1, e2, ell) == residual_iso_exhaustive(e1, e2, ell)


def test_residual_iso_char_2_and_3():
    for ell in (2, 3):
        curves = []
        for c in itertools.product(range(ell), repeat=5):
            try:
                j_mod(c, ell)
                curves.append(c)
            except SingularReduction:
                pass
        for e1 in curves[::5]:
            for e2 in curves[::7]:
                same = residual_iso_check(e1, e2, ell)
                if same:
                    assert count_points(e1, ell) == count_points(e2, ell)


def test_frobenius_conjugate_check():
    fd = frobenius_data(load_curve("864b1"), 7)
    assert (fd.a, fd.disc, fd.beta) == (3, -19, 1)
    assert frob_matrix(fd, 19) == ((11, 0), (1, 11))
