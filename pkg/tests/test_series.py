import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpartlab.errors import NotAUnit, OutOfValidRange
from qpartlab.series import (QSeries, ZPoly, add, coefficient, dilate, first_mismatch,
                             invert_unit, mul)

from conftest import qseries, units

Z = ZPoly.z()


def q_poly(coeffs, valid_to=None, min_exp=0):
    return QSeries(coeffs, min_exp, valid_to)


def agree(a, b):
    return first_mismatch(a, b) is None


# ZPoly -----------------------------------------------------------------


def test_zpoly_canonical_form():
    assert ZPoly((1, 2, 0, 0)).coeffs == (1, 2)
    assert ZPoly((0, 0)).coeffs == ()
    assert ZPoly((0,)) == ZPoly()
    assert ZPoly((3,)) == 3


def test_zpoly_arithmetic():
    p = ZPoly((1, 1))
    assert p * p == ZPoly((1, 2, 1))
    assert p - p == ZPoly()
    assert p(2) == 3
    assert (2 * Z + 1) == ZPoly((1, 2))


# add -------------------------------------------------------------------


def test_add_cancellation():
    s = q_poly([0, 1, 1], valid_to=4) + q_poly([0, -1], valid_to=3)
    assert s.as_dict() == {2: ZPoly((1,))}
    assert s.valid_to == 3
    assert s.min_exp == 2


def test_add_identity():
    s = q_poly([1, 2, 3], valid_to=5)
    assert add(s, QSeries.zero(5)) == s


def test_add_doubling():
    s = q_poly([1, 1], valid_to=4)
    assert add(s, s) == q_poly([2, 2], valid_to=4)


# mul -------------------------------------------------------------------


@pytest.mark.parametrize("N", [0, 1, 5, 12])
def test_mul_telescoping(N):
    geom = q_poly([1] * (N + 1))
    prod = mul(q_poly([1, -1], valid_to=N), geom)
    assert prod.valid_to == N
    expected = q_poly([1], valid_to=N)
    assert prod == expected
    assert agree(prod, q_poly([1] + [0] * N + [-1]))


def test_mul_square_in_z():
    f = q_poly([1, Z], valid_to=2)
    assert mul(f, f) == q_poly([1, 2 * Z, Z * Z], valid_to=2)


def test_mul_laurent_shift():
    qinv = QSeries.monomial(1, 0, -1, 10)
    s = mul(qinv, q_poly([0, 1, 0, 1], valid_to=10))
    assert s.as_dict() == {0: ZPoly((1,)), 2: ZPoly((1,))}
    assert s.min_exp == 0
    assert s.valid_to == 9


def test_mul_valid_to_formula():
    a = QSeries([1, 1], -2, 3)
    b = QSeries([1, 2, 3], 1, 4)
    p = mul(a, b)
    assert p.valid_to == min(3 + 1, 4 - 2)
    assert p.min_exp == -1


# invert_unit -----------------------------------------------------------


def test_invert_geometric():
    inv = invert_unit(q_poly([1, -1], valid_to=5), 5)
    assert inv == q_poly([1] * 6)


def test_invert_one():
    assert invert_unit(QSeries.one(5), 5) == QSeries.one(5)


def _parts_1_2(n):
    return sum(1 for a in range(n + 1) for b in range(n // 2 + 1) if a + 2 * b == n)


def test_invert_partitions_into_ones_and_twos():
    den = mul(q_poly([1, -1], valid_to=4), q_poly([1, 0, -1], valid_to=4))
    inv = invert_unit(den, 4)
    assert inv.int_coeffs(0, 4) == [_parts_1_2(n) for n in range(5)]
    assert inv.int_coeffs(0, 4) == [1, 1, 2, 2, 3]


def test_invert_negative_unit():
    inv = invert_unit(q_poly([-1, 1], valid_to=3), 3)
    assert inv == q_poly([-1, -1, -1, -1])


@pytest.mark.parametrize("bad", [
    q_poly([2, 1], valid_to=3),
    q_poly([0, 1], valid_to=3),
    q_poly([Z + 1], valid_to=3),
    QSeries([1], -1, 3),
    QSeries.zero(3),
])
def test_invert_rejects_non_units(bad):
    with pytest.raises(NotAUnit):
        invert_unit(bad, 3)


# dilate ----------------------------------------------------------------


def test_dilate_examples():
    assert dilate(q_poly([1, 1], valid_to=1), 2) == q_poly([1, 0, 1], valid_to=3)
    s = q_poly([0, 1, 2], valid_to=2)
    assert dilate(s, 1) == s
    d3 = dilate(s, 3)
    assert d3.as_dict() == {3: ZPoly((1,)), 6: ZPoly((2,))}
    assert d3.valid_to == 3 * 2 + 2


def test_dilate_laurent():
    s = QSeries([1, 0, 5], -1, 2)
    d = dilate(s, 2)
    assert d.min_exp == -2 and d.valid_to == 5
    assert d.as_dict() == {-2: ZPoly((1,)), 2: ZPoly((5,))}


# coefficient -----------------------------------------------------------


def test_coefficient_examples():
    s = q_poly([1, 0, 3])
    assert coefficient(s, 2) == 3
    assert coefficient(s, 1) == 0
    assert coefficient(s, -4) == 0


def test_coefficient_out_of_range():
    s = QSeries.one(10)
    with pytest.raises(OutOfValidRange):
        coefficient(s, 11)


def test_empty_series_invariant():
    s = QSeries.zero(4)
    assert s.valid_to == s.min_exp - 1
    assert s.is_zero()
    assert coefficient(s, 4) == ZPoly()


def test_immutable():
    s = q_poly([1, 2])
    with pytest.raises(ValueError):
        s._c[0, 0] = 5


def test_over_binomial_matches_invert():
    s = q_poly([1, 2, Z, 0, 3], valid_to=12)
    for c, m, e in itertools.product((1, -1), (0, 1), (1, 2, 3)):
        fac = QSeries.one(12).times_binomial(c, m, e)
        assert s.over_binomial(c, m, e) == mul(s, invert_unit(fac, 12))


def test_over_binomial_rejects_constant_factor():
    with pytest.raises(NotAUnit):
        QSeries.one(3).over_binomial(1, 0, 0)


def test_evaluate():
    s = q_poly([1, ZPoly((0, 1)), 2])
    assert s.evaluate(0.5, 2.0) == pytest.approx(1 + 2 * 0.5 + 2 * 0.25)


# properties ------------------------------------------------------------


@given(qseries(), qseries())
def test_add_commutes(a, b):
    assert add(a, b) == add(b, a)


@given(qseries(), qseries())
def test_mul_commutes(a, b):
    assert mul(a, b) == mul(b, a)


@given(qseries(), qseries(), qseries())
def test_associativity(a, b, c):
    assert agree(add(add(a, b), c), add(a, add(b, c)))
    assert agree(mul(mul(a, b), c), mul(a, mul(b, c)))


@given(qseries(), qseries(), qseries())
def test_distributive(a, b, c):
    assert agree(mul(a, add(b, c)), add(mul(a, b), mul(a, c)))


@given(units(), st.integers(0, 12))
def test_invert_round_trip(a, order):
    inv = invert_unit(a, order)
    prod = mul(a, inv)
    top = min(order, a.valid_to)
    assert prod.valid_to >= top
    assert agree(prod, QSeries.one(top))


@given(qseries(), qseries(), st.integers(1, 4))
def test_dilate_homomorphism(a, b, d):
    assert agree(dilate(mul(a, b), d), mul(dilate(a, d), dilate(b, d)))
    assert agree(dilate(add(a, b), d), add(dilate(a, d), dilate(b, d)))


@settings(max_examples=200)
@given(qseries(max_len=10), qseries(max_len=10), st.integers(0, 6), st.integers(0, 6))
def test_valid_to_is_honest(fa, fb, cut_a, cut_b):
    # truncate "true" series, operate, and compare with the untruncated result
    a = fa.truncate(fa.min_exp + cut_a)
    b = fb.truncate(fb.min_exp + cut_b)
    for got, exact in ((add(a, b), add(fa, fb)), (mul(a, b), mul(fa, fb)),
                       (dilate(a, 2), dilate(fa, 2))):
        assert got.valid_to <= exact.valid_to
        assert first_mismatch(got, exact) is None
        with pytest.raises(OutOfValidRange):
            got.coefficient(got.valid_to + 1)
