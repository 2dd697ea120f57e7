from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from graphseries.errors import LatticeError, OrderExceeded, ZeroLeadingCoefficient
from graphseries.series import Series, equal_to_order, first_mismatch, q

from oracles import euler_product, partitions


def geometric(N):
    return Series([1] * (N + 1), 0, N)


def test_one_minus_q_times_geometric():
    s = (1 - q) * geometric(10)
    assert s.order == 10
    assert s.terms() == [(0, 1)]


def test_laurent_cancellation():
    assert q.invert() * q == Series.constant(1)
    assert (q.invert() * q).terms() == [(0, 1)]


def test_finite_euler_product_matches_oracle():
    p = Series.constant(1)
    for k in range(1, 21):
        p = p * (1 - Series.monomial(k))
    p = p.truncate(20)
    assert [p.coeff(e) for e in range(21)] == euler_product(20)
    assert {int(e): c for e, c in p.terms()} == {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1, 15: -1}


def test_invert_geometric():
    s = (1 - q).invert(order=12)
    assert [s.coeff(e) for e in range(13)] == [1] * 13


def test_invert_euler_product_gives_partitions():
    p = Series(euler_product(9), 0, 9)
    inv = p.invert()
    assert [inv.coeff(e) for e in range(10)] == partitions(9)
    assert partitions(9) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]


def test_invert_laurent():
    s = (q * (1 - q)).invert(order=6)
    assert s.min_exp == -1
    assert [s.coeff(e) for e in range(-1, 7)] == [1] * 8


def test_invert_zero_window_raises():
    with pytest.raises(ZeroLeadingCoefficient):
        Series.zero(5).invert()


def test_coeff_and_lattice():
    assert geometric(10).coeff(7) == 1
    d = Series([0] + [sum(1 for k in range(1, n + 1) if n % k == 0) for n in range(1, 11)], 0, 10)
    shifted = d.shift(-1)
    assert shifted.coeff(0) == 1
    assert shifted.coeff(Fraction(1, 2)) == 0
    with pytest.raises(OrderExceeded):
        geometric(10).coeff(11)


def test_equal_to_order_binomial():
    a = (1 - q).invert(order=30) ** 2
    b = Series([n + 1 for n in range(31)], 0, 30)
    assert equal_to_order(a, b, 30)


def test_first_mismatch_and_order_guard():
    a = Series([1, 2, 3], 0, 5)
    b = Series([1, 2, 4], 0, 5)
    assert first_mismatch(a, b, 5) == 2
    assert first_mismatch(a, a, 5) is None
    with pytest.raises(OrderExceeded):
        first_mismatch(a, b, 6)


def test_fractional_lattice_and_off_lattice_write():
    s = Series.monomial(Fraction(1, 3)) + Series.monomial(Fraction(1, 2))
    assert s.denom == 6
    assert s.coeff(Fraction(1, 3)) == 1
    with pytest.raises(LatticeError):
        Series.monomial(Fraction(1, 2)).refine(3)
    with pytest.raises(LatticeError):
        Series.from_list([1, 2], order=3, min_exp=Fraction(1, 2), denom=1)


def test_product_order_follows_valuation():
    a = Series([1, 1, 1], 0, 4)
    b = Series([1], 2, 6)  # q^2 + O(q^7)
    assert (a * b).order == 6


def test_record_roundtrip():
    s = (Series.monomial(Fraction(-1, 2), Fraction(3, 7)) + geometric(5)).truncate(4)
    assert Series.from_record(s.to_record()) == s


# ---------------------------------------------------------------------------
# properties

coef = st.integers(-5, 5)


@st.composite
def small_series(draw, order=15):
    start = draw(st.integers(-2, 3))
    n = max(order - start + 1, 1)
    c = draw(st.lists(coef, min_size=n, max_size=n))
    return Series(c, start, order)


@settings(max_examples=120, deadline=None)
@given(small_series(), small_series(), small_series())
def test_ring_laws(a, b, c):
    N = 8  # every product below is known through at least this order
    assert equal_to_order(a * b, b * a, N)
    assert equal_to_order((a * b) * c, a * (b * c), N)
    assert equal_to_order(a * (b + c), a * b + a * c, N)
    assert equal_to_order(a + b, b + a, N)


@settings(max_examples=120, deadline=None)
@given(st.integers(-3, 3), st.lists(coef, min_size=16, max_size=16), st.sampled_from([1, -1, 2, 3]))
def test_invert_two_sided(start, tail, lead):
    a = Series([lead] + tail, start, 15 + start)
    inv = a.invert()
    one = a * inv
    assert one.order is not None
    assert equal_to_order(one, Series.constant(1), one.order)
    assert equal_to_order(inv * a, Series.constant(1), one.order)


@settings(max_examples=100, deadline=None)
@given(small_series(), small_series(), st.integers(2, 10))
def test_truncation_monotone(a, b, M):
    full = (a * b).truncate(M + 10)
    direct = a.truncate(M + 3) * b.truncate(M + 3)
    top = min(M, direct.order)
    assert equal_to_order(full.truncate(top), direct.truncate(top), top)
