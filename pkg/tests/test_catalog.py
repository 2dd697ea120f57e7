from fractions import Fraction

import pytest

from graphseries.catalog import (
    CATALOG,
    INF,
    chi_minus,
    chi_plus,
    frame_product,
    inverse_pochhammer,
    kronecker12,
    lambert_sum,
    named_series,
    pochhammer,
    qinf,
)
from graphseries.errors import DivergentProduct, UnknownName, UnknownVariant
from graphseries.series import Series, equal_to_order

from oracles import divisor_count, divisor_sum, graph_series, inv_poch, poly_mul, rogers_ramanujan_count


def coeffs(s, lo, hi):
    return [s.coeff(e) for e in range(lo, hi + 1)]


def test_empty_pochhammer():
    assert pochhammer(1, 0, 10) == Series.constant(1).truncate(10)


def test_euler_product_pentagonal():
    p = pochhammer(1, INF, 12)
    assert {int(e): c for e, c in p.terms()} == {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1}


def test_pentagonal_number_theorem_to_60():
    N = 60
    expected = [0] * (N + 1)
    for n in range(-10, 11):
        e = n * (3 * n - 1) // 2
        if 0 <= e <= N:
            expected[e] += (-1) ** n
    assert coeffs(qinf(N), 0, N) == expected


def test_rogers_ramanujan_product():
    s = named_series("RR", 20)
    assert coeffs(s, 0, 9) == [1, 1, 1, 1, 2, 2, 3, 3, 4, 5]
    assert coeffs(s, 0, 20) == rogers_ramanujan_count(20)


def test_divergent_product():
    with pytest.raises(DivergentProduct):
        pochhammer(0, INF, 5)
    with pytest.raises(DivergentProduct):
        inverse_pochhammer(0, 3, 5)


def test_negative_sign_product_with_zero_exponent():
    # (-1; q)_3 = 2 (1 + q)(1 + q^2)
    assert coeffs(pochhammer(0, 3, 5, sign=-1), 0, 5) == [2, 2, 2, 2, 0, 0]


def test_inverse_pochhammer_matches_oracle():
    assert coeffs(inverse_pochhammer(1, 4, 15), 0, 15) == inv_poch(4, 15)


def test_divisor_sums():
    assert coeffs(lambert_sum(0, 1, 8), 1, 8) == [1, 2, 2, 3, 2, 4, 2, 4]
    assert coeffs(lambert_sum(1, 1, 6), 1, 6) == [1, 3, 4, 7, 6, 12]
    N = 40
    assert coeffs(lambert_sum(0, 1, N), 1, N) == [divisor_count(n) for n in range(1, N + 1)]
    assert coeffs(lambert_sum(2, 1, N), 1, N) == [divisor_sum(n, 2) for n in range(1, N + 1)]


def test_double_pole_lambert_is_e2():
    N = 30
    e2 = named_series("E2", N)
    assert equal_to_order(lambert_sum(0, 2, N), (1 - e2) * Fraction(1, 24), N)


def test_unknown_lambert_variant():
    with pytest.raises(UnknownVariant):
        lambert_sum(3, 2, 10, "I2")
    with pytest.raises(UnknownVariant):
        lambert_sum(0, 3, 10)


def test_e2_expansion():
    assert coeffs(named_series("E2", 4), 0, 4) == [1, -24, -72, -96, -168]


def test_unimodal_rank_direct_sum():
    N = 10
    ref = [0] * (N + 1)
    poch = [1] + [0] * N
    for n in range(N):
        sq = poly_mul(poch, poch, N)
        for i in range(N + 1 - (n + 1)):
            ref[i + n + 1] += sq[i]
        f = [0] * (N + 1)
        f[0] = 1
        if n + 1 <= N:
            f[n + 1] = -1
        poch = poly_mul(poch, f, N)
    u = named_series("U1", N)
    assert coeffs(u, 0, N) == ref
    # n = 1 gives -2 q^3 and n = 2 adds +q^3
    assert coeffs(u, 1, 3) == [1, 1, -1]


def test_false_theta_leading_terms():
    assert named_series("thetaP", 10).coeff(0) == 1
    assert chi_plus(1) == 1 and chi_minus(7) == 1
    assert chi_plus(31) == -1 and chi_minus(37) == -1
    assert [n for n in range(1, 60) if chi_plus(n)] == [1, 11, 19, 29, 31, 41, 49, 59]


def test_kronecker_table():
    assert [kronecker12(n) for n in range(1, 13)] == [1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1, 0]


def test_h32_is_integral():
    h = named_series("H32", 20)
    assert coeffs(h, 0, 3) == [1, -5, -7, 0]


def test_sum_of_tails_head():
    g = named_series("G", 8)
    # (q)_0 - (q)_inf = q + q^2 - q^5 - ..., (q)_1 - (q)_inf = q^2 - q^5 ...
    assert g.coeff(1) == 1
    assert g.coeff(2) == 2


def test_mock_theta_heads():
    assert coeffs(named_series("chi1", 6), 0, 6) == [1, 2, 2, 3, 3, 4, 4]
    assert coeffs(named_series("chi0", 6), 0, 6) == [1, 1, 1, 2, 1, 3, 2]


@pytest.mark.parametrize("a,b", [(0, 0), (1, 2), (3, 1)])
def test_frame_product_against_two_node_sum(a, b):
    N = 12
    ref = graph_series(2, [(1, 2)], N, b=[a + 1, b + 1])
    assert coeffs(frame_product(a, b, N), 0, N) == ref


def test_unknown_name():
    with pytest.raises(UnknownName):
        named_series("nope", 5)


def test_cli_names_present():
    for name in ("D", "G", "E2", "U1", "sigmaKZ", "H32", "chi0", "chi1", "thetaP", "thetaM", "I1", "I2", "Fhol"):
        assert name in CATALOG


def test_lambert_d_matches_named_d():
    assert lambert_sum(0, 1, 25) == named_series("D", 25)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_truncation_monotone(name):
    big = named_series(name, 24)
    small = named_series(name, 12)
    assert equal_to_order(big.truncate(12), small, 12)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_euler_identity(k):
    N = 30
    lhs = Series.zero(N)
    for n in range(N // k + 1):
        lhs = lhs + inverse_pochhammer(1, n, N - k * n).shift(k * n)
    assert equal_to_order(lhs, inverse_pochhammer(k, INF, N), N)


@pytest.mark.parametrize("s", [1, 2, 3])
@pytest.mark.parametrize("t", [1, 2, 3])
def test_fine_parametric(s, t):
    # sum (s q)_n / (q)_n t^n = (s t q)_inf / (t)_inf with s = q^s, t = q^t
    N = 25
    lhs = Series.zero(N)
    for n in range(N // t + 1):
        lhs = lhs + (pochhammer(s + 1, n, N) * inverse_pochhammer(1, n, N)).shift(t * n).truncate(N)
    rhs = pochhammer(s + t + 1, INF, N) * inverse_pochhammer(t, INF, N)
    assert equal_to_order(lhs, rhs, N)
