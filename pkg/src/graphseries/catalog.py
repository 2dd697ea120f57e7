"""Builders for the named q-series used by the identity registry.

Every builder takes a truncation order N and returns a Series exact through
q**N.  Infinite sums are cut only where each discarded term has valuation
greater than N; the bound used is noted next to each loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import DivergentProduct, UnknownName, UnknownVariant
from .series import Series, as_fraction

INF = math.inf

__all__ = [
    "pochhammer",
    "inverse_pochhammer",
    "qinf",
    "lambert_sum",
    "named_series",
    "kronecker12",
    "chi_plus",
    "chi_minus",
    "frame_product",
    "CatalogEntry",
    "CATALOG",
]


def _factor_exponents(r: Fraction, length, step: Fraction, top: Fraction):
    """Exponents r + j*step of the factors, stopping once they exceed top."""
    if step <= 0:
        raise DivergentProduct("factor exponents must increase")
    j = 0
    while length == INF or j < length:
        e = r + j * step
        if e > top:
            break
        yield e
        j += 1


def pochhammer(base_exp, length, N, step=1, sign=1) -> Series:
    """(a; q**step)_length with a = sign*q**base_exp, to order N.

    Factors whose exponent exceeds N are 1 + O(q**(N+1)) and are skipped.
    Factors with nonpositive exponent are multiplied in exactly.
    """
    r = as_fraction(base_exp)
    step = as_fraction(step)
    if length == INF and r <= 0 and sign == 1:
        raise DivergentProduct(f"(q^{r}; q)_inf does not converge as a power series")
    N = as_fraction(N)
    d = math.lcm(r.denominator, step.denominator)
    head = Series.constant(1)
    low = []
    j = 0
    while (length == INF or j < length) and r + j * step <= 0:
        low.append(r + j * step)
        j += 1
    for e in low:
        head = head * (Series.constant(1) + Series.monomial(e, -sign))
    shift = sum(low, Fraction(0))  # valuation of the exact head
    top = N - shift
    rest = length - j if length != INF else INF
    M = math.floor(top * d)
    c = [0] * (M + 1) if M >= 0 else []
    if c:
        c[0] = 1
        for e in _factor_exponents(r + j * step, rest, step, top):
            k = int(e * d)
            for i in range(M, k - 1, -1):
                v = c[i - k]
                if v:
                    c[i] -= sign * v
    tail = Series(c, 0, M, d)
    return (head * tail).truncate(N)


def inverse_pochhammer(base_exp, length, N, step=1, sign=1) -> Series:
    """1/(a; q**step)_length to order N."""
    r = as_fraction(base_exp)
    step = as_fraction(step)
    N = as_fraction(N)
    if r <= 0:
        if sign == 1:
            raise DivergentProduct(f"(q^{r}; q) has a vanishing factor")
        # Laurent head: invert the finite product exactly then multiply
        p = pochhammer(r, length, N + 2 * _neg_mass(r, length, step), step, sign)
        return p.invert().truncate(N)
    d = math.lcm(r.denominator, step.denominator)
    M = math.floor(N * d)
    c = [0] * (M + 1)
    c[0] = 1
    for e in _factor_exponents(r, length, step, N):
        k = int(e * d)
        for i in range(k, M + 1):
            v = c[i - k]
            if v:
                c[i] += sign * v
    return Series(c, 0, M, d)


def _neg_mass(r: Fraction, length, step: Fraction) -> Fraction:
    s = Fraction(0)
    j = 0
    while (length == INF or j < length) and r + j * step <= 0:
        s += r + j * step
        j += 1
    return s


def qinf(N) -> Series:
    """(q; q)_inf."""
    return pochhammer(1, INF, N)


# ---------------------------------------------------------------------------
# Lambert-type sums


def _pole_expand(out: list, coef, e: int, n: int, p: int):
    """Add coef * q**e / (1 - q**n)**p into the dense list out (index = exponent)."""
    top = len(out) - 1
    j = 0
    while e + n * j <= top:
        out[e + n * j] += coef * math.comb(j + p - 1, p - 1)
        j += 1


def lambert_sum(weight: int, pole_order: int, N: int, variant: str = "plain") -> Series:
    """Sum over n >= 1 of weighted q**e(n) / (1 - q**n)**pole_order.

    variant "plain": n**weight * q**n / (1 - q**n)**p.
    Signed variants (folded to n >= 1):
      "alt-triangular"  (k=0,p=2): (-1)**(n+1) (1+q**n) q**(n(n+1)/2) / (1-q**n)**2
      "I1" / "F"        (k=0,p=2): (-1)**(n+1) (1+q**n) q**(n(3n+1)/2) / (1-q**n)**2
      "I2"              (k=1,p=1): 2 (-1)**(n+1) n q**(n(n+1)/2) / (1-q**n)
    """
    if pole_order not in (1, 2):
        raise UnknownVariant(f"pole order {pole_order} not supported")
    if N < 0:
        return Series.zero(N)
    out = [0] * (N + 1)
    if variant == "plain":
        if weight < 0:
            raise UnknownVariant("negative weight")
        for n in range(1, N + 1):  # valuation n
            _pole_expand(out, n**weight, n, n, pole_order)
    elif variant in ("alt-triangular", "I1", "F") and (weight, pole_order) == (0, 2):
        tri = variant == "alt-triangular"
        n = 1
        while True:
            e = n * (n + 1) // 2 if tri else n * (3 * n + 1) // 2
            if e > N:  # valuation e(n), increasing
                break
            s = 1 if n % 2 else -1
            _pole_expand(out, s, e, n, 2)
            _pole_expand(out, s, e + n, n, 2)
            n += 1
    elif variant == "I2" and (weight, pole_order) == (1, 1):
        n = 1
        while n * (n + 1) // 2 <= N:
            s = 1 if n % 2 else -1
            _pole_expand(out, 2 * s * n, n * (n + 1) // 2, n, 1)
            n += 1
    else:
        raise UnknownVariant(f"no Lambert variant {variant!r} with weight {weight}, pole order {pole_order}")
    return Series(out, 0, N)


# ---------------------------------------------------------------------------
# characters


def kronecker12(n: int) -> int:
    """The character (12/n)."""
    r = n % 12
    if r in (1, 11):
        return 1
    if r in (5, 7):
        return -1
    return 0


def chi_plus(n: int) -> int:
    if (n * n) % 120 == 1:
        return -1 if (n // 30) % 2 else 1
    return 0


def chi_minus(n: int) -> int:
    if (n * n) % 120 == 49:
        return -1 if (n // 30) % 2 else 1
    return 0


# ---------------------------------------------------------------------------
# named series


def _dense(N: int) -> list:
    return [0] * (N + 1)


def _running_poch(N: int):
    """Yield (n, (q)_n) truncated to order N for n = 0, 1, 2, ..."""
    c = _dense(N)
    c[0] = 1
    n = 0
    while True:
        yield n, Series(c, 0, N)
        n += 1
        for i in range(N, n - 1, -1):
            c[i] -= c[i - n]


def sum_of_tails(N: int) -> Series:
    """G(q) = sum_{n>=0} ((q)_n - (q)_inf)."""
    inf = qinf(N)
    total = Series.zero(N)
    for n, p in _running_poch(N):
        if n + 1 > N:  # (q)_n - (q)_inf = O(q**(n+1))
            break
        total = total + (p - inf)
    return total


def unimodal_rank(N: int) -> Series:
    """U(1;q) = sum_{n>=0} q**(n+1) (q)_n**2."""
    total = Series.zero(N)
    for n, p in _running_poch(N):
        if n + 1 > N:
            break
        total = total + (p * p).shift(n + 1).truncate(N)
    return total


def kz_sigma(N: int) -> Series:
    """sigma(q) = 1 + sum_{n>=0} (-1)**n q**(n+1) (q)_n."""
    total = Series.constant(1).truncate(N)
    for n, p in _running_poch(N):
        if n + 1 > N:
            break
        term = p.shift(n + 1).truncate(N)
        total = total + (term if n % 2 == 0 else -term)
    return total


def weighted_theta_h(N: int) -> Series:
    """H(q) = sum_{n>=1} n (12/n) q**((n*n-1)/24)."""
    out = _dense(N)
    n = 1
    while (n * n - 1) / 24 <= N:
        k = kronecker12(n)
        if k:
            out[(n * n - 1) // 24] += n * k
        n += 1
    return Series(out, 0, N)


def mock_chi0(N: int) -> Series:
    """chi_0(q) = sum_{n>=0} q**n / (q**(n+1); q)_n."""
    total = Series.zero(N)
    for n in range(N + 1):  # valuation n
        total = total + inverse_pochhammer(n + 1, n, N - n).shift(n)
    return total


def mock_chi1(N: int) -> Series:
    """chi_1(q) = sum_{n>=0} q**n / (q**(n+1); q)_(n+1)."""
    total = Series.zero(N)
    for n in range(N + 1):
        total = total + inverse_pochhammer(n + 1, n + 1, N - n).shift(n)
    return total


def false_theta(N: int, which: str) -> Series:
    """Theta~_+ (shift 1) or Theta~_- (shift 49) with the characters chi_+/-."""
    chi, c0 = (chi_plus, 1) if which == "+" else (chi_minus, 49)
    out = _dense(N)
    n = 1
    while (n * n - c0) <= 120 * N:
        v = chi(n)
        if v:
            out[(n * n - c0) // 120] += v
        n += 1
    return Series(out, 0, N)


def eisenstein_e2(N: int) -> Series:
    return 1 - 24 * lambert_sum(1, 1, N)


def rogers_ramanujan(N: int) -> Series:
    """1 / ((q; q^5)_inf (q^4; q^5)_inf)."""
    return inverse_pochhammer(1, INF, N, step=5) * inverse_pochhammer(4, INF, N, step=5)


def frame_product(a: int, b: int, N: int) -> Series:
    """1 / ((q^(b+1))_(a+1) (q^(a+1))_inf)."""
    return inverse_pochhammer(b + 1, a + 1, N) * inverse_pochhammer(a + 1, INF, N)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    builder: Callable[[int], Series]
    anchor: str
    description: str = ""


_ENTRIES = [
    CatalogEntry("qinf", qinf, "Pochhammer convention", "(q;q)_inf"),
    CatalogEntry("pinv", lambda N: inverse_pochhammer(1, INF, N), "partition generating function", "1/(q;q)_inf"),
    CatalogEntry("D", lambda N: lambert_sum(0, 1, N), "divisor generating function", "sum q^n/(1-q^n)"),
    CatalogEntry("sigma1", lambda N: lambert_sum(1, 1, N), "5-cycle Lambert sum", "sum n q^n/(1-q^n)"),
    CatalogEntry("sigma2", lambda N: lambert_sum(2, 1, N), "sum of squares of divisors", "sum n^2 q^n/(1-q^n)"),
    CatalogEntry("L2", lambda N: lambert_sum(0, 2, N), "E2 Lambert form", "sum q^n/(1-q^n)^2"),
    CatalogEntry("E2lerch", lambda N: lambert_sum(0, 2, N, "alt-triangular"), "E2 Lerch form",
                 "sum (-1)^(n+1) (1+q^n) q^(n(n+1)/2)/(1-q^n)^2"),
    CatalogEntry("E2", eisenstein_e2, "weight two Eisenstein series", "1 - 24 sum sigma_1(n) q^n"),
    CatalogEntry("G", sum_of_tails, "sum of tails", "sum ((q)_n - (q)_inf)"),
    CatalogEntry("U1", unimodal_rank, "strongly unimodal sequences", "sum q^(n+1) (q)_n^2"),
    CatalogEntry("sigmaKZ", kz_sigma, "quantum modular of weight zero", "1 + sum (-1)^n q^(n+1) (q)_n"),
    CatalogEntry("H32", weighted_theta_h, "weight 3/2 theta", "sum n (12/n) q^((n^2-1)/24)"),
    CatalogEntry("chi0", mock_chi0, "fifth order mock theta", "sum q^n/(q^(n+1))_n"),
    CatalogEntry("chi1", mock_chi1, "fifth order mock theta", "sum q^n/(q^(n+1))_(n+1)"),
    CatalogEntry("thetaP", lambda N: false_theta(N, "+"), "false theta", "sum chi_+(n) q^((n^2-1)/120)"),
    CatalogEntry("thetaM", lambda N: false_theta(N, "-"), "false theta", "sum chi_-(n) q^((n^2-49)/120)"),
    CatalogEntry("I1", lambda N: lambert_sum(0, 2, N, "I1"), "D4 Appell-Lerch part",
                 "sum_{n!=0} (-1)^(n+1) q^(n(3n+1)/2)/(1-q^n)^2"),
    CatalogEntry("I2", lambda N: lambert_sum(1, 1, N, "I2"), "D4 Appell-Lerch part",
                 "sum_{n!=0} (-1)^(n+1) n q^(n(n+1)/2)/(1-q^n)"),
    CatalogEntry("Fhol", lambda N: lambert_sum(0, 2, N, "F"), "holomorphic part of the weight two completion",
                 "sum_{n!=0} (-1)^(n+1) q^(3n(n+1)/2)/(1-q^n)^2"),
    CatalogEntry("RR", rogers_ramanujan, "first Rogers-Ramanujan product", "1/((q;q^5)(q^4;q^5))"),
]

CATALOG: dict[str, CatalogEntry] = {e.name: e for e in _ENTRIES}


def named_series(name: str, N: int) -> Series:
    try:
        entry = CATALOG[name]
    except KeyError:
        raise UnknownName(f"no catalog series {name!r}; known: {', '.join(CATALOG)}") from None
    return entry.builder(N)
