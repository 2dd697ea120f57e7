"""Brute-force reference computations that share no code with the package."""

from fractions import Fraction
from itertools import product
from math import gcd


def poly_mul(a, b, N):
    out = [0] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        if x:
            for j, y in enumerate(b[: N + 1 - i]):
                out[i + j] += x * y
    return out


def partitions(N):
    """p(0..N) by counting multisets of parts directly."""
    out = []
    for n in range(N + 1):
        def count(rest, largest):
            if rest == 0:
                return 1
            return sum(count(rest - k, k) for k in range(min(rest, largest), 0, -1))

        out.append(count(n, n))
    return out


def inv_poch(n, N):
    """1/(q)_n as a list, via the partitions-with-parts-at-most-n count."""
    c = [0] * (N + 1)
    for m in range(N + 1):
        def count(rest, largest):
            if rest == 0:
                return 1
            return sum(count(rest - k, k) for k in range(min(rest, largest), 0, -1))

        c[m] = count(m, n)
    return c


def divisor_count(n):
    return sum(1 for d in range(1, n + 1) if n % d == 0)


def divisor_sum(n, k=1):
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def graph_series(r, edges, N, b=None):
    """Sum over every n in [0, N]^r with exponent <= N; integer b only."""
    b = b or [1] * r
    inv = {n: inv_poch(n, N) for n in range(N + 1)}
    out = [0] * (N + 1)
    for ns in product(range(N + 1), repeat=r):
        e = sum(bi * ni for bi, ni in zip(b, ns))
        for i, j in edges:
            e += ns[i - 1] * ns[j - 1]
        if e > N:
            continue
        term = [0] * (N + 1)
        term[e] = 1
        for ni in ns:
            term = poly_mul(term, inv[ni], N)
        out = [x + y for x, y in zip(out, term)]
    return out


def euler_product(N, terms=None):
    """prod_{k>=1} (1 - q^k) to order N by repeated multiplication."""
    c = [1] + [0] * N
    for k in range(1, N + 1):
        f = [0] * (N + 1)
        f[0] = 1
        f[k] = -1
        c = poly_mul(c, f, N)
    return c


def rogers_ramanujan_count(N):
    """Partitions of n into parts differing by at least two."""
    out = []
    for n in range(N + 1):
        def count(rest, last):
            if rest == 0:
                return 1
            return sum(count(rest - k, k) for k in range(1, min(rest, last - 2) + 1))

        out.append(count(n, n + 3))
    return out


def lcm(a, b):
    return a * b // gcd(a, b)


def as_coeffs(series, N, start=0):
    return [series.coeff(e) for e in range(start, N + 1)]


def frac_list(xs):
    return [Fraction(x) for x in xs]
